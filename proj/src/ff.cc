#include "galoispts/ff.h"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace galoispts::ff {

namespace {

using Poly = std::vector<uint32_t>;  // ascending coefficients over F_p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

uint32_t inv_mod_p(uint32_t a, uint32_t p) {
  // p is prime: a^(p-2)
  uint64_t r = 1, b = a % p;
  uint64_t e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(r);
}

Poly poly_mod(Poly a, const Poly& m, uint32_t p) {
  trim(a);
  const size_t dm = m.size() - 1;
  const uint32_t lead_inv = inv_mod_p(m.back(), p);
  while (a.size() >= m.size()) {
    const uint32_t c = static_cast<uint32_t>(uint64_t{a.back()} * lead_inv % p);
    const size_t shift = a.size() - 1 - dm;
    for (size_t i = 0; i < m.size(); ++i) {
      a[shift + i] = static_cast<uint32_t>((a[shift + i] + uint64_t{p - c} * m[i]) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<uint32_t>((r[i + j] + uint64_t{a[i]} * b[j]) % p);
    }
  }
  trim(r);
  return r;
}

Poly poly_sub(Poly a, const Poly& b, uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

Poly poly_gcd(Poly a, Poly b, uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// X^(p^k) mod m
Poly x_pow_pk(const Poly& m, uint32_t p, unsigned k) {
  Poly cur = poly_mod(Poly{0, 1}, m, p);
  for (unsigned step = 0; step < k; ++step) {
    // cur <- cur^p
    Poly r{1};
    Poly base = cur;
    uint32_t e = p;
    while (e) {
      if (e & 1) r = poly_mod(poly_mul(r, base, p), m, p);
      base = poly_mod(poly_mul(base, base, p), m, p);
      e >>= 1;
    }
    cur = r;
  }
  return cur;
}

std::vector<uint64_t> prime_factors(uint64_t v) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

}  // namespace

bool is_prime(uint64_t v) {
  if (v < 2) return false;
  for (uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

bool is_power_of(uint64_t v, uint64_t p) {
  if (v == 0 || p < 2) return false;
  while (v % p == 0) v /= p;
  return v == 1;
}

bool is_irreducible(const std::vector<uint32_t>& f, uint32_t p) {
  Poly m = f;
  trim(m);
  if (m.size() < 2) return false;
  const unsigned n = static_cast<unsigned>(m.size() - 1);
  if (n == 1) return true;
  const Poly x = poly_mod(Poly{0, 1}, m, p);
  if (poly_sub(x_pow_pk(m, p, n), x, p) != Poly{}) return false;
  for (uint64_t r : prime_factors(n)) {
    Poly h = poly_sub(x_pow_pk(m, p, static_cast<unsigned>(n / r)), x, p);
    Poly g = poly_gcd(m, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

Field::Field(uint32_t p, uint32_t n, std::vector<uint32_t> modulus)
    : p_(p), n_(n), modulus_(std::move(modulus)) {
  uint64_t size = 1;
  for (uint32_t i = 0; i < n; ++i) {
    place_.push_back(static_cast<uint32_t>(size));
    size *= p;
  }
  size_ = static_cast<uint32_t>(size);

  neg_.resize(size_);
  for (Elem a = 0; a < size_; ++a) {
    auto c = coeffs(a);
    for (auto& d : c) d = (p_ - d) % p_;
    neg_[a] = from_coeffs(c);
  }

  // Smallest primitive element, found with schoolbook arithmetic.
  const uint64_t order = size_ - 1;
  const auto factors = prime_factors(order);
  auto slow_pow = [&](Elem a, uint64_t e) {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul_schoolbook(r, a);
      a = mul_schoolbook(a, a);
      e >>= 1;
    }
    return r;
  };
  Elem g = 1;
  if (size_ > 2) {
    for (Elem cand = 2; cand < size_; ++cand) {
      bool ok = true;
      for (uint64_t r : factors) {
        if (slow_pow(cand, order / r) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        g = cand;
        break;
      }
    }
  }
  exp_.resize(std::max<uint64_t>(order, 1));
  log_.assign(size_, 0);
  Elem cur = 1;
  for (uint64_t k = 0; k < order; ++k) {
    exp_[k] = cur;
    log_[cur] = static_cast<uint32_t>(k);
    cur = mul_schoolbook(cur, g);
  }
  if (order == 0) exp_[0] = 1;

  if (p_ != 2) {
    zech_.resize(order);
    for (uint64_t k = 0; k < order; ++k) {
      auto c = coeffs(exp_[k]);
      c[0] = (c[0] + 1) % p_;
      const Elem s = from_coeffs(c);
      zech_[k] = s == 0 ? static_cast<uint32_t>(order) : log_[s];
    }
  }
}

Elem Field::x() const {
  if (n_ == 1) {
    // F_p[X]/(X - a) with modulus X + m_0: X = -m_0.
    return static_cast<Elem>((p_ - modulus_[0]) % p_);
  }
  return p_;
}

Elem Field::from_int(int64_t v) const {
  int64_t r = v % static_cast<int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

Elem Field::add(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  if (a == 0) return b;
  if (b == 0) return a;
  const uint32_t order = size_ - 1;
  uint32_t k = log_[b] >= log_[a] ? log_[b] - log_[a] : log_[b] + order - log_[a];
  const uint32_t z = zech_[k];
  if (z == order) return 0;
  uint32_t s = log_[a] + z;
  if (s >= order) s -= order;
  return exp_[s];
}

Elem Field::neg(Elem a) const { return neg_[a]; }

Elem Field::inv(Elem a) const {
  if (a == 0) throw FieldError("division by zero");
  const uint32_t order = size_ - 1;
  const uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : order - l];
}

Elem Field::pow(Elem a, int64_t e) const {
  if (e == 0) return 1;
  if (a == 0) {
    if (e < 0) throw FieldError("division by zero");
    return 0;
  }
  const int64_t order = size_ - 1;
  int64_t r = e % order;
  if (r < 0) r += order;
  return exp_[static_cast<uint64_t>((static_cast<__int128>(log_[a]) * r) % order)];
}

Elem Field::frobenius(Elem a, unsigned k) const {
  if (a == 0) return 0;
  const uint64_t order = size_ - 1;
  uint64_t e = 1;
  for (unsigned i = 0; i < k % n_; ++i) e = e * p_ % std::max<uint64_t>(order, 1);
  return exp_[static_cast<uint64_t>(log_[a]) * e % std::max<uint64_t>(order, 1)];
}

std::vector<uint32_t> Field::coeffs(Elem a) const {
  std::vector<uint32_t> c(n_);
  for (uint32_t i = 0; i < n_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

Elem Field::from_coeffs(const std::vector<uint32_t>& c) const {
  Elem v = 0;
  for (uint32_t i = 0; i < n_ && i < c.size(); ++i) v += (c[i] % p_) * place_[i];
  return v;
}

Elem Field::mul_schoolbook(Elem a, Elem b) const {
  Poly r = poly_mod(poly_mul(coeffs(a), coeffs(b), p_), modulus_, p_);
  return from_coeffs(r);
}

Elem Field::inv_euclid(Elem a) const {
  if (a == 0) throw FieldError("division by zero");
  // Extended Euclid: track s with s*a = r (mod modulus).
  Poly r0 = modulus_, r1 = coeffs(a);
  trim(r1);
  Poly s0{}, s1{1};
  while (r1.size() > 1) {
    // r0 = qt*r1 + rem
    Poly qt(r0.size() - r1.size() + 1, 0);
    Poly rem = r0;
    const uint32_t li = inv_mod_p(r1.back(), p_);
    while (rem.size() >= r1.size()) {
      const uint32_t c = static_cast<uint32_t>(uint64_t{rem.back()} * li % p_);
      const size_t sh = rem.size() - r1.size();
      qt[sh] = c;
      for (size_t i = 0; i < r1.size(); ++i) {
        rem[sh + i] = static_cast<uint32_t>((rem[sh + i] + uint64_t{p_ - c} * r1[i]) % p_);
      }
      trim(rem);
    }
    trim(qt);
    Poly s2 = poly_sub(s0, poly_mul(qt, s1, p_), p_);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant c: s1 * a = c
  const uint32_t ci = inv_mod_p(r1[0], p_);
  for (auto& v : s1) v = static_cast<uint32_t>(uint64_t{v} * ci % p_);
  return from_coeffs(poly_mod(s1, modulus_, p_));
}

std::string Field::format(Elem a) const {
  auto c = coeffs(a);
  if (n_ == 1) return std::to_string(c[0]);
  std::ostringstream os;
  os << '(';
  for (uint32_t i = 0; i < n_; ++i) os << (i ? "," : "") << c[i];
  os << ')';
  return os.str();
}

std::string Field::name() const {
  std::ostringstream os;
  os << "F_" << p_;
  if (n_ > 1) os << '^' << n_;
  return os.str();
}

FieldPtr make_field(uint32_t p, uint32_t n) {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (n == 0) throw FieldError("extension degree must be positive");
  uint64_t size = 1;
  for (uint32_t i = 0; i < n; ++i) {
    size *= p;
    if (size > kMaxFieldSize) {
      throw SizeBoundError("field " + std::to_string(p) + "^" + std::to_string(n) +
                           " exceeds the supported size bound 2^24");
    }
  }
  static std::mutex mu;
  static std::map<std::pair<uint32_t, uint32_t>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({p, n});
  if (it != cache.end()) return it->second;

  std::vector<uint32_t> modulus;
  for (uint64_t code = 0; code < size; ++code) {
    std::vector<uint32_t> cand(n + 1, 0);
    uint64_t c = code;
    for (uint32_t i = 0; i < n; ++i) {
      cand[i] = static_cast<uint32_t>(c % p);
      c /= p;
    }
    cand[n] = 1;
    if (n == 1 || (cand[0] != 0 && is_irreducible(cand, p))) {
      modulus = cand;
      break;
    }
  }
  FieldPtr f(new Field(p, n, modulus));
  cache[{p, n}] = f;
  return f;
}

Felt Felt::operator/(const Felt& o) const { return {field_, field_->div(v_, check(o))}; }

Felt Felt::inv() const { return {field_, field_->inv(v_)}; }

Felt Felt::pow(int64_t e) const { return {field_, field_->pow(v_, e)}; }

bool is_square(const Felt& x) {
  const Field* f = x.field();
  if (x.is_zero() || f->p() == 2) return true;
  return f->pow(x.value(), (f->size() - 1) / 2) == f->one();
}

ArtinSchreier::ArtinSchreier(FieldPtr field, uint64_t qexp, Sign sign)
    : field_(std::move(field)), qexp_(qexp), sign_(sign) {
  if (!is_power_of(qexp_, field_->p())) {
    throw FieldError("Artin-Schreier exponent must be a power of the characteristic");
  }
  for (uint64_t v = qexp_; v > 1; v /= field_->p()) ++frob_k_;
  const uint32_t n = field_->n();
  matrix_.assign(n, std::vector<uint32_t>(n, 0));
  for (uint32_t j = 0; j < n; ++j) {
    const Elem basis = field_->from_coeffs([&] {
      std::vector<uint32_t> c(n, 0);
      c[j] = 1;
      return c;
    }());
    const auto img = field_->coeffs(apply(basis));
    for (uint32_t i = 0; i < n; ++i) matrix_[i][j] = img[i];
  }
  kernel_elems_ = solve(0);
}

Elem ArtinSchreier::apply(Elem b) const {
  const Elem bq = field_->frobenius(b, frob_k_);
  return sign_ == Sign::kPlus ? field_->add(bq, b) : field_->sub(bq, b);
}

std::vector<Elem> ArtinSchreier::solve(Elem rhs) const {
  const uint32_t n = field_->n();
  const uint32_t p = field_->p();
  std::vector<std::vector<uint32_t>> a = matrix_;
  const auto r = field_->coeffs(rhs);
  for (uint32_t i = 0; i < n; ++i) a[i].push_back(r[i]);

  std::vector<int> pivot_of_col(n, -1);
  uint32_t row = 0;
  for (uint32_t col = 0; col < n && row < n; ++col) {
    uint32_t sel = row;
    while (sel < n && a[sel][col] == 0) ++sel;
    if (sel == n) continue;
    std::swap(a[sel], a[row]);
    const uint32_t iv = inv_mod_p(a[row][col], p);
    for (auto& v : a[row]) v = static_cast<uint32_t>(uint64_t{v} * iv % p);
    for (uint32_t i = 0; i < n; ++i) {
      if (i == row || a[i][col] == 0) continue;
      const uint32_t c = a[i][col];
      for (uint32_t j = 0; j <= n; ++j) {
        a[i][j] = static_cast<uint32_t>((a[i][j] + uint64_t{p - c} * a[row][j]) % p);
      }
    }
    pivot_of_col[col] = static_cast<int>(row);
    ++row;
  }
  for (uint32_t i = row; i < n; ++i) {
    if (a[i][n] != 0) return {};
  }
  std::vector<uint32_t> free_cols;
  for (uint32_t c = 0; c < n; ++c) {
    if (pivot_of_col[c] < 0) free_cols.push_back(c);
  }
  std::vector<Elem> out;
  uint64_t combos = 1;
  for (size_t i = 0; i < free_cols.size(); ++i) combos *= p;
  for (uint64_t code = 0; code < combos; ++code) {
    std::vector<uint32_t> x(n, 0);
    uint64_t c = code;
    for (uint32_t fc : free_cols) {
      x[fc] = static_cast<uint32_t>(c % p);
      c /= p;
    }
    for (uint32_t col = 0; col < n; ++col) {
      const int pr = pivot_of_col[col];
      if (pr < 0) continue;
      uint64_t v = a[pr][n];
      for (uint32_t fc : free_cols) v += uint64_t{p - a[pr][fc]} * x[fc];
      x[col] = static_cast<uint32_t>(v % p);
    }
    out.push_back(field_->from_coeffs(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Elem> ArtinSchreier::solve_by_scan(Elem rhs) const {
  std::vector<Elem> out;
  for (Elem b = 0; b < field_->size(); ++b) {
    if (apply(b) == rhs) out.push_back(b);
  }
  return out;
}

std::vector<Felt> solve_artin_schreier(const FieldPtr& field, uint64_t qexp, Sign sign, const Felt& rhs) {
  if (rhs.field() != field.get()) throw FieldError("field element owner mismatch");
  ArtinSchreier as(field, qexp, sign);
  std::vector<Felt> out;
  for (Elem b : as.solve(rhs.value())) out.emplace_back(field.get(), b);
  return out;
}

FieldEmbedding::FieldEmbedding(FieldPtr src, FieldPtr dst) : src_(std::move(src)), dst_(std::move(dst)) {
  if (src_->p() != dst_->p() || dst_->n() % src_->n() != 0) {
    throw FieldError("cannot embed " + src_->name() + " into " + dst_->name());
  }
  const auto& m = src_->modulus();
  auto eval_modulus = [&](Elem r) {
    Elem acc = 0;
    for (size_t i = m.size(); i-- > 0;) acc = dst_->add(dst_->mul(acc, r), dst_->from_int(m[i]));
    return acc;
  };
  bool found = false;
  for (Elem r = 0; r < dst_->size(); ++r) {
    if (eval_modulus(r) == 0) {
      gen_image_ = r;
      found = true;
      break;
    }
  }
  if (!found) throw FieldError("no root of the source modulus in the target field");
  table_.resize(src_->size());
  for (Elem a = 0; a < src_->size(); ++a) {
    const auto c = src_->coeffs(a);
    Elem acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = dst_->add(dst_->mul(acc, gen_image_), dst_->from_int(c[i]));
    table_[a] = acc;
  }
}

Felt FieldEmbedding::operator()(const Felt& a) const {
  if (a.field() != src_.get()) throw FieldError("field element owner mismatch");
  return {dst_.get(), table_[a.value()]};
}

FieldEmbedding embed(const FieldPtr& src, const FieldPtr& dst) { return FieldEmbedding(src, dst); }

const FieldEmbedding& embedding(const Field* src, const Field* dst) {
  static std::mutex mu;
  static std::map<std::pair<const Field*, const Field*>, std::unique_ptr<FieldEmbedding>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{src, dst}];
  if (!slot) slot = std::make_unique<FieldEmbedding>(make_field(src->p(), src->n()), make_field(dst->p(), dst->n()));
  return *slot;
}

Felt lift(const Felt& x, const Field* target) {
  if (x.field() == target) return x;
  return {target, embedding(x.field(), target)(x.value())};
}

std::vector<Felt> elements(const FieldPtr& field) {
  std::vector<Felt> out;
  out.reserve(field->size());
  for (Elem a = 0; a < field->size(); ++a) out.emplace_back(field.get(), a);
  return out;
}

}  // namespace galoispts::ff
