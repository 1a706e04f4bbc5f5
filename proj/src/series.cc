#include "galoispts/series.h"

#include <algorithm>
#include <sstream>

namespace galoispts::algebra {

namespace {

int64_t sat_mul(int64_t a, int64_t b) {
  if (a >= Series::kExact / std::max<int64_t>(b, 1)) return Series::kExact;
  return std::min(a * b, Series::kExact);
}

}  // namespace

Series::Series(const Field* f, int64_t offset, std::vector<Elem> c, int64_t rel_prec)
    : field_(f), offset_(offset), coeffs_(std::move(c)), rel_prec_(std::min(rel_prec, kExact)) {
  normalize();
}

void Series::normalize() {
  if (!is_exact() && static_cast<int64_t>(coeffs_.size()) > rel_prec_) coeffs_.resize(rel_prec_);
  size_t k = 0;
  while (k < coeffs_.size() && coeffs_[k] == 0) ++k;
  if (k == coeffs_.size()) {
    coeffs_.clear();
    if (is_exact()) {
      offset_ = 0;
    } else {
      offset_ += rel_prec_;
      rel_prec_ = 0;
    }
    return;
  }
  if (k > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(k));
    offset_ += static_cast<int64_t>(k);
    if (!is_exact()) rel_prec_ -= static_cast<int64_t>(k);
  }
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Series Series::zero(const Field* f) { return Series(f, 0, {}, kExact); }

Series Series::constant(const Field* f, Elem c) { return Series(f, 0, {c}, kExact); }

Series Series::monomial(const Field* f, Elem c, int64_t e) { return Series(f, e, {c}, kExact); }

Series Series::parameter(const Field* f, int64_t abs_prec) {
  if (abs_prec < 2) throw PrecisionError("parameter series needs precision >= 2");
  return Series(f, 1, {1}, abs_prec - 1);
}

Series Series::polynomial(const Field* f, const std::vector<Elem>& coeffs) {
  return Series(f, 0, coeffs, kExact);
}

Series Series::truncated(const Field* f, const std::vector<Elem>& coeffs, int64_t abs_prec) {
  std::vector<Elem> c(coeffs.begin(), coeffs.begin() + std::min<int64_t>(abs_prec, coeffs.size()));
  return Series(f, 0, std::move(c), abs_prec);
}

int64_t Series::valuation() const {
  if (coeffs_.empty()) {
    if (is_exact()) throw PrecisionError("the zero series has no finite order");
    throw PrecisionError("series vanishes to its full precision O(u^" + std::to_string(offset_) + ")");
  }
  return offset_;
}

Elem Series::leading() const {
  valuation();
  return coeffs_.front();
}

Elem Series::coeff(int64_t k) const {
  if (k >= abs_precision()) {
    throw PrecisionError("coefficient of u^" + std::to_string(k) + " beyond precision " +
                         std::to_string(abs_precision()));
  }
  if (coeffs_.empty() || k < offset_) return 0;
  const int64_t i = k - offset_;
  return i < static_cast<int64_t>(coeffs_.size()) ? coeffs_[i] : 0;
}

Series Series::operator+(const Series& o) const {
  const Field* f = field_ ? field_ : o.field_;
  if (field_ && o.field_ && field_ != o.field_) throw ff::FieldError("series over different fields");
  const int64_t abs = std::min(abs_precision(), o.abs_precision());
  auto start = [](const Series& s) { return s.coeffs_.empty() ? s.abs_precision() : s.offset_; };
  const int64_t lo = std::min(start(*this), start(o));
  if (lo >= abs) {
    if (abs >= kExact) return zero(f);
    return Series(f, abs, {}, 0);
  }
  auto end = [](const Series& s) { return s.offset_ + static_cast<int64_t>(s.coeffs_.size()); };
  const int64_t hi = std::min(abs, std::max(end(*this), end(o)));
  std::vector<Elem> c(static_cast<size_t>(std::max<int64_t>(hi - lo, 0)), 0);
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    const int64_t k = offset_ + static_cast<int64_t>(i) - lo;
    if (k < static_cast<int64_t>(c.size())) c[k] = coeffs_[i];
  }
  for (size_t i = 0; i < o.coeffs_.size(); ++i) {
    const int64_t k = o.offset_ + static_cast<int64_t>(i) - lo;
    if (k < static_cast<int64_t>(c.size())) c[k] = f->add(c[k], o.coeffs_[i]);
  }
  return Series(f, lo, std::move(c), abs >= kExact ? kExact : abs - lo);
}

Series Series::operator-() const {
  std::vector<Elem> c = coeffs_;
  for (auto& v : c) v = field_->neg(v);
  Series r = *this;
  r.coeffs_ = std::move(c);
  return r;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::scale(Elem c) const {
  if (c == 0) return is_exact() ? zero(field_) : Series(field_, abs_precision(), {}, 0);
  Series r = *this;
  for (auto& v : r.coeffs_) v = field_->mul(v, c);
  return r;
}

Series Series::operator*(const Series& o) const {
  const Field* f = field_ ? field_ : o.field_;
  if (field_ && o.field_ && field_ != o.field_) throw ff::FieldError("series over different fields");
  const bool az = coeffs_.empty(), bz = o.coeffs_.empty();
  if ((az && is_exact()) || (bz && o.is_exact())) return zero(f);
  if (az || bz) return Series(f, offset_ + o.offset_, {}, 0);
  const int64_t rel = std::min(rel_prec_, o.rel_prec_);
  const size_t la = coeffs_.size(), lb = o.coeffs_.size();
  size_t len = la + lb - 1;
  if (rel < kExact) len = std::min<size_t>(len, static_cast<size_t>(rel));
  std::vector<std::pair<size_t, Elem>> nz;
  nz.reserve(lb);
  for (size_t j = 0; j < lb && j < len; ++j) {
    if (o.coeffs_[j] != 0) nz.emplace_back(j, o.coeffs_[j]);
  }
  std::vector<Elem> c(len, 0);
  for (size_t i = 0; i < la && i < len; ++i) {
    const Elem ai = coeffs_[i];
    if (ai == 0) continue;
    for (const auto& [j, bj] : nz) {
      if (i + j >= len) break;
      c[i + j] = f->add(c[i + j], f->mul(ai, bj));
    }
  }
  return Series(f, offset_ + o.offset_, std::move(c), rel);
}

Series Series::inv() const {
  if (coeffs_.empty()) throw PrecisionError("cannot invert a series that vanishes to its precision");
  if (is_exact()) {
    if (coeffs_.size() != 1) throw std::logic_error("inverse of an exact non-monomial series has no finite form");
    return Series(field_, -offset_, {field_->inv(coeffs_[0])}, kExact);
  }
  const size_t n = static_cast<size_t>(rel_prec_);
  std::vector<Elem> d(n, 0);
  const Elem c0i = field_->inv(coeffs_[0]);
  d[0] = c0i;
  for (size_t k = 1; k < n; ++k) {
    Elem acc = 0;
    const size_t imax = std::min(k, coeffs_.size() - 1);
    for (size_t i = 1; i <= imax; ++i) {
      if (coeffs_[i] != 0 && d[k - i] != 0) acc = field_->add(acc, field_->mul(coeffs_[i], d[k - i]));
    }
    d[k] = field_->neg(field_->mul(acc, c0i));
  }
  return Series(field_, -offset_, std::move(d), rel_prec_);
}

Series Series::frobenius_power(unsigned k) const {
  if (k == 0) return *this;
  int64_t P = 1;
  for (unsigned i = 0; i < k; ++i) P = sat_mul(P, field_->p());
  if (coeffs_.empty()) {
    if (is_exact()) return *this;
    return Series(field_, sat_mul(offset_, P), {}, 0);
  }
  const int64_t rel = is_exact() ? kExact : sat_mul(rel_prec_, P);
  int64_t len = (static_cast<int64_t>(coeffs_.size()) - 1) * P + 1;
  if (rel < kExact) len = std::min(len, rel);
  std::vector<Elem> c(static_cast<size_t>(len), 0);
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    const int64_t pos = static_cast<int64_t>(i) * P;
    if (pos >= len) break;
    c[pos] = field_->frobenius(coeffs_[i], k);
  }
  return Series(field_, offset_ * P, std::move(c), rel);
}

Series Series::pow(int64_t e) const {
  if (e == 0) return constant(field_, 1);
  if (e < 0) return inv().pow(-e);
  // Product over base-p digits d_k of (s^d_k)^(p^k); the Frobenius factors are sparse.
  const int64_t p = field_->p();
  Series acc = constant(field_, 1);
  for (unsigned k = 0; e > 0; ++k, e /= p) {
    const int64_t d = e % p;
    if (d == 0) continue;
    Series digit = *this;
    for (int64_t i = 1; i < d; ++i) digit = digit * *this;
    acc = acc * digit.frobenius_power(k);
  }
  return acc;
}

Series Series::truncate(int64_t abs_prec) const {
  if (abs_prec >= abs_precision()) return *this;
  if (coeffs_.empty() || abs_prec <= offset_) return Series(field_, abs_prec, {}, 0);
  std::vector<Elem> c(coeffs_.begin(), coeffs_.begin() + std::min<int64_t>(abs_prec - offset_, coeffs_.size()));
  return Series(field_, offset_, std::move(c), abs_prec - offset_);
}

std::string Series::str(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    const int64_t e = offset_ + static_cast<int64_t>(i);
    os << field_->format(coeffs_[i]);
    if (e != 0) os << '*' << var << '^' << e;
  }
  if (!is_exact()) {
    if (!first) os << " + ";
    first = false;
    os << "O(" << var << '^' << abs_precision() << ')';
  }
  if (first) os << '0';
  return os.str();
}

}  // namespace galoispts::algebra
