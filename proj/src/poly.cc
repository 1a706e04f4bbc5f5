#include "galoispts/poly.h"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace galoispts::algebra {

namespace {

uint64_t degree_of(const Exponents& e) { return std::accumulate(e.begin(), e.end(), uint64_t{0}); }

class Parser {
 public:
  Parser(std::string_view text, const MultiPoly& zero) : s_(text), zero_(zero) {}

  MultiPoly run() {
    MultiPoly acc = zero_;
    skip();
    bool first = true;
    while (pos_ < s_.size()) {
      bool negate = false;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        negate = s_[pos_] == '-';
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      MultiPoly t = term();
      acc = negate ? acc - t : acc + t;
      skip();
    }
    if (first) fail("empty polynomial");
    return acc;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  uint64_t number() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a number");
    uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<uint64_t>(s_[pos_] - '0');
      if (v > (uint64_t{1} << 40)) fail("number too large");
      ++pos_;
    }
    return v;
  }

  MultiPoly factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const Field* f = zero_.field();
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const uint64_t v = number();
      return MultiPoly::constant(f, zero_.vars(), f->from_int(static_cast<int64_t>(v % f->p())));
    }
    size_t end = pos_;
    while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
    if (end == pos_) fail("expected a variable or coefficient");
    const std::string name(s_.substr(pos_, end - pos_));
    const auto& vars = zero_.vars();
    const auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) fail("unknown variable '" + name + "'");
    pos_ = end;
    Exponents e(vars.size(), 0);
    uint64_t power = 1;
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      power = number();
    }
    e[static_cast<size_t>(it - vars.begin())] = static_cast<uint32_t>(power);
    MultiPoly r = zero_;
    r.add_term(e, 1);
    return r;
  }

  MultiPoly term() {
    MultiPoly t = factor();
    skip();
    while (pos_ < s_.size() && s_[pos_] == '*') {
      ++pos_;
      t = t * factor();
      skip();
    }
    return t;
  }

  std::string_view s_;
  const MultiPoly& zero_;
  size_t pos_ = 0;
};

}  // namespace

bool grlex_less(const Exponents& a, const Exponents& b) {
  const uint64_t da = degree_of(a), db = degree_of(b);
  if (da != db) return da < db;
  return a < b;
}

MultiPoly::MultiPoly(const Field* f, std::vector<std::string> vars) : field_(f), vars_(std::move(vars)) {}

MultiPoly MultiPoly::constant(const Field* f, std::vector<std::string> vars, Elem c) {
  MultiPoly r(f, std::move(vars));
  r.add_term(Exponents(r.vars_.size(), 0), c);
  return r;
}

MultiPoly MultiPoly::variable(const Field* f, std::vector<std::string> vars, size_t index) {
  MultiPoly r(f, std::move(vars));
  if (index >= r.vars_.size()) throw ArityError("variable index out of range");
  Exponents e(r.vars_.size(), 0);
  e[index] = 1;
  r.add_term(e, 1);
  return r;
}

MultiPoly MultiPoly::parse(const Field* f, std::vector<std::string> vars, std::string_view text) {
  const MultiPoly zero(f, std::move(vars));
  return Parser(text, zero).run();
}

uint64_t MultiPoly::total_degree() const {
  uint64_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, degree_of(e));
  return d;
}

void MultiPoly::add_term(const Exponents& e, Elem c) {
  if (e.size() != vars_.size()) throw ArityError("exponent vector length does not match variables");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (inserted) return;
  it->second = field_->add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
  if (field_ != o.field_) throw ff::FieldError("polynomials over different fields");
  if (vars_ != o.vars_) throw ArityError("polynomials over different variable lists");
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, c] : r.terms_) c = field_->neg(c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r(field_, vars_);
  Exponents e(vars_.size());
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, field_->mul(ca, cb));
    }
  }
  return r;
}

MultiPoly MultiPoly::scale(Elem c) const {
  MultiPoly r(field_, vars_);
  for (const auto& [e, v] : terms_) r.add_term(e, field_->mul(v, c));
  return r;
}

MultiPoly MultiPoly::pow(uint64_t e) const {
  MultiPoly acc = constant(field_, vars_, 1);
  const uint64_t p = field_->p();
  uint64_t place = 1;
  for (unsigned k = 0; e > 0; ++k, e /= p, place *= p) {
    const uint64_t d = e % p;
    if (d == 0) continue;
    MultiPoly digit = *this;
    for (uint64_t i = 1; i < d; ++i) digit = digit * *this;
    MultiPoly spread(field_, vars_);
    for (const auto& [ex, c] : digit.terms_) {
      Exponents scaled(ex);
      for (auto& v : scaled) v = static_cast<uint32_t>(v * place);
      spread.add_term(scaled, field_->frobenius(c, k));
    }
    acc = acc * spread;
  }
  return acc;
}

MultiPoly MultiPoly::derivative(size_t index) const {
  if (index >= vars_.size()) throw ArityError("variable index out of range");
  MultiPoly r(field_, vars_);
  for (const auto& [e, c] : terms_) {
    if (e[index] == 0) continue;
    Exponents d = e;
    d[index] -= 1;
    r.add_term(d, field_->mul(c, field_->from_int(e[index] % field_->p())));
  }
  return r;
}

Elem MultiPoly::lift_coeff(Elem c, const Field* target) const {
  if (target == field_) return c;
  if (field_->is_prime_field() && target->p() == field_->p()) return c;
  throw ff::FieldError("coefficients of " + field_->name() + " do not map canonically into " + target->name());
}

Felt MultiPoly::eval(const std::vector<Felt>& point) const {
  if (point.size() != vars_.size()) throw ArityError("point has " + std::to_string(point.size()) +
                                                     " coordinates, expected " + std::to_string(vars_.size()));
  const Field* k = point.empty() ? field_ : point.front().field();
  Elem acc = 0;
  for (const auto& [e, c] : terms_) {
    Elem t = lift_coeff(c, k);
    for (size_t i = 0; i < e.size() && t != 0; ++i) {
      if (e[i]) t = k->mul(t, k->pow(point[i].value(), e[i]));
    }
    acc = k->add(acc, t);
  }
  return {k, acc};
}

Felt MultiPoly::eval(const std::vector<Felt>& point, const ff::FieldEmbedding& coeff_map) const {
  if (coeff_map.source().get() != field_) throw ff::FieldError("embedding source is not the coefficient field");
  if (point.size() != vars_.size()) throw ArityError("point arity mismatch");
  const Field* k = coeff_map.target().get();
  Elem acc = 0;
  for (const auto& [e, c] : terms_) {
    Elem t = coeff_map(c);
    for (size_t i = 0; i < e.size() && t != 0; ++i) {
      if (e[i]) t = k->mul(t, k->pow(point[i].value(), e[i]));
    }
    acc = k->add(acc, t);
  }
  return {k, acc};
}

Series MultiPoly::eval(const std::vector<Series>& point) const {
  if (point.size() != vars_.size()) throw ArityError("point arity mismatch");
  const Field* k = point.empty() ? field_ : point.front().field();
  std::vector<std::unordered_map<uint32_t, Series>> cache(point.size());
  auto power = [&](size_t i, uint32_t e) -> const Series& {
    auto it = cache[i].find(e);
    if (it == cache[i].end()) it = cache[i].emplace(e, point[i].pow(e)).first;
    return it->second;
  };
  Series acc = Series::zero(k);
  for (const auto& [e, c] : terms_) {
    Series t = Series::constant(k, lift_coeff(c, k));
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i]) t = t * power(i, e[i]);
    }
    acc = acc + t;
  }
  return acc;
}

std::string MultiPoly::str() const {
  std::vector<std::pair<Exponents, Elem>> ordered(terms_.begin(), terms_.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return grlex_less(b.first, a.first); });
  if (ordered.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : ordered) {
    const bool is_minus_one = field_->is_prime_field() && c == field_->neg(1) && field_->p() > 2;
    if (!first) os << (is_minus_one ? " - " : " + ");
    else if (is_minus_one) os << '-';
    first = false;
    const bool constant_term = degree_of(e) == 0;
    const bool unit = c == 1 || is_minus_one;
    bool wrote = false;
    if (!unit || constant_term) {
      os << (is_minus_one ? std::string("1") : field_->format(c));
      wrote = true;
    }
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << '*';
      os << vars_[i];
      if (e[i] > 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace galoispts::algebra
