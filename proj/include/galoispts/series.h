#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "galoispts/ff.h"

namespace galoispts::algebra {

using ff::Elem;
using ff::Felt;
using ff::Field;

/// Raised when a computation needs more terms than a truncated series carries.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncated Laurent series  u^offset * (c_0 + c_1 u + ... + c_{N-1} u^{N-1}) + O(u^{offset+N}).
///
/// N is the relative precision. Exact series (constants, polynomials in u)
/// carry N = kExact. Results are kept normalized: either c_0 != 0, or the
/// series is zero to absolute order offset (and stores no coefficients).
class Series {
 public:
  static constexpr int64_t kExact = int64_t{1} << 40;

  Series() = default;

  static Series zero(const Field* f);
  static Series constant(const Field* f, Elem c);
  static Series constant(const Felt& c) { return constant(c.field(), c.value()); }
  /// Exact c * u^e.
  static Series monomial(const Field* f, Elem c, int64_t e);
  /// The local parameter u itself, known to absolute order `abs_prec`.
  static Series parameter(const Field* f, int64_t abs_prec);
  /// Exact polynomial sum c_i u^i.
  static Series polynomial(const Field* f, const std::vector<Elem>& coeffs);
  /// Coefficients of u^0 .. u^{abs_prec-1} known exactly, O(u^abs_prec) beyond.
  static Series truncated(const Field* f, const std::vector<Elem>& coeffs, int64_t abs_prec);

  const Field* field() const { return field_; }
  bool is_exact() const { return rel_prec_ >= kExact; }
  /// True when every known coefficient vanishes.
  bool is_zero() const { return coeffs_.empty(); }
  /// Absolute precision: the series is known modulo u^abs_precision().
  int64_t abs_precision() const { return is_exact() ? kExact : offset_ + rel_prec_; }
  int64_t rel_precision() const { return rel_prec_; }
  /// Order of vanishing; throws PrecisionError if the series is zero to its precision
  /// (exact zero has no finite order either).
  int64_t valuation() const;
  Elem leading() const;
  /// Coefficient of u^k; throws PrecisionError if k is beyond the known range.
  Elem coeff(int64_t k) const;

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator-() const;
  Series operator*(const Series& o) const;
  Series operator/(const Series& o) const { return *this * o.inv(); }
  Series inv() const;
  Series pow(int64_t e) const;
  /// Raise to p^k: coefficients are Frobenius-twisted and spread out.
  Series frobenius_power(unsigned k) const;
  Series scale(Elem c) const;
  /// Keep only terms below absolute order `abs_prec`.
  Series truncate(int64_t abs_prec) const;

  std::string str(const std::string& var = "u") const;

 private:
  Series(const Field* f, int64_t offset, std::vector<Elem> c, int64_t rel_prec);
  void normalize();

  const Field* field_ = nullptr;
  int64_t offset_ = 0;
  std::vector<Elem> coeffs_;
  int64_t rel_prec_ = kExact;
};

}  // namespace galoispts::algebra
