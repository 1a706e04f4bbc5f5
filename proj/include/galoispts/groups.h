#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "galoispts/check.h"
#include "galoispts/curves.h"

namespace galoispts::groups {

using curves::Curve;
using curves::CurvePoint;
using ff::Elem;
using ff::Felt;

/// Closure exceeded its element bound.
class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Square matrix over a finite field, row-major.
struct Matrix {
  const ff::Field* field = nullptr;
  size_t n = 0;
  std::vector<Elem> a;

  static Matrix identity(const ff::Field* f, size_t n);
  Elem at(size_t r, size_t c) const { return a[r * n + c]; }
  Elem& at(size_t r, size_t c) { return a[r * n + c]; }

  Matrix operator*(const Matrix& o) const;
  /// Throws std::domain_error when singular.
  Matrix inverse() const;
  /// Scaled so the first nonzero entry in row-major order is 1.
  Matrix normalized() const;
  bool is_scalar() const;
  /// M v with entries lifted into the field of v.
  std::vector<Felt> apply(const std::vector<Felt>& v) const;
  bool operator==(const Matrix& o) const { return n == o.n && a == o.a; }
  bool operator<(const Matrix& o) const { return a < o.a; }
  nlohmann::json to_json() const;
};

/// A projective matrix acting on the curve, or the conjugate psi M psi of one.
struct Automorphism {
  Matrix inner;  // normalized
  bool conjugated = false;
  std::vector<Felt> params;  // construction parameters when known

  /// Composition (this after o). Both must have the same form.
  Automorphism operator*(const Automorphism& o) const;
  Automorphism inverse() const;
  bool is_identity() const { return inner.is_scalar(); }
  /// Key for duplicate detection: the normalized inner matrix plus the form flag.
  std::vector<Elem> key() const;
  nlohmann::json to_json() const;
};

struct AutomorphismGroup {
  std::string label;
  std::vector<Automorphism> elements;  // identity first
  std::vector<Automorphism> generators;
  size_t order() const { return elements.size(); }
  bool contains(const Automorphism& g) const;
  nlohmann::json to_json() const;

  void index();  // rebuilds the key lookup after elements change

 private:
  std::set<std::vector<Elem>> keys_;
};

/// The involution (x, y) -> (y/h, x/h) of the Suzuki curve, or
/// (x, y1, y2) -> (w6/w8, w10/w8, w9/w8) of the Ree curve, with P1 <-> P2.
class Psi {
 public:
  explicit Psi(const Curve& c);
  /// Throws curves::PreconditionError where the denominator vanishes off P2.
  CurvePoint operator()(const CurvePoint& p) const;

 private:
  const Curve* curve_;
  mutable std::unordered_map<CurvePoint, CurvePoint, curves::CurvePointHash> cache_;
};

/// Acts by column vectors (x, y, 1) (plane families) or (x, y1, y2, 1) (Ree);
/// P1 is (1:0:0), respectively (0:0:1:0). Conjugated elements need `psi`.
/// Throws std::logic_error when the image leaves the curve.
CurvePoint act(const Curve& c, const Automorphism& g, const CurvePoint& p, const Psi* psi = nullptr);

AutomorphismGroup build_g1(const Curve& c);
/// Hermitian: the lower-triangular family with d^q + d = c^(q+1). Suzuki and
/// Ree: conjugates psi sigma psi of the elements of g1.
AutomorphismGroup build_g2(const Curve& c, const AutomorphismGroup& g1);

/// Identity, inverses and closure: the full product table when the order is
/// at most 10^4, otherwise generators times elements. For groups of
/// conjugates, the inner matrices are checked and psi is checked to be an
/// involution on `points`.
CheckResult verify_group(const Curve& c, const AutomorphismGroup& g, const std::vector<CurvePoint>& points,
                         const Psi* psi = nullptr);

std::set<CurvePoint> orbit(const Curve& c, const AutomorphismGroup& g, const CurvePoint& p, const Psi* psi = nullptr);

/// Elements of both groups that act identically on `points`; trivial when
/// only the identity is shared.
std::vector<std::pair<size_t, size_t>> common_elements(const Curve& c, const AutomorphismGroup& a,
                                                       const AutomorphismGroup& b,
                                                       const std::vector<CurvePoint>& points, const Psi* psi = nullptr);
bool intersect_trivial(const Curve& c, const AutomorphismGroup& a, const AutomorphismGroup& b,
                       const std::vector<CurvePoint>& points, const Psi* psi = nullptr);

/// Breadth-first closure of unconjugated generators (Hermitian only).
AutomorphismGroup generate(const Curve& c, const std::vector<Automorphism>& gens, size_t bound,
                           std::string label = "generated");

struct SylowConjugate {
  std::vector<Automorphism> elements;
  std::vector<CurvePoint> fixed_points;
};

/// The distinct conjugates g S g^-1 (g in `g`) of `sylow`, each with the
/// points of `points` it fixes. Conjugates are listed in order of first
/// discovery.
std::vector<SylowConjugate> sylow_fixed_points(const Curve& c, const AutomorphismGroup& g,
                                               const AutomorphismGroup& sylow, const std::vector<CurvePoint>& points);

}  // namespace galoispts::groups
