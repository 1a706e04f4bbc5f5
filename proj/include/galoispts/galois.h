#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "galoispts/check.h"
#include "galoispts/curves.h"
#include "galoispts/function.h"
#include "galoispts/groups.h"
#include "galoispts/linalg.h"
#include "galoispts/local.h"

namespace galoispts::galois {

using algebra::Function;
using algebra::Series;
using algebra::TruncationPolicy;
using curves::Curve;
using curves::CurvePoint;
using ff::Felt;

/// Point of the projective plane, scaled so its last nonzero coordinate is 1.
struct ProjPoint {
  std::array<Felt, 3> c;

  static ProjPoint make(Felt x, Felt y, Felt z);
  bool on_line_at_infinity() const { return c[2].is_zero(); }
  bool operator==(const ProjPoint& o) const { return c == o.c; }
  bool operator<(const ProjPoint& o) const;
  std::string str() const;
  nlohmann::json to_json() const;
};

/// The morphism (f : g : 1) with f = 1/t1, and the two quotient functions.
struct MorphismSpec {
  const Curve* curve = nullptr;
  Function t1, t2, f, g;
};

MorphismSpec build_morphism(const Curve& c);

/// t1 o sigma = t1 on `points` for every sigma in G1, and t2 likewise for G2.
CheckResult check_invariance(const MorphismSpec& m, const groups::AutomorphismGroup& g1,
                             const groups::AutomorphismGroup& g2, const std::vector<CurvePoint>& points,
                             const groups::Psi* psi);

/// Coordinate expansions at a point. Affine points of every family use the
/// family's local parameter; the Hermitian P1 goes through the chart X = 1.
/// Throws curves::PreconditionError at the Suzuki and Ree P1.
algebra::Expander expander_at(const Curve& c, const CurvePoint& p);

/// A value in the projective line.
struct LineValue {
  bool infinite = false;
  Felt value;
  bool operator==(const LineValue& o) const { return infinite == o.infinite && (infinite || value == o.value); }
  bool operator<(const LineValue& o) const;
  std::string str() const;
};

/// t1 (which = 1) or t2 (which = 2) at a point: t1(P1) = infinity and
/// t2(P1) = 0; elsewhere the function value, or its series limit where a
/// denominator vanishes.
LineValue quotient_value(const MorphismSpec& m, int which, const CurvePoint& p, const TruncationPolicy& policy);

/// Closed-form image of a rational point of the base field.
ProjPoint image_of(const MorphismSpec& m, const CurvePoint& p);
/// Normalized leading vector of the branch (f, g, 1) at `p`.
ProjPoint image_via_series(const MorphismSpec& m, const CurvePoint& p, const TruncationPolicy& policy);

enum class FiberClass { kGalois, kSingular, kTangential, kUnramified };
std::string to_string(FiberClass k);

struct Fiber {
  ProjPoint image;
  std::vector<CurvePoint> preimages;
  FiberClass klass = FiberClass::kSingular;
  std::optional<int64_t> ramification;  // singleton fibers off P1, P2
};

struct FiberCensus {
  std::vector<Fiber> fibers;  // canonical image order
  size_t singular = 0, tangential = 0, galois = 0, unramified = 0;
  size_t points = 0;
  bool all_on_line = true;
  nlohmann::json to_json() const;
};

/// Vanishing order at `p` of the projection from `center` composed with the
/// morphism, minus its value at `p`.
int64_t ramification_at(const MorphismSpec& m, const CurvePoint& p, const ProjPoint& center,
                        const TruncationPolicy& policy);

FiberCensus fiber_census(const MorphismSpec& m, const TruncationPolicy& policy);

/// Order at `p` of the pull-back of the tangent line of the image branch.
int64_t tangent_pullback_order(const MorphismSpec& m, const CurvePoint& p, const TruncationPolicy& policy);

struct GaloisCertificate {
  std::string group;
  int quotient = 1;
  unsigned m = 1;
  std::string field;
  size_t points = 0;
  size_t fibers = 0;
  size_t non_orbit_fibers = 0;
  size_t generic_fiber_size = 0;
  size_t group_order = 0;
  bool granted = false;
  nlohmann::json to_json() const;
};

/// Groups the points over the degree-m extension of the base field by the
/// value of the quotient function and checks that each fiber is one orbit.
GaloisCertificate galois_certificate(const MorphismSpec& m, const groups::AutomorphismGroup& g, int which,
                                     unsigned ext, const TruncationPolicy& policy, const groups::Psi* psi);

struct DegreeResult {
  unsigned degree = 0;
  std::string field;
  size_t samples = 0;
  size_t relation_terms = 0;
  uint64_t relation_checksum = 0;
  std::vector<unsigned> tested;
  bool below_has_relation = false;
};

/// Distinct (f, g) values at the points over the degree-m extension where both
/// are finite, evenly spaced through the canonical point order.
std::vector<std::pair<ff::Elem, ff::Elem>> image_samples(const MorphismSpec& m, unsigned ext, size_t count,
                                                         const ff::Field** field_out);

/// Smallest degree <= dmax of a relation between f and g, by interpolation.
/// Throws algebra::InsufficientSamples or std::runtime_error when no relation exists.
DegreeResult image_degree(const MorphismSpec& m, unsigned ext, unsigned dmax, const algebra::ImplicitizeOptions& opt = {});

struct UniquenessResult {
  std::vector<CurvePoint> candidates;  // singleton fibers
  std::vector<CurvePoint> survivors;
  std::map<CurvePoint, int64_t> pullback_orders;
  bool audited = false;
  size_t sylow_conjugates = 0;
  size_t conjugates_with_one_fixed_point = 0;
  size_t generated_order = 0;
};

/// Keeps the points whose image has a singleton fiber. With `sylow`, each
/// candidate must also be the fixed point of some conjugate of G1 in the
/// generated group; the pull-back order must reach q^3 in both cases.
UniquenessResult uniqueness_filter(const MorphismSpec& m, const FiberCensus& census,
                                   const std::vector<groups::SylowConjugate>* sylow, size_t generated_order,
                                   const TruncationPolicy& policy);

}  // namespace galoispts::galois
