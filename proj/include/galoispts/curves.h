#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "galoispts/check.h"
#include "galoispts/ff.h"
#include "galoispts/poly.h"

namespace galoispts::curves {

using algebra::MultiPoly;
using ff::Elem;
using ff::Felt;
using ff::FieldPtr;

enum class Family { kHermitian, kSuzuki, kRee };

std::string to_string(Family f);
std::optional<Family> parse_family(const std::string& name);

/// Illegal family parameter.
class CurveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Missing, malformed or invalid auxiliary-function table.
class WTableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An auxiliary function evaluated where the image rules need it to be nonzero.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A rational point of the smooth model: the point over infinity, or an affine
/// point given by its coordinates.
struct CurvePoint {
  bool at_infinity = false;
  std::vector<Felt> coords;

  static CurvePoint infinity() { return {true, {}}; }
  static CurvePoint affine(std::vector<Felt> c) { return {false, std::move(c)}; }

  const ff::Field* field() const { return coords.empty() ? nullptr : coords.front().field(); }
  bool is_origin() const;
  bool operator==(const CurvePoint& o) const;
  bool operator!=(const CurvePoint& o) const { return !(*this == o); }
  /// Canonical order: infinity first, then lexicographic on element encodings.
  bool operator<(const CurvePoint& o) const;
  std::string str() const;
};

struct CurvePointHash {
  size_t operator()(const CurvePoint& p) const;
};

struct WTable {
  int version = 0;
  unsigned q0 = 0;
  std::map<std::string, MultiPoly> polys;
  uint64_t checksum = 0;
};

/// FNV-1a 64-bit hash.
uint64_t fnv1a(const std::string& bytes);

/// Parses the `name: polynomial` table format over F_3 in variables x, y1, y2.
WTable parse_wtable(const std::string& text);
WTable load_wtable(const std::string& path);
/// The table shipped with the sources.
std::string default_wtable_path();

struct CurveOptions {
  std::string wtable_path;  // empty: the shipped table
};

/// One of the three families with its equations and auxiliary functions.
class Curve {
 public:
  Family family() const { return family_; }
  uint32_t p() const { return p_; }
  uint64_t q() const { return q_; }
  uint64_t q0() const { return q0_; }
  const FieldPtr& base_field() const { return base_; }
  /// Number of affine coordinates.
  size_t dimension() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  /// Affine equations in vars(); all coefficients lie in F_p.
  const std::vector<MultiPoly>& equations() const { return equations_; }
  /// Hermitian only: X^q Z + X Z^q - Y^(q+1).
  const std::optional<MultiPoly>& projective_equation() const { return projective_; }
  /// Hermitian only: the chart X = 1 in coordinates (y', z') = (Y/X, Z/X).
  const std::vector<MultiPoly>& chart_equations() const { return chart_; }
  /// Index of the coordinate whose shift is a local parameter at affine points.
  size_t parameter_index() const { return family_ == Family::kRee ? 0 : 1; }

  bool has_aux(const std::string& name) const { return aux_.count(name) != 0; }
  const MultiPoly& aux(const std::string& name) const;
  std::vector<std::string> aux_names() const;
  std::optional<uint64_t> wtable_checksum() const { return wtable_checksum_; }

  CurvePoint p1() const { return CurvePoint::infinity(); }
  CurvePoint p2() const;
  std::string label() const;

 private:
  friend Curve make_curve(Family, uint64_t, const CurveOptions&);
  Curve() = default;

  Family family_ = Family::kHermitian;
  uint32_t p_ = 0;
  uint64_t q_ = 0, q0_ = 0;
  FieldPtr base_;
  std::vector<std::string> vars_;
  std::vector<MultiPoly> equations_;
  std::optional<MultiPoly> projective_;
  std::vector<MultiPoly> chart_;
  std::map<std::string, MultiPoly> aux_;
  std::optional<uint64_t> wtable_checksum_;
};

/// Hermitian takes q (>= 3, a prime power); Suzuki and Ree take q0. Ree
/// construction loads the w-table and refuses it unless the derivative
/// identity holds at every affine point and the three special-value families
/// match.
Curve make_curve(Family family, uint64_t parameter, const CurveOptions& opt = {});

/// Result of the Ree table gate, exposed so reports can show the counts.
struct WTableGate {
  bool identity_ok = true;
  size_t identity_points = 0;
  size_t identity_failures = 0;
  bool special_values_ok = true;
  size_t special_failures = 0;
  std::string first_failure;
  bool ok() const { return identity_ok && special_values_ok; }
};
WTableGate validate_wtable(const std::map<std::string, MultiPoly>& w, const FieldPtr& base, uint64_t q0);

bool contains(const Curve& c, const CurvePoint& p);

/// All smooth-model points over `field`: the point over infinity, then the
/// affine solutions in canonical order.
std::vector<CurvePoint> enumerate_points(const Curve& c, const FieldPtr& field);

/// True when every coordinate lies in the subfield with `sub_size` elements.
bool defined_over(const CurvePoint& p, uint64_t sub_size);

/// `count` affine points over the smallest extension of the base field (of
/// degree >= 2, at most `max_field_size` elements) that has that many points
/// not defined over the base field. Empty when no such extension exists.
std::vector<CurvePoint> extension_sample(const Curve& c, size_t count, uint64_t max_field_size = uint64_t{1} << 16);

Felt auxiliary_value(const Curve& c, const std::string& name, const CurvePoint& p);

/// The family's on-curve polynomial identities at every rational point and at
/// extension points. Hermitian: the quotient factorization through u = y - b,
/// v = y/x - b/a, and the projection display at the tangential points. Suzuki:
/// the two relations between x and h. Ree: the w-table derivative identity,
/// with branch expansions standing in for extension points (see README).
CheckResult check_identities(const Curve& c);

/// CSV with header tag,x,y[,y2]; elements as coefficient tuples.
std::string points_csv(const Curve& c, const std::vector<CurvePoint>& pts);

}  // namespace galoispts::curves
