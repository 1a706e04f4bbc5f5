#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galoispts/poly.h"
#include "galoispts/series.h"

namespace galoispts::algebra {

/// A rational function built from polynomials by field operations.
///
/// Kept as an expression DAG so that quotients such as
/// w8^q / (w6^q - w8^(q-1) w6) are never expanded into single polynomials.
class Function {
 public:
  Function() = default;

  static Function poly(MultiPoly p, std::string label = {});
  /// Constants are read in the evaluation field, so only prime-field values
  /// are meaningful across fields.
  static Function constant(const Field* f, Elem c);

  Function operator+(const Function& o) const;
  Function operator-(const Function& o) const;
  Function operator-() const;
  Function operator*(const Function& o) const;
  Function operator/(const Function& o) const;
  Function pow(int64_t e) const;
  /// g^q - g for q a power of p (with sign kPlus: g^q + g).
  Function artin_schreier(uint64_t q, ff::Sign sign) const;

  /// Value at a point; nullopt when a denominator vanishes there.
  std::optional<Felt> value_at(const std::vector<Felt>& point) const;
  /// Expansion given the coordinate expansions at a point.
  Series series_at(const std::vector<Series>& coords) const;

  std::string str() const;
  bool valid() const { return static_cast<bool>(node_); }

  struct Node;

 private:
  explicit Function(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace galoispts::algebra
