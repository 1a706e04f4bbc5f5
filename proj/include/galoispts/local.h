#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "galoispts/function.h"
#include "galoispts/poly.h"
#include "galoispts/series.h"

namespace galoispts::algebra {

/// The chosen coordinate is not a local parameter at the point, or the point
/// is not on the equations.
class LiftingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Expands every coordinate along the branch through `point` of the curve cut
/// out by `equations` (one fewer equation than variables). The coordinate at
/// index `param` is point[param] + u; the others are solved for by Newton
/// iteration with the Jacobian frozen at the point, which gains at least one
/// correct coefficient per step.
std::vector<Series> lift_branch(const std::vector<MultiPoly>& equations, const std::vector<Felt>& point,
                                size_t param, int64_t order);

/// Coordinate expansions at a fixed point, for a requested absolute order.
using Expander = std::function<std::vector<Series>(int64_t order)>;

struct TruncationPolicy {
  int64_t start = 8;
  int doublings = 4;

  /// Start at max(8, 2q+2).
  static TruncationPolicy for_q(uint64_t q) {
    return {std::max<int64_t>(8, 2 * static_cast<int64_t>(q) + 2), 4};
  }
  int64_t max_order() const { return start << doublings; }
};

/// Calls `attempt(order)` at the policy's orders until it stops raising
/// PrecisionError; rethrows after the last doubling.
template <typename F>
auto with_adaptive_order(const TruncationPolicy& policy, F&& attempt) -> decltype(attempt(int64_t{})) {
  int64_t order = policy.start;
  for (int i = 0;; ++i, order *= 2) {
    try {
      return attempt(order);
    } catch (const PrecisionError& e) {
      if (i >= policy.doublings) {
        throw PrecisionError("unresolved at series order " + std::to_string(order) + ": " + e.what());
      }
    }
  }
}

/// Valuation of `fn` at the point whose coordinates `expand` produces.
int64_t vanishing_order(const Function& fn, const Expander& expand, const TruncationPolicy& policy);

enum class LimitKind { kFinite, kZero, kInfinite };

/// Value of a quotient at the point: finite and nonzero, or one of the two
/// projective ends when the orders differ.
struct Limit {
  LimitKind kind = LimitKind::kFinite;
  Felt value;  // meaningful for kFinite
  std::string str() const;
};

Limit ratio_limit(const Series& num, const Series& den);

}  // namespace galoispts::algebra
