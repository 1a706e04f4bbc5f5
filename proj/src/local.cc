#include "galoispts/local.h"

namespace galoispts::algebra {

namespace {

// Inverse of a small square matrix by Gauss-Jordan; empty result when singular.
std::vector<std::vector<Elem>> invert(const Field* f, std::vector<std::vector<Elem>> m) {
  const size_t n = m.size();
  std::vector<std::vector<Elem>> inv(n, std::vector<Elem>(n, 0));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t r = c;
    while (r < n && m[r][c] == 0) ++r;
    if (r == n) return {};
    std::swap(m[r], m[c]);
    std::swap(inv[r], inv[c]);
    const Elem s = f->inv(m[c][c]);
    for (size_t j = 0; j < n; ++j) {
      m[c][j] = f->mul(m[c][j], s);
      inv[c][j] = f->mul(inv[c][j], s);
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      const Elem k = f->neg(m[i][c]);
      for (size_t j = 0; j < n; ++j) {
        m[i][j] = f->add(m[i][j], f->mul(k, m[c][j]));
        inv[i][j] = f->add(inv[i][j], f->mul(k, inv[c][j]));
      }
    }
  }
  return inv;
}

}  // namespace

std::vector<Series> lift_branch(const std::vector<MultiPoly>& equations, const std::vector<Felt>& point,
                                size_t param, int64_t order) {
  const size_t n = point.size();
  if (n == 0 || param >= n) throw LiftingError("parameter index out of range");
  if (equations.size() + 1 != n) throw LiftingError("need exactly one equation fewer than variables");
  const Field* k = point.front().field();

  for (const auto& eq : equations) {
    if (!eq.eval(point).is_zero()) throw LiftingError("point is not on the curve");
  }

  std::vector<size_t> unknowns;
  for (size_t i = 0; i < n; ++i) {
    if (i != param) unknowns.push_back(i);
  }
  std::vector<std::vector<Elem>> jac(equations.size(), std::vector<Elem>(unknowns.size()));
  for (size_t r = 0; r < equations.size(); ++r) {
    for (size_t c = 0; c < unknowns.size(); ++c) jac[r][c] = equations[r].derivative(unknowns[c]).eval(point).value();
  }
  const auto jinv = invert(k, jac);
  if (jinv.empty() && !unknowns.empty()) {
    throw LiftingError("Jacobian is singular: the chosen coordinate is not a local parameter here");
  }

  std::vector<Series> y(n);
  for (size_t i = 0; i < n; ++i) y[i] = Series::constant(k, point[i].value());
  y[param] = y[param] + Series::parameter(k, order);

  int64_t reached = 0;
  for (int64_t iter = 0; iter <= order + 1; ++iter) {
    std::vector<Series> res;
    int64_t low = order;
    for (const auto& eq : equations) {
      res.push_back(eq.eval(y).truncate(order));
      const Series& r = res.back();
      if (!r.is_zero()) low = std::min(low, r.valuation());
    }
    if (low >= order) return y;
    if (low <= reached) throw LiftingError("lifting stalled at order " + std::to_string(low));
    reached = low;
    for (size_t a = 0; a < unknowns.size(); ++a) {
      Series step = Series::zero(k);
      for (size_t b = 0; b < res.size(); ++b) step = step + res[b].scale(jinv[a][b]);
      y[unknowns[a]] = (y[unknowns[a]] - step).truncate(order);
    }
  }
  throw LiftingError("lifting did not converge");
}

int64_t vanishing_order(const Function& fn, const Expander& expand, const TruncationPolicy& policy) {
  return with_adaptive_order(policy, [&](int64_t order) { return fn.series_at(expand(order)).valuation(); });
}

std::string Limit::str() const {
  switch (kind) {
    case LimitKind::kZero: return "0";
    case LimitKind::kInfinite: return "inf";
    case LimitKind::kFinite: return value.str();
  }
  return "?";
}

Limit ratio_limit(const Series& num, const Series& den) {
  const int64_t a = num.valuation();
  const int64_t b = den.valuation();
  if (a > b) return {LimitKind::kZero, Felt(num.field(), 0)};
  if (a < b) return {LimitKind::kInfinite, Felt(num.field(), 0)};
  const Field* f = num.field();
  return {LimitKind::kFinite, Felt(f, f->div(num.leading(), den.leading()))};
}

}  // namespace galoispts::algebra
