#include "galoispts/linalg.h"

#include <algorithm>
#include <string>

namespace galoispts::algebra {

std::vector<Elem> LinearSystem::apply(const std::vector<Elem>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length does not match column count");
  std::vector<Elem> out(rows_, 0);
  for (size_t r = 0; r < rows_; ++r) {
    Elem acc = 0;
    for (size_t c = 0; c < cols_; ++c) acc = field_->add(acc, field_->mul(at(r, c), v[c]));
    out[r] = acc;
  }
  return out;
}

std::vector<size_t> LinearSystem::echelonize() {
  const Field* f = field_;
  const uint32_t order = f->size() - 1;
  std::vector<size_t> pivots;
  std::vector<uint32_t> plog(cols_);
  size_t row = 0;
  for (size_t c = 0; c < cols_ && row < rows_; ++c) {
    size_t r = row;
    while (r < rows_ && at(r, c) == 0) ++r;
    if (r == rows_) continue;
    if (r != row) {
      std::swap_ranges(a_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                       a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_),
                       a_.begin() + static_cast<std::ptrdiff_t>(row * cols_));
    }
    const Elem s = f->inv(at(row, c));
    for (size_t j = c; j < cols_; ++j) at(row, j) = f->mul(at(row, j), s);
    for (size_t j = c; j < cols_; ++j) plog[j] = at(row, j) ? f->log(at(row, j)) : order;
    for (size_t i = row + 1; i < rows_; ++i) {
      const Elem lead = at(i, c);
      if (lead == 0) continue;
      const uint32_t kl = f->log(f->neg(lead));
      Elem* dst = &a_[i * cols_];
      for (size_t j = c; j < cols_; ++j) {
        if (plog[j] == order) continue;
        uint32_t e = plog[j] + kl;
        if (e >= order) e -= order;
        dst[j] = f->add(dst[j], f->exp_reduced(e));
      }
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

size_t LinearSystem::rank() const {
  LinearSystem copy = *this;
  return copy.echelonize().size();
}

std::vector<std::vector<Elem>> nullspace(const LinearSystem& sys) {
  LinearSystem m = sys;
  const auto pivots = m.echelonize();
  const Field* f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Elem>> basis;
  for (size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(m.cols(), 0);
    v[free] = 1;
    // Back substitution through the unit-diagonal echelon rows.
    for (size_t k = pivots.size(); k-- > 0;) {
      const size_t pc = pivots[k];
      if (pc > free) continue;
      Elem acc = 0;
      for (size_t j = pc + 1; j < m.cols(); ++j) {
        if (v[j] != 0 && m.at(k, j) != 0) acc = f->add(acc, f->mul(m.at(k, j), v[j]));
      }
      v[pc] = f->neg(acc);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Exponents> graded_lex_monomials(unsigned degree) {
  std::vector<Exponents> out;
  for (unsigned d = 0; d <= degree; ++d) {
    for (unsigned i = 0; i <= d; ++i) out.push_back({i, d - i});
  }
  return out;
}

size_t samples_needed(unsigned degree, const ImplicitizeOptions& opt) {
  const size_t monomials = static_cast<size_t>(degree + 1) * (degree + 2) / 2;
  return monomials + opt.margin + opt.holdout;
}

namespace {

std::vector<Elem> monomial_row(const Field* f, const std::vector<Exponents>& monos, unsigned degree,
                               const std::pair<Elem, Elem>& st) {
  std::vector<Elem> sp(degree + 1, 1), tp(degree + 1, 1);
  for (unsigned i = 1; i <= degree; ++i) {
    sp[i] = f->mul(sp[i - 1], st.first);
    tp[i] = f->mul(tp[i - 1], st.second);
  }
  std::vector<Elem> row(monos.size());
  for (size_t c = 0; c < monos.size(); ++c) row[c] = f->mul(sp[monos[c][0]], tp[monos[c][1]]);
  return row;
}

}  // namespace

std::optional<unsigned> minimal_relation_degree(const Field* f, const std::vector<std::pair<Elem, Elem>>& samples,
                                                unsigned max_degree, const ImplicitizeOptions& opt) {
  const auto monos = graded_lex_monomials(max_degree);
  const size_t fit = monos.size() + opt.margin;
  if (samples.size() < fit) {
    throw InsufficientSamples("degree " + std::to_string(max_degree) + " needs " + std::to_string(fit) +
                              " samples, got " + std::to_string(samples.size()));
  }
  LinearSystem sys(f, fit, monos.size());
  for (size_t r = 0; r < fit; ++r) {
    const auto row = monomial_row(f, monos, max_degree, samples[r]);
    std::copy(row.begin(), row.end(), sys.a_.begin() + static_cast<std::ptrdiff_t>(r * monos.size()));
  }
  const auto pivots = sys.echelonize();
  for (size_t c = 0; c < monos.size(); ++c) {
    if (c >= pivots.size() || pivots[c] != c) return monos[c][0] + monos[c][1];
  }
  return std::nullopt;
}

std::optional<MultiPoly> implicitize(const Field* f, const std::vector<std::pair<Elem, Elem>>& samples,
                                     unsigned degree, const ImplicitizeOptions& opt) {
  const auto monos = graded_lex_monomials(degree);
  const size_t fit = monos.size() + opt.margin;
  if (samples.size() < fit + opt.holdout) {
    throw InsufficientSamples("degree " + std::to_string(degree) + " needs " + std::to_string(fit + opt.holdout) +
                              " samples, got " + std::to_string(samples.size()));
  }
  auto row_values = [&](const std::pair<Elem, Elem>& st) { return monomial_row(f, monos, degree, st); };
  LinearSystem sys(f, fit, monos.size());
  for (size_t r = 0; r < fit; ++r) {
    const auto row = row_values(samples[r]);
    for (size_t c = 0; c < row.size(); ++c) sys.at(r, c) = row[c];
  }
  const auto basis = nullspace(sys);
  if (basis.empty()) return std::nullopt;
  const auto& v = basis.front();
  for (size_t r = fit; r < fit + opt.holdout; ++r) {
    const auto row = row_values(samples[r]);
    Elem acc = 0;
    for (size_t c = 0; c < row.size(); ++c) acc = f->add(acc, f->mul(row[c], v[c]));
    if (acc != 0) {
      throw InsufficientSamples("relation of degree " + std::to_string(degree) +
                                " fitted on the samples fails at held-out sample " + std::to_string(r - fit));
    }
  }
  size_t lead = v.size();
  while (lead-- > 0 && v[lead] == 0) {
  }
  const Elem s = f->inv(v[lead]);
  MultiPoly rel(f, {"s", "t"});
  for (size_t c = 0; c < v.size(); ++c) rel.add_term(monos[c], f->mul(v[c], s));
  return rel;
}

}  // namespace galoispts::algebra
