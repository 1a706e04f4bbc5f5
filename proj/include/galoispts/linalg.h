#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "galoispts/ff.h"
#include "galoispts/poly.h"

namespace galoispts::algebra {

/// Dense matrix over a finite field; rows are constraints, columns unknowns.
class LinearSystem {
 public:
  LinearSystem(const Field* f, size_t rows, size_t cols) : field_(f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  const Field* field() const { return field_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Elem& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
  Elem at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

  std::vector<Elem> apply(const std::vector<Elem>& v) const;
  size_t rank() const;

 private:
  friend std::vector<std::vector<Elem>> nullspace(const LinearSystem& sys);
  friend std::optional<unsigned> minimal_relation_degree(const Field* f,
                                                         const std::vector<std::pair<Elem, Elem>>& samples,
                                                         unsigned max_degree, const struct ImplicitizeOptions& opt);
  /// Row echelon form in place; returns pivot columns. Pivot rows are chosen
  /// as the first row (in row order) with a nonzero entry in the column.
  std::vector<size_t> echelonize();

  const Field* field_;
  size_t rows_, cols_;
  std::vector<Elem> a_;
};

/// Basis of {v : A v = 0}, one vector per free column, each with a 1 in its
/// free column.
std::vector<std::vector<Elem>> nullspace(const LinearSystem& sys);

class InsufficientSamples : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exponent pairs (i, j) of s^i t^j with i + j <= degree, ascending in
/// graded lexicographic order.
std::vector<Exponents> graded_lex_monomials(unsigned degree);

struct ImplicitizeOptions {
  size_t margin = 20;
  size_t holdout = 100;
};

size_t samples_needed(unsigned degree, const ImplicitizeOptions& opt = {});

/// A nonzero polynomial in (s, t) of total degree <= `degree` vanishing at the
/// fitting samples, or nullopt. The first binom(degree+2,2) + margin samples
/// are fitted; the next `holdout` samples must also satisfy the relation.
/// The result is scaled so its grlex-leading coefficient is 1.
std::optional<MultiPoly> implicitize(const Field* f, const std::vector<std::pair<Elem, Elem>>& samples,
                                     unsigned degree, const ImplicitizeOptions& opt = {});

/// Smallest total degree of a relation on the first binom(max_degree+2,2) +
/// margin samples, from a single elimination with columns in ascending graded
/// order: the first column without a pivot depends on the columns before it.
std::optional<unsigned> minimal_relation_degree(const Field* f, const std::vector<std::pair<Elem, Elem>>& samples,
                                                unsigned max_degree, const ImplicitizeOptions& opt = {});

}  // namespace galoispts::algebra
