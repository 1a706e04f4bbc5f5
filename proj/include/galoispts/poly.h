#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "galoispts/ff.h"
#include "galoispts/series.h"

namespace galoispts::algebra {

using Exponents = std::vector<uint32_t>;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an evaluation point does not match the variable list.
class ArityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sparse multivariate polynomial over a finite field.
///
/// Terms are kept in a map keyed by exponent vectors; zero coefficients are
/// never stored. Evaluation accepts values in the owner field, or in any field
/// of the same characteristic when the owner is the prime field.
class MultiPoly {
 public:
  MultiPoly(const Field* f, std::vector<std::string> vars);

  static MultiPoly constant(const Field* f, std::vector<std::string> vars, Elem c);
  static MultiPoly variable(const Field* f, std::vector<std::string> vars, size_t index);
  /// Parses sums of terms like "-x^30*y1 + 2*x^4*y1^27". Integer coefficients
  /// are read modulo p.
  static MultiPoly parse(const Field* f, std::vector<std::string> vars, std::string_view text);

  const Field* field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exponents, Elem>& terms() const { return terms_; }
  size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  uint64_t total_degree() const;

  void add_term(const Exponents& e, Elem c);

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly scale(Elem c) const;
  MultiPoly pow(uint64_t e) const;
  MultiPoly derivative(size_t index) const;
  bool operator==(const MultiPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

  Felt eval(const std::vector<Felt>& point) const;
  Felt eval(const std::vector<Felt>& point, const ff::FieldEmbedding& coeff_map) const;
  Series eval(const std::vector<Series>& point) const;

  /// Terms in graded lexicographic order, highest first.
  std::string str() const;

 private:
  void check_compatible(const MultiPoly& o) const;
  Elem lift_coeff(Elem c, const Field* target) const;

  const Field* field_;
  std::vector<std::string> vars_;
  std::map<Exponents, Elem> terms_;
};

/// Graded lexicographic comparison: total degree first, then exponents from
/// the first variable on.
bool grlex_less(const Exponents& a, const Exponents& b);

}  // namespace galoispts::algebra
