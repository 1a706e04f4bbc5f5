#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace galoispts::ff {

// Elements are encoded as integers e = c0 + c1 p + ... + c_{n-1} p^(n-1), where
// c_i is the coefficient of X^i in the polynomial-basis representation. The
// canonical element order is the integer order of encodings, i.e. lexicographic
// on coefficient sequences read from the top coefficient down.
using Elem = uint32_t;

inline constexpr uint64_t kMaxFieldSize = uint64_t{1} << 24;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SizeBoundError : public FieldError {
 public:
  using FieldError::FieldError;
};

/// A finite field F_{p^n} with a canonical modulus.
///
/// Instances are interned: make_field(p, n) always returns the same object, so
/// pointer equality is field equality.
class Field {
 public:
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  uint32_t p() const { return p_; }
  uint32_t n() const { return n_; }
  uint32_t size() const { return size_; }
  /// Modulus coefficients m_0 .. m_n ascending, m_n = 1. Among monic
  /// irreducibles of degree n it has the smallest encoding m_0 + m_1 p + ...
  const std::vector<uint32_t>& modulus() const { return modulus_; }
  bool is_prime_field() const { return n_ == 1; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  /// The class of X in F_p[X]/(modulus).
  Elem x() const;
  /// Smallest element (canonical order) generating the multiplicative group.
  Elem primitive() const { return exp_[1 % (size_ - 1)]; }
  Elem from_int(int64_t v) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    uint32_t s = log_[a] + log_[b];
    if (s >= size_ - 1) s -= size_ - 1;
    return exp_[s];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, int64_t e) const;
  /// a^(p^k)
  Elem frobenius(Elem a, unsigned k) const;
  /// Discrete log base primitive(); a must be nonzero.
  uint32_t log(Elem a) const { return log_[a]; }
  Elem exp(uint64_t k) const { return exp_[k % (size_ - 1)]; }
  /// exp() for 0 <= k < size() - 1, without the reduction.
  Elem exp_reduced(uint32_t k) const { return exp_[k]; }

  /// Inverse computed through extended Euclid on representatives. Used as an
  /// independent cross-check of the table-based inverse.
  Elem inv_euclid(Elem a) const;
  /// Schoolbook product with reduction by the modulus, bypassing the log tables.
  Elem mul_schoolbook(Elem a, Elem b) const;

  std::vector<uint32_t> coeffs(Elem a) const;
  Elem from_coeffs(const std::vector<uint32_t>& c) const;
  /// "(c0,c1,...)" or plain "c0" for prime fields.
  std::string format(Elem a) const;
  std::string name() const;

 private:
  friend std::shared_ptr<const Field> make_field(uint32_t p, uint32_t n);
  Field(uint32_t p, uint32_t n, std::vector<uint32_t> modulus);

  uint32_t p_;
  uint32_t n_;
  uint32_t size_;
  std::vector<uint32_t> modulus_;
  std::vector<uint32_t> place_;  // place_[i] = p^i
  std::vector<Elem> exp_;
  std::vector<uint32_t> log_;
  std::vector<Elem> neg_;
  std::vector<uint32_t> zech_;  // zech_[k] = log(1 + g^k), size_-1 marks zero
};

using FieldPtr = std::shared_ptr<const Field>;

/// Canonical field constructor. Throws FieldError for composite p or n == 0
/// and SizeBoundError when p^n exceeds kMaxFieldSize.
FieldPtr make_field(uint32_t p, uint32_t n);

bool is_prime(uint64_t v);
/// True when v = p^k for some k >= 0.
bool is_power_of(uint64_t v, uint64_t p);
/// Irreducibility over F_p of the monic polynomial with ascending coefficients.
bool is_irreducible(const std::vector<uint32_t>& monic_ascending, uint32_t p);

/// Field element carrying its owner field.
class Felt {
 public:
  Felt() = default;
  Felt(const Field* f, Elem v) : field_(f), v_(v) {}

  const Field* field() const { return field_; }
  Elem value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  Felt operator+(const Felt& o) const { return {field_, field_->add(v_, check(o))}; }
  Felt operator-(const Felt& o) const { return {field_, field_->sub(v_, check(o))}; }
  Felt operator*(const Felt& o) const { return {field_, field_->mul(v_, check(o))}; }
  Felt operator/(const Felt& o) const;
  Felt operator-() const { return {field_, field_->neg(v_)}; }
  Felt inv() const;
  Felt pow(int64_t e) const;
  Felt frobenius(unsigned k) const { return {field_, field_->frobenius(v_, k)}; }

  bool operator==(const Felt& o) const { return field_ == o.field_ && v_ == o.v_; }
  bool operator!=(const Felt& o) const { return !(*this == o); }
  bool operator<(const Felt& o) const { return v_ < o.v_; }

  std::string str() const { return field_->format(v_); }

 private:
  Elem check(const Felt& o) const {
    if (o.field_ != field_) throw FieldError("field element owner mismatch");
    return o.v_;
  }
  const Field* field_ = nullptr;
  Elem v_ = 0;
};

/// x^(p^k).
inline Felt frobenius(const Felt& x, unsigned k) { return x.frobenius(k); }

bool is_square(const Felt& x);

enum class Sign { kPlus, kMinus };

/// Solution sets of b^qexp + b = rhs (kPlus) or b^qexp - b = rhs (kMinus).
/// The map b -> b^qexp +- b is F_p-linear; solve() works on its matrix over F_p
/// and enumerates the kernel coset, solve_by_scan() tries every element.
class ArtinSchreier {
 public:
  ArtinSchreier(FieldPtr field, uint64_t qexp, Sign sign);

  std::vector<Elem> solve(Elem rhs) const;
  /// Reference implementation scanning every element.
  std::vector<Elem> solve_by_scan(Elem rhs) const;
  size_t kernel_size() const { return kernel_elems_.size(); }
  Elem apply(Elem b) const;

 private:
  FieldPtr field_;
  uint64_t qexp_;
  Sign sign_;
  unsigned frob_k_ = 0;
  std::vector<std::vector<uint32_t>> matrix_;  // column j = image of X^j
  std::vector<Elem> kernel_elems_;
};

std::vector<Felt> solve_artin_schreier(const FieldPtr& field, uint64_t qexp, Sign sign, const Felt& rhs);

/// An embedding of a subfield into a larger field of the same characteristic.
class FieldEmbedding {
 public:
  FieldEmbedding(FieldPtr src, FieldPtr dst);

  const FieldPtr& source() const { return src_; }
  const FieldPtr& target() const { return dst_; }
  /// Image of the source generator X.
  Elem generator_image() const { return gen_image_; }
  Elem operator()(Elem a) const { return table_[a]; }
  Felt operator()(const Felt& a) const;

 private:
  FieldPtr src_;
  FieldPtr dst_;
  Elem gen_image_ = 0;
  std::vector<Elem> table_;
};

/// Deterministic embedding: the generator maps to the smallest root of the
/// source modulus in canonical order. Throws FieldError if degrees do not divide.
FieldEmbedding embed(const FieldPtr& src, const FieldPtr& dst);

/// Cached canonical embedding between interned fields.
const FieldEmbedding& embedding(const Field* src, const Field* dst);
/// Image of x in `target` under the canonical embedding (identity when the
/// fields agree).
Felt lift(const Felt& x, const Field* target);

/// All elements of `field` in canonical order.
std::vector<Felt> elements(const FieldPtr& field);

}  // namespace galoispts::ff
