#include <gtest/gtest.h>

#include <random>
#include <set>

#include "galoispts/ff.h"

using namespace galoispts::ff;

namespace {

// Irreducibility by trial division over every monic polynomial of degree at
// most n/2; independent of the library's test.
bool irreducible_by_division(const std::vector<uint32_t>& f, uint32_t p) {
  const size_t n = f.size() - 1;
  auto rem_zero = [&](const std::vector<uint32_t>& d) {
    std::vector<int64_t> r(f.begin(), f.end());
    const size_t dd = d.size() - 1;
    for (size_t i = n; i + 1 > dd; --i) {
      const int64_t c = r[i] % p;
      if (c) {
        for (size_t j = 0; j <= dd; ++j) r[i - dd + j] = ((r[i - dd + j] - c * d[j]) % p + p) % p;
      }
      if (i == dd) break;
    }
    for (size_t i = 0; i < dd; ++i) {
      if (r[i] % p) return false;
    }
    return true;
  };
  for (size_t deg = 1; deg <= n / 2; ++deg) {
    uint64_t count = 1;
    for (size_t i = 0; i < deg; ++i) count *= p;
    for (uint64_t code = 0; code < count; ++code) {
      std::vector<uint32_t> d(deg + 1);
      uint64_t c = code;
      for (size_t i = 0; i < deg; ++i, c /= p) d[i] = static_cast<uint32_t>(c % p);
      d[deg] = 1;
      if (rem_zero(d)) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Field, CanonicalModuli) {
  EXPECT_EQ(make_field(3, 2)->modulus(), (std::vector<uint32_t>{1, 0, 1}));
  EXPECT_EQ(make_field(3, 3)->modulus(), (std::vector<uint32_t>{1, 2, 0, 1}));
  EXPECT_EQ(make_field(2, 4)->modulus(), (std::vector<uint32_t>{1, 1, 0, 0, 1}));
  EXPECT_EQ(make_field(2, 3)->modulus(), (std::vector<uint32_t>{1, 1, 0, 1}));
}

TEST(Field, ModulusIsSmallestIrreducible) {
  for (auto [p, n] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 4}, {2, 6}, {3, 2}, {3, 3}, {3, 4}, {5, 2}}) {
    const auto f = make_field(p, n);
    EXPECT_TRUE(irreducible_by_division(f->modulus(), p));
    uint64_t code = 0, place = 1;
    for (size_t i = 0; i < n; ++i, place *= p) code += f->modulus()[i] * place;
    for (uint64_t smaller = 0; smaller < code; ++smaller) {
      std::vector<uint32_t> g(n + 1);
      uint64_t c = smaller;
      for (size_t i = 0; i < n; ++i, c /= p) g[i] = static_cast<uint32_t>(c % p);
      g[n] = 1;
      EXPECT_FALSE(irreducible_by_division(g, p)) << "smaller irreducible exists for F_" << p << "^" << n;
    }
  }
}

TEST(Field, Interned) {
  EXPECT_EQ(make_field(3, 2).get(), make_field(3, 2).get());
  EXPECT_NE(make_field(3, 2).get(), make_field(3, 4).get());
}

TEST(Field, RejectsBadParameters) {
  EXPECT_THROW(make_field(4, 1), FieldError);
  EXPECT_THROW(make_field(3, 0), FieldError);
  EXPECT_THROW(make_field(2, 25), SizeBoundError);
}

class FieldAxioms : public ::testing::TestWithParam<std::pair<uint32_t, uint32_t>> {};

TEST_P(FieldAxioms, RandomTriples) {
  const auto [p, n] = GetParam();
  const auto field = make_field(p, n);
  const Field* f = field.get();
  std::mt19937_64 rng(12345 + p * 100 + n);
  std::uniform_int_distribution<uint32_t> pick(0, f->size() - 1);
  for (int i = 0; i < 2000; ++i) {
    const Elem a = pick(rng), b = pick(rng), c = pick(rng);
    ASSERT_EQ(f->add(f->add(a, b), c), f->add(a, f->add(b, c)));
    ASSERT_EQ(f->mul(f->mul(a, b), c), f->mul(a, f->mul(b, c)));
    ASSERT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
    ASSERT_EQ(f->mul(a, b), f->mul(b, a));
    ASSERT_EQ(f->mul(a, b), f->mul_schoolbook(a, b));
    ASSERT_EQ(f->add(a, f->neg(a)), 0u);
    ASSERT_EQ(f->sub(f->add(a, b), b), a);
    if (a != 0) {
      ASSERT_EQ(f->mul(a, f->inv(a)), 1u);
      ASSERT_EQ(f->inv(a), f->inv_euclid(a));
      ASSERT_EQ(f->div(f->mul(a, b), a), b);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, FieldAxioms,
                         ::testing::Values(std::pair<uint32_t, uint32_t>{2, 1}, std::pair<uint32_t, uint32_t>{3, 2},
                                           std::pair<uint32_t, uint32_t>{2, 4}, std::pair<uint32_t, uint32_t>{3, 3},
                                           std::pair<uint32_t, uint32_t>{2, 15}, std::pair<uint32_t, uint32_t>{3, 8},
                                           std::pair<uint32_t, uint32_t>{7, 3}));

TEST(Field, PrimitiveGeneratesUnits) {
  for (auto [p, n] : std::vector<std::pair<uint32_t, uint32_t>>{{3, 2}, {2, 4}, {3, 3}, {2, 8}}) {
    const auto f = make_field(p, n);
    std::set<Elem> seen;
    Elem x = 1;
    for (uint32_t k = 0; k + 1 < f->size(); ++k, x = f->mul(x, f->primitive())) seen.insert(x);
    EXPECT_EQ(seen.size() + 1, f->size());
    EXPECT_EQ(seen.count(0), 0u);
  }
}

TEST(Field, PowAndFrobenius) {
  const auto f = make_field(3, 4);
  for (Elem a = 0; a < f->size(); ++a) {
    EXPECT_EQ(f->pow(a, 81), a);
    EXPECT_EQ(f->frobenius(a, 1), f->mul(a, f->mul(a, a)));
    EXPECT_EQ(f->frobenius(a, 4), a);
    if (a) {
      EXPECT_EQ(f->pow(a, -1), f->inv(a));
    }
  }
}

TEST(Field, FormatAndCoefficients) {
  const auto f = make_field(3, 2);
  EXPECT_EQ(f->format(5), "(2,1)");
  EXPECT_EQ(f->coeffs(5), (std::vector<uint32_t>{2, 1}));
  EXPECT_EQ(f->from_coeffs({2, 1}), 5u);
  EXPECT_EQ(make_field(5, 1)->format(3), "3");
  EXPECT_EQ(f->name(), "F_3^2");
}

TEST(Felt, OwnerMismatchThrows) {
  const auto a = make_field(3, 2), b = make_field(3, 4);
  EXPECT_THROW(Felt(a.get(), 1) + Felt(b.get(), 1), FieldError);
  EXPECT_THROW(Felt(a.get(), 0).inv(), FieldError);
}

TEST(Felt, IsSquareMatchesEnumeration) {
  for (auto [p, n] : std::vector<std::pair<uint32_t, uint32_t>>{{3, 3}, {3, 2}, {5, 2}, {2, 4}, {7, 1}}) {
    const auto f = make_field(p, n);
    std::set<Elem> squares;
    for (Elem a = 0; a < f->size(); ++a) squares.insert(f->mul(a, a));
    for (Elem a = 0; a < f->size(); ++a) EXPECT_EQ(is_square(Felt(f.get(), a)), squares.count(a) == 1);
  }
  const auto f27 = make_field(3, 3);
  EXPECT_FALSE(is_square(Felt(f27.get(), f27->neg(1))));
  const auto f9 = make_field(3, 2);
  EXPECT_TRUE(is_square(Felt(f9.get(), f9->neg(1))));
}

struct AsCase {
  uint32_t p, n;
  uint64_t qexp;
  Sign sign;
};

class ArtinSchreierScan : public ::testing::TestWithParam<AsCase> {};

TEST_P(ArtinSchreierScan, KernelSolveMatchesScan) {
  const auto c = GetParam();
  const auto f = make_field(c.p, c.n);
  ArtinSchreier as(f, c.qexp, c.sign);
  size_t total = 0;
  for (Elem rhs = 0; rhs < f->size(); ++rhs) {
    auto fast = as.solve(rhs);
    auto slow = as.solve_by_scan(rhs);
    std::sort(fast.begin(), fast.end());
    ASSERT_EQ(fast, slow) << "rhs " << rhs;
    for (Elem b : fast) ASSERT_EQ(as.apply(b), rhs);
    total += fast.size();
  }
  EXPECT_EQ(total, f->size());
  EXPECT_EQ(as.solve(0).size(), as.kernel_size());
}

INSTANTIATE_TEST_SUITE_P(Maps, ArtinSchreierScan,
                         ::testing::Values(AsCase{3, 2, 3, Sign::kPlus}, AsCase{2, 4, 4, Sign::kPlus},
                                           AsCase{2, 3, 8, Sign::kPlus}, AsCase{3, 3, 27, Sign::kMinus},
                                           AsCase{3, 6, 27, Sign::kMinus}, AsCase{2, 12, 8, Sign::kPlus},
                                           AsCase{3, 4, 9, Sign::kPlus}));

TEST(Embedding, IsInjectiveRingHomomorphism) {
  for (auto [n, m] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 4}, {2, 8}, {3, 6}, {1, 5}, {4, 8}}) {
    const auto src = make_field(3, n), dst = make_field(3, m);
    const auto e = embed(src, dst);
    std::set<Elem> image;
    for (Elem a = 0; a < src->size(); ++a) {
      image.insert(e(a));
      for (Elem b = 0; b < src->size(); b += 1 + src->size() / 17) {
        ASSERT_EQ(e(src->add(a, b)), dst->add(e(a), e(b)));
        ASSERT_EQ(e(src->mul(a, b)), dst->mul(e(a), e(b)));
      }
    }
    EXPECT_EQ(image.size(), src->size());
    EXPECT_EQ(e(1), 1u);
  }
  EXPECT_THROW(embed(make_field(3, 2), make_field(3, 3)), FieldError);
}

TEST(Embedding, ImageIsFixedByFrobenius) {
  const auto src = make_field(2, 4), dst = make_field(2, 12);
  const auto& e = embedding(src.get(), dst.get());
  for (Elem a = 0; a < src->size(); ++a) EXPECT_EQ(dst->frobenius(e(a), 4), e(a));
  EXPECT_EQ(lift(Felt(src.get(), 3), dst.get()), Felt(dst.get(), e(3)));
}

TEST(Elements, CanonicalOrder) {
  const auto f = make_field(2, 3);
  const auto all = elements(f);
  ASSERT_EQ(all.size(), 8u);
  for (size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i].value(), i);
}
