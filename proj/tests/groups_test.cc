#include <gtest/gtest.h>

#include <set>

#include "galoispts/groups.h"

using namespace galoispts;
using namespace galoispts::groups;
using curves::Family;

namespace {

struct CurveSetup {
  curves::Curve curve;
  std::vector<CurvePoint> points;
  std::unique_ptr<Psi> psi;
  AutomorphismGroup g1, g2;

  CurveSetup(Family fam, uint64_t param) : curve(curves::make_curve(fam, param)) {
    points = curves::enumerate_points(curve, curve.base_field());
    if (fam != Family::kHermitian) psi = std::make_unique<Psi>(curve);
    g1 = build_g1(curve);
    g2 = build_g2(curve, g1);
  }
};

}  // namespace

TEST(Matrix, InverseAndNormalization) {
  const auto* f = ff::make_field(3, 2).get();
  Matrix m = Matrix::identity(f, 3);
  m.at(0, 1) = 4;
  m.at(1, 2) = 7;
  m.at(2, 0) = 2;
  const Matrix prod = m * m.inverse();
  EXPECT_TRUE(prod.is_scalar());
  Matrix scaled = m;
  for (auto& v : scaled.a) v = f->mul(v, 5);
  EXPECT_EQ(scaled.normalized(), m.normalized());
  Matrix singular(Matrix::identity(f, 2));
  singular.at(1, 1) = 0;
  EXPECT_THROW(singular.inverse(), std::domain_error);
}

class GroupFamilies : public ::testing::TestWithParam<std::pair<Family, uint64_t>> {};

TEST_P(GroupFamilies, OrdersAxiomsOrbitsIntersection) {
  CurveSetup s(GetParam().first, GetParam().second);
  const uint64_t expected = s.points.size() - 1;
  EXPECT_EQ(s.g1.order(), expected);
  EXPECT_EQ(s.g2.order(), expected);
  EXPECT_EQ(verify_group(s.curve, s.g1, s.points, s.psi.get()).status, Status::kPass);
  EXPECT_EQ(verify_group(s.curve, s.g2, s.points, s.psi.get()).status, Status::kPass);

  const std::set<CurvePoint> all(s.points.begin(), s.points.end());
  auto o1 = orbit(s.curve, s.g1, s.curve.p2(), s.psi.get());
  EXPECT_EQ(o1.count(s.curve.p1()), 0u);
  o1.insert(s.curve.p1());
  EXPECT_EQ(o1, all);
  auto o2 = orbit(s.curve, s.g2, s.curve.p1(), s.psi.get());
  EXPECT_EQ(o2.count(s.curve.p2()), 0u);
  o2.insert(s.curve.p2());
  EXPECT_EQ(o2, all);

  EXPECT_TRUE(intersect_trivial(s.curve, s.g1, s.g2, s.points, s.psi.get()));
}

INSTANTIATE_TEST_SUITE_P(Families, GroupFamilies,
                         ::testing::Values(std::pair<Family, uint64_t>{Family::kHermitian, 3},
                                           std::pair<Family, uint64_t>{Family::kHermitian, 4},
                                           std::pair<Family, uint64_t>{Family::kSuzuki, 2}));

TEST(Groups, FixedPoints) {
  CurveSetup s(Family::kHermitian, 3);
  for (const auto& g : s.g1.elements) EXPECT_EQ(act(s.curve, g, s.curve.p1()), s.curve.p1());
  for (const auto& g : s.g2.elements) EXPECT_EQ(act(s.curve, g, s.curve.p2()), s.curve.p2());
}

TEST(Groups, PsiIsInvolutionSwappingDistinguishedPoints) {
  CurveSetup s(Family::kSuzuki, 2);
  EXPECT_EQ((*s.psi)(s.curve.p1()), s.curve.p2());
  EXPECT_EQ((*s.psi)(s.curve.p2()), s.curve.p1());
  for (const auto& p : s.points) {
    EXPECT_TRUE(curves::contains(s.curve, (*s.psi)(p)));
    EXPECT_EQ((*s.psi)((*s.psi)(p)), p);
  }
}

TEST(Groups, ConjugatedElementsActAsPsiConjugates) {
  CurveSetup s(Family::kSuzuki, 2);
  for (size_t i = 0; i < s.g1.order(); i += 7) {
    for (const auto& p : s.points) {
      EXPECT_EQ(act(s.curve, s.g2.elements[i], p, s.psi.get()),
                (*s.psi)(act(s.curve, s.g1.elements[i], (*s.psi)(p))));
    }
  }
}

TEST(Groups, GenerationBoundIsEnforced) {
  CurveSetup s(Family::kHermitian, 3);
  auto gens = s.g1.generators;
  gens.insert(gens.end(), s.g2.generators.begin(), s.g2.generators.end());
  EXPECT_THROW(generate(s.curve, gens, 1000), BoundExceeded);
}

TEST(Groups, SylowConjugatesHermitianQ3) {
  CurveSetup s(Family::kHermitian, 3);
  auto gens = s.g1.generators;
  gens.insert(gens.end(), s.g2.generators.begin(), s.g2.generators.end());
  const auto g = generate(s.curve, gens, 100000);
  EXPECT_EQ(g.order(), 6048u);
  const auto conj = sylow_fixed_points(s.curve, g, s.g1, s.points);
  EXPECT_EQ(conj.size(), 28u);
  std::set<CurvePoint> fixed;
  for (const auto& c : conj) {
    EXPECT_EQ(c.elements.size(), 27u);
    ASSERT_EQ(c.fixed_points.size(), 1u);
    fixed.insert(c.fixed_points.front());
  }
  EXPECT_EQ(fixed.size(), 28u);
}

TEST(Groups, ExportUsesNormalizedMatrices) {
  CurveSetup s(Family::kSuzuki, 2);
  const auto j1 = s.g1.to_json();
  EXPECT_EQ(j1.at("order"), 64);
  const auto j2 = s.g2.to_json();
  EXPECT_TRUE(j2.at("elements").at(1).at("conjugated").get<bool>());
}
