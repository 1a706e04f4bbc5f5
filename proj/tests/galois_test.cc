#include <gtest/gtest.h>

#include <map>
#include <set>

#include "galoispts/galois.h"

using namespace galoispts;
using namespace galoispts::galois;
using curves::Family;

namespace {

struct CurveSetup {
  curves::Curve curve;
  std::vector<CurvePoint> points;
  std::unique_ptr<groups::Psi> psi;
  groups::AutomorphismGroup g1, g2;
  MorphismSpec morph;
  TruncationPolicy policy;

  CurveSetup(Family fam, uint64_t param) : curve(curves::make_curve(fam, param)) {
    points = curves::enumerate_points(curve, curve.base_field());
    if (fam != Family::kHermitian) psi = std::make_unique<groups::Psi>(curve);
    g1 = groups::build_g1(curve);
    g2 = groups::build_g2(curve, g1);
    morph = build_morphism(curve);
    policy = TruncationPolicy::for_q(curve.q());
  }
};

CurveSetup& hermitian3() {
  static CurveSetup s(Family::kHermitian, 3);
  return s;
}

CurveSetup& suzuki2() {
  static CurveSetup s(Family::kSuzuki, 2);
  return s;
}

}  // namespace

TEST(Morphism, DistinguishedImages) {
  for (CurveSetup* s : {&hermitian3(), &suzuki2()}) {
    const auto* k = s->curve.base_field().get();
    const Felt zero(k, 0), one(k, 1);
    EXPECT_EQ(image_of(s->morph, s->curve.p1()), ProjPoint::make(zero, one, zero));
    EXPECT_EQ(image_of(s->morph, s->curve.p2()), ProjPoint::make(one, zero, zero));
  }
}

TEST(Morphism, HermitianImageFormula) {
  // (1, b) with b^4 = 2 maps to (-1 : 1 : 0) = (2 : 1 : 0).
  CurveSetup& s = hermitian3();
  const auto* k = s.curve.base_field().get();
  size_t seen = 0;
  for (const auto& p : s.points) {
    if (p.at_infinity || p.coords[0] != Felt(k, 1)) continue;
    ++seen;
    EXPECT_EQ(image_of(s.morph, p), ProjPoint::make(Felt(k, 2), Felt(k, 1), Felt(k, 0)));
  }
  EXPECT_EQ(seen, 4u);
}

TEST(Morphism, ProjPointNormalization) {
  const auto* k = ff::make_field(3, 2).get();
  const auto a = ProjPoint::make(Felt(k, 2), Felt(k, 2), Felt(k, 0));
  EXPECT_EQ(a.c[1], Felt(k, 1));
  EXPECT_EQ(a, ProjPoint::make(Felt(k, 1), Felt(k, 1), Felt(k, 0)));
}

TEST(Morphism, InvarianceOnRationalPoints) {
  for (CurveSetup* s : {&hermitian3(), &suzuki2()}) {
    EXPECT_EQ(check_invariance(s->morph, s->g1, s->g2, s->points, s->psi.get()).status, Status::kPass);
  }
}

TEST(Morphism, SeriesImageMatchesClosedForm) {
  for (CurveSetup* s : {&hermitian3(), &suzuki2()}) {
    for (const auto& p : s->points) {
      if (p.at_infinity || p.is_origin()) continue;
      EXPECT_EQ(image_via_series(s->morph, p, s->policy), image_of(s->morph, p)) << p.str();
    }
  }
}

TEST(Census, HermitianQ3) {
  CurveSetup& s = hermitian3();
  const auto cen = fiber_census(s.morph, s.policy);
  EXPECT_EQ(cen.singular, 6u);
  EXPECT_EQ(cen.tangential, 2u);
  EXPECT_EQ(cen.galois, 2u);
  EXPECT_EQ(cen.unramified, 0u);
  EXPECT_EQ(cen.fibers.size(), 10u);
  EXPECT_TRUE(cen.all_on_line);
  size_t total = 0;
  for (const auto& f : cen.fibers) {
    total += f.preimages.size();
    if (f.klass == FiberClass::kSingular) {
      EXPECT_EQ(f.preimages.size(), 4u);
    }
    if (f.klass == FiberClass::kTangential) {
      EXPECT_EQ(*f.ramification, 3);
      EXPECT_EQ(tangent_pullback_order(s.morph, f.preimages.front(), s.policy), 4);
    }
  }
  EXPECT_EQ(total, 28u);
}

TEST(Census, SuzukiImagesAreSingular) {
  CurveSetup& s = suzuki2();
  const auto cen = fiber_census(s.morph, s.policy);
  EXPECT_EQ(cen.singular, 7u);
  EXPECT_EQ(cen.tangential, 0u);
  EXPECT_EQ(cen.galois, 2u);
  EXPECT_EQ(cen.fibers.size(), 9u);
  for (const auto& f : cen.fibers) {
    if (f.klass == FiberClass::kSingular) {
      EXPECT_GE(f.preimages.size(), 2u);
    }
  }
  const auto j = cen.to_json();
  ASSERT_EQ(j.size(), 9u);
  EXPECT_EQ(j[0].at("image").size(), 3u);
  EXPECT_TRUE(j[0].contains("preimages"));
  EXPECT_TRUE(j[0].contains("class"));
}

TEST(Certificate, HermitianOverTwoExtensions) {
  CurveSetup& s = hermitian3();
  for (unsigned m : {1u, 2u, 3u}) {
    for (int which : {1, 2}) {
      const auto cert = galois_certificate(s.morph, which == 1 ? s.g1 : s.g2, which, m, s.policy, nullptr);
      EXPECT_TRUE(cert.granted) << "m " << m << " t" << which;
      EXPECT_EQ(cert.generic_fiber_size, 27u);
      EXPECT_EQ(cert.non_orbit_fibers, 0u);
    }
  }
}

TEST(Certificate, RejectsNonInvariantQuotient) {
  // Using t2 with G1 must fail: the fibers of t2 are G2-orbits.
  CurveSetup& s = hermitian3();
  const auto cert = galois_certificate(s.morph, s.g1, 2, 3, s.policy, nullptr);
  EXPECT_FALSE(cert.granted);
}

TEST(Degree, HermitianQ3IsTwentyEight) {
  CurveSetup& s = hermitian3();
  const auto r = image_degree(s.morph, 4, 28);
  EXPECT_EQ(r.degree, 28u);
  EXPECT_FALSE(r.below_has_relation);
}

TEST(Uniqueness, SuzukiSurvivorsAreDistinguishedPoints) {
  CurveSetup& s = suzuki2();
  const auto cen = fiber_census(s.morph, s.policy);
  const auto u = uniqueness_filter(s.morph, cen, nullptr, 0, s.policy);
  EXPECT_EQ(u.survivors, (std::vector<CurvePoint>{s.curve.p1(), s.curve.p2()}));
}

TEST(Uniqueness, HermitianTangentialPointsAreExcluded) {
  CurveSetup& s = hermitian3();
  const auto cen = fiber_census(s.morph, s.policy);
  const auto u = uniqueness_filter(s.morph, cen, nullptr, 0, s.policy);
  EXPECT_EQ(u.candidates.size(), 4u);
  EXPECT_EQ(u.survivors, (std::vector<CurvePoint>{s.curve.p1(), s.curve.p2()}));
  for (const auto& [p, order] : u.pullback_orders) {
    if (p == s.curve.p1() || p == s.curve.p2()) {
      EXPECT_GE(order, 27);
    } else {
      EXPECT_EQ(order, 4);
    }
  }
}

TEST(Expansion, SuzukiP1HasNoChart) {
  CurveSetup& s = suzuki2();
  EXPECT_THROW(expander_at(s.curve, s.curve.p1()), curves::PreconditionError);
}
