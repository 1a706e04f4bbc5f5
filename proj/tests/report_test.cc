#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "galoispts/report.h"

using namespace galoispts;
using namespace galoispts::report;
using curves::Family;

namespace {

VerifyOptions options(Family fam, uint64_t param) {
  VerifyOptions o;
  o.family = fam;
  o.parameter = param;
  o.stable = true;
  return o;
}

}  // namespace

TEST(Report, HermitianQ3AllPass) {
  const auto r = run_verify(options(Family::kHermitian, 3));
  EXPECT_EQ(r.exit_code(), 0);
  for (const auto& c : r.checks) {
    EXPECT_NE(c.status, Status::kFail) << c.id << " " << c.details.dump();
    EXPECT_NE(c.status, Status::kSkip) << c.id;
  }
  ASSERT_NE(r.find("image.degree"), nullptr);
  EXPECT_EQ(r.find("image.degree")->details.at("degree"), 28);
  EXPECT_EQ(r.find("sylow.audit")->details.at("generated_order"), 6048);
}

TEST(Report, CheckOrderFollowsPipeline) {
  const auto r = run_verify(options(Family::kSuzuki, 2));
  std::vector<std::string> ids;
  for (const auto& c : r.checks) ids.push_back(c.id);
  auto pos = [&](const std::string& id) {
    return std::find(ids.begin(), ids.end(), id) - ids.begin();
  };
  EXPECT_LT(pos("curve.construction"), pos("curve.point_count"));
  EXPECT_LT(pos("curve.point_count"), pos("group.G1"));
  EXPECT_LT(pos("group.G1"), pos("orbit.G1_P2"));
  EXPECT_LT(pos("orbit.G1_P2"), pos("morphism.invariance"));
  EXPECT_LT(pos("morphism.invariance"), pos("morphism.image_table"));
  EXPECT_LT(pos("morphism.image_table"), pos("census.fibers"));
  EXPECT_LT(pos("census.fibers"), pos("census.ramification"));
  EXPECT_LT(pos("census.ramification"), pos("galois.certificate.G1"));
  EXPECT_LT(pos("galois.certificate.G2"), pos("image.degree"));
  EXPECT_LT(pos("image.degree"), pos("sylow.audit"));
  std::set<std::string> unique(ids.begin(), ids.end());
  EXPECT_EQ(unique.size(), ids.size());
  EXPECT_EQ(r.find("sylow.audit")->status, Status::kPaperTrusted);
  EXPECT_EQ(r.find("image.degree")->status, Status::kSkip);
}

TEST(Report, StableOutputIsByteIdentical) {
  const auto a = run_verify(options(Family::kSuzuki, 2)).to_json().dump();
  const auto b = run_verify(options(Family::kSuzuki, 2)).to_json().dump();
  EXPECT_EQ(a, b);
  auto o = options(Family::kSuzuki, 2);
  o.stable = false;
  const auto j = run_verify(o).to_json();
  EXPECT_FALSE(j.at("stable").get<bool>());
}

TEST(Report, JsonSchemaKeys) {
  const auto j = run_verify(options(Family::kHermitian, 3)).to_json();
  for (const char* key : {"family", "params", "fields", "checks", "version", "wtable_checksum", "stable"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  for (const char* key : {"p", "q", "q0"}) EXPECT_TRUE(j.at("params").contains(key)) << key;
  for (const auto& f : j.at("fields")) {
    for (const char* key : {"p", "n", "modulus"}) EXPECT_TRUE(f.contains(key)) << key;
  }
  for (const auto& c : j.at("checks")) {
    for (const char* key : {"id", "description", "status", "details", "duration_ms"}) EXPECT_TRUE(c.contains(key));
    EXPECT_EQ(c.at("duration_ms"), 0.0);
  }
  EXPECT_TRUE(j.at("wtable_checksum").is_null());
  EXPECT_EQ(j.at("params").at("q"), 3);
}

TEST(Report, UsageErrors) {
  EXPECT_THROW(run_verify(options(Family::kHermitian, 6)), UsageError);
  auto o = options(Family::kSuzuki, 2);
  o.sylow_audit = true;
  EXPECT_THROW(run_verify(o), UsageError);
  o = options(Family::kHermitian, 3);
  o.extension = 0;
  EXPECT_THROW(run_verify(o), UsageError);
}

TEST(Report, CorruptedWTableFailsConstruction) {
  std::ifstream in(curves::default_wtable_path());
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  const auto pos = text.find("\nw6: ");
  ASSERT_NE(pos, std::string::npos);
  text.insert(pos + 5, "y2 + ");
  const std::string path = ::testing::TempDir() + "report_corrupt_wtable.txt";
  std::ofstream(path) << text;
  auto o = options(Family::kRee, 3);
  o.wtable_path = path;
  const auto r = run_verify(o);
  ASSERT_FALSE(r.checks.empty());
  EXPECT_EQ(r.checks.front().id, "curve.construction");
  EXPECT_EQ(r.checks.front().status, Status::kFail);
  EXPECT_EQ(r.exit_code(), 1);
  std::remove(path.c_str());
}

TEST(Report, TextFormatListsEveryCheck) {
  const auto r = run_verify(options(Family::kHermitian, 3));
  const auto text = r.to_text();
  for (const auto& c : r.checks) EXPECT_NE(text.find(c.id), std::string::npos) << c.id;
  EXPECT_EQ(text.find(" ms)"), std::string::npos);
}
