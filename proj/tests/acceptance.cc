// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "galoispts/report.h"

using namespace galoispts;
using namespace galoispts::report;
using curves::Family;
using nlohmann::json;

namespace {

struct Timed {
  Report report;
  double seconds = 0;
};

Timed verify(Family fam, uint64_t param, bool implicitization, bool audit) {
  VerifyOptions o;
  o.family = fam;
  o.parameter = param;
  o.implicitization = implicitization;
  o.sylow_audit = audit;
  o.stable = true;
  const auto start = std::chrono::steady_clock::now();
  Timed t{run_verify(o), 0};
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return t;
}

// Collects unmet expectations for one criterion.
class Criterion {
 public:
  explicit Criterion(const Report& r) : report_(r) {}

  const json& details(const std::string& id) {
    static const json kEmpty = json::object();
    const auto* c = report_.find(id);
    if (!c) {
      miss(id + " missing");
      return kEmpty;
    }
    return c->details;
  }

  void status(const std::string& id, Status want) {
    const auto* c = report_.find(id);
    if (!c) return miss(id + " missing");
    if (c->status != want) miss(id + " is " + to_string(c->status));
  }

  void eq(const std::string& id, const std::string& key, const json& want) {
    const auto& d = details(id);
    if (!d.contains(key) || d.at(key) != want) {
      miss(id + "." + key + " = " + (d.contains(key) ? d.at(key).dump() : "absent") + ", want " + want.dump());
    }
  }

  void expect(bool ok, const std::string& what) {
    if (!ok) miss(what);
  }

  void all_pass() {
    for (const auto& c : report_.checks) {
      if (c.status == Status::kFail) miss(c.id + " failed");
    }
  }

  void runtime(double seconds, double limit) {
    if (seconds >= limit) miss("runtime " + std::to_string(seconds) + " s exceeds " + std::to_string(limit) + " s");
  }

  bool ok() const { return problems_.empty(); }
  std::string summary() const {
    std::ostringstream out;
    for (size_t i = 0; i < problems_.size(); ++i) out << (i ? "; " : "") << problems_[i];
    return out.str();
  }

  // Every certificate at each listed degree granted with the given generic fiber size.
  void certificates(const std::string& id, const std::vector<unsigned>& degrees, uint64_t fiber) {
    const auto& d = details(id);
    if (!d.contains("certificates")) return miss(id + " has no certificates");
    for (unsigned m : degrees) {
      bool found = false;
      for (const auto& c : d.at("certificates")) {
        if (c.at("m") != m) continue;
        found = true;
        if (!c.at("granted").get<bool>() || c.at("generic_fiber_size") != fiber) {
          miss(id + " at m=" + std::to_string(m) + " not granted with fiber " + std::to_string(fiber));
        }
      }
      if (!found) miss(id + " has no certificate at m=" + std::to_string(m));
    }
  }

  void survivors_are_distinguished() {
    const auto& d = details("uniqueness.filter");
    if (!d.contains("survivors")) return miss("uniqueness.filter survivors absent");
    const auto& s = d.at("survivors");
    const bool ok = s.size() == 2 && s.at(0) == "at_infinity" && s.at(1).is_array() &&
                    std::all_of(s.at(1).begin(), s.at(1).end(), [](const json& coord) {
                      return std::all_of(coord.begin(), coord.end(), [](const json& c) { return c == 0; });
                    });
    if (!ok) miss("uniqueness.filter survivors " + s.dump() + " are not {P1, P2}");
  }

 private:
  void miss(const std::string& what) { problems_.push_back(what); }

  const Report& report_;
  std::vector<std::string> problems_;
};

int failures = 0;

void emit(int number, const std::string& title, const Criterion& c, double seconds) {
  std::cout << (c.ok() ? "PASS" : "FAIL") << " criterion " << number << " " << title;
  std::cout << " (" << static_cast<long>(seconds * 1000) << " ms)";
  if (!c.ok()) {
    std::cout << ": " << c.summary();
    ++failures;
  }
  std::cout << std::endl;
}

void hermitian_common(Criterion& c, uint64_t q) {
  const uint64_t points = q * q * q + 1;
  c.all_pass();
  c.eq("curve.point_count", "points", points);
  c.eq("group.G1", "order", points - 1);
  c.eq("group.G2", "order", points - 1);
  c.eq("orbit.G1_P2", "union_size", points);
  c.eq("orbit.G2_P1", "union_size", points);
  c.eq("orbit.G1_P2", "fixed_point_outside_orbit", true);
  c.eq("orbit.G2_P1", "fixed_point_outside_orbit", true);
  c.eq("group.intersection", "common_elements", 1);
  const uint64_t singular = q * q - q;
  c.eq("census.fibers", "singular", singular);
  c.eq("census.fibers", "tangential", q - 1);
  c.eq("census.fibers", "galois", 2);
  c.eq("census.fibers", "all_on_line", true);
  c.eq("census.fibers", "line_points", q * q + 1);
  c.eq("census.fibers", "image_points", q * q + 1);
  c.eq("census.fibers", "preimages_total", points);
  const auto& sizes = c.details("census.fibers");
  if (sizes.contains("fiber_sizes")) {
    c.expect(sizes.at("fiber_sizes").at("singular") == json{{std::to_string(q + 1), singular}},
             "singular fibers " + sizes.at("fiber_sizes").at("singular").dump() + " are not all of size q+1");
  }
  const auto& ram = c.details("census.ramification");
  c.expect(ram.contains("tangential_points") && ram.at("tangential_points").size() == q - 1,
           "census.ramification does not list every tangential point");
  if (ram.contains("tangential_points")) {
    for (const auto& t : ram.at("tangential_points")) {
      c.expect(t.at("ramification") == q && t.at("tangent_multiplicity") == q + 1,
               "tangential point " + t.at("point").dump() + " has ramification " + t.at("ramification").dump() +
                   " and tangent multiplicity " + t.at("tangent_multiplicity").dump());
    }
  }
  c.certificates("galois.certificate.G1", {1, 2}, points - 1);
  c.certificates("galois.certificate.G2", {1, 2}, points - 1);
  c.survivors_are_distinguished();
}

}  // namespace

int main() {
  std::vector<const Report*> all_runs;

  const Timed h3 = verify(Family::kHermitian, 3, true, true);
  all_runs.push_back(&h3.report);
  {
    Criterion c(h3.report);
    hermitian_common(c, 3);
    c.status("image.degree", Status::kPass);
    c.eq("image.degree", "degree", 28);
    c.eq("image.degree", "relation_one_below", false);
    c.status("sylow.audit", Status::kPass);
    c.eq("sylow.audit", "generated_order", 6048);
    c.eq("sylow.audit", "conjugates", 28);
    c.eq("sylow.audit", "conjugates_with_one_fixed_point", 28);
    c.eq("sylow.audit", "distinct_fixed_points", 28);
    const auto& audit = c.details("sylow.audit");
    if (audit.contains("order_at_least_q3")) {
      c.expect(audit.at("order_at_least_q3") == c.details("uniqueness.filter").at("survivors"),
               "points with tangent-pullback order >= 27 are not exactly P1 and P2");
    }
    c.runtime(h3.seconds, 120);
    emit(1, "Hermitian q=3", c, h3.seconds);
  }

  const Timed h4 = verify(Family::kHermitian, 4, true, false);
  all_runs.push_back(&h4.report);
  {
    Criterion c(h4.report);
    hermitian_common(c, 4);
    const auto* degree = h4.report.find("image.degree");
    c.expect(degree && (degree->status == Status::kPass || degree->status == Status::kSkip),
             "image.degree is neither exact nor an explicit skip");
    if (degree && degree->status == Status::kPass) c.eq("image.degree", "degree", 65);
    c.runtime(h4.seconds, 300);
    emit(2, "Hermitian q=4", c, h4.seconds);
  }

  const Timed sz = verify(Family::kSuzuki, 2, false, false);
  all_runs.push_back(&sz.report);
  {
    Criterion c(sz.report);
    c.all_pass();
    c.eq("curve.point_count", "points", 65);
    c.eq("group.G1", "order", 64);
    c.eq("group.G2", "order", 64);
    c.eq("group.psi", "points", 65);
    c.eq("group.psi", "involution_failures", 0);
    c.eq("group.psi", "swaps_P1_P2", true);
    c.eq("group.psi", "off_curve", 0);
    c.eq("curve.identities", "x^2_identity_rational_points", 64);
    c.eq("curve.identities", "failures", 0);
    c.eq("curve.aux_nonvanishing", "zeros", 0);
    c.eq("curve.aux_nonvanishing", "points_checked", 63);
    c.eq("census.fibers", "singular", 7);
    c.eq("census.fibers", "line_points", 9);
    c.eq("census.fibers", "singular_preimages", 63);
    const auto& census = c.details("census.fibers");
    c.expect(census.contains("smallest_singular_fiber") && census.at("smallest_singular_fiber").get<int>() >= 2,
             "a Suzuki fiber has fewer than 2 preimages");
    c.status("curve.spot_values", Status::kPass);
    c.eq("curve.spot_values", "failures", 0);
    c.expect(c.details("curve.spot_values").value("points_checked", 0) >= 7, "spot values do not cover F_8*");
    c.eq("orbit.G1_P2", "union_size", 65);
    c.eq("orbit.G2_P1", "union_size", 65);
    c.eq("group.intersection", "common_elements", 1);
    c.survivors_are_distinguished();
    c.runtime(sz.seconds, 60);
    emit(3, "Suzuki q0=2", c, sz.seconds);
  }

  const Timed ree = verify(Family::kRee, 3, false, false);
  all_runs.push_back(&ree.report);
  {
    Criterion c(ree.report);
    c.all_pass();
    c.eq("curve.point_count", "points", 19684);
    c.eq("group.G1", "order", 19683);
    c.eq("group.G2", "order", 19683);
    c.eq("orbit.G1_P2", "union_size", 19684);
    c.eq("orbit.G2_P1", "union_size", 19684);
    c.eq("group.intersection", "common_elements", 1);
    const auto& gate = c.details("curve.construction");
    c.expect(gate.contains("wtable_gate") && gate.at("wtable_gate").at("identity_points") == 19683 &&
                 gate.at("wtable_gate").at("identity_failures") == 0 &&
                 gate.at("wtable_gate").at("special_value_failures") == 0,
             "w-table gate did not pass at every affine point");
    c.status("curve.special_values", Status::kPass);
    c.eq("curve.special_values", "points_checked", 78);
    c.eq("curve.special_values", "failures_by_family", json{{"inverse_x", 0}, {"y1", 0}, {"y1_power", 0}});
    c.eq("field.minus_one_nonsquare", "is_square", false);
    c.eq("census.fibers", "singular", 26);
    const auto& census = c.details("census.fibers");
    c.expect(census.contains("smallest_singular_fiber") && census.at("smallest_singular_fiber").get<int>() >= 2,
             "a Ree fiber has fewer than 2 preimages");
    c.survivors_are_distinguished();
    c.status("sylow.audit", Status::kPaperTrusted);
    c.runtime(ree.seconds, 600);
    emit(4, "Ree q0=3", c, ree.seconds);
  }

  {
    Criterion c(h3.report);
    for (const Report* r : all_runs) {
      Criterion run(*r);
      const std::string label = r->family + ": ";
      const auto points = run.details("curve.point_count").value("points", 0);
      const auto& axioms = run.details("property.field_axioms");
      c.expect(axioms.value("failures", -1) == 0, label + "field axiom failures");
      for (const auto& f : axioms.value("fields", json::array())) {
        c.expect(f.at("triples").get<int>() >= 1000, label + "fewer than 1000 triples on " + f.at("field").get<std::string>());
      }
      for (const char* id : {"property.series_agreement", "property.derivative_identity"}) {
        const auto& d = run.details(id);
        c.expect(d.value("mismatches", -1) == 0, label + id + " mismatches");
        c.expect(d.value("points_checked", 0) == points - 2, label + id + " did not cover every affine point off P2");
      }
      const auto& fixtures = run.details("property.implicitize_fixtures");
      c.expect(fixtures.value("parabola_degree", 0) == 2 && fixtures.value("line_degree", 0) == 1,
               label + "implicitize fixtures");
      c.expect(run.ok(), label + run.summary());
    }
    emit(5, "property suites", c, 0);
  }

  return failures == 0 ? 0 : 1;
}
