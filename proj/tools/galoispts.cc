// galoispts: verification suites and artifact export for the Hermitian,
// Suzuki and Ree plane models with two inner Galois points.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "galoispts/curves.h"
#include "galoispts/galois.h"
#include "galoispts/groups.h"
#include "galoispts/local.h"
#include "galoispts/report.h"

using namespace galoispts;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

class Usage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonArgs {
  std::string family;
  std::optional<uint64_t> q, q0;
  std::string wtable;
  std::string output;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("family", a.family, "hermitian, suzuki or ree")->required();
  cmd->add_option("--q", a.q, "Hermitian parameter q (a prime power >= 3)");
  cmd->add_option("--q0", a.q0, "Suzuki or Ree parameter q0");
  cmd->add_option("--wtable", a.wtable, "Ree auxiliary-function table (default: the shipped table)");
}

std::pair<curves::Family, uint64_t> family_and_parameter(const CommonArgs& a) {
  const auto fam = curves::parse_family(a.family);
  if (!fam) throw Usage("unknown family '" + a.family + "'");
  if (*fam == curves::Family::kHermitian) {
    if (!a.q || a.q0) throw Usage("hermitian takes --q and not --q0");
    return {*fam, *a.q};
  }
  if (!a.q0 || a.q) throw Usage(a.family + " takes --q0 and not --q");
  return {*fam, *a.q0};
}

curves::Curve build_curve(const CommonArgs& a) {
  const auto [fam, param] = family_and_parameter(a);
  curves::CurveOptions opt;
  opt.wtable_path = a.wtable;
  return curves::make_curve(fam, param, opt);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Usage("cannot open " + path + " for writing");
  out << text;
  if (!out) throw Usage("write to " + path + " failed");
}

json point_json(const curves::CurvePoint& p) {
  if (p.at_infinity) return {{"tag", "at_infinity"}};
  json coords = json::array();
  for (const auto& v : p.coords) coords.push_back(v.field()->coeffs(v.value()));
  return {{"tag", "affine"}, {"coords", coords}};
}

// One coordinate: an integer encoding, a coefficient tuple "(c0,c1,...)", or
// a wildcard (any letter or "*") that matches every value.
std::vector<std::optional<ff::Elem>> parse_at(const std::string& text, const ff::Field* k) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  parts.push_back(cur);
  std::vector<std::optional<ff::Elem>> out;
  for (const auto& s : parts) {
    if (s.empty()) throw Usage("empty coordinate in --at");
    if (s == "*" || std::isalpha(static_cast<unsigned char>(s[0]))) {
      out.emplace_back(std::nullopt);
      continue;
    }
    if (s.front() == '(') {
      if (s.back() != ')') throw Usage("unbalanced tuple in --at");
      std::vector<uint32_t> cs;
      std::stringstream ss(s.substr(1, s.size() - 2));
      std::string tok;
      while (std::getline(ss, tok, ',')) cs.push_back(static_cast<uint32_t>(std::stoul(tok)));
      if (cs.size() > k->n()) throw Usage("tuple longer than the field degree in --at");
      for (auto c : cs) {
        if (c >= k->p()) throw Usage("tuple coefficient out of range in --at");
      }
      out.emplace_back(k->from_coeffs(cs));
      continue;
    }
    const unsigned long v = std::stoul(s);
    if (v >= k->size()) throw Usage("element encoding out of range in --at");
    out.emplace_back(static_cast<ff::Elem>(v));
  }
  return out;
}

curves::CurvePoint select_point(const curves::Curve& c, const std::vector<curves::CurvePoint>& pts,
                                const std::string& at) {
  if (at == "P1" || at == "at_infinity" || at == "inf") return c.p1();
  if (at == "P2") return c.p2();
  const auto want = parse_at(at, c.base_field().get());
  if (want.size() != c.dimension()) {
    throw Usage("--at needs " + std::to_string(c.dimension()) + " coordinates for " + c.label());
  }
  for (const auto& p : pts) {
    if (p.at_infinity) continue;
    bool match = true;
    for (size_t i = 0; i < want.size() && match; ++i) {
      if (want[i] && p.coords[i].value() != *want[i]) match = false;
    }
    if (match) return p;
  }
  throw Usage("no rational point matches --at " + at);
}

int cmd_verify(const CommonArgs& a, const report::VerifyOptions& base_opt, const std::string& format,
               const std::string& report_path) {
  auto opt = base_opt;
  const auto [fam, param] = family_and_parameter(a);
  opt.family = fam;
  opt.parameter = param;
  opt.wtable_path = a.wtable;
  if (format != "json" && format != "text") throw Usage("--format must be json or text");
  const auto rep = report::run_verify(opt);
  const std::string body = format == "json" ? rep.to_json().dump(2) + "\n" : rep.to_text();
  if (!report_path.empty()) {
    emit(body, report_path);
    std::cerr << rep.to_text();
  } else {
    std::cout << body;
  }
  return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification of plane models with two inner Galois points"};
  app.require_subcommand(1);
  app.set_version_flag("--version", report::kVersion);

  CommonArgs common;
  report::VerifyOptions vopt;
  std::string format = "json", report_path;
  std::optional<unsigned> extension;
  std::optional<int64_t> series_order;
  bool implicitization = false, sylow = false;

  auto* verify = app.add_subcommand("verify", "run the verification suite and write a report");
  add_common(verify, common);
  verify->add_option("--extension", extension, "extension degree for Galois certificates");
  verify->add_flag("--with-implicitization", implicitization, "run the image-degree interpolation");
  verify->add_flag("--with-sylow-audit", sylow, "run the Sylow conjugate audit (Hermitian)");
  verify->add_option("--series-order", series_order, "starting truncation order for series");
  verify->add_option("--report", report_path, "write the report here instead of standard output");
  verify->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  verify->add_flag("--stable", vopt.stable, "zero the timings so reports are byte-identical");
  verify->add_option("--seed", vopt.seed, "seed for the randomized property checks");

  auto* enumerate = app.add_subcommand("enumerate", "CSV of the rational points");
  add_common(enumerate, common);
  unsigned enum_ext = 1;
  enumerate->add_option("--extension", enum_ext, "list points over the degree-m extension of the base field");
  enumerate->add_option("--output", common.output, "output file (default standard output)");

  auto* orbit = app.add_subcommand("orbit", "orbit of a point under G1 or G2, as JSON");
  add_common(orbit, common);
  std::string group = "G1", at = "P2";
  bool with_elements = false;
  orbit->add_option("--group", group, "G1 or G2")->check(CLI::IsMember({"G1", "G2"}));
  orbit->add_option("--at", at, "P1, P2, or coordinates such as 1,b");
  orbit->add_flag("--elements", with_elements, "include the group elements as normalized matrices");
  orbit->add_option("--output", common.output, "output file (default standard output)");

  auto* census = app.add_subcommand("census", "fiber census of the rational points, as JSON");
  add_common(census, common);
  census->add_option("--output", common.output, "output file (default standard output)");

  auto* expand = app.add_subcommand("expand", "coordinate series at a rational point, as JSON");
  add_common(expand, common);
  int64_t order = 8;
  std::string expand_at;
  expand->add_option("--at", expand_at, "P1, or coordinates such as 1,b (letters match any value)")->required();
  expand->add_option("--order", order, "absolute truncation order")->check(CLI::Range(int64_t{1}, int64_t{1} << 20));
  expand->add_option("--output", common.output, "output file (default standard output)");

  auto* table = app.add_subcommand("image-table", "closed-form and series images of the rational points, as JSON");
  add_common(table, common);
  table->add_option("--output", common.output, "output file (default standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) {
      vopt.extension = extension;
      vopt.series_order = series_order;
      if (implicitization) vopt.implicitization = true;
      if (sylow) vopt.sylow_audit = true;
      return cmd_verify(common, vopt, format, report_path);
    }

    const curves::Curve c = build_curve(common);
    const auto policy = algebra::TruncationPolicy::for_q(c.q());

    if (enumerate->parsed()) {
      if (enum_ext < 1) throw Usage("--extension must be at least 1");
      const ff::Field* base = c.base_field().get();
      const auto k = ff::make_field(base->p(), base->n() * enum_ext);
      emit(curves::points_csv(c, curves::enumerate_points(c, k)), common.output);
      return kExitOk;
    }

    const auto pts = curves::enumerate_points(c, c.base_field());
    std::unique_ptr<groups::Psi> psi;
    if (c.family() != curves::Family::kHermitian) psi = std::make_unique<groups::Psi>(c);

    if (orbit->parsed()) {
      const auto g1 = groups::build_g1(c);
      const auto g = group == "G1" ? g1 : groups::build_g2(c, g1);
      const auto start = select_point(c, pts, at);
      json orb = json::array();
      for (const auto& p : groups::orbit(c, g, start, psi.get())) orb.push_back(point_json(p));
      json out = {{"curve", c.label()}, {"group", g.label}, {"order", g.order()}, {"start", point_json(start)},
                  {"orbit_size", orb.size()}, {"orbit", orb}};
      if (with_elements) out["elements"] = g.to_json()["elements"];
      emit(out.dump(2) + "\n", common.output);
      return kExitOk;
    }

    const auto morph = galois::build_morphism(c);

    if (census->parsed()) {
      const auto cen = galois::fiber_census(morph, policy);
      json out = {{"curve", c.label()},
                  {"counts",
                   {{"singular", cen.singular},
                    {"tangential", cen.tangential},
                    {"galois", cen.galois},
                    {"unramified", cen.unramified}}},
                  {"points", cen.points},
                  {"fibers", cen.to_json()}};
      emit(out.dump(2) + "\n", common.output);
      return kExitOk;
    }

    if (expand->parsed()) {
      const auto p = select_point(c, pts, expand_at);
      const auto expander = galois::expander_at(c, p);
      const auto coords = algebra::with_adaptive_order(algebra::TruncationPolicy{order, 4}, expander);
      json cs = json::object();
      for (size_t i = 0; i < coords.size(); ++i) {
        json terms = json::array();
        const auto& s = coords[i];
        if (!s.is_zero()) {
          const int64_t lo = std::min<int64_t>(0, s.valuation());
          const int64_t hi = std::min<int64_t>(order, s.abs_precision());
          for (int64_t e = lo; e < hi; ++e) {
            const auto v = s.coeff(e);
            if (v != 0) terms.push_back({{"exponent", e}, {"coefficient", s.field()->coeffs(v)}});
          }
        }
        cs[c.vars()[i]] = {{"precision", std::min<int64_t>(s.abs_precision(), order)}, {"terms", terms}};
      }
      std::string param = p.at_infinity ? "the chart parameter Z/X" : c.vars()[c.parameter_index()] + " minus its value";
      json out = {{"curve", c.label()}, {"point", point_json(p)}, {"order", order},
                  {"parameter", param}, {"coordinates", cs}};
      emit(out.dump(2) + "\n", common.output);
      return kExitOk;
    }

    if (table->parsed()) {
      json rows = json::array();
      for (const auto& p : pts) {
        json row = {{"point", point_json(p)}, {"image", galois::image_of(morph, p).to_json()}};
        if (!p.at_infinity && !p.is_origin()) row["series_image"] = galois::image_via_series(morph, p, policy).to_json();
        rows.push_back(row);
      }
      emit(json{{"curve", c.label()}, {"rows", rows}}.dump(2) + "\n", common.output);
      return kExitOk;
    }
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const report::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const curves::CurveError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const curves::WTableError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ff::SizeBoundError& e) {
    std::cerr << "resource bound exceeded: " << e.what() << "\n";
    return kExitResource;
  } catch (const groups::BoundExceeded& e) {
    std::cerr << "resource bound exceeded: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
