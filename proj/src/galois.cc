#include "galoispts/galois.h"

#include <algorithm>
#include <sstream>

namespace galoispts::galois {

using algebra::MultiPoly;
using ff::Elem;
using curves::Family;

namespace {

const ff::Field* prime_field(const Curve& c) { return ff::make_field(c.p(), 1).get(); }

Function coordinate(const Curve& c, size_t i) {
  return Function::poly(MultiPoly::variable(prime_field(c), c.vars(), i), c.vars()[i]);
}

Function aux(const Curve& c, const std::string& name) { return Function::poly(c.aux(name), name); }

std::vector<Felt> leading_vector(const std::array<Series, 3>& b) {
  int64_t minval = 0;
  for (const auto& s : b) minval = std::min(minval, s.valuation());
  std::vector<Felt> v;
  for (const auto& s : b) v.emplace_back(s.field(), s.coeff(minval));
  return v;
}

CurvePoint lift_point(const CurvePoint& p, const ff::Field* k) {
  if (p.at_infinity) return p;
  std::vector<Felt> coords;
  for (const auto& v : p.coords) coords.push_back(ff::lift(v, k));
  return CurvePoint::affine(std::move(coords));
}

std::array<Series, 3> branch(const MorphismSpec& m, const std::vector<Series>& coords) {
  const ff::Field* k = coords.front().field();
  return {m.f.series_at(coords), m.g.series_at(coords), Series::constant(k, 1)};
}

}  // namespace

ProjPoint ProjPoint::make(Felt x, Felt y, Felt z) {
  ProjPoint p{{x, y, z}};
  int last = 2;
  while (last >= 0 && p.c[last].is_zero()) --last;
  if (last < 0) throw std::invalid_argument("(0:0:0) is not a projective point");
  const Felt s = p.c[last].inv();
  for (auto& v : p.c) v = v * s;
  return p;
}

bool ProjPoint::operator<(const ProjPoint& o) const {
  for (int i = 2; i >= 0; --i) {
    if (c[i].value() != o.c[i].value()) return c[i].value() < o.c[i].value();
  }
  return false;
}

std::string ProjPoint::str() const { return "(" + c[0].str() + ":" + c[1].str() + ":" + c[2].str() + ")"; }

nlohmann::json ProjPoint::to_json() const {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& v : c) a.push_back(v.field()->coeffs(v.value()));
  return a;
}

MorphismSpec build_morphism(const Curve& c) {
  MorphismSpec m;
  m.curve = &c;
  const ff::Field* fp = prime_field(c);
  const Function one = Function::constant(fp, 1);
  const auto q = static_cast<int64_t>(c.q());
  switch (c.family()) {
    case Family::kHermitian: {
      const Function x = coordinate(c, 0), y = coordinate(c, 1);
      const int64_t q2 = q * q;
      m.t1 = y.pow(q2) - y;
      m.t2 = (y / x).pow(q2) - y / x;
      m.g = x.pow(q2) / (y.pow(q2) - x.pow(q2 - 1) * y);
      break;
    }
    case Family::kSuzuki: {
      const Function x = coordinate(c, 0), y = coordinate(c, 1), h = aux(c, "h");
      m.t1 = y.pow(q) + y;
      m.t2 = (x / h).pow(q) + x / h;
      m.g = h.pow(q) / (x.pow(q) + h.pow(q - 1) * x);
      break;
    }
    case Family::kRee: {
      const Function x = coordinate(c, 0), w6 = aux(c, "w6"), w8 = aux(c, "w8");
      m.t1 = x.pow(q) - x;
      m.t2 = (w6 / w8).pow(q) - w6 / w8;
      m.g = w8.pow(q) / (w6.pow(q) - w8.pow(q - 1) * w6);
      break;
    }
  }
  m.f = one / m.t1;
  return m;
}

algebra::Expander expander_at(const Curve& c, const CurvePoint& p) {
  if (!p.at_infinity) {
    const auto coords = p.coords;
    const auto* eqs = &c.equations();
    const size_t param = c.parameter_index();
    return [coords, eqs, param](int64_t order) { return algebra::lift_branch(*eqs, coords, param, order); };
  }
  if (c.family() != Family::kHermitian) {
    throw curves::PreconditionError("the point over infinity of " + c.label() + " has no expansion on this model");
  }
  const auto* chart = &c.chart_equations();
  const ff::Field* k = c.base_field().get();
  return [chart, k](int64_t order) {
    const std::vector<Felt> origin = {Felt(k, 0), Felt(k, 0)};
    const auto yz = algebra::lift_branch(*chart, origin, 0, order);
    const Series x = yz[1].inv();
    return std::vector<Series>{x, yz[0] * x};
  };
}

bool LineValue::operator<(const LineValue& o) const {
  if (infinite != o.infinite) return o.infinite;
  return !infinite && value.value() < o.value.value();
}

std::string LineValue::str() const { return infinite ? "inf" : value.str(); }

LineValue quotient_value(const MorphismSpec& m, int which, const CurvePoint& p, const TruncationPolicy& policy) {
  const Curve& c = *m.curve;
  if (p.at_infinity) {
    if (which == 1) return {true, {}};
    return {false, Felt(c.base_field().get(), 0)};
  }
  // t2 = t1 o psi for the Suzuki and Ree families, and psi(P2) = P1.
  if (which == 2 && c.family() != Family::kHermitian && p.is_origin()) return {true, {}};
  const Function& t = which == 1 ? m.t1 : m.t2;
  if (auto v = t.value_at(p.coords)) return {false, *v};
  const auto expand = expander_at(c, p);
  return algebra::with_adaptive_order(policy, [&](int64_t order) -> LineValue {
    const Series s = t.series_at(expand(order));
    if (s.valuation() < 0) return {true, {}};
    return {false, Felt(s.field(), s.coeff(0))};
  });
}

CheckResult check_invariance(const MorphismSpec& m, const groups::AutomorphismGroup& g1,
                             const groups::AutomorphismGroup& g2, const std::vector<CurvePoint>& points,
                             const groups::Psi* psi) {
  CheckResult r = make_check("morphism.invariance", "quotient functions are invariant under their groups");
  Stopwatch sw;
  const TruncationPolicy policy = TruncationPolicy::for_q(m.curve->q());
  size_t evaluations = 0, failures = 0;
  for (int which : {1, 2}) {
    const auto& g = which == 1 ? g1 : g2;
    std::map<CurvePoint, LineValue> value;
    for (const auto& p : points) value.emplace(p, quotient_value(m, which, p, policy));
    const bool all = g.order() <= 10000;
    const auto& movers = all ? g.elements : g.generators;
    for (const auto& e : movers) {
      for (const auto& p : points) {
        ++evaluations;
        if (!(value.at(groups::act(*m.curve, e, p, psi)) == value.at(p))) ++failures;
      }
    }
    r.details[which == 1 ? "t1_elements" : "t2_elements"] = movers.size();
  }
  r.details["t1"] = m.t1.str();
  r.details["t2"] = m.t2.str();
  r.details["evaluations"] = evaluations;
  r.details["failures"] = failures;
  r.require(failures == 0);
  r.duration_ms = sw.ms();
  return r;
}

ProjPoint image_of(const MorphismSpec& m, const CurvePoint& p) {
  const Curve& c = *m.curve;
  const ff::Field* k = p.at_infinity ? c.base_field().get() : p.field();
  const Felt zero(k, 0), one(k, 1);
  if (p.at_infinity) return ProjPoint::make(zero, one, zero);
  if (p.is_origin()) return ProjPoint::make(one, zero, zero);
  switch (c.family()) {
    case Family::kHermitian: {
      const Felt a = p.coords[0];
      if (a.is_zero()) throw curves::PreconditionError("x vanishes at " + p.str());
      return ProjPoint::make(-a.pow(static_cast<int64_t>(c.q()) - 2), one, zero);
    }
    case Family::kSuzuki: {
      const Felt h = c.aux("h").eval(p.coords);
      if (h.is_zero()) throw curves::PreconditionError("h vanishes at " + p.str() + " which is not P2");
      return ProjPoint::make(h.pow(2 * static_cast<int64_t>(c.q0()) - 2), one, zero);
    }
    case Family::kRee: {
      const Felt w8 = c.aux("w8").eval(p.coords);
      if (w8.is_zero()) throw curves::PreconditionError("w8 vanishes at " + p.str() + " which is not P2");
      return ProjPoint::make(w8.pow(3 * static_cast<int64_t>(c.q0()) - 2), one, zero);
    }
  }
  throw std::logic_error("unknown family");
}

ProjPoint image_via_series(const MorphismSpec& m, const CurvePoint& p, const TruncationPolicy& policy) {
  const auto expand = expander_at(*m.curve, p);
  return algebra::with_adaptive_order(policy, [&](int64_t order) {
    const auto v = leading_vector(branch(m, expand(order)));
    return ProjPoint::make(v[0], v[1], v[2]);
  });
}

std::string to_string(FiberClass k) {
  switch (k) {
    case FiberClass::kGalois: return "galois";
    case FiberClass::kSingular: return "singular";
    case FiberClass::kTangential: return "tangential";
    case FiberClass::kUnramified: return "unramified";
  }
  return "?";
}

int64_t ramification_at(const MorphismSpec& m, const CurvePoint& p, const ProjPoint& center,
                        const TruncationPolicy& policy) {
  if (!center.on_line_at_infinity()) throw std::invalid_argument("projection centers lie on Z = 0");
  const auto expand = expander_at(*m.curve, p);
  return algebra::with_adaptive_order(policy, [&](int64_t order) -> int64_t {
    const auto coords = expand(order);
    const ff::Field* k = coords.front().field();
    const Elem c0 = ff::lift(center.c[0], k).value(), c1 = ff::lift(center.c[1], k).value();
    const Series coord = m.f.series_at(coords).scale(c1) - m.g.series_at(coords).scale(c0);
    const int64_t v = coord.valuation();
    if (v < 0) return -v;
    return (coord - Series::constant(k, coord.coeff(0))).valuation();
  });
}

FiberCensus fiber_census(const MorphismSpec& m, const TruncationPolicy& policy) {
  const Curve& c = *m.curve;
  const auto points = curves::enumerate_points(c, c.base_field());
  std::map<ProjPoint, std::vector<CurvePoint>> by_image;
  FiberCensus census;
  census.points = points.size();
  for (const auto& p : points) {
    const ProjPoint img = image_of(m, p);
    census.all_on_line = census.all_on_line && img.on_line_at_infinity();
    by_image[img].push_back(p);
  }
  for (auto& [img, pre] : by_image) {
    Fiber f{img, std::move(pre), FiberClass::kSingular, std::nullopt};
    if (f.preimages.size() == 1) {
      const CurvePoint& p = f.preimages.front();
      if (p == c.p1() || p == c.p2()) {
        f.klass = FiberClass::kGalois;
        ++census.galois;
      } else {
        f.ramification = ramification_at(m, p, img, policy);
        f.klass = *f.ramification > 1 ? FiberClass::kTangential : FiberClass::kUnramified;
        ++(*f.ramification > 1 ? census.tangential : census.unramified);
      }
    } else {
      ++census.singular;
    }
    census.fibers.push_back(std::move(f));
  }
  return census;
}

nlohmann::json FiberCensus::to_json() const {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& f : fibers) {
    nlohmann::json pre = nlohmann::json::array();
    for (const auto& p : f.preimages) {
      if (p.at_infinity) {
        pre.push_back("at_infinity");
        continue;
      }
      nlohmann::json coords = nlohmann::json::array();
      for (const auto& v : p.coords) coords.push_back(v.field()->coeffs(v.value()));
      pre.push_back(coords);
    }
    nlohmann::json e = {{"image", f.image.to_json()}, {"preimages", pre}, {"class", to_string(f.klass)}};
    if (f.ramification) e["ramification"] = *f.ramification;
    a.push_back(e);
  }
  return a;
}

int64_t tangent_pullback_order(const MorphismSpec& m, const CurvePoint& p, const TruncationPolicy& policy) {
  const auto expand = expander_at(*m.curve, p);
  return algebra::with_adaptive_order(policy, [&](int64_t order) -> int64_t {
    auto b = branch(m, expand(order));
    const ff::Field* k = b[0].field();
    int64_t minval = 0;
    for (const auto& s : b) minval = std::min(minval, s.valuation());
    for (auto& s : b) s = s * Series::monomial(k, 1, -minval);
    std::array<Elem, 3> p0{}, pk{};
    for (int i = 0; i < 3; ++i) p0[i] = b[i].coeff(0);
    auto proportional = [&](const std::array<Elem, 3>& v) {
      for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
          if (k->mul(p0[i], v[j]) != k->mul(p0[j], v[i])) return false;
        }
      }
      return true;
    };
    for (int64_t e = 1;; ++e) {
      for (int i = 0; i < 3; ++i) pk[i] = b[i].coeff(e);
      if (!proportional(pk)) break;
    }
    const std::array<Elem, 3> line = {k->sub(k->mul(p0[1], pk[2]), k->mul(p0[2], pk[1])),
                                      k->sub(k->mul(p0[2], pk[0]), k->mul(p0[0], pk[2])),
                                      k->sub(k->mul(p0[0], pk[1]), k->mul(p0[1], pk[0]))};
    Series pulled = Series::zero(k);
    for (int i = 0; i < 3; ++i) pulled = pulled + b[i].scale(line[i]);
    return pulled.valuation();
  });
}

nlohmann::json GaloisCertificate::to_json() const {
  return {{"group", group},
          {"quotient", "t" + std::to_string(quotient)},
          {"m", m},
          {"field", field},
          {"points", points},
          {"fibers", fibers},
          {"non_orbit_fibers", non_orbit_fibers},
          {"generic_fiber_size", generic_fiber_size},
          {"group_order", group_order},
          {"granted", granted}};
}

GaloisCertificate galois_certificate(const MorphismSpec& m, const groups::AutomorphismGroup& g, int which,
                                     unsigned ext, const TruncationPolicy& policy, const groups::Psi* psi) {
  const Curve& c = *m.curve;
  const ff::Field* base = c.base_field().get();
  const ff::FieldPtr k = ff::make_field(base->p(), base->n() * ext);
  GaloisCertificate cert;
  cert.group = g.label;
  cert.quotient = which;
  cert.m = ext;
  cert.field = k->name();
  cert.group_order = g.order();
  const auto points = curves::enumerate_points(c, k);
  cert.points = points.size();
  std::map<LineValue, std::vector<CurvePoint>> fibers;
  for (const auto& p : points) {
    // Lift the point over infinity's constant rules into the extension.
    LineValue v = quotient_value(m, which, p, policy);
    if (!v.infinite) v.value = ff::lift(v.value, k.get());
    fibers[v].push_back(p);
  }
  cert.fibers = fibers.size();
  std::map<size_t, size_t> size_count;
  for (const auto& [v, pts] : fibers) {
    std::set<CurvePoint> orb;
    for (const auto& q : groups::orbit(c, g, pts.front(), psi)) orb.insert(lift_point(q, k.get()));
    if (orb != std::set<CurvePoint>(pts.begin(), pts.end())) ++cert.non_orbit_fibers;
    if (!v.infinite) ++size_count[pts.size()];
  }
  size_t best = 0;
  for (const auto& [size, count] : size_count) {
    if (count >= best) {
      best = count;
      cert.generic_fiber_size = size;
    }
  }
  cert.granted = cert.non_orbit_fibers == 0 && cert.generic_fiber_size == g.order();
  return cert;
}

std::vector<std::pair<ff::Elem, ff::Elem>> image_samples(const MorphismSpec& m, unsigned ext, size_t count,
                                                         const ff::Field** field_out) {
  const Curve& c = *m.curve;
  const ff::Field* base = c.base_field().get();
  const ff::FieldPtr k = ff::make_field(base->p(), base->n() * ext);
  *field_out = k.get();
  std::vector<std::pair<ff::Elem, ff::Elem>> usable;
  std::set<std::pair<ff::Elem, ff::Elem>> seen;
  for (const auto& p : curves::enumerate_points(c, k)) {
    if (p.at_infinity) continue;
    const auto f = m.f.value_at(p.coords);
    if (!f) continue;
    const auto g = m.g.value_at(p.coords);
    if (!g) continue;
    if (seen.emplace(f->value(), g->value()).second) usable.emplace_back(f->value(), g->value());
  }
  if (usable.size() <= count) return usable;
  // Evenly spaced picks: neighbours in canonical order share x and cluster on
  // a few fibers of t1.
  std::vector<std::pair<ff::Elem, ff::Elem>> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) out.push_back(usable[i * usable.size() / count]);
  return out;
}

DegreeResult image_degree(const MorphismSpec& m, unsigned ext, unsigned dmax, const algebra::ImplicitizeOptions& opt) {
  DegreeResult res;
  const ff::Field* k = nullptr;
  const size_t need = algebra::samples_needed(dmax, opt);
  const auto samples = image_samples(m, ext, need, &k);
  res.field = k->name();
  res.samples = samples.size();
  if (samples.size() < need) {
    throw algebra::InsufficientSamples("only " + std::to_string(samples.size()) + " samples over " + k->name() +
                                       ", degree " + std::to_string(dmax) + " needs " + std::to_string(need));
  }
  const auto found = algebra::minimal_relation_degree(k, samples, dmax, opt);
  if (!found) throw std::runtime_error("no relation of degree <= " + std::to_string(dmax));
  res.degree = *found;
  res.tested = {dmax, res.degree};
  const auto relation = algebra::implicitize(k, samples, res.degree, opt);
  if (!relation) throw std::runtime_error("no relation at the degree the elimination reported");
  if (res.degree > 1) {
    res.tested.push_back(res.degree - 1);
    res.below_has_relation = algebra::implicitize(k, samples, res.degree - 1, opt).has_value();
  }
  const auto& rel = *relation;
  res.relation_terms = rel.num_terms();
  res.relation_checksum = curves::fnv1a(rel.str());
  return res;
}

UniquenessResult uniqueness_filter(const MorphismSpec& m, const FiberCensus& census,
                                   const std::vector<groups::SylowConjugate>* sylow, size_t generated_order,
                                   const TruncationPolicy& policy) {
  const Curve& c = *m.curve;
  UniquenessResult r;
  for (const auto& f : census.fibers) {
    if (f.preimages.size() == 1) r.candidates.push_back(f.preimages.front());
  }
  std::sort(r.candidates.begin(), r.candidates.end());
  if (c.family() != Family::kHermitian) {
    r.survivors = r.candidates;
    return r;
  }
  std::set<CurvePoint> sylow_fixed;
  if (sylow) {
    r.audited = true;
    r.generated_order = generated_order;
    r.sylow_conjugates = sylow->size();
    for (const auto& s : *sylow) {
      if (s.fixed_points.size() == 1) {
        ++r.conjugates_with_one_fixed_point;
        sylow_fixed.insert(s.fixed_points.front());
      }
    }
  }
  const auto q3 = static_cast<int64_t>(c.q() * c.q() * c.q());
  for (const auto& p : r.candidates) {
    const int64_t order = tangent_pullback_order(m, p, policy);
    r.pullback_orders[p] = order;
    const bool fixed = !sylow || sylow_fixed.count(p);
    if (fixed && order >= q3) r.survivors.push_back(p);
  }
  return r;
}

}  // namespace galoispts::galois
