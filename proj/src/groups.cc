#include "galoispts/groups.h"

#include <algorithm>
#include <deque>

namespace galoispts::groups {

namespace {

nlohmann::json felt_json(const ff::Field* f, Elem v) {
  const auto c = f->coeffs(v);
  return nlohmann::json(c);
}

Matrix from_rows(const ff::Field* f, const std::vector<std::vector<Felt>>& rows) {
  Matrix m{f, rows.size(), {}};
  for (const auto& r : rows) {
    for (const auto& v : r) m.a.push_back(v.value());
  }
  return m.normalized();
}

}  // namespace

Matrix Matrix::identity(const ff::Field* f, size_t n) {
  Matrix m{f, n, std::vector<Elem>(n * n, 0)};
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (field != o.field || n != o.n) throw std::invalid_argument("matrix shapes or fields differ");
  Matrix r{field, n, std::vector<Elem>(n * n, 0)};
  for (size_t i = 0; i < n; ++i) {
    for (size_t k = 0; k < n; ++k) {
      const Elem x = at(i, k);
      if (x == 0) continue;
      for (size_t j = 0; j < n; ++j) r.at(i, j) = field->add(r.at(i, j), field->mul(x, o.at(k, j)));
    }
  }
  return r;
}

Matrix Matrix::inverse() const {
  Matrix m = *this;
  Matrix r = identity(field, n);
  const ff::Field* f = field;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && m.at(piv, c) == 0) ++piv;
    if (piv == n) throw std::domain_error("singular matrix");
    for (size_t j = 0; j < n; ++j) {
      std::swap(m.at(c, j), m.at(piv, j));
      std::swap(r.at(c, j), r.at(piv, j));
    }
    const Elem s = f->inv(m.at(c, c));
    for (size_t j = 0; j < n; ++j) {
      m.at(c, j) = f->mul(m.at(c, j), s);
      r.at(c, j) = f->mul(r.at(c, j), s);
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || m.at(i, c) == 0) continue;
      const Elem k = f->neg(m.at(i, c));
      for (size_t j = 0; j < n; ++j) {
        m.at(i, j) = f->add(m.at(i, j), f->mul(k, m.at(c, j)));
        r.at(i, j) = f->add(r.at(i, j), f->mul(k, r.at(c, j)));
      }
    }
  }
  return r;
}

Matrix Matrix::normalized() const {
  Matrix r = *this;
  const auto it = std::find_if(a.begin(), a.end(), [](Elem v) { return v != 0; });
  if (it == a.end() || *it == 1) return r;
  const Elem s = field->inv(*it);
  for (auto& v : r.a) v = field->mul(v, s);
  return r;
}

bool Matrix::is_scalar() const {
  const Elem d = a.empty() ? 0 : a[0];
  if (d == 0) return false;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (at(i, j) != (i == j ? d : 0)) return false;
    }
  }
  return true;
}

std::vector<Felt> Matrix::apply(const std::vector<Felt>& v) const {
  const ff::Field* k = v.front().field();
  std::vector<Felt> out(n, Felt(k, 0));
  const ff::FieldEmbedding* e = k == field ? nullptr : &ff::embedding(field, k);
  for (size_t i = 0; i < n; ++i) {
    Elem acc = 0;
    for (size_t j = 0; j < n; ++j) {
      const Elem m = e ? (*e)(at(i, j)) : at(i, j);
      if (m != 0 && v[j].value() != 0) acc = k->add(acc, k->mul(m, v[j].value()));
    }
    out[i] = Felt(k, acc);
  }
  return out;
}

nlohmann::json Matrix::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (size_t i = 0; i < n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (size_t j = 0; j < n; ++j) row.push_back(felt_json(field, at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Automorphism Automorphism::operator*(const Automorphism& o) const {
  if (conjugated != o.conjugated) throw std::invalid_argument("cannot compose plain and conjugated elements");
  return {(inner * o.inner).normalized(), conjugated, {}};
}

Automorphism Automorphism::inverse() const { return {inner.inverse().normalized(), conjugated, {}}; }

std::vector<Elem> Automorphism::key() const {
  std::vector<Elem> k = inner.a;
  k.push_back(conjugated ? 1 : 0);
  return k;
}

nlohmann::json Automorphism::to_json() const {
  if (!conjugated) return inner.to_json();
  return {{"inner", inner.to_json()}, {"conjugated", true}};
}

bool AutomorphismGroup::contains(const Automorphism& g) const { return keys_.count(g.key()) != 0; }

void AutomorphismGroup::index() {
  keys_.clear();
  for (const auto& e : elements) keys_.insert(e.key());
}

nlohmann::json AutomorphismGroup::to_json() const {
  nlohmann::json els = nlohmann::json::array();
  for (const auto& e : elements) els.push_back(e.to_json());
  return {{"label", label}, {"order", elements.size()}, {"elements", els}};
}

Psi::Psi(const Curve& c) : curve_(&c) {
  if (c.family() == curves::Family::kHermitian) throw curves::CurveError("the Hermitian family has no psi");
}

CurvePoint Psi::operator()(const CurvePoint& p) const {
  if (p.at_infinity) return curve_->p2();
  if (p.is_origin()) return CurvePoint::infinity();
  if (auto it = cache_.find(p); it != cache_.end()) return it->second;
  CurvePoint out;
  if (curve_->family() == curves::Family::kSuzuki) {
    const Felt h = curve_->aux("h").eval(p.coords);
    if (h.is_zero()) throw curves::PreconditionError("h vanishes at " + p.str() + " which is not P2");
    out = CurvePoint::affine({p.coords[1] / h, p.coords[0] / h});
  } else {
    const Felt w8 = curve_->aux("w8").eval(p.coords);
    if (w8.is_zero()) throw curves::PreconditionError("w8 vanishes at " + p.str() + " which is not P2");
    out = CurvePoint::affine({curve_->aux("w6").eval(p.coords) / w8, curve_->aux("w10").eval(p.coords) / w8,
                              curve_->aux("w9").eval(p.coords) / w8});
  }
  cache_.emplace(p, out);
  return out;
}

namespace {

CurvePoint act_matrix(const Curve& c, const Matrix& m, const CurvePoint& p) {
  const size_t n = m.n;
  std::vector<Felt> v;
  if (p.at_infinity) {
    const ff::Field* f = m.field;
    v.assign(n, Felt(f, 0));
    v[n == 3 ? 0 : 2] = Felt(f, 1);
  } else {
    v = p.coords;
    v.push_back(Felt(p.field(), 1));
  }
  const auto w = m.apply(v);
  if (w[n - 1].is_zero()) {
    if (c.family() == curves::Family::kHermitian && !w[1].is_zero()) {
      throw std::logic_error("image of " + p.str() + " is a point at infinity other than P1");
    }
    return CurvePoint::infinity();
  }
  const Felt s = w[n - 1].inv();
  std::vector<Felt> coords;
  for (size_t i = 0; i + 1 < n; ++i) coords.push_back(w[i] * s);
  return CurvePoint::affine(std::move(coords));
}

}  // namespace

CurvePoint act(const Curve& c, const Automorphism& g, const CurvePoint& p, const Psi* psi) {
  CurvePoint out;
  if (g.conjugated) {
    if (!psi) throw std::invalid_argument("conjugated element needs psi");
    out = (*psi)(act_matrix(c, g.inner, (*psi)(p)));
  } else {
    out = act_matrix(c, g.inner, p);
  }
  if (!curves::contains(c, out)) throw std::logic_error("image of " + p.str() + " is off the curve");
  return out;
}

AutomorphismGroup build_g1(const Curve& c) {
  AutomorphismGroup g;
  g.label = "G1";
  const ff::FieldPtr& k = c.base_field();
  const ff::Field* f = k.get();
  const Felt zero(f, 0), one(f, 1);
  const auto q = static_cast<int64_t>(c.q());
  switch (c.family()) {
    case curves::Family::kHermitian: {
      const ff::ArtinSchreier as(k, c.q(), ff::Sign::kPlus);
      for (Elem av = 0; av < f->size(); ++av) {
        const Felt a(f, av);
        for (Elem bv : as.solve(a.pow(q + 1).value())) {
          const Felt b(f, bv);
          g.elements.push_back({from_rows(f, {{one, a.pow(q), b}, {zero, one, a}, {zero, zero, one}}), false, {a, b}});
        }
      }
      break;
    }
    case curves::Family::kSuzuki: {
      const auto e = static_cast<int64_t>(2 * c.q0());
      for (Elem av = 0; av < f->size(); ++av) {
        for (Elem bv = 0; bv < f->size(); ++bv) {
          const Felt a(f, av), b(f, bv);
          g.elements.push_back({from_rows(f, {{one, a.pow(e), b}, {zero, one, a}, {zero, zero, one}}), false, {a, b}});
        }
      }
      break;
    }
    case curves::Family::kRee: {
      const auto e = static_cast<int64_t>(c.q0());
      for (Elem av = 0; av < f->size(); ++av) {
        const Felt a(f, av);
        const Felt a1 = a.pow(e), a2 = a.pow(2 * e);
        for (Elem bv = 0; bv < f->size(); ++bv) {
          for (Elem cv = 0; cv < f->size(); ++cv) {
            const Felt b(f, bv), cc(f, cv);
            g.elements.push_back({from_rows(f, {{one, zero, zero, a}, {a1, one, zero, b}, {a2, -a1, one, cc},
                                                {zero, zero, zero, one}}),
                                  false,
                                  {a, b, cc}});
          }
        }
      }
      break;
    }
  }
  g.index();
  // Generators: elements whose parameters run over an F_p-basis in one slot.
  if (c.family() == curves::Family::kHermitian) {
    std::set<std::vector<Elem>> reached = {g.elements.front().key()};
    for (const auto& e : g.elements) {
      if (reached.count(e.key())) continue;
      g.generators.push_back(e);
      std::deque<Automorphism> frontier(g.elements.begin(), g.elements.begin() + 1);
      reached = {g.elements.front().key()};
      while (!frontier.empty()) {
        const Automorphism x = frontier.front();
        frontier.pop_front();
        for (const auto& s : g.generators) {
          const Automorphism y = s * x;
          if (reached.insert(y.key()).second) frontier.push_back(y);
        }
      }
    }
  } else {
    const unsigned n = f->n();
    const size_t slots = c.family() == curves::Family::kRee ? 3 : 2;
    for (size_t slot = 0; slot < slots; ++slot) {
      for (unsigned i = 0; i < n; ++i) {
        const Felt beta(f, f->pow(f->x() == 0 ? 1 : f->x(), i));
        for (const auto& e : g.elements) {
          bool match = true;
          for (size_t s = 0; s < slots; ++s) match = match && e.params[s] == (s == slot ? beta : zero);
          if (match) {
            g.generators.push_back(e);
            break;
          }
        }
      }
    }
  }
  return g;
}

AutomorphismGroup build_g2(const Curve& c, const AutomorphismGroup& g1) {
  AutomorphismGroup g;
  g.label = "G2";
  if (c.family() == curves::Family::kHermitian) {
    const ff::FieldPtr& k = c.base_field();
    const ff::Field* f = k.get();
    const Felt zero(f, 0), one(f, 1);
    const auto q = static_cast<int64_t>(c.q());
    const ff::ArtinSchreier as(k, c.q(), ff::Sign::kPlus);
    for (Elem cv = 0; cv < f->size(); ++cv) {
      const Felt cc(f, cv);
      for (Elem dv : as.solve(cc.pow(q + 1).value())) {
        const Felt d(f, dv);
        g.elements.push_back({from_rows(f, {{one, zero, zero}, {cc, one, zero}, {d, cc.pow(q), one}}), false, {cc, d}});
      }
    }
    // Transposed counterparts of the G1 generators generate G2.
    std::set<std::vector<Elem>> gens;
    for (const auto& s : g1.generators) {
      const Felt a = s.params[0], b = s.params[1];
      for (const auto& e : g.elements) {
        if (e.params[0] == a.pow(q) && e.params[1] == b && gens.insert(e.key()).second) {
          g.generators.push_back(e);
          break;
        }
      }
    }
  } else {
    for (const auto& e : g1.elements) g.elements.push_back({e.inner, true, e.params});
    for (const auto& e : g1.generators) g.generators.push_back({e.inner, true, e.params});
  }
  g.index();
  return g;
}

CheckResult verify_group(const Curve& c, const AutomorphismGroup& g, const std::vector<CurvePoint>& points,
                         const Psi* psi) {
  CheckResult r = make_check("group." + g.label, "group axioms and action of " + g.label);
  Stopwatch sw;
  const bool exhaustive = g.order() <= 10000;
  const bool has_identity = !g.elements.empty() && g.elements.front().is_identity();
  size_t closure_failures = 0, inverse_failures = 0, action_failures = 0, products = 0;
  const auto& left = exhaustive ? g.elements : g.generators;
  for (const auto& a : left) {
    for (const auto& b : g.elements) {
      ++products;
      if (!g.contains(a * b)) ++closure_failures;
    }
  }
  for (const auto& a : g.elements) {
    if (!g.contains(a.inverse())) ++inverse_failures;
  }
  const std::set<CurvePoint> pset(points.begin(), points.end());
  const auto& movers = exhaustive ? g.elements : g.generators;
  for (const auto& a : movers) {
    std::set<CurvePoint> image;
    try {
      for (const auto& p : points) image.insert(act(c, a, p, psi));
    } catch (const std::logic_error&) {
      ++action_failures;
      continue;
    }
    if (image != pset) ++action_failures;
  }
  r.details["order"] = g.order();
  r.details["mode"] = exhaustive ? "exhaustive" : "generators-times-elements";
  r.details["generators"] = g.generators.size();
  r.details["products_checked"] = products;
  r.details["identity_present"] = has_identity;
  r.details["closure_failures"] = closure_failures;
  r.details["inverse_failures"] = inverse_failures;
  r.details["elements_acting_on_points"] = movers.size();
  r.details["action_failures"] = action_failures;
  r.require(has_identity && closure_failures == 0 && inverse_failures == 0 && action_failures == 0);
  if (!g.elements.empty() && g.elements.front().conjugated) {
    size_t involution_failures = 0;
    for (const auto& p : points) {
      if ((*psi)((*psi)(p)) != p) ++involution_failures;
    }
    const bool swaps = (*psi)(c.p1()) == c.p2() && (*psi)(c.p2()) == c.p1();
    r.details["psi_involution_failures"] = involution_failures;
    r.details["psi_swaps_P1_P2"] = swaps;
    r.require(involution_failures == 0 && swaps);
  }
  r.duration_ms = sw.ms();
  return r;
}

std::set<CurvePoint> orbit(const Curve& c, const AutomorphismGroup& g, const CurvePoint& p, const Psi* psi) {
  std::set<CurvePoint> out;
  for (const auto& e : g.elements) out.insert(act(c, e, p, psi));
  return out;
}

std::vector<std::pair<size_t, size_t>> common_elements(const Curve& c, const AutomorphismGroup& a,
                                                       const AutomorphismGroup& b,
                                                       const std::vector<CurvePoint>& points, const Psi* psi) {
  std::vector<CurvePoint> probes;
  for (size_t i = 0; i < points.size() && probes.size() < 6; i += std::max<size_t>(1, points.size() / 6)) {
    probes.push_back(points[i]);
  }
  auto signature = [&](const Automorphism& e) {
    std::vector<CurvePoint> s;
    for (const auto& p : probes) s.push_back(act(c, e, p, psi));
    return s;
  };
  std::map<std::vector<CurvePoint>, std::vector<size_t>> by_sig;
  for (size_t i = 0; i < a.elements.size(); ++i) by_sig[signature(a.elements[i])].push_back(i);
  std::vector<std::pair<size_t, size_t>> out;
  for (size_t j = 0; j < b.elements.size(); ++j) {
    auto it = by_sig.find(signature(b.elements[j]));
    if (it == by_sig.end()) continue;
    for (size_t i : it->second) {
      const auto& x = a.elements[i];
      const auto& y = b.elements[j];
      bool same = !x.conjugated && !y.conjugated ? x.inner == y.inner : true;
      for (size_t k = 0; same && k < points.size(); ++k) same = act(c, x, points[k], psi) == act(c, y, points[k], psi);
      if (same) out.emplace_back(i, j);
    }
  }
  return out;
}

bool intersect_trivial(const Curve& c, const AutomorphismGroup& a, const AutomorphismGroup& b,
                       const std::vector<CurvePoint>& points, const Psi* psi) {
  const auto common = common_elements(c, a, b, points, psi);
  return common.size() == 1 && a.elements[common[0].first].is_identity() &&
         b.elements[common[0].second].is_identity();
}

AutomorphismGroup generate(const Curve& c, const std::vector<Automorphism>& gens, size_t bound, std::string label) {
  if (c.family() != curves::Family::kHermitian) throw std::invalid_argument("generation is limited to the Hermitian family");
  AutomorphismGroup g;
  g.label = std::move(label);
  g.generators = gens;
  const Automorphism id{Matrix::identity(c.base_field().get(), 3), false, {}};
  std::set<std::vector<Elem>> seen = {id.key()};
  g.elements.push_back(id);
  for (size_t head = 0; head < g.elements.size(); ++head) {
    for (const auto& s : gens) {
      if (s.conjugated) throw std::invalid_argument("generation needs unconjugated generators");
      Automorphism y = s * g.elements[head];
      if (!seen.insert(y.key()).second) continue;
      if (g.elements.size() >= bound) {
        throw BoundExceeded("closure exceeds " + std::to_string(bound) + " elements");
      }
      g.elements.push_back(std::move(y));
    }
  }
  g.index();
  return g;
}

std::vector<SylowConjugate> sylow_fixed_points(const Curve& c, const AutomorphismGroup& g,
                                               const AutomorphismGroup& sylow, const std::vector<CurvePoint>& points) {
  std::set<std::vector<std::vector<Elem>>> seen;
  std::vector<SylowConjugate> out;
  for (const auto& x : g.elements) {
    const Automorphism xi = x.inverse();
    std::vector<Automorphism> conj;
    std::vector<std::vector<Elem>> keys;
    conj.reserve(sylow.order());
    for (const auto& s : sylow.elements) {
      conj.push_back(x * s * xi);
      keys.push_back(conj.back().key());
    }
    std::sort(keys.begin(), keys.end());
    if (!seen.insert(keys).second) continue;
    SylowConjugate sc;
    sc.elements = std::move(conj);
    for (const auto& p : points) {
      bool fixed = true;
      for (const auto& e : sc.elements) {
        if (act(c, e, p) != p) {
          fixed = false;
          break;
        }
      }
      if (fixed) sc.fixed_points.push_back(p);
    }
    out.push_back(std::move(sc));
  }
  return out;
}

}  // namespace galoispts::groups
