#include "cellforge/polysystem.hpp"

#include <algorithm>
#include <sstream>

namespace cellforge {

Poly Poly::constant(QExprPtr c) {
  Poly p;
  p.add_term(Monomial{}, std::move(c));
  return p;
}

Poly Poly::variable(int id) {
  Poly p;
  p.add_term(Monomial{{id}}, qx::one());
  return p;
}

int Poly::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

void Poly::add_term(Monomial m, QExprPtr c) {
  std::sort(m.vars.begin(), m.vars.end());
  auto it = terms_.find(m);
  if (it == terms_.end())
    terms_.emplace(std::move(m), std::move(c));
  else
    it->second = qx::add(it->second, c);
}

void Poly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    const QExprPtr& c = it->second;
    if (c->kind == QNode::Kind::Rational && c->num == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
}

Poly Poly::operator+(const Poly& o) const {
  Poly r(*this);
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m;
      m.vars.reserve(m1.vars.size() + m2.vars.size());
      m.vars.insert(m.vars.end(), m1.vars.begin(), m1.vars.end());
      m.vars.insert(m.vars.end(), m2.vars.begin(), m2.vars.end());
      r.add_term(std::move(m), qx::mul(c1, c2));
    }
  return r;
}

Poly Poly::scaled(const QExprPtr& c) const {
  Poly r;
  for (const auto& [m, co] : terms_) r.add_term(m, qx::mul(co, c));
  return r;
}

Poly Poly::conjugated(const std::vector<int>& sigma) const {
  Poly r;
  for (const auto& [m, co] : terms_) {
    Monomial mm;
    for (int v : m.vars) mm.vars.push_back(sigma[(size_t)v]);
    r.add_term(std::move(mm), qx::conj(co));
  }
  return r;
}

int PolySystem::var_index(const PathPair& key) const {
  auto it = std::lower_bound(vars.begin(), vars.end(), key);
  if (it == vars.end() || !(*it == key)) throw SolverError("unknown variable pair");
  return (int)(it - vars.begin());
}

long PolySystem::count_equations(const std::string& tag) const {
  long n = 0;
  for (const Equation& e : equations) n += e.tag == tag;
  return n;
}

int PolySystem::max_degree() const {
  int d = 0;
  for (const Equation& e : equations) d = std::max(d, e.poly.degree());
  return d;
}

// ---------------------------------------------------------------------------
PolyMor poly_identity(const OrientedGraph& g, const std::string& sign) {
  PolyMor r{sign, sign, {}};
  for (VertexId v = 1; v <= g.vertex_count(); ++v)
    for (const Path& p : g.paths_from(sign, v))
      r.m.emplace(PathPair{p, p}, Poly::constant(qx::one()));
  return r;
}

PolyMor poly_from_morphism(const Morphism& m) {
  PolyMor r{m.source(), m.target(), {}};
  for (const auto& [k, v] : m.entries()) {
    if (!v.exact()) throw SolverError("poly_from_morphism needs exact coefficients");
    r.m.emplace(k, Poly::constant(v.expr()));
  }
  return r;
}

PolyMor poly_compose(const OrientedGraph& g, const PolyMor& after, const PolyMor& first) {
  (void)g;
  if (first.t != after.s) throw SolverError("poly_compose: type mismatch");
  std::map<Path, std::vector<const std::pair<const PathPair, Poly>*>> by_mid;
  for (const auto& kv : first.m) by_mid[kv.first.second].push_back(&kv);
  PolyMor r{first.s, after.t, {}};
  for (const auto& [k2, w] : after.m) {
    auto it = by_mid.find(k2.first);
    if (it == by_mid.end()) continue;
    for (const auto* kv : it->second) {
      Poly prod = kv->second * w;
      auto [slot, fresh] = r.m.emplace(PathPair{kv->first.first, k2.second}, prod);
      if (!fresh) slot->second = slot->second + prod;
    }
  }
  return r;
}

PolyMor poly_tensor(const OrientedGraph& g, const PolyMor& f, const PolyMor& h) {
  PolyMor r{f.s + h.s, f.t + h.t, {}};
  for (const auto& [k, v] : f.m) {
    VertexId pe = g.path_end(f.s, k.first);
    VertexId qe = g.path_end(f.t, k.second);
    for (const auto& [k2, w] : h.m) {
      if (k2.first.start != pe || k2.second.start != qe) continue;
      Path p = k.first;
      p.edges.insert(p.edges.end(), k2.first.edges.begin(), k2.first.edges.end());
      Path q = k.second;
      q.edges.insert(q.edges.end(), k2.second.edges.begin(), k2.second.edges.end());
      Poly prod = v * w;
      auto [slot, fresh] = r.m.emplace(PathPair{std::move(p), std::move(q)}, prod);
      if (!fresh) slot->second = slot->second + prod;
    }
  }
  return r;
}

PolyMor poly_dagger(const OrientedGraph& g, const PolyMor& f, const std::vector<int>& sigma) {
  (void)g;
  PolyMor r{f.t, f.s, {}};
  for (const auto& [k, v] : f.m)
    r.m.emplace(PathPair{k.second, k.first}, v.conjugated(sigma));
  return r;
}

PolyMor poly_sub(const PolyMor& a, const PolyMor& b) {
  if (a.s != b.s || a.t != b.t) throw SolverError("poly_sub: type mismatch");
  PolyMor r = a;
  for (const auto& [k, v] : b.m) {
    Poly nv = v.scaled(qx::rat(-1));
    auto [slot, fresh] = r.m.emplace(k, nv);
    if (!fresh) slot->second = slot->second + nv;
  }
  return r;
}

PolyMor poly_scale(const PolyMor& a, const QExprPtr& c) {
  PolyMor r{a.s, a.t, {}};
  for (const auto& [k, v] : a.m) r.m.emplace(k, v.scaled(c));
  return r;
}

// ---------------------------------------------------------------------------
namespace {

std::string pair_text(const OrientedGraph& g, const PathPair& k) {
  std::ostringstream os;
  auto dump = [&](const Path& p) {
    os << p.start;
    for (EdgeId e : p.edges) {
      const Edge& ed = g.edge(e);
      os << '.' << ed.src << '>' << ed.dst;
      if (!ed.label.empty()) os << ':' << ed.label;
    }
  };
  dump(k.first);
  os << '|';
  dump(k.second);
  return os.str();
}

void emit(PolySystem& sys, const std::string& tag, const PolyMor& residual) {
  for (const auto& [k, poly] : residual.m) {
    Poly p = poly;
    p.prune();
    if (p.empty()) continue;
    sys.equations.push_back(Equation{tag, pair_text(*sys.graph, k), std::move(p)});
  }
}

}  // namespace

PolySystem assemble_system(const OrientedGraph& g) {
  PolySystem sys;
  sys.graph = &g;
  sys.vars = hom_basis(g, "++", "++");
  sys.sigma.resize(sys.vars.size());
  for (size_t i = 0; i < sys.vars.size(); ++i)
    sys.sigma[i] = sys.var_index(PathPair{sys.vars[i].second, sys.vars[i].first});

  PolyMor U{"++", "++", {}};
  for (size_t i = 0; i < sys.vars.size(); ++i)
    U.m.emplace(sys.vars[i], Poly::variable((int)i));

  QExprPtr q2 = qx::qint(2);
  PolyMor idp = poly_identity(g, "+");
  PolyMor idm = poly_identity(g, "-");
  PolyMor evpm = poly_from_morphism(ev(g, "+-"));
  PolyMor evmp = poly_from_morphism(ev(g, "-+"));
  PolyMor coevpm = poly_from_morphism(coev(g, "+-"));
  PolyMor coevmp = poly_from_morphism(coev(g, "-+"));

  // (R1l): (ev_-+ ox id) (id_- ox U) (coev_-+ ox id) = [2] id_+
  PolyMor r1l = poly_compose(g, poly_tensor(g, evmp, idp),
                             poly_compose(g, poly_tensor(g, idm, U),
                                          poly_tensor(g, coevmp, idp)));
  emit(sys, "(R1l)", poly_sub(r1l, poly_scale(idp, q2)));

  // (R1r): (id ox ev_+-) (U ox id_-) (id ox coev_+-) = [2] id_+
  PolyMor r1r = poly_compose(g, poly_tensor(g, idp, evpm),
                             poly_compose(g, poly_tensor(g, U, idm),
                                          poly_tensor(g, idp, coevpm)));
  emit(sys, "(R1r)", poly_sub(r1r, poly_scale(idp, q2)));

  // (Hecke): U U = [2] U
  emit(sys, "(Hecke)", poly_sub(poly_compose(g, U, U), poly_scale(U, q2)));

  // (R3)
  PolyMor U1 = poly_tensor(g, U, idp);
  PolyMor U2 = poly_tensor(g, idp, U);
  PolyMor lhs = poly_sub(poly_compose(g, U1, poly_compose(g, U2, U1)), U1);
  PolyMor rhs = poly_sub(poly_compose(g, U2, poly_compose(g, U1, U2)), U2);
  emit(sys, "(R3)", poly_sub(lhs, rhs));
  return sys;
}

GaugeReport gauge_structure(const OrientedGraph& g) {
  GaugeReport rep;
  int simple = 0;
  std::map<std::pair<VertexId, VertexId>, int> mult;
  for (const Edge& e : g.edges()) mult[{e.src, e.dst}]++;
  std::ostringstream before;
  for (const auto& [k, m] : mult) {
    if (m >= 2) rep.families.emplace_back(k.first, k.second, m);
    else ++simple;
  }
  bool first = true;
  for (const auto& [s, d, m] : rep.families) {
    if (!first) before << " (+) ";
    before << "U(" << m << ")";
    first = false;
  }
  if (simple) {
    if (!first) before << " (+) ";
    before << "U(1)^" << simple;
  }
  rep.group_before = before.str();
  rep.group_after = "U(1)^" + std::to_string(g.edge_count());
  return rep;
}

std::pair<Path, Path> designated_block_paths(const OrientedGraph& g) {
  for (const auto& [src, dst, m] :
       gauge_structure(g).families) {
    if (m != 2) continue;
    auto labels = g.edges_between(src, dst);
    // least vertex a whose length-2 paths to dst all pass the doubled edge
    for (VertexId a = 1; a <= g.vertex_count(); ++a) {
      auto ps = g.paths("++", a, dst);
      if (ps.size() != 2) continue;
      bool ok = true;
      for (const Path& p : ps)
        if (p.edges[1] != labels[0] && p.edges[1] != labels[1]) ok = false;
      if (ok) return {ps[0], ps[1]};
    }
  }
  throw SolverError("gauge_fix: no designated multiplicity-2 block");
}

PolySystem gauge_fix(const PolySystem& sys) {
  PolySystem out = sys;
  auto [pa, pb] = designated_block_paths(*sys.graph);
  out.pinned.emplace_back(out.var_index(PathPair{pa, pa}), qx::qint(2));
  out.pinned.emplace_back(out.var_index(PathPair{pb, pb}), qx::zero());
  out.pinned.emplace_back(out.var_index(PathPair{pa, pb}), qx::zero());
  out.pinned.emplace_back(out.var_index(PathPair{pb, pa}), qx::zero());
  return out;
}

}  // namespace cellforge
