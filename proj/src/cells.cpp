#include "cellforge/cells.hpp"

namespace cellforge {

CellSystem::CellSystem(const OrientedGraph* g, std::map<Triangle, Coeff> weights)
    : g_(g), w_(std::move(weights)) {
  auto sup = support(*g_);
  if (w_.size() != sup.size())
    throw CellError("cell system support mismatch: expected " +
                    std::to_string(sup.size()) + " marked triangles, got " +
                    std::to_string(w_.size()));
  for (const Triangle& t : sup)
    if (!w_.count(t)) throw CellError("cell system is missing a marked triangle");
}

const Coeff& CellSystem::weight(const Triangle& t) const {
  auto it = w_.find(t);
  if (it == w_.end()) throw CellError("no such triangle in cell system");
  return it->second;
}

std::vector<Triangle> CellSystem::support(const OrientedGraph& g) {
  std::vector<Triangle> out;
  for (EdgeId ab = 0; ab < g.edge_count(); ++ab) {
    const Edge& e1 = g.edge(ab);
    for (EdgeId bc = 0; bc < g.edge_count(); ++bc) {
      const Edge& e2 = g.edge(bc);
      if (e2.src != e1.dst) continue;
      for (EdgeId ca = 0; ca < g.edge_count(); ++ca) {
        const Edge& e3 = g.edge(ca);
        if (e3.src != e2.dst || e3.dst != e1.src) continue;
        out.push_back(Triangle{ab, bc, ca});
      }
    }
  }
  return out;
}

CellSystem CellSystem::close_rotationally(const OrientedGraph& g,
                                          const std::map<Triangle, Coeff>& generators) {
  std::map<Triangle, Coeff> all;
  for (const auto& [t, w] : generators) {
    // W_{b,c,a} = sqrt(lambda_c / lambda_b) W_{a,b,c}
    Triangle cur = t;
    Coeff val = w;
    for (int step = 0; step < 3; ++step) {
      auto [it, fresh] = all.emplace(cur, val);
      if (!fresh) throw CellError("rotational closure: orbit collision");
      (void)it;
      VertexId b = g.edge(cur.bc).src;
      VertexId c = g.edge(cur.bc).dst;
      val = val * Coeff(g.fp_sqrt_ratio(c, b));
      cur = cur.rotated();
    }
  }
  return CellSystem(&g, std::move(all));
}

Morphism CellSystem::as_morphism() const {
  Morphism r(g_, "-", "++");
  for (const auto& [t, w] : w_) {
    VertexId a = g_->edge(t.ab).src;
    r.set(Path{a, {t.ca}}, Path{a, {t.ab, t.bc}}, w);
  }
  return r;
}

Scalar CellSystem::closure_residual(long prec) const {
  EvalCache cache;
  Scalar worst(prec);
  for (const auto& [t, w] : w_) {
    VertexId b = g_->edge(t.bc).src;
    VertexId c = g_->edge(t.bc).dst;
    Coeff rot = weight(t.rotated()) * Coeff(g_->fp_sqrt_ratio(b, c));
    Scalar res = (w.eval(prec, &cache) - rot.eval(prec, &cache)).abs();
    if (res.abs_upper_double() > worst.abs_upper_double()) worst = res;
  }
  return worst;
}

std::map<Triangle, Coeff> bundled_w_generators() {
  const OrientedGraph& g = e412();
  using namespace qx;
  QExprPtr q2 = qint(2), q3 = qint(3), q4 = qint(4), q5 = qint(5);
  QExprPtr zz = z();
  QExprPtr I = zeta(4, 1);
  QExprPtr one_ = one();

  auto tri = [&](VertexId a, VertexId b, VertexId c, const std::string& lab) {
    auto pick = [&](VertexId x, VertexId y) {
      auto es = g.edges_between(x, y);
      if (es.size() == 1) return es[0];
      return g.find_edge(x, y, lab);
    };
    return Triangle{pick(a, b), pick(b, c), pick(c, a)};
  };

  std::map<Triangle, Coeff> gen;
  auto put = [&](VertexId a, VertexId b, VertexId c, const std::string& lab, QExprPtr v) {
    gen.emplace(tri(a, b, c, lab), Coeff(std::move(v)));
  };

  // doubled-edge branches ("a" = alpha, "b" = beta)
  put(1, 6, 9, "a", sqrt(q2));
  put(1, 6, 9, "b", zero());
  put(2, 6, 9, "a", mul(pow(zz, -1), sqrt(div(one_, q2))));
  put(2, 6, 9, "b", mul(zeta(24, 19), sqrt(div(q3, q2))));
  put(3, 6, 9, "a", mul(zz, sqrt(div(one_, q2))));
  put(3, 6, 9, "b", mul(mul(zeta(3, 1), zz), sqrt(div(q3, mul(q4, add(q2, q3))))));
  put(4, 6, 9, "a", sqrt(div(one_, q2)));
  put(4, 6, 9, "b", mul(zeta(8, 5), sqrt(div(mul(q3, add(q2, q3)), mul(q4, q5)))));
  put(5, 6, 9, "a", mul(mul(I, pow(zz, -1)), sqrt(div(one_, q2))));
  put(5, 6, 9, "b", mul(mul(zeta(48, 11), zz), sqrt(div(q4, q5))));
  // simple-edge triangles
  put(3, 6, 7, "", mul(zz, sqrt(div(mul(q2, add(one_, q2)), q4))));
  put(3, 10, 7, "", mul(zz, sqrt(div(pow(q2, 2), mul(q4, add(q2, q3))))));
  put(3, 10, 9, "", mul(zz, sqrt(div(mul(q3, add(one_, q2)), mul(q2, q4)))));
  put(4, 6, 7, "", mul(zeta(8, 5), sqrt(div(mul(q2, q3), mul(q4, add(one_, q2))))));
  put(4, 10, 7, "", mul(zz, sqrt(div(add(q2, q3), q4))));
  put(4, 10, 9, "", mul(zz, sqrt(div(pow(q3, 2), mul(mul(q2, q4), add(one_, q2))))));
  put(5, 6, 7, "", mul(zeta(8, 1), sqrt(div(q2, q3))));
  put(5, 8, 7, "", mul(zz, sqrt(div(q2, q3))));
  put(5, 10, 7, "", mul(zz, sqrt(div(one_, q2))));
  put(5, 10, 9, "", mul(zz, sqrt(div(one_, q2))));
  put(5, 10, 11, "", mul(zz, sqrt(q2)));
  return gen;
}

const CellSystem& bundled_w() {
  static const CellSystem c =
      CellSystem::close_rotationally(e412(), bundled_w_generators());
  return c;
}

Morphism build_u(const CellSystem& c) {
  Morphism w = c.as_morphism();
  return compose(w, dagger(w));
}

Coeff BoltzmannBlock::trace() const {
  Coeff t(qx::zero());
  for (int i = 0; i < size(); ++i) t = t + entries[(size_t)i][(size_t)i];
  return t;
}

BoltzmannBlock block(const Morphism& u, VertexId v1, VertexId v2) {
  if (u.source() != "++" || u.target() != "++")
    throw CellError("block extraction expects an element of Hom(++ -> ++)");
  BoltzmannBlock b;
  b.v1 = v1;
  b.v2 = v2;
  b.basis = u.graph().paths("++", v1, v2);
  b.entries.assign(b.basis.size(), std::vector<Coeff>(b.basis.size(), Coeff(qx::zero())));
  for (size_t row = 0; row < b.basis.size(); ++row)
    for (size_t col = 0; col < b.basis.size(); ++col) {
      // rows = target path, columns = source path
      if (const Coeff* c = u.find(PathPair{b.basis[col], b.basis[row]}))
        b.entries[row][col] = *c;
    }
  return b;
}

}  // namespace cellforge
