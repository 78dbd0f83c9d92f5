#include "cellforge/morphism.hpp"

#include <algorithm>

namespace cellforge {

Coeff Coeff::operator+(const Coeff& o) const {
  if (exact() && o.exact()) return Coeff(qx::add(expr_, o.expr_));
  long p = std::max(num_ ? num_->precision() : 0, o.num_ ? o.num_->precision() : 0);
  return Coeff(eval(p) + o.eval(p));
}

Coeff Coeff::operator*(const Coeff& o) const {
  if (exact() && o.exact()) return Coeff(qx::mul(expr_, o.expr_));
  long p = std::max(num_ ? num_->precision() : 0, o.num_ ? o.num_->precision() : 0);
  return Coeff(eval(p) * o.eval(p));
}

Coeff Coeff::operator/(const Coeff& o) const {
  if (exact() && o.exact()) return Coeff(qx::div(expr_, o.expr_));
  long p = std::max(num_ ? num_->precision() : 0, o.num_ ? o.num_->precision() : 0);
  return Coeff(eval(p) / o.eval(p));
}

Coeff Coeff::neg() const {
  if (exact()) return Coeff(qx::neg(expr_));
  return Coeff(num_->neg());
}

Coeff Coeff::conj() const {
  if (exact()) return Coeff(qx::conj(expr_));
  return Coeff(num_->conj());
}

Scalar Coeff::eval(long prec, EvalCache* cache) const {
  if (exact()) return qexpr_eval(expr_, prec, cache);
  return *num_;
}

bool is_sign_string(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == '+' || c == '-'; });
}

Morphism::Morphism(const OrientedGraph* g, std::string source, std::string target)
    : g_(g), src_(std::move(source)), tgt_(std::move(target)) {
  if (!is_sign_string(src_) || !is_sign_string(tgt_))
    throw SignError("sign strings must be over {+,-}");
}

void Morphism::set(Path p, Path q, Coeff c) {
  if (p.start != q.start || g_->path_end(src_, p) != g_->path_end(tgt_, q))
    throw SignError("path pair endpoints do not match");
  m_[PathPair{std::move(p), std::move(q)}] = std::move(c);
}

void Morphism::accumulate(const Path& p, const Path& q, const Coeff& c) {
  auto it = m_.find(PathPair{p, q});
  if (it == m_.end())
    m_.emplace(PathPair{p, q}, c);
  else
    it->second = it->second + c;
}

const Coeff* Morphism::find(const PathPair& key) const {
  auto it = m_.find(key);
  return it == m_.end() ? nullptr : &it->second;
}

Morphism Morphism::operator+(const Morphism& o) const {
  if (src_ != o.src_ || tgt_ != o.tgt_ || g_ != o.g_)
    throw SignError("morphism addition: type mismatch");
  Morphism r(*this);
  for (const auto& [k, v] : o.m_) r.accumulate(k.first, k.second, v);
  return r;
}

Morphism Morphism::operator-(const Morphism& o) const { return *this + o.scaled(Coeff(qx::rat(-1))); }

Morphism Morphism::scaled(const Coeff& c) const {
  Morphism r(g_, src_, tgt_);
  for (const auto& [k, v] : m_) r.m_.emplace(k, v * c);
  return r;
}

Scalar Morphism::sup_norm(long prec, EvalCache* cache) const {
  Scalar worst(prec);
  for (const auto& [k, v] : m_) {
    Scalar a = v.eval(prec, cache).abs();
    if (a.abs_upper_double() > worst.abs_upper_double()) worst = a;
  }
  return worst;
}

Morphism identity(const OrientedGraph& g, const std::string& sign) {
  Morphism r(&g, sign, sign);
  for (VertexId v = 1; v <= g.vertex_count(); ++v)
    for (const Path& p : g.paths_from(sign, v)) r.set(p, p, Coeff(qx::one()));
  return r;
}

Morphism ev(const OrientedGraph& g, const std::string& pair) {
  if (pair != "+-" && pair != "-+") throw SignError("ev pair must be +- or -+");
  Morphism r(&g, pair, "");
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (pair == "+-") {
      // ((e, ebar), s(e)) with weight sqrt(lambda_t / lambda_s)
      r.set(Path{ed.src, {e, e}}, Path{ed.src, {}},
            Coeff(g.fp_sqrt_ratio(ed.dst, ed.src)));
    } else {
      // ((ebar, e), t(e)) with weight sqrt(lambda_s / lambda_t)
      r.set(Path{ed.dst, {e, e}}, Path{ed.dst, {}},
            Coeff(g.fp_sqrt_ratio(ed.src, ed.dst)));
    }
  }
  return r;
}

Morphism coev(const OrientedGraph& g, const std::string& pair) {
  if (pair != "+-" && pair != "-+") throw SignError("coev pair must be +- or -+");
  Morphism r(&g, "", pair);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (pair == "+-") {
      // (s(e), (e, ebar)) with weight sqrt(lambda_t / lambda_s)
      r.set(Path{ed.src, {}}, Path{ed.src, {e, e}},
            Coeff(g.fp_sqrt_ratio(ed.dst, ed.src)));
    } else {
      // (t(e), (ebar, e)) with weight sqrt(lambda_s / lambda_t)
      r.set(Path{ed.dst, {}}, Path{ed.dst, {e, e}},
            Coeff(g.fp_sqrt_ratio(ed.src, ed.dst)));
    }
  }
  return r;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (f.target() != g.source() || &f.graph() != &g.graph())
    throw SignError("compose: target of first-applied must equal source of second");
  std::map<Path, std::vector<const std::pair<const PathPair, Coeff>*>> by_mid;
  for (const auto& kv : f.entries()) by_mid[kv.first.second].push_back(&kv);
  Morphism r(&f.graph(), f.source(), g.target());
  for (const auto& [k2, w] : g.entries()) {
    auto it = by_mid.find(k2.first);
    if (it == by_mid.end()) continue;
    for (const auto* kv : it->second)
      r.accumulate(kv->first.first, k2.second, kv->second * w);
  }
  return r;
}

Morphism tensor(const Morphism& f, const Morphism& g) {
  if (&f.graph() != &g.graph()) throw SignError("tensor: distinct graphs");
  const OrientedGraph& gr = f.graph();
  Morphism r(&gr, f.source() + g.source(), f.target() + g.target());
  for (const auto& [k, v] : f.entries()) {
    VertexId pe = gr.path_end(f.source(), k.first);
    VertexId qe = gr.path_end(f.target(), k.second);
    for (const auto& [k2, w] : g.entries()) {
      if (k2.first.start != pe || k2.second.start != qe) continue;
      Path p = k.first;
      p.edges.insert(p.edges.end(), k2.first.edges.begin(), k2.first.edges.end());
      Path q = k.second;
      q.edges.insert(q.edges.end(), k2.second.edges.begin(), k2.second.edges.end());
      r.accumulate(p, q, v * w);
    }
  }
  return r;
}

Morphism dagger(const Morphism& f) {
  Morphism r(&f.graph(), f.target(), f.source());
  for (const auto& [k, v] : f.entries()) r.set(k.second, k.first, v.conj());
  return r;
}

Morphism rotate(const Morphism& f) {
  if (f.source() != "-" || f.target() != "++")
    throw SignError("rotate is defined on Hom(- -> ++) only");
  const OrientedGraph& g = f.graph();
  Morphism lo = tensor(coev(g, "+-"), identity(g, "-"));
  Morphism mid = tensor(tensor(identity(g, "+"), f), identity(g, "-"));
  Morphism hi = tensor(identity(g, "++"), ev(g, "+-"));
  return compose(hi, compose(mid, lo));
}

std::vector<PathPair> hom_basis(const OrientedGraph& g, const std::string& s,
                                const std::string& t) {
  std::vector<PathPair> out;
  for (VertexId v = 1; v <= g.vertex_count(); ++v) {
    auto ps = g.paths_from(s, v);
    auto qs = g.paths_from(t, v);
    for (const Path& p : ps) {
      VertexId pe = g.path_end(s, p);
      for (const Path& q : qs)
        if (g.path_end(t, q) == pe) out.emplace_back(p, q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Morphism apply_edge_phases(const Morphism& f, const std::map<EdgeId, Coeff>& phi) {
  auto path_factor = [&](const std::string& sign, const Path& p) {
    Coeff acc(qx::one());
    for (size_t i = 0; i < p.edges.size(); ++i) {
      auto it = phi.find(p.edges[i]);
      if (it == phi.end()) continue;
      acc = acc * (sign[i] == '+' ? it->second : it->second.conj());
    }
    return acc;
  };
  Morphism r(&f.graph(), f.source(), f.target());
  for (const auto& [k, v] : f.entries()) {
    Coeff c = v * path_factor(f.target(), k.second) *
              path_factor(f.source(), k.first).conj();
    r.set(k.first, k.second, c);
  }
  return r;
}

}  // namespace cellforge
