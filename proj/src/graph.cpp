#include "cellforge/graph.hpp"

#include <algorithm>

namespace cellforge {

OrientedGraph::OrientedGraph(int vertex_count, std::vector<Edge> edges,
                             std::vector<QExprPtr> fp_vector)
    : nv_(vertex_count), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  for (size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i] == edges_[i - 1])
      throw GraphError("duplicate edge (parallel edges need distinct labels)");
  for (const Edge& e : edges_)
    if (e.src < 1 || e.src > nv_ || e.dst < 1 || e.dst > nv_)
      throw GraphError("edge endpoint out of range");
  if ((int)fp_vector.size() != nv_)
    throw GraphError("FP vector size must equal the vertex count");
  fp_.resize((size_t)nv_ + 1);
  for (int v = 1; v <= nv_; ++v) fp_[(size_t)v] = fp_vector[(size_t)v - 1];
  out_.assign((size_t)nv_ + 1, {});
  in_.assign((size_t)nv_ + 1, {});
  for (EdgeId e = 0; e < (EdgeId)edges_.size(); ++e) {
    out_[(size_t)edges_[(size_t)e].src].push_back(e);
    in_[(size_t)edges_[(size_t)e].dst].push_back(e);
  }
}

EdgeId OrientedGraph::find_edge(VertexId src, VertexId dst, const std::string& label) const {
  for (EdgeId e : out_[(size_t)src])
    if (edges_[(size_t)e].dst == dst && edges_[(size_t)e].label == label) return e;
  throw GraphError("no such edge " + std::to_string(src) + "->" + std::to_string(dst) +
                   (label.empty() ? "" : ":" + label));
}

std::vector<EdgeId> OrientedGraph::edges_between(VertexId src, VertexId dst) const {
  std::vector<EdgeId> out;
  for (EdgeId e : out_[(size_t)src])
    if (edges_[(size_t)e].dst == dst) out.push_back(e);
  return out;
}

const QExprPtr& OrientedGraph::fp(VertexId v) const {
  if (v < 1 || v > nv_) throw GraphError("vertex out of range");
  return fp_[(size_t)v];
}

Scalar OrientedGraph::fp_value(VertexId v, long prec) const {
  return qexpr_eval(fp(v), prec);
}

QExprPtr OrientedGraph::fp_sqrt_ratio(VertexId a, VertexId b) const {
  return qx::sqrt(qx::div(fp(a), fp(b)));
}

int OrientedGraph::adjacency(VertexId src, VertexId dst) const {
  int n = 0;
  for (EdgeId e : out_[(size_t)src]) n += edges_[(size_t)e].dst == dst;
  return n;
}

VertexId OrientedGraph::path_end(const std::string& sign, const Path& p) const {
  if (sign.size() != p.edges.size()) throw GraphError("sign string / path length mismatch");
  VertexId v = p.start;
  for (size_t i = 0; i < sign.size(); ++i) {
    const Edge& e = edges_[(size_t)p.edges[i]];
    if (sign[i] == '+') {
      if (e.src != v) throw GraphError("path does not chain");
      v = e.dst;
    } else if (sign[i] == '-') {
      if (e.dst != v) throw GraphError("path does not chain");
      v = e.src;
    } else {
      throw GraphError("sign string must be over {+,-}");
    }
  }
  return v;
}

std::vector<Path> OrientedGraph::paths_from(const std::string& sign, VertexId from) const {
  std::vector<std::pair<Path, VertexId>> acc{{Path{from, {}}, from}};
  for (char c : sign) {
    if (c != '+' && c != '-') throw GraphError("sign string must be over {+,-}");
    std::vector<std::pair<Path, VertexId>> next;
    for (const auto& [p, v] : acc) {
      const auto& cand = (c == '+') ? out_[(size_t)v] : in_[(size_t)v];
      for (EdgeId e : cand) {
        Path q = p;
        q.edges.push_back(e);
        VertexId w = (c == '+') ? edges_[(size_t)e].dst : edges_[(size_t)e].src;
        next.emplace_back(std::move(q), w);
      }
    }
    acc = std::move(next);
  }
  std::vector<Path> out;
  out.reserve(acc.size());
  for (auto& [p, v] : acc) out.push_back(std::move(p));
  return out;
}

std::vector<Path> OrientedGraph::paths(const std::string& sign, VertexId from, VertexId to) const {
  std::vector<Path> out;
  for (Path& p : paths_from(sign, from))
    if (path_end(sign, p) == to) out.push_back(std::move(p));
  return out;
}

long OrientedGraph::hom_dim(const std::string& s, const std::string& t) const {
  long total = 0;
  for (VertexId v = 1; v <= nv_; ++v) {
    // count s-paths and t-paths from v per endpoint, multiply
    std::vector<long> cs((size_t)nv_ + 1, 0), ct((size_t)nv_ + 1, 0);
    for (const Path& p : paths_from(s, v)) cs[(size_t)path_end(s, p)]++;
    for (const Path& p : paths_from(t, v)) ct[(size_t)path_end(t, p)]++;
    for (VertexId w = 1; w <= nv_; ++w) total += cs[(size_t)w] * ct[(size_t)w];
  }
  return total;
}

const OrientedGraph& e412() {
  static const OrientedGraph g = [] {
    std::vector<Edge> edges = {
        {1, 6, ""},  {2, 6, ""},  {3, 6, ""},  {4, 6, ""},  {5, 6, ""},
        {5, 8, ""},  {3, 10, ""}, {4, 10, ""}, {5, 10, ""}, {6, 7, ""},
        {6, 9, "a"}, {6, 9, "b"}, {8, 7, ""},  {10, 7, ""}, {10, 9, ""},
        {10, 11, ""},{7, 3, ""},  {7, 4, ""},  {7, 5, ""},  {9, 1, ""},
        {9, 2, ""},  {9, 3, ""},  {9, 4, ""},  {9, 5, ""},  {11, 5, ""},
    };
    using namespace qx;
    QExprPtr q2 = qint(2), q3 = qint(3), q4 = qint(4), q5 = qint(5);
    std::vector<QExprPtr> lam = {
        div(q5, q3), div(q5, q3), div(mul(q2, q4), q3), div(mul(q2, q4), q3),
        q3,          q5,          q3,                   one(),
        q5,          q3,          one(),
    };
    return OrientedGraph(11, std::move(edges), std::move(lam));
  }();
  return g;
}

Scalar fp_residual(const OrientedGraph& g, long prec) {
  EvalCache cache;
  Scalar q3 = Scalar::quantum_integer(3, 24, prec);
  Scalar worst(prec);
  auto consider = [&](const Scalar& s) {
    if (s.abs_upper_double() > worst.abs_upper_double()) worst = s;
  };
  for (VertexId v = 1; v <= g.vertex_count(); ++v) {
    Scalar row(prec), col(prec);
    for (const Edge& e : g.edges()) {
      if (e.src == v) row = row + qexpr_eval(g.fp(e.dst), prec, &cache);
      if (e.dst == v) col = col + qexpr_eval(g.fp(e.src), prec, &cache);
    }
    Scalar lv = qexpr_eval(g.fp(v), prec, &cache);
    consider((row - q3 * lv).abs());
    consider((col - q3 * lv).abs());
  }
  return worst;
}

}  // namespace cellforge
