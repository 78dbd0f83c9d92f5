#pragma once

#include <string>
#include <vector>

#include "cellforge/qexpr.hpp"

namespace cellforge {

using VertexId = int;   // 1-based display ids
using EdgeId = int;     // index into the canonical edge list

struct Edge {
  VertexId src, dst;
  std::string label;   // distinguishes parallel edges; empty for simple edges
  bool operator<(const Edge& o) const {
    return std::tie(src, dst, label) < std::tie(o.src, o.dst, o.label);
  }
  bool operator==(const Edge& o) const {
    return src == o.src && dst == o.dst && label == o.label;
  }
};

/// One step of a path: an edge traversed forward (+) or backward (-).
/// A sign string s fixes the directions, so paths store only the edges.
struct Path {
  VertexId start = 0;
  std::vector<EdgeId> edges;
  bool operator<(const Path& o) const {
    return std::tie(start, edges) < std::tie(o.start, o.edges);
  }
  bool operator==(const Path& o) const {
    return start == o.start && edges == o.edges;
  }
};

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Oriented graph with parallel edges and a positive Frobenius-Perron
/// eigenvector (one exact expression per vertex). Immutable after build.
class OrientedGraph {
 public:
  OrientedGraph(int vertex_count, std::vector<Edge> edges,
                std::vector<QExprPtr> fp_vector);

  int vertex_count() const { return nv_; }
  int edge_count() const { return (int)edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[(size_t)e]; }
  EdgeId find_edge(VertexId src, VertexId dst, const std::string& label = "") const;
  /// all edges src->dst (canonical order)
  std::vector<EdgeId> edges_between(VertexId src, VertexId dst) const;

  /// FP weight of a vertex (exact)
  const QExprPtr& fp(VertexId v) const;

  /// lambda_v as a certified ball
  Scalar fp_value(VertexId v, long prec) const;
  /// sqrt(lambda_a / lambda_b) as an exact expression
  QExprPtr fp_sqrt_ratio(VertexId a, VertexId b) const;

  /// adjacency count src->dst (with multiplicity)
  int adjacency(VertexId src, VertexId dst) const;

  /// endpoint of a path under a sign string (+ forward, - backward);
  /// throws GraphError if the edges do not chain
  VertexId path_end(const std::string& sign, const Path& p) const;

  /// all sign-string paths from a vertex, lexicographic in the canonical
  /// edge order (edges sorted by source vertex, target vertex, label)
  std::vector<Path> paths_from(const std::string& sign, VertexId from) const;
  std::vector<Path> paths(const std::string& sign, VertexId from, VertexId to) const;

  /// number of endpoint-matched path pairs (p, q), p an s-path, q a t-path
  long hom_dim(const std::string& s, const std::string& t) const;

 private:
  int nv_;
  std::vector<Edge> edges_;            // sorted canonically
  std::vector<QExprPtr> fp_;           // 1-based; fp_[0] unused
  std::vector<std::vector<EdgeId>> out_, in_;  // per vertex, canonical order
};

/// The bundled graph: 11 vertices, 25 directed edges (one parallel pair
/// 6->9 labeled "a"/"b"), FP eigenvector with eigenvalue [3]_q.
const OrientedGraph& e412();

/// max_v of |sum_out lambda - [3] lambda_v| and the transpose analogue
Scalar fp_residual(const OrientedGraph& g, long prec);

}  // namespace cellforge
