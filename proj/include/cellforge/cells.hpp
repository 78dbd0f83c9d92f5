#pragma once

#include <map>

#include "cellforge/morphism.hpp"

namespace cellforge {

struct CellError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Labeled directed triangle a -> b -> c -> a with a marked first vertex;
/// stored as the three edge ids (ab, bc, ca).
struct Triangle {
  EdgeId ab, bc, ca;
  bool operator<(const Triangle& o) const {
    return std::tie(ab, bc, ca) < std::tie(o.ab, o.bc, o.ca);
  }
  bool operator==(const Triangle& o) const {
    return ab == o.ab && bc == o.bc && ca == o.ca;
  }
  Triangle rotated() const { return Triangle{bc, ca, ab}; }
};

/// Triangle-weight functional: one coefficient per marked labeled triangle,
/// closed under the rotational formula
/// W_{a,b,c} = sqrt(lambda_b/lambda_c) W_{b,c,a}.
class CellSystem {
 public:
  CellSystem(const OrientedGraph* g, std::map<Triangle, Coeff> weights);

  const OrientedGraph& graph() const { return *g_; }
  const std::map<Triangle, Coeff>& weights() const { return w_; }
  const Coeff& weight(const Triangle& t) const;

  /// marked triangles of g (all directed labeled 3-cycles with a start);
  /// the support of any cell system on g
  static std::vector<Triangle> support(const OrientedGraph& g);

  /// apply the rotational formula to generators to produce the closed system;
  /// throws CellError if orbits collide inconsistently
  static CellSystem close_rotationally(const OrientedGraph& g,
                                       const std::map<Triangle, Coeff>& generators);

  /// the Hom(- -> ++) element with one entry per marked triangle
  Morphism as_morphism() const;

  /// max residual of W_{a,b,c} - sqrt(lambda_b/lambda_c) W_{b,c,a}
  Scalar closure_residual(long prec) const;

 private:
  const OrientedGraph* g_;
  std::map<Triangle, Coeff> w_;
};

/// The bundled 21-generator cell system on e412(), exact coefficients.
const CellSystem& bundled_w();
/// The 21 generators alone (marked triangles and exact weights).
std::map<Triangle, Coeff> bundled_w_generators();

/// U = W o W^dag in Hom(++ -> ++)
Morphism build_u(const CellSystem& c);

/// Square matrix of U over the length-2 paths v1 -> v2: rows indexed by the
/// target path, columns by the source path (matching the reference tables).
struct BoltzmannBlock {
  VertexId v1 = 0, v2 = 0;
  std::vector<Path> basis;              // lexicographic
  std::vector<std::vector<Coeff>> entries;  // entries[row][col]
  int size() const { return (int)basis.size(); }
  Coeff trace() const;
};

BoltzmannBlock block(const Morphism& u, VertexId v1, VertexId v2);

}  // namespace cellforge
