#pragma once

#include <complex>

#include "cellforge/morphism.hpp"

namespace cellforge {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sorted multiset of variable indices; degree <= 4 in practice.
struct Monomial {
  std::vector<int> vars;
  bool operator<(const Monomial& o) const { return vars < o.vars; }
  bool operator==(const Monomial& o) const { return vars == o.vars; }
  int degree() const { return (int)vars.size(); }
};

/// Multivariate polynomial with exact coefficients.
class Poly {
 public:
  static Poly constant(QExprPtr c);
  static Poly variable(int id);
  bool empty() const { return terms_.empty(); }
  int degree() const;
  const std::map<Monomial, QExprPtr>& terms() const { return terms_; }

  Poly operator+(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const QExprPtr& c) const;
  /// var -> sigma[var], coefficients conjugated
  Poly conjugated(const std::vector<int>& sigma) const;

  void add_term(Monomial m, QExprPtr c);
  /// drop terms whose exact coefficient is the literal rational 0
  void prune();

 private:
  std::map<Monomial, QExprPtr> terms_;
};

struct Equation {
  std::string tag;    // source relation, e.g. "(Hecke)"
  std::string key;    // ambient basis element (for reports)
  Poly poly;
};

/// Polynomial system for an embedding U in Hom(++ -> ++): one complex
/// variable per endpoint-matched length-2 path pair; (R2) is imposed by the
/// conjugate-pair involution sigma, the other relations as equations.
struct PolySystem {
  const OrientedGraph* graph = nullptr;
  std::vector<PathPair> vars;      // lexicographic
  std::vector<int> sigma;          // sigma[i] = index of the transposed pair
  std::vector<Equation> equations; // (R1l), (R1r), (Hecke), (R3) in basis order
  std::vector<std::pair<int, QExprPtr>> pinned;  // gauge constraints

  int var_index(const PathPair& key) const;
  long count_equations(const std::string& tag) const;
  int max_degree() const;
};

PolySystem assemble_system(const OrientedGraph& g);

struct GaugeReport {
  std::vector<std::tuple<VertexId, VertexId, int>> families;  // (src,dst,mult), mult>=2
  std::string group_before;  // e.g. "U(2) (+) U(1)^23"
  std::string group_after;   // e.g. "U(1)^25"
};
GaugeReport gauge_structure(const OrientedGraph& g);

/// Adds the constraints pinning the doubled-edge 2x2 block to diag([2], 0):
/// four complex entries. Throws SolverError when no such block exists.
PolySystem gauge_fix(const PolySystem& sys);

/// The designated 2x2 block: a vertex a whose length-2 paths to the doubled
/// edge's target all run through the doubled edge.
std::pair<Path, Path> designated_block_paths(const OrientedGraph& g);

// --- internal composition helpers shared with the auxiliary vertex system ---
struct PolyMor {
  std::string s, t;
  std::map<PathPair, Poly> m;
};
PolyMor poly_identity(const OrientedGraph& g, const std::string& sign);
PolyMor poly_from_morphism(const Morphism& m);
PolyMor poly_compose(const OrientedGraph& g, const PolyMor& after, const PolyMor& first);
PolyMor poly_tensor(const OrientedGraph& g, const PolyMor& f, const PolyMor& h);
PolyMor poly_dagger(const OrientedGraph& g, const PolyMor& f, const std::vector<int>& sigma);
PolyMor poly_sub(const PolyMor& a, const PolyMor& b);
PolyMor poly_scale(const PolyMor& a, const QExprPtr& c);

}  // namespace cellforge
