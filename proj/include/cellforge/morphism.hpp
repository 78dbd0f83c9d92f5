#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "cellforge/graph.hpp"

namespace cellforge {

/// Coefficient that is either exact (a QExpr tree) or numeric (a certified
/// ball). Arithmetic between two exact coefficients stays exact; anything
/// touching a numeric coefficient becomes numeric at the stronger precision.
class Coeff {
 public:
  Coeff() : expr_(qx::zero()) {}
  Coeff(QExprPtr e) : expr_(std::move(e)) {}
  Coeff(Scalar s) : num_(std::move(s)), expr_(nullptr) {}

  bool exact() const { return expr_ != nullptr; }
  const QExprPtr& expr() const { return expr_; }

  Coeff operator+(const Coeff& o) const;
  Coeff operator*(const Coeff& o) const;
  Coeff operator/(const Coeff& o) const;
  Coeff neg() const;
  Coeff conj() const;

  Scalar eval(long prec, EvalCache* cache = nullptr) const;

 private:
  std::optional<Scalar> num_;
  QExprPtr expr_;
};

struct SignError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_sign_string(const std::string& s);

using PathPair = std::pair<Path, Path>;

/// Element of Hom(source -> target) in the oriented graph planar algebra:
/// a sparse map from endpoint-matched (source-path, target-path) pairs to
/// coefficients, with deterministic (lexicographic) iteration order.
class Morphism {
 public:
  Morphism(const OrientedGraph* g, std::string source, std::string target);

  const std::string& source() const { return src_; }
  const std::string& target() const { return tgt_; }
  const OrientedGraph& graph() const { return *g_; }
  const std::map<PathPair, Coeff>& entries() const { return m_; }
  size_t entry_count() const { return m_.size(); }

  /// inserts/overwrites; validates endpoint matching
  void set(Path p, Path q, Coeff c);
  void accumulate(const Path& p, const Path& q, const Coeff& c);
  const Coeff* find(const PathPair& key) const;

  Morphism operator+(const Morphism& o) const;
  Morphism operator-(const Morphism& o) const;
  Morphism scaled(const Coeff& c) const;

  /// largest |entry| as a ball (zero morphism -> exact zero)
  Scalar sup_norm(long prec, EvalCache* cache = nullptr) const;

 private:
  const OrientedGraph* g_;
  std::string src_, tgt_;
  std::map<PathPair, Coeff> m_;
};

Morphism identity(const OrientedGraph& g, const std::string& sign);
/// the four duality maps; pair is "+-" or "-+"
Morphism ev(const OrientedGraph& g, const std::string& pair);
Morphism coev(const OrientedGraph& g, const std::string& pair);

/// g after f (f: s->t, g: t->u)
Morphism compose(const Morphism& g, const Morphism& f);
Morphism tensor(const Morphism& f, const Morphism& g);
Morphism dagger(const Morphism& f);

/// one-click rotation on Hom(- -> ++); on cell coordinates it realizes
/// W_{a,b,c} -> sqrt(lambda_b/lambda_c) W_{b,c,a}
Morphism rotate(const Morphism& f);

/// basis of Hom(s -> t) in lexicographic order
std::vector<PathPair> hom_basis(const OrientedGraph& g, const std::string& s,
                                const std::string& t);

/// per-edge phase gauge transformation: entry (p, q) is multiplied by
/// prod_{q steps} phi(e)^{+/-} * conj(prod_{p steps} phi(e)^{+/-}), with the
/// conjugate phase on backward steps
Morphism apply_edge_phases(const Morphism& f, const std::map<EdgeId, Coeff>& phi);

}  // namespace cellforge
