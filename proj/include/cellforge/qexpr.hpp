#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>

#include "cellforge/scalar.hpp"

namespace cellforge {

struct QNode;
using QExprPtr = std::shared_ptr<const QNode>;

/// Closed-form scalar expressions: rationals, quantum integers [n]_q at a
/// configurable root of unity (default q = zeta_24), roots of unity, the
/// distinguished algebraic number z, sqrt/conj/neg and field operations.
/// No simplification beyond rational-constant folding; equality of values is
/// decided by certified evaluation, equality of trees by operator==.
struct QNode {
  enum class Kind { Rational, QInt, Zeta, Z, Sqrt, Conj, Neg, Add, Mul, Div, Pow };
  Kind kind;
  long long num = 0, den = 1;   // Rational
  long a = 0, b = 0;            // QInt: n ; Zeta: (ell, k) ; Pow: exponent in a
  QExprPtr lhs, rhs;
};

struct QExprParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace qx {
QExprPtr rat(long long num, long long den = 1);
QExprPtr qint(long n);
QExprPtr zeta(long ell, long k);
QExprPtr z();
QExprPtr sqrt(QExprPtr e);
QExprPtr conj(QExprPtr e);
QExprPtr neg(QExprPtr e);
QExprPtr add(QExprPtr a, QExprPtr b);
QExprPtr sub(QExprPtr a, QExprPtr b);
QExprPtr mul(QExprPtr a, QExprPtr b);
QExprPtr div(QExprPtr a, QExprPtr b);
QExprPtr pow(QExprPtr e, long k);
QExprPtr zero();
QExprPtr one();
}  // namespace qx

bool qexpr_equal(const QExprPtr& a, const QExprPtr& b);

/// Serialization grammar: q[n], zeta(l,k), z, sqrt(E), conj(E), E+E, E-E,
/// E*E, E/E, E^k, rational literals p/q. parse(print(e)) == e for every tree
/// built through the qx constructors.
std::string qexpr_to_string(const QExprPtr& e);
QExprPtr qexpr_parse(const std::string& text);

/// Shared evaluation cache: node pointer x precision -> Scalar.
class EvalCache {
 public:
  Scalar* find(const QNode* n, long prec);
  void store(const QNode* n, long prec, Scalar v);
  std::size_t size() const { return map_.size(); }

 private:
  struct Key {
    const QNode* n;
    long prec;
    bool operator==(const Key& o) const { return n == o.n && prec == o.prec; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<const void*>()(k.n) * 1000003u ^ std::hash<long>()(k.prec);
    }
  };
  std::unordered_map<Key, Scalar, KeyHash> map_;
};

/// Certified evaluation at the given midpoint precision. The ambient root
/// order fixes q = zeta_{q_order} for quantum integers (default 24).
Scalar qexpr_eval(const QExprPtr& e, long prec, EvalCache* cache = nullptr,
                  long q_order = 24);

/// Certified enclosure of the distinguished root of 9x^16 - 14x^8 + 9 nearest
/// -0.996393 + 0.0848571i. Verifies the enclosure is disjoint from the other
/// fifteen roots; throws PrecisionError if the precision cannot separate them.
Scalar z_value(long prec);

}  // namespace cellforge
