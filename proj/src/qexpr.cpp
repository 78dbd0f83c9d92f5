#include "cellforge/qexpr.hpp"

#include <cctype>
#include <numeric>
#include <sstream>
#include <vector>

namespace cellforge {

using Kind = QNode::Kind;

namespace qx {

namespace {
QExprPtr make(QNode n) { return std::make_shared<const QNode>(std::move(n)); }

long long safe_mul(long long a, long long b) {
  __int128 r = (__int128)a * b;
  if (r > INT64_MAX || r < INT64_MIN) throw ArithError("rational overflow");
  return (long long)r;
}
long long safe_add(long long a, long long b) {
  __int128 r = (__int128)a + b;
  if (r > INT64_MAX || r < INT64_MIN) throw ArithError("rational overflow");
  return (long long)r;
}
}  // namespace

QExprPtr rat(long long num, long long den) {
  if (den == 0) throw ArithError("rational with zero denominator");
  if (den < 0) { num = -num; den = -den; }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) { num /= g; den /= g; }
  QNode n;
  n.kind = Kind::Rational;
  n.num = num;
  n.den = den;
  return make(std::move(n));
}

QExprPtr qint(long n) {
  if (n < 0) throw ArithError("quantum integer index must be >= 0");
  QNode nn; nn.kind = Kind::QInt; nn.a = n;
  return make(std::move(nn));
}

QExprPtr zeta(long ell, long k) {
  if (ell < 1) throw ArithError("zeta order must be >= 1");
  QNode n; n.kind = Kind::Zeta; n.a = ell; n.b = k;
  return make(std::move(n));
}

QExprPtr z() { QNode n; n.kind = Kind::Z; return make(std::move(n)); }

QExprPtr sqrt(QExprPtr e) { QNode n; n.kind = Kind::Sqrt; n.lhs = std::move(e); return make(std::move(n)); }
QExprPtr conj(QExprPtr e) { QNode n; n.kind = Kind::Conj; n.lhs = std::move(e); return make(std::move(n)); }

QExprPtr neg(QExprPtr e) {
  if (e->kind == Kind::Rational) return rat(-e->num, e->den);
  QNode n; n.kind = Kind::Neg; n.lhs = std::move(e);
  return make(std::move(n));
}

QExprPtr add(QExprPtr a, QExprPtr b) {
  if (a->kind == Kind::Rational && b->kind == Kind::Rational)
    return rat(safe_add(safe_mul(a->num, b->den), safe_mul(b->num, a->den)),
               safe_mul(a->den, b->den));
  QNode n; n.kind = Kind::Add; n.lhs = std::move(a); n.rhs = std::move(b);
  return make(std::move(n));
}

QExprPtr sub(QExprPtr a, QExprPtr b) { return add(std::move(a), neg(std::move(b))); }

QExprPtr mul(QExprPtr a, QExprPtr b) {
  if (a->kind == Kind::Rational && b->kind == Kind::Rational)
    return rat(safe_mul(a->num, b->num), safe_mul(a->den, b->den));
  QNode n; n.kind = Kind::Mul; n.lhs = std::move(a); n.rhs = std::move(b);
  return make(std::move(n));
}

QExprPtr div(QExprPtr a, QExprPtr b) {
  if (a->kind == Kind::Rational && b->kind == Kind::Rational) {
    if (b->num == 0) throw DivisionByEnclosedZero();
    return rat(safe_mul(a->num, b->den), safe_mul(a->den, b->num));
  }
  QNode n; n.kind = Kind::Div; n.lhs = std::move(a); n.rhs = std::move(b);
  return make(std::move(n));
}

QExprPtr pow(QExprPtr e, long k) {
  if (k == 1) return e;
  QNode n; n.kind = Kind::Pow; n.lhs = std::move(e); n.a = k;
  return make(std::move(n));
}

QExprPtr zero() { return rat(0); }
QExprPtr one() { return rat(1); }

}  // namespace qx

bool qexpr_equal(const QExprPtr& a, const QExprPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::Rational: return a->num == b->num && a->den == b->den;
    case Kind::QInt: return a->a == b->a;
    case Kind::Zeta: return a->a == b->a && a->b == b->b;
    case Kind::Z: return true;
    case Kind::Sqrt:
    case Kind::Conj:
    case Kind::Neg: return qexpr_equal(a->lhs, b->lhs);
    case Kind::Pow: return a->a == b->a && qexpr_equal(a->lhs, b->lhs);
    case Kind::Add:
    case Kind::Mul:
    case Kind::Div:
      return qexpr_equal(a->lhs, b->lhs) && qexpr_equal(a->rhs, b->rhs);
  }
  return false;
}

// ---------------------------------------------------------------------------
// printing: precedence add=1, mul=2, unary neg=3, pow=4, atom=5
namespace {

int prec_of(const QNode& n) {
  switch (n.kind) {
    case Kind::Add: return 1;
    case Kind::Mul:
    case Kind::Div: return 2;
    case Kind::Neg: return 3;
    case Kind::Pow: return 4;
    case Kind::Rational:
      if (n.den != 1) return 2;
      return n.num < 0 ? 3 : 5;
    default: return 5;
  }
}

void print_node(std::ostringstream& os, const QNode& n, int parent_prec) {
  int my = prec_of(n);
  bool paren = my < parent_prec;
  if (paren) os << '(';
  switch (n.kind) {
    case Kind::Rational:
      os << n.num;
      if (n.den != 1) os << '/' << n.den;
      break;
    case Kind::QInt: os << "q[" << n.a << ']'; break;
    case Kind::Zeta: os << "zeta(" << n.a << ',' << n.b << ')'; break;
    case Kind::Z: os << 'z'; break;
    case Kind::Sqrt:
      os << "sqrt(";
      print_node(os, *n.lhs, 0);
      os << ')';
      break;
    case Kind::Conj:
      os << "conj(";
      print_node(os, *n.lhs, 0);
      os << ')';
      break;
    case Kind::Neg:
      os << '-';
      print_node(os, *n.lhs, 4);
      break;
    case Kind::Add:
      print_node(os, *n.lhs, 1);
      if (n.rhs->kind == Kind::Neg) {
        os << '-';
        print_node(os, *n.rhs->lhs, 2);
      } else if (n.rhs->kind == Kind::Rational && n.rhs->num < 0) {
        os << '-';
        QNode pos = *n.rhs;
        pos.num = -pos.num;
        print_node(os, pos, 2);
      } else {
        os << '+';
        print_node(os, *n.rhs, 2);
      }
      break;
    case Kind::Mul:
      print_node(os, *n.lhs, 2);
      os << '*';
      print_node(os, *n.rhs, 3);
      break;
    case Kind::Div:
      print_node(os, *n.lhs, 2);
      os << '/';
      print_node(os, *n.rhs, 3);
      break;
    case Kind::Pow:
      print_node(os, *n.lhs, 5);
      os << '^' << n.a;
      break;
  }
  if (paren) os << ')';
}

}  // namespace

std::string qexpr_to_string(const QExprPtr& e) {
  std::ostringstream os;
  print_node(os, *e, 0);
  return os.str();
}

// ---------------------------------------------------------------------------
// recursive-descent parser
namespace {

struct Parser {
  const std::string& s;
  size_t i = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip() { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) { ++i; return true; }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) {
    throw QExprParseError("qexpr parse error at position " + std::to_string(i) + ": " + what);
  }

  long long integer() {
    skip();
    bool negv = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) negv = s[i++] == '-';
    if (i >= s.size() || !std::isdigit((unsigned char)s[i])) fail("expected integer");
    long long v = 0;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) {
      v = v * 10 + (s[i++] - '0');
      if (v < 0) fail("integer overflow");
    }
    return negv ? -v : v;
  }

  QExprPtr atom() {
    skip();
    if (i >= s.size()) fail("unexpected end of input");
    char c = s[i];
    if (c == '(') {
      ++i;
      QExprPtr e = sum();
      expect(')');
      return e;
    }
    if (std::isdigit((unsigned char)c)) {
      long long num = integer();
      skip();
      if (i < s.size() && s[i] == '/' ) {
        // only a rational literal when followed directly by digits; otherwise
        // leave the '/' to the binary-operator level
        size_t save = i;
        ++i;
        skip();
        if (i < s.size() && std::isdigit((unsigned char)s[i])) {
          // distinguish "1/2" literal from "1/q[2]": peek the token
          long long den = integer();
          return qx::rat(num, den);
        }
        i = save;
      }
      return qx::rat(num);
    }
    if (s.compare(i, 2, "q[") == 0) {
      i += 2;
      long long n = integer();
      expect(']');
      return qx::qint((long)n);
    }
    if (s.compare(i, 5, "zeta(") == 0) {
      i += 5;
      long long l = integer();
      expect(',');
      long long k = integer();
      expect(')');
      return qx::zeta((long)l, (long)k);
    }
    if (s.compare(i, 5, "sqrt(") == 0) {
      i += 5;
      QExprPtr e = sum();
      expect(')');
      return qx::sqrt(e);
    }
    if (s.compare(i, 5, "conj(") == 0) {
      i += 5;
      QExprPtr e = sum();
      expect(')');
      return qx::conj(e);
    }
    if (c == 'z') {
      ++i;
      return qx::z();
    }
    fail("unexpected character");
  }

  QExprPtr power() {
    QExprPtr base = atom();
    skip();
    if (i < s.size() && s[i] == '^') {
      ++i;
      long long k = integer();
      return qx::pow(base, (long)k);
    }
    return base;
  }

  QExprPtr unary() {
    skip();
    if (i < s.size() && s[i] == '-') {
      ++i;
      return qx::neg(unary());
    }
    return power();
  }

  QExprPtr product() {
    QExprPtr acc = unary();
    for (;;) {
      skip();
      if (i < s.size() && s[i] == '*') {
        ++i;
        acc = qx::mul(acc, unary());
      } else if (i < s.size() && s[i] == '/') {
        ++i;
        acc = qx::div(acc, unary());
      } else {
        return acc;
      }
    }
  }

  QExprPtr sum() {
    QExprPtr acc = product();
    for (;;) {
      skip();
      if (i < s.size() && s[i] == '+') {
        ++i;
        acc = qx::add(acc, product());
      } else if (i < s.size() && s[i] == '-') {
        ++i;
        acc = qx::sub(acc, product());
      } else {
        return acc;
      }
    }
  }
};

}  // namespace

QExprPtr qexpr_parse(const std::string& text) {
  Parser p(text);
  QExprPtr e = p.sum();
  p.skip();
  if (p.i != text.size()) p.fail("trailing input");
  return e;
}

// ---------------------------------------------------------------------------
Scalar* EvalCache::find(const QNode* n, long prec) {
  auto it = map_.find(Key{n, prec});
  return it == map_.end() ? nullptr : &it->second;
}
void EvalCache::store(const QNode* n, long prec, Scalar v) {
  map_.emplace(Key{n, prec}, std::move(v));
}

namespace {

Scalar eval_rec(const QNode* n, long prec, EvalCache* cache, long q_order) {
  if (cache) {
    if (Scalar* hit = cache->find(n, prec)) return *hit;
  }
  Scalar out;
  switch (n->kind) {
    case Kind::Rational: out = Scalar::from_rational(n->num, n->den, prec); break;
    case Kind::QInt: out = Scalar::quantum_integer(n->a, q_order, prec); break;
    case Kind::Zeta: out = Scalar::root_of_unity(n->a, n->b, prec); break;
    case Kind::Z: out = z_value(prec); break;
    case Kind::Sqrt: out = eval_rec(n->lhs.get(), prec, cache, q_order).sqrt(); break;
    case Kind::Conj: out = eval_rec(n->lhs.get(), prec, cache, q_order).conj(); break;
    case Kind::Neg: out = eval_rec(n->lhs.get(), prec, cache, q_order).neg(); break;
    case Kind::Add:
      out = eval_rec(n->lhs.get(), prec, cache, q_order) +
            eval_rec(n->rhs.get(), prec, cache, q_order);
      break;
    case Kind::Mul:
      out = eval_rec(n->lhs.get(), prec, cache, q_order) *
            eval_rec(n->rhs.get(), prec, cache, q_order);
      break;
    case Kind::Div:
      out = eval_rec(n->lhs.get(), prec, cache, q_order) /
            eval_rec(n->rhs.get(), prec, cache, q_order);
      break;
    case Kind::Pow: out = eval_rec(n->lhs.get(), prec, cache, q_order).pow(n->a); break;
  }
  if (cache) cache->store(n, prec, out);
  return out;
}

}  // namespace

Scalar qexpr_eval(const QExprPtr& e, long prec, EvalCache* cache, long q_order) {
  return eval_rec(e.get(), prec, cache, q_order);
}

Scalar z_value(long prec) {
  if (prec < 64) throw PrecisionError("z_value requires precision >= 64");
  // The sixteen roots of 9x^16 - 14x^8 + 9 are the 8th roots of
  // y = (7 - 4 sqrt(2) i)/9 and of conj(y), all unimodular. The selected root
  // has argument arg(y)/8 + pi, i.e. z = -y^{1/8} with the principal branch.
  Scalar nine = Scalar::from_int(9, prec);
  Scalar im_unit = Scalar::root_of_unity(4, 1, prec);
  Scalar y = (Scalar::from_int(7, prec) -
              Scalar::from_int(4, prec) * Scalar::from_int(2, prec).sqrt() * im_unit) /
             nine;
  Scalar eighth = y.sqrt().sqrt().sqrt();
  Scalar z = eighth.neg();
  // isolation: the other fifteen roots are zeta_8^m * y^{1/8} (m = 1..7) and
  // zeta_8^m * conj(y^{1/8}) (m = 0..7); the enclosure must exclude them all
  for (int conjugate = 0; conjugate < 2; ++conjugate) {
    Scalar base = conjugate ? eighth.conj() : eighth;
    for (long m = 0; m < 8; ++m) {
      Scalar cand = Scalar::root_of_unity(8, m, prec) * base;
      if (!conjugate && m == 4) continue;  // that is z itself
      if (!(z - cand).excludes_zero())
        throw PrecisionError("z_value: enclosure cannot separate the root at this precision");
    }
  }
  return z;
}

}  // namespace cellforge
