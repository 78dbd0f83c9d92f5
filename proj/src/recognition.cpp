#include "cellforge/recognition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "json.hpp"

namespace cellforge {

namespace {

constexpr int kSqrtWeight = 4;
constexpr long kEvalPrec = 128;

struct Piece {
  QExprPtr expr;
  int complexity;
};

// quantum-integer monomial over [2..5] as exponent vector; () means 1
using Mono = std::vector<int>;  // list of factors, ascending, e.g. {2,3,3}

QExprPtr mono_expr(const Mono& m) {
  if (m.empty()) return qx::one();
  QExprPtr acc;
  size_t i = 0;
  while (i < m.size()) {
    size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    long e = (long)(j - i);
    QExprPtr f = e == 1 ? qx::qint(m[i]) : qx::pow(qx::qint(m[i]), e);
    acc = acc ? qx::mul(acc, f) : f;
    i = j;
  }
  return acc;
}

bool squarefree(const Mono& m) {
  for (size_t i = 1; i < m.size(); ++i)
    if (m[i] == m[i - 1]) return false;
  return true;
}

bool disjoint(const Mono& a, const Mono& b) {
  for (int x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) return false;
  return true;
}

std::vector<Mono> monomials(int max_deg) {
  std::vector<Mono> out{{}};
  std::vector<Mono> frontier{{}};
  for (int d = 1; d <= max_deg; ++d) {
    std::vector<Mono> next;
    for (const Mono& m : frontier)
      for (int a = m.empty() ? 2 : m.back(); a <= 5; ++a) {
        Mono mm = m;
        mm.push_back(a);
        next.push_back(mm);
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// ratios num/den with disjoint support; complexity = max(1, deg num) + deg den
std::vector<Piece> ratio_set(int max_num, int max_den, bool squarefree_den) {
  std::vector<Piece> out;
  auto ms = monomials(std::max(max_num, max_den));
  for (const Mono& n : ms) {
    if ((int)n.size() > max_num) continue;
    for (const Mono& d : ms) {
      if ((int)d.size() > max_den) continue;
      if (n.empty() && d.empty()) continue;
      if (!disjoint(n, d)) continue;
      if (squarefree_den && !squarefree(d)) continue;
      QExprPtr e = d.empty() ? mono_expr(n) : qx::div(mono_expr(n), mono_expr(d));
      out.push_back({e, (int)std::max<size_t>(1, n.size()) + (int)d.size()});
    }
  }
  return out;
}

}  // namespace

RecognitionDictionary::RecognitionDictionary(int complexity_bound)
    : bound_(complexity_bound) {
  std::vector<DictEntry> raw;
  EvalCache cache;
  auto push = [&](QExprPtr e, int complexity) {
    if (complexity > bound_) return;
    double v = qexpr_eval(e, kEvalPrec, &cache).mid_re();
    raw.push_back(DictEntry{e, v, complexity, qexpr_to_string(e)});
  };

  // rationals p/q and their square roots
  for (long long p = 0; p <= 12; ++p)
    for (long long q = 1; q <= 12; ++q) {
      if (std::gcd(p, q) != 1) continue;
      if (p == 0 && q != 1) continue;
      push(qx::rat(p, q), 1);
      if (p > 0 && p != q) push(qx::sqrt(qx::rat(p, q)), 1 + kSqrtWeight);
    }

  // plain quantum-integer ratios and their square roots
  for (const Piece& r : ratio_set(1, 3, false)) {
    push(r.expr, r.complexity);
    push(qx::sqrt(r.expr), r.complexity + kSqrtWeight);
  }

  // products R*(X+S) (+ optional -1, or sqrt), X = 1 or a quantum integer
  auto rset = ratio_set(1, 2, true);
  auto sset = ratio_set(2, 1, false);
  std::vector<Piece> xset{{qx::one(), 1}};
  for (int a = 2; a <= 5; ++a) xset.push_back({qx::qint(a), 1});
  for (const Piece& r : rset)
    for (const Piece& x : xset)
      for (const Piece& s : sset) {
        int c = r.complexity + x.complexity + s.complexity;
        if (c > bound_ && c + 1 > bound_ && c + kSqrtWeight > bound_) continue;
        QExprPtr base = qx::mul(r.expr, qx::add(x.expr, s.expr));
        push(base, c);
        push(qx::add(base, qx::rat(-1)), c + 1);
        push(qx::sqrt(base), c + kSqrtWeight);
      }

  // two-term sums R + S (+ optional -1)
  auto r1set = ratio_set(1, 1, true);
  for (const Piece& r : r1set)
    for (const Piece& s : r1set) {
      int c = r.complexity + s.complexity;
      if (c > bound_ && c + 1 > bound_) continue;
      QExprPtr base = qx::add(r.expr, s.expr);
      push(base, c);
      push(qx::add(base, qx::rat(-1)), c + 1);
    }

  // dedupe by value, keep the (complexity, text)-least representative
  std::map<long long, DictEntry> dedup;
  for (DictEntry& e : raw) {
    long long key = llround(e.value * 1e9);
    auto it = dedup.find(key);
    if (it == dedup.end() ||
        std::tie(e.complexity, e.text) < std::tie(it->second.complexity, it->second.text))
      dedup[key] = std::move(e);
  }
  entries_.reserve(dedup.size());
  for (auto& [k, e] : dedup) entries_.push_back(std::move(e));
  std::sort(entries_.begin(), entries_.end(),
            [](const DictEntry& a, const DictEntry& b) { return a.value < b.value; });
}

std::optional<DictEntry> RecognitionDictionary::recognize(double x, double tol) const {
  auto lo = std::lower_bound(entries_.begin(), entries_.end(), x - tol,
                             [](const DictEntry& e, double v) { return e.value < v; });
  const DictEntry* best = nullptr;
  for (auto it = lo; it != entries_.end() && it->value <= x + tol; ++it) {
    if (std::abs(it->value - x) > tol) continue;
    if (!best ||
        std::tie(it->complexity, it->text) < std::tie(best->complexity, best->text))
      best = &*it;
  }
  if (!best) return std::nullopt;
  return *best;
}

std::string RecognitionDictionary::dump_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const DictEntry& e : entries_)
    j.push_back({{"expr", e.text}, {"value", e.value}, {"complexity", e.complexity}});
  return j.dump(2) + "\n";
}

}  // namespace cellforge
