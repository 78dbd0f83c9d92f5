#pragma once

#include <optional>

#include "cellforge/qexpr.hpp"

namespace cellforge {

struct DictEntry {
  QExprPtr expr;
  double value = 0;
  int complexity = 0;
  std::string text;   // canonical serialization, used as the final tie-break
};

/// Deterministic dictionary of closed-form positive reals built from quantum
/// integers [2]..[5] and small rationals: plain ratios, two-term sums,
/// products R*(X+S) with an optional trailing "-1", and square roots of
/// these. Complexity is a weighted node count (atom = 1, trailing -1 = 1,
/// sqrt = 4); entries above the bound are not generated.
class RecognitionDictionary {
 public:
  explicit RecognitionDictionary(int complexity_bound = 9);

  int complexity_bound() const { return bound_; }
  const std::vector<DictEntry>& entries() const { return entries_; }

  /// Lowest-complexity entry within tolerance of x; ties broken by
  /// complexity then lexicographic serialization. No-match is empty.
  std::optional<DictEntry> recognize(double x, double tol = 5e-6) const;

  std::string dump_json() const;

 private:
  int bound_;
  std::vector<DictEntry> entries_;  // sorted by value
};

}  // namespace cellforge
