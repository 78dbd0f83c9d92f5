#pragma once

#include <vector>

#include "cellforge/cells.hpp"
#include "cellforge/diagram.hpp"

namespace cellforge {

struct CheckOptions {
  long precision = 256;        // midpoint bits
  long tol_log2 = -100;        // residual certifies zero below 2^tol
  int max_doublings = 4;       // automatic precision escalation cap
  int threads = 1;
  bool collect_per_equation = false;
};

struct CheckReport {
  enum class Status { Pass, Fail, Indeterminate };
  std::string relation;
  long equation_count = 0;     // dimension of the ambient Hom space
  Scalar max_residual;
  std::string worst_basis_element;
  Status status = Status::Pass;
  std::vector<std::pair<std::string, Scalar>> per_equation;  // when collected
  bool passed() const { return status == Status::Pass; }
};

std::string to_string(CheckReport::Status s);

/// Canonical text of a named relation encoding; names:
/// "()", "(i)", "(ii)", "(R1l)", "(R1r)", "(R2)", "(Hecke)", "(R3)",
/// "(BA)", "(RI)", "(U)".
const std::string& builtin_relation_text(const std::string& name);
std::vector<std::string> builtin_relation_names();

/// Certified check of lhs = rhs under the bindings, with automatic precision
/// doubling for enclosures that straddle the tolerance.
CheckReport check_relation(const RelationEncoding& rel, const OrientedGraph& g,
                           const std::map<std::string, Morphism>& bindings,
                           const CheckOptions& opt = {});

/// rotate(W) = W over the 63 cell equations
CheckReport check_rotation(const Morphism& w, const CheckOptions& opt = {});
/// W^dag o W = [2] id_-
CheckReport check_bigon(const Morphism& w, const CheckOptions& opt = {});
/// the two-term square relation in Hom(+- -> +-); 171 equations
CheckReport check_square(const Morphism& w, const CheckOptions& opt = {});
/// (R1) both caps, (R2), (Hecke), (R3) on U in Hom(++ -> ++)
std::vector<CheckReport> check_hecke_suite(const Morphism& u, const CheckOptions& opt = {});
/// (BA), (RI), (U) on the pair (W, U)
std::vector<CheckReport> check_kw_aux(const Morphism& w, const Morphism& u,
                                      const CheckOptions& opt = {});

}  // namespace cellforge
