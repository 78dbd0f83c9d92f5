#pragma once

#include <complex>
#include <cstdint>

#include "cellforge/cells.hpp"
#include "cellforge/polysystem.hpp"

namespace cellforge {

struct SolveConfig {
  std::uint64_t seed = 0;
  int restarts = 100;
  double tol = 1e-10;       // success threshold on the residual 2-norm
  int max_iters = 600;      // damped least-squares iterations per restart
};

struct SolveResult {
  bool converged = false;
  double residual = 0;
  int restarts_used = 0;
  std::map<PathPair, std::complex<double>> assignment;
  GaugeReport gauge;
};

/// Damped least-squares solve of the polynomial system with restarts.
/// Restarts alternate two random initializations: cell-structured seeding
/// (random triangle weights refined on the auxiliary vertex system, mapped
/// through U = W W^dag and gauge-normalized) and uniform disk seeding per
/// free entry. Fixed seed gives a bit-reproducible trajectory.
SolveResult solve_numeric(const PolySystem& sys, const SolveConfig& cfg);

/// Sorted, deduplicated (1e-6) list of |entries| of an assignment.
std::vector<double> magnitude_table(const std::map<PathPair, std::complex<double>>& a);

struct CompletionReport {
  enum class Status { Complete, Underdetermined, Inconsistent };
  Status status = Status::Complete;
  std::map<int, QExprPtr> assignment;  // var index -> exact value
  long nullity = 0;
  Scalar worst_residual;
  std::string detail;
};

/// Exact completion: substitutes the partial assignment, repeatedly solves
/// the equations that are linear in the remaining unknowns (certified
/// pivoting), and verifies the full system at the end.
CompletionReport complete_linear(const std::map<int, QExprPtr>& partial,
                                 const PolySystem& sys, long prec = 256,
                                 long tol_log2 = -100);

/// Reconstructs the cell system from an embedded Hecke element: magnitudes
/// from block diagonals, phases by orbit propagation (the rotation and
/// absorption constraints), scale and root phase pinned canonically.
/// Throws CellError when u is not of cell-system type.
CellSystem derive_w(const Morphism& u, long prec = 256, long tol_log2 = -100);

}  // namespace cellforge
