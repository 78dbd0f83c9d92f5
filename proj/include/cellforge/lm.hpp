#pragma once

#include <Eigen/Dense>

#include "cellforge/polysystem.hpp"

namespace cellforge {

/// Compiled numeric view of a PolySystem: complex variables with a conjugate
/// involution, pinned entries substituted, Hermiticity enforced by the real
/// parametrization (diagonal pairs one real slot, conjugate pairs two).
struct NumericSystem {
  int nvars = 0;
  int neq = 0;
  std::vector<int> sigma;
  std::vector<char> is_pinned;
  std::vector<std::complex<double>> pin_value;
  struct Term {
    int eq;
    std::complex<double> c;
    int v[4];  // variable ids, -1 padding
  };
  std::vector<Term> terms;

  struct Param {
    int var;
    bool diag;
  };
  std::vector<Param> params;
  int nreal = 0;

  Eigen::VectorXcd to_complex(const Eigen::VectorXd& x) const;
  Eigen::VectorXd project(const Eigen::VectorXcd& u) const;
  void residual(const Eigen::VectorXd& x, Eigen::VectorXd& r) const;
  void residual_jacobian(const Eigen::VectorXd& x, Eigen::VectorXd& r,
                         Eigen::MatrixXd& J) const;
};

NumericSystem compile_numeric(const PolySystem& sys, long prec = 128);

/// Builds a NumericSystem directly from equations over an abstract variable
/// set (used by the auxiliary vertex system).
NumericSystem compile_numeric_raw(int nvars, const std::vector<int>& sigma,
                                  const std::vector<Equation>& equations,
                                  long prec = 128);

struct LmOptions {
  int max_iters = 500;
  double tol = 1e-12;     // on the residual 2-norm
};

struct LmOutcome {
  Eigen::VectorXd x;
  double residual_norm = HUGE_VAL;
  int iters = 0;
};

/// Damped least squares (Levenberg-Marquardt) on the real/imaginary residual
/// vector.
LmOutcome lm_minimize(const NumericSystem& ns, const Eigen::VectorXd& x0,
                      const LmOptions& opt);

}  // namespace cellforge
