#include "cellforge/lm.hpp"

namespace cellforge {

Eigen::VectorXcd NumericSystem::to_complex(const Eigen::VectorXd& x) const {
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(nvars);
  for (int v = 0; v < nvars; ++v)
    if (is_pinned[(size_t)v]) u[v] = pin_value[(size_t)v];
  int ix = 0;
  for (const Param& p : params) {
    if (p.diag) {
      u[p.var] = x[ix++];
    } else {
      u[p.var] = std::complex<double>(x[ix], x[ix + 1]);
      u[sigma[(size_t)p.var]] = std::complex<double>(x[ix], -x[ix + 1]);
      ix += 2;
    }
  }
  return u;
}

Eigen::VectorXd NumericSystem::project(const Eigen::VectorXcd& u) const {
  Eigen::VectorXd x(nreal);
  int ix = 0;
  for (const Param& p : params) {
    if (p.diag) {
      x[ix++] = u[p.var].real();
    } else {
      x[ix] = u[p.var].real();
      x[ix + 1] = u[p.var].imag();
      ix += 2;
    }
  }
  return x;
}

void NumericSystem::residual(const Eigen::VectorXd& x, Eigen::VectorXd& r) const {
  Eigen::VectorXcd u = to_complex(x);
  Eigen::VectorXcd vals = Eigen::VectorXcd::Zero(neq);
  for (const Term& t : terms) {
    std::complex<double> prod = t.c;
    for (int k = 0; k < 4 && t.v[k] >= 0; ++k) prod *= u[t.v[k]];
    vals[t.eq] += prod;
  }
  r.resize(2 * neq);
  for (int e = 0; e < neq; ++e) {
    r[2 * e] = vals[e].real();
    r[2 * e + 1] = vals[e].imag();
  }
}

void NumericSystem::residual_jacobian(const Eigen::VectorXd& x, Eigen::VectorXd& r,
                                      Eigen::MatrixXd& J) const {
  Eigen::VectorXcd u = to_complex(x);
  Eigen::VectorXcd vals = Eigen::VectorXcd::Zero(neq);
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(neq, nvars);
  for (const Term& t : terms) {
    std::complex<double> vv[4];
    int deg = 0;
    for (; deg < 4 && t.v[deg] >= 0; ++deg) vv[deg] = u[t.v[deg]];
    std::complex<double> prod = t.c;
    for (int k = 0; k < deg; ++k) prod *= vv[k];
    vals[t.eq] += prod;
    for (int k = 0; k < deg; ++k) {
      std::complex<double> gpart = t.c;
      for (int k2 = 0; k2 < deg; ++k2)
        if (k2 != k) gpart *= vv[k2];
      G(t.eq, t.v[k]) += gpart;
    }
  }
  r.resize(2 * neq);
  for (int e = 0; e < neq; ++e) {
    r[2 * e] = vals[e].real();
    r[2 * e + 1] = vals[e].imag();
  }
  J = Eigen::MatrixXd::Zero(2 * neq, nreal);
  int ix = 0;
  for (const Param& p : params) {
    if (p.diag) {
      for (int e = 0; e < neq; ++e) {
        J(2 * e, ix) += G(e, p.var).real();
        J(2 * e + 1, ix) += G(e, p.var).imag();
      }
      ix += 1;
    } else {
      int w = sigma[(size_t)p.var];
      for (int e = 0; e < neq; ++e) {
        std::complex<double> dre = G(e, p.var) + G(e, w);
        std::complex<double> dim =
            std::complex<double>(0, 1) * (G(e, p.var) - G(e, w));
        J(2 * e, ix) += dre.real();
        J(2 * e + 1, ix) += dre.imag();
        J(2 * e, ix + 1) += dim.real();
        J(2 * e + 1, ix + 1) += dim.imag();
      }
      ix += 2;
    }
  }
}

namespace {

NumericSystem finish_compile(NumericSystem ns) {
  for (int v = 0; v < ns.nvars; ++v) {
    if (ns.is_pinned[(size_t)v]) continue;
    int w = ns.sigma[(size_t)v];
    if (v == w)
      ns.params.push_back({v, true});
    else if (v < w)
      ns.params.push_back({v, false});
  }
  ns.nreal = 0;
  for (const auto& p : ns.params) ns.nreal += p.diag ? 1 : 2;
  return ns;
}

}  // namespace

NumericSystem compile_numeric_raw(int nvars, const std::vector<int>& sigma,
                                  const std::vector<Equation>& equations, long prec) {
  NumericSystem ns;
  ns.nvars = nvars;
  ns.sigma = sigma;
  ns.is_pinned.assign((size_t)nvars, 0);
  ns.pin_value.assign((size_t)nvars, {0, 0});
  ns.neq = (int)equations.size();
  EvalCache cache;
  for (int e = 0; e < ns.neq; ++e) {
    for (const auto& [m, c] : equations[(size_t)e].poly.terms()) {
      if (m.degree() > 4) throw SolverError("numeric compile: degree > 4");
      Scalar cv = qexpr_eval(c, prec, &cache);
      NumericSystem::Term t;
      t.eq = e;
      t.c = {cv.mid_re(), cv.mid_im()};
      for (int k = 0; k < 4; ++k)
        t.v[k] = k < m.degree() ? m.vars[(size_t)k] : -1;
      ns.terms.push_back(t);
    }
  }
  return finish_compile(std::move(ns));
}

NumericSystem compile_numeric(const PolySystem& sys, long prec) {
  NumericSystem ns = compile_numeric_raw((int)sys.vars.size(), sys.sigma,
                                         sys.equations, prec);
  EvalCache cache;
  for (const auto& [var, value] : sys.pinned) {
    ns.is_pinned[(size_t)var] = 1;
    Scalar v = qexpr_eval(value, prec, &cache);
    ns.pin_value[(size_t)var] = {v.mid_re(), v.mid_im()};
  }
  // rebuild the parametrization with pins applied
  ns.params.clear();
  return finish_compile(std::move(ns));
}

LmOutcome lm_minimize(const NumericSystem& ns, const Eigen::VectorXd& x0,
                      const LmOptions& opt) {
  LmOutcome out;
  Eigen::VectorXd x = x0, r, rn;
  Eigen::MatrixXd J;
  ns.residual_jacobian(x, r, J);
  double cost = r.squaredNorm();
  double mu = 1e-3;
  int it = 0;
  for (; it < opt.max_iters; ++it) {
    Eigen::VectorXd g = J.transpose() * r;
    Eigen::MatrixXd H = J.transpose() * J;
    bool improved = false;
    for (int tries = 0; tries < 60; ++tries) {
      Eigen::MatrixXd Hd = H;
      Hd.diagonal().array() += mu;
      Eigen::VectorXd dx = Hd.ldlt().solve(-g);
      Eigen::VectorXd xn = x + dx;
      ns.residual(xn, rn);
      double cn = rn.squaredNorm();
      if (cn < cost) {
        x = std::move(xn);
        cost = cn;
        mu = std::max(mu * 0.4, 1e-15);
        improved = true;
        break;
      }
      mu *= 4;
      if (mu > 1e15) break;
    }
    if (!improved) break;
    if (std::sqrt(cost) < opt.tol) break;
    ns.residual_jacobian(x, r, J);
  }
  out.x = std::move(x);
  out.residual_norm = std::sqrt(cost);
  out.iters = it;
  return out;
}

}  // namespace cellforge
