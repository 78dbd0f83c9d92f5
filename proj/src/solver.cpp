#include "cellforge/solver.hpp"

#include <algorithm>
#include <cmath>

#include "cellforge/lm.hpp"

namespace cellforge {

namespace {

double uniform01(std::uint64_t& state) {
  // splitmix64 step; top 53 bits -> [0,1)
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z = z ^ (z >> 31);
  return (double)(z >> 11) * 0x1.0p-53;
}

// ----- auxiliary vertex system (bigon + square over orbit cells) -----------
struct VertexSystem {
  const OrientedGraph* g = nullptr;
  std::vector<Triangle> marked;                 // all 63, sorted
  std::vector<Triangle> orbit_rep;              // per orbit, sorted by rep
  std::map<Triangle, int> orbit_of;
  std::map<Triangle, QExprPtr> rotfac;          // cell(T) = rotfac(T) * cell(rep)
  NumericSystem numeric;                        // vars: orbit cells + conjugates
  std::map<Triangle, double> rotfac_d;
};

VertexSystem build_vertex_system(const OrientedGraph& g) {
  VertexSystem vs;
  vs.g = &g;
  vs.marked = CellSystem::support(g);
  for (const Triangle& t : vs.marked) {
    if (vs.orbit_of.count(t)) continue;
    Triangle orb[3] = {t, t.rotated(), t.rotated().rotated()};
    Triangle rep = std::min({orb[0], orb[1], orb[2]});
    int id = (int)vs.orbit_rep.size();
    vs.orbit_rep.push_back(rep);
    for (const Triangle& x : orb) vs.orbit_of[x] = id;
  }
  // rotation factors relative to the representative:
  // W_{b,c,a} = sqrt(lambda_c / lambda_b) W_{a,b,c}
  EvalCache cache;
  for (const Triangle& rep : vs.orbit_rep) {
    Triangle cur = rep;
    QExprPtr fac = qx::one();
    for (int step = 0; step < 3; ++step) {
      vs.rotfac[cur] = fac;
      vs.rotfac_d[cur] = qexpr_eval(fac, 64, &cache).mid_re();
      VertexId b = g.edge(cur.bc).src;
      VertexId c = g.edge(cur.bc).dst;
      fac = qx::mul(fac, g.fp_sqrt_ratio(c, b));
      cur = cur.rotated();
    }
  }
  int n = (int)vs.orbit_rep.size();
  std::vector<int> sigma((size_t)(2 * n));
  for (int i = 0; i < n; ++i) {
    sigma[(size_t)i] = i + n;
    sigma[(size_t)(i + n)] = i;
  }
  // W as a poly-morphism in the orbit variables
  PolyMor W{"-", "++", {}};
  for (const Triangle& t : vs.marked) {
    VertexId a = g.edge(t.ab).src;
    PathPair key{Path{a, {t.ca}}, Path{a, {t.ab, t.bc}}};
    W.m.emplace(std::move(key),
                Poly::variable(vs.orbit_of[t]).scaled(vs.rotfac[t]));
  }
  PolyMor Wd = poly_dagger(g, W, sigma);
  PolyMor idp = poly_identity(g, "+");
  PolyMor idm = poly_identity(g, "-");
  std::vector<Equation> eqs;
  auto emit = [&](const char* tag, const PolyMor& residual) {
    for (const auto& [k, poly] : residual.m) {
      Poly p = poly;
      p.prune();
      if (!p.empty()) eqs.push_back(Equation{tag, "", std::move(p)});
    }
  };
  // bigon: W^dag W = [2] id_-
  emit("bigon", poly_sub(poly_compose(g, Wd, W),
                         poly_scale(idm, qx::qint(2))));
  // square: (id ox Wd)(W ox id)(Wd ox id)(id ox W) = id_{+-} + coev ev
  PolyMor sq = poly_compose(
      g, poly_tensor(g, idp, Wd),
      poly_compose(g, poly_tensor(g, W, idp),
                   poly_compose(g, poly_tensor(g, Wd, idp), poly_tensor(g, idp, W))));
  PolyMor rhs = poly_identity(g, "+-");
  PolyMor cupcap = poly_from_morphism(compose(coev(g, "+-"), ev(g, "+-")));
  for (const auto& [k, v] : cupcap.m) {
    auto [slot, fresh] = rhs.m.emplace(k, v);
    if (!fresh) slot->second = slot->second + v;
  }
  emit("square", poly_sub(sq, rhs));
  vs.numeric = compile_numeric_raw(2 * n, sigma, eqs, 128);
  return vs;
}

// gauge normalization: mix the doubled-edge pair so the designated block
// becomes diag([2], 0)
void normalize_block(const OrientedGraph& g,
                     std::map<PathPair, std::complex<double>>& u) {
  GaugeReport gr = gauge_structure(g);
  if (gr.families.empty()) return;
  auto [pa, pb] = designated_block_paths(g);
  EdgeId ea = pa.edges[1], eb = pb.edges[1];
  auto get = [&](const Path& ps, const Path& pt) {
    auto it = u.find(PathPair{ps, pt});
    return it == u.end() ? std::complex<double>(0) : it->second;
  };
  Eigen::Matrix2cd B;
  // rows = target path, cols = source path
  B << get(pa, pa), get(pb, pa), get(pa, pb), get(pb, pb);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(0.5 * (B + B.adjoint()));
  Eigen::Vector2d ev = es.eigenvalues();      // ascending
  Eigen::Matrix2cd V = es.eigenvectors();
  std::swap(ev(0), ev(1));
  V.col(0).swap(V.col(1));                    // descending: [2] first
  Eigen::Matrix2cd gm = V.adjoint();
  // expand a path under the edge-pair mixing; + steps get gm, source side conj
  auto expand = [&](const Path& p, bool conjugate) {
    std::vector<std::pair<Path, std::complex<double>>> out{{p, {1, 0}}};
    for (size_t pos = 0; pos < p.edges.size(); ++pos) {
      EdgeId e = p.edges[pos];
      if (e != ea && e != eb) continue;
      int k = e == ea ? 0 : 1;
      std::vector<std::pair<Path, std::complex<double>>> next;
      for (auto& [pp, c] : out)
        for (int k2 = 0; k2 < 2; ++k2) {
          std::complex<double> f = gm(k2, k);
          if (conjugate) f = std::conj(f);
          Path q = pp;
          q.edges[pos] = k2 == 0 ? ea : eb;
          next.emplace_back(std::move(q), c * f);
        }
      out = std::move(next);
    }
    return out;
  };
  std::map<PathPair, std::complex<double>> out;
  for (const auto& [k, v] : u) {
    if (std::abs(v) < 1e-300) continue;
    for (const auto& [ps, cs] : expand(k.first, true))
      for (const auto& [pt, ct] : expand(k.second, false))
        out[PathPair{ps, pt}] += cs * ct * v;
  }
  u = std::move(out);
}

}  // namespace

SolveResult solve_numeric(const PolySystem& sys, const SolveConfig& cfg) {
  const OrientedGraph& g = *sys.graph;
  SolveResult best;
  best.gauge = gauge_structure(g);
  best.residual = HUGE_VAL;

  NumericSystem ns = compile_numeric(sys, 128);
  VertexSystem vs = build_vertex_system(g);
  int n_orbits = (int)vs.orbit_rep.size();
  double disk_radius = Scalar::quantum_integer(2, 24, 64).mid_re();

  auto assignment_from_u = [&](const Eigen::VectorXcd& u) {
    std::map<PathPair, std::complex<double>> a;
    for (size_t i = 0; i < sys.vars.size(); ++i) a[sys.vars[i]] = u[(long)i];
    return a;
  };
  auto u_from_assignment = [&](const std::map<PathPair, std::complex<double>>& a) {
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero((long)sys.vars.size());
    for (size_t i = 0; i < sys.vars.size(); ++i) {
      auto it = a.find(sys.vars[i]);
      if (it != a.end()) u[(long)i] = it->second;
    }
    return u;
  };

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    std::uint64_t rng = cfg.seed ^ (0xD1B54A32D192ED03ULL * (std::uint64_t)(restart + 1));
    Eigen::VectorXd x0;
    bool have_seed = false;

    if (restart % 2 == 0) {
      // cell-structured seeding
      Eigen::VectorXd xw(vs.numeric.nreal);
      for (int i = 0; i < vs.numeric.nreal; ++i) xw[i] = 3.0 * uniform01(rng) - 1.5;
      LmOutcome wout = lm_minimize(vs.numeric, xw, LmOptions{400, 1e-12});
      if (wout.residual_norm < 1e-9) {
        Eigen::VectorXcd wc = vs.numeric.to_complex(wout.x);
        // cells from orbit values
        std::map<Triangle, std::complex<double>> cell;
        for (const Triangle& t : vs.marked)
          cell[t] = vs.rotfac_d[t] * wc[vs.orbit_of[t]];
        // U = W W^dag on the variable pairs
        std::map<PathPair, std::complex<double>> a;
        for (const PathPair& k : sys.vars) {
          VertexId v1 = k.first.start;
          VertexId v3 = g.path_end("++", k.first);
          std::complex<double> s = 0;
          for (EdgeId e : g.edges_between(v3, v1)) {
            Triangle tp{k.first.edges[0], k.first.edges[1], e};
            Triangle tq{k.second.edges[0], k.second.edges[1], e};
            s += std::conj(cell[tp]) * cell[tq];
          }
          a[k] = s;
        }
        normalize_block(g, a);
        x0 = ns.project(u_from_assignment(a));
        have_seed = true;
      }
    }
    if (!have_seed) {
      // uniform in the disk of radius [2] per free entry
      x0.resize(ns.nreal);
      int ix = 0;
      for (const auto& p : ns.params) {
        if (p.diag) {
          x0[ix++] = disk_radius * (2.0 * uniform01(rng) - 1.0);
        } else {
          double r = disk_radius * std::sqrt(uniform01(rng));
          double th = 2.0 * M_PI * uniform01(rng);
          x0[ix] = r * std::cos(th);
          x0[ix + 1] = r * std::sin(th);
          ix += 2;
        }
      }
    }

    LmOutcome out = lm_minimize(ns, x0, LmOptions{cfg.max_iters, cfg.tol * 1e-2});
    if (out.residual_norm < best.residual) {
      best.residual = out.residual_norm;
      best.assignment = assignment_from_u(ns.to_complex(out.x));
      best.restarts_used = restart + 1;
    }
    if (out.residual_norm < cfg.tol) {
      best.converged = true;
      break;
    }
  }
  return best;
}

std::vector<double> magnitude_table(const std::map<PathPair, std::complex<double>>& a) {
  std::vector<double> mags;
  mags.reserve(a.size());
  for (const auto& [k, v] : a) mags.push_back(std::abs(v));
  std::sort(mags.begin(), mags.end());
  std::vector<double> out;
  for (double m : mags)
    if (out.empty() || m - out.back() > 1e-6) out.push_back(m);
  return out;
}

// ---------------------------------------------------------------------------
CompletionReport complete_linear(const std::map<int, QExprPtr>& partial,
                                 const PolySystem& sys, long prec, long tol_log2) {
  CompletionReport rep;
  rep.worst_residual = Scalar(prec);
  std::map<int, QExprPtr> known = partial;
  for (const auto& [v, val] : sys.pinned)
    if (!known.count(v)) known[v] = val;
  // conjugate closure of the knowns
  auto close_conj = [&] {
    for (const auto& [v, val] : std::map<int, QExprPtr>(known)) {
      int w = sys.sigma[(size_t)v];
      if (!known.count(w)) known[w] = qx::conj(val);
    }
  };
  close_conj();

  EvalCache cache;
  int nvars = (int)sys.vars.size();

  for (;;) {
    // substitute and gather equations linear in the unknowns
    struct Row {
      std::map<int, QExprPtr> coeffs;
      QExprPtr constant;
      const Equation* eq;
    };
    std::vector<Row> rows;
    bool any_unknown = false;
    for (const Equation& e : sys.equations) {
      Row row;
      row.constant = qx::zero();
      row.eq = &e;
      bool nonlinear = false;
      for (const auto& [m, c] : e.poly.terms()) {
        std::vector<int> unk;
        QExprPtr coef = c;
        for (int v : m.vars) {
          auto it = known.find(v);
          if (it == known.end())
            unk.push_back(v);
          else
            coef = qx::mul(coef, it->second);
        }
        if (unk.size() >= 2) {
          nonlinear = true;
          break;
        }
        if (unk.empty()) {
          row.constant = qx::add(row.constant, coef);
        } else {
          auto [it, fresh] = row.coeffs.emplace(unk[0], coef);
          if (!fresh) it->second = qx::add(it->second, coef);
        }
      }
      if (nonlinear) {
        any_unknown = true;
        continue;
      }
      if (!row.coeffs.empty())
        rows.push_back(std::move(row));
      else if (!qexpr_eval(row.constant, prec, &cache).certifies_zero(tol_log2)) {
        rep.status = CompletionReport::Status::Inconsistent;
        rep.worst_residual = qexpr_eval(row.constant, prec, &cache).abs();
        rep.detail = "equation " + e.tag + " " + e.key + " is violated";
        return rep;
      }
    }

    if ((int)known.size() >= nvars) break;
    if (rows.empty()) {
      if (any_unknown || (int)known.size() < nvars) {
        rep.status = CompletionReport::Status::Underdetermined;
        rep.nullity = nvars - (long)known.size();
        rep.detail = "no equations linear in the remaining unknowns";
        return rep;
      }
      break;
    }

    // Gaussian elimination with certified pivoting over the linear subsystem:
    // forward elimination records pivots; back-substitution resolves them.
    struct Pivot {
      int var;
      QExprPtr coeff;
      std::map<int, QExprPtr> rest;
      QExprPtr constant;
    };
    std::vector<Pivot> pivots;
    std::vector<Row> work = std::move(rows);
    for (;;) {
      int prow = -1, pvar = -1;
      double pmag = 0;
      for (int ri = 0; ri < (int)work.size(); ++ri) {
        for (const auto& [v, c] : work[(size_t)ri].coeffs) {
          Scalar cv = qexpr_eval(c, prec, &cache);
          if (!cv.excludes_zero()) continue;
          double lo = cv.abs().mid_re();
          if (lo > pmag) {
            pmag = lo;
            prow = ri;
            pvar = v;
          }
        }
      }
      if (prow < 0) break;
      Row piv = std::move(work[(size_t)prow]);
      work.erase(work.begin() + prow);
      QExprPtr pc = piv.coeffs[pvar];
      piv.coeffs.erase(pvar);
      for (Row& r : work) {
        auto it = r.coeffs.find(pvar);
        if (it == r.coeffs.end()) continue;
        QExprPtr factor = qx::div(it->second, pc);
        r.coeffs.erase(it);
        r.constant = qx::sub(r.constant, qx::mul(factor, piv.constant));
        for (const auto& [v, c] : piv.coeffs) {
          QExprPtr delta = qx::neg(qx::mul(factor, c));
          auto [slot, fresh] = r.coeffs.emplace(v, delta);
          if (!fresh) slot->second = qx::add(slot->second, delta);
        }
      }
      pivots.push_back(Pivot{pvar, pc, std::move(piv.coeffs), piv.constant});
    }
    // back-substitute in reverse pivot order
    std::map<int, QExprPtr> solved;
    bool progressed = false;
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      QExprPtr expr = qx::neg(it->constant);
      bool resolved = true;
      for (const auto& [v, c] : it->rest) {
        auto s = solved.find(v);
        if (s == solved.end()) {
          resolved = false;
          break;
        }
        expr = qx::sub(expr, qx::mul(c, s->second));
      }
      if (!resolved) continue;
      solved[it->var] = qx::div(expr, it->coeff);
    }
    for (auto& [v, e] : solved)
      if (!known.count(v)) {
        known[v] = e;
        progressed = true;
      }
    if (!progressed) {
      rep.status = CompletionReport::Status::Underdetermined;
      rep.nullity = nvars - (long)known.size();
      rep.detail = "linear subsystem has no certified pivot";
      return rep;
    }
    close_conj();
  }

  // full verification
  for (const Equation& e : sys.equations) {
    QExprPtr val = qx::zero();
    for (const auto& [m, c] : e.poly.terms()) {
      QExprPtr term = c;
      for (int v : m.vars) {
        auto it = known.find(v);
        if (it == known.end()) {
          rep.status = CompletionReport::Status::Underdetermined;
          rep.nullity = nvars - (long)known.size();
          return rep;
        }
        term = qx::mul(term, it->second);
      }
      val = qx::add(val, term);
    }
    Scalar r = qexpr_eval(val, prec, &cache);
    if (!r.certifies_zero(tol_log2)) {
      rep.status = CompletionReport::Status::Inconsistent;
      rep.worst_residual = r.abs();
      rep.detail = "equation " + e.tag + " " + e.key + " is violated";
      return rep;
    }
    if (r.abs_upper_double() > rep.worst_residual.abs_upper_double())
      rep.worst_residual = r.abs();
  }
  rep.assignment = std::move(known);
  rep.status = CompletionReport::Status::Complete;
  return rep;
}

// ---------------------------------------------------------------------------
CellSystem derive_w(const Morphism& u, long prec, long tol_log2) {
  const OrientedGraph& g = u.graph();
  if (u.source() != "++" || u.target() != "++")
    throw CellError("derive_w expects an element of Hom(++ -> ++)");
  EvalCache cache;

  // reject entries on blocks with no backward edge (not cell-type)
  for (const auto& [k, v] : u.entries()) {
    VertexId v1 = k.first.start;
    VertexId v3 = g.path_end("++", k.first);
    if (g.edges_between(v3, v1).empty() &&
        !v.eval(prec, &cache).certifies_zero(tol_log2))
      throw CellError("derive_w: support outside cell-type blocks");
  }

  auto ucoeff = [&](const Path& src, const Path& tgt) -> Coeff {
    if (const Coeff* c = u.find(PathPair{src, tgt})) return *c;
    return Coeff(qx::zero());
  };

  // orbits and rotation factors
  std::vector<Triangle> marked = CellSystem::support(g);
  std::map<Triangle, int> orbit_of;
  std::vector<Triangle> reps;
  std::map<Triangle, QExprPtr> rotfac;
  for (const Triangle& t : marked) {
    if (orbit_of.count(t)) continue;
    Triangle orb[3] = {t, t.rotated(), t.rotated().rotated()};
    Triangle rep = std::min({orb[0], orb[1], orb[2]});
    int id = (int)reps.size();
    reps.push_back(rep);
    for (const Triangle& x : orb) orbit_of[x] = id;
  }
  for (const Triangle& rep : reps) {
    Triangle cur = rep;
    QExprPtr fac = qx::one();
    for (int step = 0; step < 3; ++step) {
      rotfac[cur] = fac;
      VertexId b = g.edge(cur.bc).src;
      VertexId c = g.edge(cur.bc).dst;
      fac = qx::mul(fac, g.fp_sqrt_ratio(c, b));
      cur = cur.rotated();
    }
  }

  // the ++ path of a marked triangle, and its rank-1 block diagonal
  auto tri_path = [&](const Triangle& t) {
    return Path{g.edge(t.ab).src, {t.ab, t.bc}};
  };
  auto tri_backedge_count = [&](const Triangle& t) {
    return (int)g.edges_between(g.edge(t.bc).dst, g.edge(t.ab).src).size();
  };

  int n = (int)reps.size();
  std::vector<Coeff> rep_val((size_t)n, Coeff(qx::zero()));
  std::vector<char> rep_known((size_t)n, 0), rep_zero((size_t)n, 0);

  // magnitudes: orbit is zero iff its rank-1 diagonals certify zero
  for (int o = 0; o < n; ++o) {
    bool any_nonzero = false, any_rank1 = false;
    Triangle cur = reps[(size_t)o];
    for (int step = 0; step < 3; ++step) {
      if (tri_backedge_count(cur) == 1) {
        any_rank1 = true;
        Scalar diag = ucoeff(tri_path(cur), tri_path(cur)).eval(prec, &cache);
        if (diag.excludes_zero()) any_nonzero = true;
      }
      cur = cur.rotated();
    }
    if (!any_rank1) throw CellError("derive_w: orbit with no rank-1 marked position");
    if (!any_nonzero) {
      rep_zero[(size_t)o] = 1;
      rep_known[(size_t)o] = 1;
    }
  }

  // root orbit: least orbit with nonzero magnitude; pin its representative
  // real-positive from the first rank-1 diagonal
  auto pin_root = [&](int o) {
    Triangle cur = reps[(size_t)o];
    for (int step = 0; step < 3; ++step) {
      if (tri_backedge_count(cur) == 1) {
        Coeff diag = ucoeff(tri_path(cur), tri_path(cur));
        if (diag.eval(prec, &cache).excludes_zero()) {
          // |cell(cur)|^2 = diag ; cell(cur) = rotfac(cur) * rep
          Coeff cell = diag.exact() ? Coeff(qx::sqrt(diag.expr()))
                                    : Coeff(diag.eval(prec, &cache).sqrt());
          rep_val[(size_t)o] = cell * Coeff(qx::div(qx::one(), rotfac[cur]));
          rep_known[(size_t)o] = 1;
          return;
        }
      }
      cur = cur.rotated();
    }
    throw CellError("derive_w: cannot pin root orbit");
  };

  // propagation over rank-1 block products:
  // U[(p, r)] = conj(cell(T(m,p))) * cell(T(m,r))
  auto propagate = [&]() {
    bool progress = true;
    while (progress) {
      progress = false;
      for (VertexId v1 = 1; v1 <= g.vertex_count(); ++v1)
        for (VertexId v3 = 1; v3 <= g.vertex_count(); ++v3) {
          auto back = g.edges_between(v3, v1);
          if (back.size() != 1) continue;
          EdgeId m = back[0];
          auto ps = g.paths("++", v1, v3);
          for (const Path& p : ps)
            for (const Path& r : ps) {
              if (p == r) continue;
              Triangle tp{p.edges[0], p.edges[1], m};
              Triangle tr{r.edges[0], r.edges[1], m};
              int op = orbit_of[tp], orr = orbit_of[tr];
              if (rep_known[(size_t)op] == rep_known[(size_t)orr]) continue;
              if (rep_zero[(size_t)op] || rep_zero[(size_t)orr]) continue;
              Coeff uc = ucoeff(p, r);
              if (!uc.eval(prec, &cache).excludes_zero()) continue;
              if (rep_known[(size_t)op]) {
                // cell(tr) = U[(p,r)] / conj(cell(tp))
                Coeff cell_p = rep_val[(size_t)op] * Coeff(rotfac[tp]);
                Coeff cell_r = uc / cell_p.conj();
                rep_val[(size_t)orr] = cell_r * Coeff(qx::div(qx::one(), rotfac[tr]));
                rep_known[(size_t)orr] = 1;
                progress = true;
              } else {
                // cell(tp) = conj(U[(p,r)] / cell(tr))
                Coeff cell_r = rep_val[(size_t)orr] * Coeff(rotfac[tr]);
                Coeff cell_p = (uc / cell_r).conj();
                rep_val[(size_t)op] = cell_p * Coeff(qx::div(qx::one(), rotfac[tp]));
                rep_known[(size_t)op] = 1;
                progress = true;
              }
            }
        }
    }
  };

  for (;;) {
    int root = -1;
    for (int o = 0; o < n; ++o)
      if (!rep_known[(size_t)o]) {
        root = o;
        break;
      }
    if (root < 0) break;
    pin_root(root);
    propagate();
  }

  std::map<Triangle, Coeff> cells;
  for (const Triangle& t : marked) {
    int o = orbit_of[t];
    cells.emplace(t, rep_zero[(size_t)o] ? Coeff(qx::zero())
                                         : rep_val[(size_t)o] * Coeff(rotfac[t]));
  }
  CellSystem result(&g, std::move(cells));

  // validation: the reconstruction must reproduce u
  Morphism rebuilt = build_u(result);
  Morphism diff = rebuilt - u;
  for (const auto& [k, v] : diff.entries())
    if (!v.eval(prec, &cache).certifies_zero(tol_log2))
      throw CellError("derive_w: input is not of cell-system type (W W^dag mismatch)");
  // bigon sanity
  Morphism w = result.as_morphism();
  Morphism bigon = compose(dagger(w), w) - identity(g, "-").scaled(Coeff(qx::qint(2)));
  for (const auto& [k, v] : bigon.entries())
    if (!v.eval(prec, &cache).certifies_zero(tol_log2))
      throw CellError("derive_w: bigon normalization failed");
  return result;
}

}  // namespace cellforge
