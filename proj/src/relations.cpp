#include "cellforge/relations.hpp"

#include <atomic>
#include <sstream>
#include <thread>

namespace cellforge {

std::string to_string(CheckReport::Status s) {
  switch (s) {
    case CheckReport::Status::Pass: return "pass";
    case CheckReport::Status::Fail: return "FAIL";
    case CheckReport::Status::Indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

const std::map<std::string, std::string>& relation_table() {
  static const std::map<std::string, std::string> table = {
      {"()", "name: ()\n"
             "lhs: rot(W)\n"
             "rhs: W\n"},
      {"(i)", "name: (i)\n"
              "lhs: comp(dag(W),W)\n"
              "rhs: smul(q[2],id(\"-\"))\n"},
      {"(ii)",
       "name: (ii)\n"
       "lhs: comp(tens(id(\"+\"),dag(W)),tens(W,id(\"+\")),tens(dag(W),id(\"+\")),tens(id(\"+\"),W))\n"
       "rhs: add(id(\"+-\"),comp(coev(\"+-\"),ev(\"+-\")))\n"},
      {"(R1l)",
       "name: (R1l)\n"
       "lhs: comp(tens(ev(\"-+\"),id(\"+\")),tens(id(\"-\"),U),tens(coev(\"-+\"),id(\"+\")))\n"
       "rhs: smul(q[2],id(\"+\"))\n"},
      {"(R1r)",
       "name: (R1r)\n"
       "lhs: comp(tens(id(\"+\"),ev(\"+-\")),tens(U,id(\"-\")),tens(id(\"+\"),coev(\"+-\")))\n"
       "rhs: smul(q[2],id(\"+\"))\n"},
      {"(R2)", "name: (R2)\n"
               "lhs: dag(U)\n"
               "rhs: U\n"},
      {"(Hecke)", "name: (Hecke)\n"
                  "lhs: comp(U,U)\n"
                  "rhs: smul(q[2],U)\n"},
      {"(R3)",
       "name: (R3)\n"
       "lhs: add(comp(tens(U,id(\"+\")),tens(id(\"+\"),U),tens(U,id(\"+\"))),smul(-1,tens(U,id(\"+\"))))\n"
       "rhs: add(comp(tens(id(\"+\"),U),tens(U,id(\"+\")),tens(id(\"+\"),U)),smul(-1,tens(id(\"+\"),U)))\n"},
      {"(BA)", "name: (BA)\n"
               "lhs: comp(U,W)\n"
               "rhs: smul(q[2],W)\n"},
      {"(RI)", "name: (RI)\n"
               "lhs: rot(W)\n"
               "rhs: W\n"},
      {"(U)",
       "name: (U)\n"
       "lhs: smul(1/(q[2]*q[3]),comp(dag(comp(tens(W,id(\"+\")),coev(\"-+\"))),comp(tens(W,id(\"+\")),coev(\"-+\"))))\n"
       "rhs: id(\"\")\n"},
  };
  return table;
}

std::string path_to_string(const OrientedGraph& g, const std::string& sign, const Path& p) {
  std::ostringstream os;
  os << p.start;
  for (size_t i = 0; i < p.edges.size(); ++i) {
    const Edge& e = g.edge(p.edges[i]);
    os << (sign[i] == '+' ? ">" : "<") << '(' << e.src << '>' << e.dst;
    if (!e.label.empty()) os << ':' << e.label;
    os << ')';
  }
  return os.str();
}

}  // namespace

const std::string& builtin_relation_text(const std::string& name) {
  const auto& t = relation_table();
  auto it = t.find(name);
  if (it == t.end()) throw DiagramError("no builtin relation named " + name);
  return it->second;
}

std::vector<std::string> builtin_relation_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : relation_table()) out.push_back(k);
  return out;
}

CheckReport check_relation(const RelationEncoding& rel, const OrientedGraph& g,
                           const std::map<std::string, Morphism>& bindings,
                           const CheckOptions& opt) {
  Morphism lhs = eval_diagram(rel.lhs, g, bindings);
  Morphism rhs = eval_diagram(rel.rhs, g, bindings);
  if (lhs.source() != rhs.source() || lhs.target() != rhs.target())
    throw DiagramError("relation " + rel.name + ": sides live in different Hom spaces");
  Morphism residual = lhs - rhs;

  CheckReport rep;
  rep.relation = rel.name;
  rep.equation_count = g.hom_dim(lhs.source(), lhs.target());
  rep.max_residual = Scalar(opt.precision);
  rep.status = CheckReport::Status::Pass;

  std::vector<const std::pair<const PathPair, Coeff>*> items;
  items.reserve(residual.entries().size());
  for (const auto& kv : residual.entries()) items.push_back(&kv);

  struct Outcome {
    CheckReport::Status status;
    Scalar value;
  };
  std::vector<Outcome> results(items.size(), Outcome{CheckReport::Status::Pass, Scalar()});

  auto certify_one = [&](size_t idx, EvalCache& cache) {
    const Coeff& c = items[idx]->second;
    long prec = opt.precision;
    for (int round = 0;; ++round) {
      Scalar v = c.eval(prec, &cache);
      if (v.certifies_zero(opt.tol_log2)) {
        results[idx] = Outcome{CheckReport::Status::Pass, std::move(v)};
        return;
      }
      if (v.excludes_zero()) {
        results[idx] = Outcome{CheckReport::Status::Fail, std::move(v)};
        return;
      }
      if (!c.exact() || round >= opt.max_doublings) {
        results[idx] = Outcome{CheckReport::Status::Indeterminate, std::move(v)};
        return;
      }
      prec *= 2;
    }
  };

  int nthreads = std::max(1, opt.threads);
  if (nthreads == 1 || items.size() < 8) {
    EvalCache cache;
    for (size_t i = 0; i < items.size(); ++i) certify_one(i, cache);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      EvalCache cache;
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= items.size()) return;
        certify_one(i, cache);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  double worst = -1;
  for (size_t i = 0; i < items.size(); ++i) {
    const Outcome& oc = results[i];
    if (oc.status == CheckReport::Status::Fail)
      rep.status = CheckReport::Status::Fail;
    else if (oc.status == CheckReport::Status::Indeterminate &&
             rep.status == CheckReport::Status::Pass)
      rep.status = CheckReport::Status::Indeterminate;
    std::string keytext =
        "p=" + path_to_string(g, residual.source(), items[i]->first.first) +
        " q=" + path_to_string(g, residual.target(), items[i]->first.second);
    if (opt.collect_per_equation) rep.per_equation.emplace_back(keytext, oc.value);
    double mag = oc.value.abs_upper_double();
    if (mag > worst) {
      worst = mag;
      rep.max_residual = oc.value;
      rep.worst_basis_element = keytext;
    }
  }
  return rep;
}

namespace {
CheckReport run_builtin(const std::string& name, const OrientedGraph& g,
                        const std::map<std::string, Morphism>& bindings,
                        const CheckOptions& opt) {
  return check_relation(parse_relation_text(builtin_relation_text(name)), g, bindings, opt);
}
}  // namespace

CheckReport check_rotation(const Morphism& w, const CheckOptions& opt) {
  return run_builtin("()", w.graph(), {{"W", w}}, opt);
}

CheckReport check_bigon(const Morphism& w, const CheckOptions& opt) {
  return run_builtin("(i)", w.graph(), {{"W", w}}, opt);
}

CheckReport check_square(const Morphism& w, const CheckOptions& opt) {
  return run_builtin("(ii)", w.graph(), {{"W", w}}, opt);
}

std::vector<CheckReport> check_hecke_suite(const Morphism& u, const CheckOptions& opt) {
  std::map<std::string, Morphism> b{{"U", u}};
  const OrientedGraph& g = u.graph();
  CheckReport r1l = run_builtin("(R1l)", g, b, opt);
  CheckReport r1r = run_builtin("(R1r)", g, b, opt);
  // merge the two caps into a single (R1) report
  CheckReport r1 = r1l;
  r1.relation = "(R1)";
  r1.equation_count += r1r.equation_count;
  if (r1r.max_residual.abs_upper_double() > r1.max_residual.abs_upper_double()) {
    r1.max_residual = r1r.max_residual;
    r1.worst_basis_element = r1r.worst_basis_element;
  }
  if (r1r.status == CheckReport::Status::Fail || r1.status == CheckReport::Status::Fail)
    r1.status = CheckReport::Status::Fail;
  else if (r1r.status == CheckReport::Status::Indeterminate ||
           r1.status == CheckReport::Status::Indeterminate)
    r1.status = CheckReport::Status::Indeterminate;
  return {r1, run_builtin("(R2)", g, b, opt), run_builtin("(Hecke)", g, b, opt),
          run_builtin("(R3)", g, b, opt)};
}

std::vector<CheckReport> check_kw_aux(const Morphism& w, const Morphism& u,
                                      const CheckOptions& opt) {
  std::map<std::string, Morphism> b{{"W", w}, {"U", u}};
  const OrientedGraph& g = w.graph();
  return {run_builtin("(BA)", g, b, opt), run_builtin("(RI)", g, b, opt),
          run_builtin("(U)", g, b, opt)};
}

}  // namespace cellforge
