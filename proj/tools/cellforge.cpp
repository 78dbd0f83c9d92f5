#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "cellforge/io.hpp"
#include "cellforge/recognition.hpp"
#include "cellforge/solver.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace cellforge;

namespace {

struct CommonOpts {
  long precision = 256;
  long tol_exp = 100;   // tolerance 2^-tol_exp
  std::uint64_t seed = 0;
  std::string graph_path;
  std::string out_path;
  int threads = 1;
  bool verbose = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--precision", o.precision, "midpoint precision in bits")->capture_default_str();
  cmd->add_option("--tol", o.tol_exp, "zero tolerance exponent k (tolerance 2^-k)")->capture_default_str();
  cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  cmd->add_option("--graph", o.graph_path, "graph JSON path (default: bundled)");
  cmd->add_option("--out", o.out_path, "output path");
  cmd->add_option("--threads", o.threads, "worker thread cap")->capture_default_str();
  cmd->add_flag("--verbose", o.verbose, "per-equation residual detail");
}

OrientedGraph load_or_bundled_graph(const CommonOpts& o) {
  if (!o.graph_path.empty()) return load_graph(o.graph_path);
  return load_graph(default_data_dir() / "e412.json");
}

int cmd_verify(const CommonOpts& o, bool write_report) {
  fs::path data = default_data_dir();
  OrientedGraph g = load_or_bundled_graph(o);
  CellSystem cells = load_cells(data / "w_cells.json", g);

  CheckOptions copt;
  copt.precision = o.precision;
  copt.tol_log2 = -o.tol_exp;
  copt.threads = o.threads;
  copt.collect_per_equation = o.verbose;

  std::vector<CheckReport> reports;
  auto run_file = [&](const std::string& fname,
                      const std::map<std::string, Morphism>& bindings) {
    RelationEncoding rel = load_relation_file((data / "relations" / fname).string());
    reports.push_back(check_relation(rel, g, bindings, copt));
  };

  // FP and closure integrity first
  {
    Scalar fp = fp_residual(g, o.precision);
    CheckReport rep;
    rep.relation = "FP";
    rep.equation_count = 2 * g.vertex_count();
    rep.max_residual = fp;
    rep.status = fp.certifies_zero(-o.tol_exp) ? CheckReport::Status::Pass
                                               : CheckReport::Status::Fail;
    rep.worst_basis_element = "A lambda = [3] lambda and transpose";
    reports.push_back(rep);

    Scalar cl = cells.closure_residual(o.precision);
    CheckReport rc;
    rc.relation = "closure";
    rc.equation_count = (long)cells.weights().size();
    rc.max_residual = cl;
    rc.status = cl.certifies_zero(-o.tol_exp) ? CheckReport::Status::Pass
                                              : CheckReport::Status::Fail;
    rc.worst_basis_element = "rotational closure";
    reports.push_back(rc);
  }

  Morphism w = cells.as_morphism();
  Morphism u = build_u(cells);
  std::map<std::string, Morphism> bw{{"W", w}};
  std::map<std::string, Morphism> bu{{"U", u}};
  std::map<std::string, Morphism> bwu{{"W", w}, {"U", u}};

  run_file("rotation.diagram", bw);
  run_file("bigon.diagram", bw);
  run_file("square.diagram", bw);
  run_file("r1_left.diagram", bu);
  run_file("r1_right.diagram", bu);
  run_file("r2.diagram", bu);
  run_file("hecke.diagram", bu);
  run_file("r3.diagram", bu);
  run_file("ba.diagram", bwu);
  run_file("ri.diagram", bwu);
  run_file("u_norm.diagram", bwu);

  // block fixture comparison: the designated 2x2 block must be diag([2],0)
  {
    auto [pa, pb] = designated_block_paths(g);
    BoltzmannBlock b19 = block(u, pa.start, g.path_end("++", pa));
    EvalCache cache;
    Scalar worst(o.precision);
    Scalar q2 = Scalar::quantum_integer(2, 24, o.precision);
    for (int i = 0; i < b19.size(); ++i)
      for (int j = 0; j < b19.size(); ++j) {
        Scalar want = (i == 0 && j == 0) ? q2 : Scalar(o.precision);
        Scalar d = (b19.entries[(size_t)i][(size_t)j].eval(o.precision, &cache) - want).abs();
        if (d.abs_upper_double() > worst.abs_upper_double()) worst = d;
      }
    CheckReport rep;
    rep.relation = "block U^1_9";
    rep.equation_count = (long)b19.size() * b19.size();
    rep.max_residual = worst;
    rep.status = worst.certifies_zero(-o.tol_exp) ? CheckReport::Status::Pass
                                                  : CheckReport::Status::Fail;
    rep.worst_basis_element = "U^1_9 = diag([2],0)";
    reports.push_back(rep);
  }

  bool all_pass = true;
  bool indeterminate = false;
  std::printf("%-12s %10s %-14s %s\n", "relation", "equations", "status", "max residual");
  for (const CheckReport& r : reports) {
    std::printf("%-12s %10ld %-14s %.3e  %s\n", r.relation.c_str(), r.equation_count,
                to_string(r.status).c_str(), r.max_residual.abs_upper_double(),
                r.status == CheckReport::Status::Pass ? "" : r.worst_basis_element.c_str());
    if (o.verbose)
      for (const auto& [key, val] : r.per_equation)
        std::printf("    %-70s %.3e\n", key.c_str(), val.abs_upper_double());
    if (r.status == CheckReport::Status::Indeterminate) indeterminate = true;
    if (!r.passed()) all_pass = false;
  }
  if (write_report) {
    std::string path = o.out_path.empty() ? "verify_report.json" : o.out_path;
    write_file(path, report_to_json(reports, o.verbose));
    std::printf("report written to %s\n", path.c_str());
  }
  if (all_pass) return 0;
  return indeterminate && reports.end() ==
                              std::find_if(reports.begin(), reports.end(),
                                           [](const CheckReport& r) {
                                             return r.status == CheckReport::Status::Fail;
                                           })
             ? 2
             : 1;
}

int cmd_solve(const CommonOpts& o, int restarts, bool annotate) {
  OrientedGraph g = load_or_bundled_graph(o);
  PolySystem sys = assemble_system(g);
  SolveConfig cfg;
  cfg.seed = o.seed;
  cfg.restarts = restarts;
  SolveResult res = solve_numeric(sys, cfg);
  std::printf("converged: %s  residual: %.3e  restarts: %d\n",
              res.converged ? "yes" : "no", res.residual, res.restarts_used);
  std::printf("gauge group: %s ; after fixing: %s\n", res.gauge.group_before.c_str(),
              res.gauge.group_after.c_str());
  if (!res.converged) return 3;

  RecognitionDictionary dict;
  std::printf("%-12s %s\n", "magnitude", annotate ? "exact guess" : "");
  for (double m : magnitude_table(res.assignment)) {
    if (annotate) {
      auto hit = dict.recognize(m);
      std::printf("%12.6f  %s\n", m, hit ? hit->text.c_str() : "(no match)");
    } else {
      std::printf("%12.6f\n", m);
    }
  }

  nlohmann::json j;
  j["residual"] = res.residual;
  j["gauge_report"] = res.gauge.group_before + " -> " + res.gauge.group_after;
  j["assignment"] = nlohmann::json::array();
  for (const auto& [k, v] : res.assignment) {
    nlohmann::json e;
    e["p"] = nlohmann::json::array();
    for (EdgeId id : k.first.edges) e["p"].push_back(edge_ref(g, id));
    e["q"] = nlohmann::json::array();
    for (EdgeId id : k.second.edges) e["q"].push_back(edge_ref(g, id));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v.real());
    e["re"] = std::string(buf);
    std::snprintf(buf, sizeof buf, "%.17g", v.imag());
    e["im"] = std::string(buf);
    j["assignment"].push_back(std::move(e));
  }
  if (!o.out_path.empty()) {
    write_file(o.out_path, j.dump(2) + "\n");
    std::printf("assignment written to %s\n", o.out_path.c_str());
  }
  return 0;
}

int cmd_recognize(const CommonOpts& o, const std::string& list_path, bool dump) {
  RecognitionDictionary dict;
  if (dump) {
    std::string path = o.out_path.empty() ? "dictionary.json" : o.out_path;
    write_file(path, dict.dump_json());
    std::printf("dictionary (%zu entries) written to %s\n", dict.entries().size(),
                path.c_str());
    return 0;
  }
  std::string text = read_file(list_path);
  std::istringstream in(text);
  double x;
  while (in >> x) {
    auto hit = dict.recognize(x);
    std::printf("%12.6f  %s\n", x, hit ? hit->text.c_str() : "(no match)");
  }
  return 0;
}

int cmd_export(const CommonOpts& o) {
  fs::path out = o.out_path.empty() ? fs::path("export") : fs::path(o.out_path);
  fs::create_directories(out);
  fs::create_directories(out / "relations");
  const OrientedGraph& g = e412();
  const CellSystem& cells = bundled_w();
  write_file(out / "e412.json", graph_to_json(g));
  write_file(out / "w_cells.json", cells_to_json(cells));
  Morphism w = cells.as_morphism();
  write_file(out / "w_morphism.json", morphism_to_json(w, o.precision));
  Morphism u = build_u(cells);
  int blocks = 0;
  for (VertexId v1 = 1; v1 <= g.vertex_count(); ++v1)
    for (VertexId v2 = 1; v2 <= g.vertex_count(); ++v2) {
      BoltzmannBlock b = block(u, v1, v2);
      if (b.size() == 0) continue;
      std::string name = "block_" + std::to_string(v1) + "_" + std::to_string(v2) + ".json";
      write_file(out / name, block_to_json(b, g, o.precision));
      ++blocks;
    }
  std::map<std::string, std::string> files = {
      {"rotation.diagram", "()"},   {"bigon.diagram", "(i)"},
      {"square.diagram", "(ii)"},   {"r1_left.diagram", "(R1l)"},
      {"r1_right.diagram", "(R1r)"},{"r2.diagram", "(R2)"},
      {"hecke.diagram", "(Hecke)"}, {"r3.diagram", "(R3)"},
      {"ba.diagram", "(BA)"},       {"ri.diagram", "(RI)"},
      {"u_norm.diagram", "(U)"},
  };
  for (const auto& [fname, rel] : files)
    write_file(out / "relations" / fname, builtin_relation_text(rel));
  std::printf("exported graph, cells, morphism, %d blocks, %zu relation files to %s\n",
              blocks, files.size(), out.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cellforge: certified planar-algebra computations on the E4(12) graph"};
  app.require_subcommand(1);

  CommonOpts opt;
  int restarts = 100;
  bool annotate = false;
  bool with_report = false;
  bool dump_dict = false;
  std::string list_path;

  CLI::App* verify = app.add_subcommand("verify", "verify the bundled data against all relations");
  add_common(verify, opt);
  verify->add_flag("--report", with_report, "write a JSON report");

  CLI::App* report = app.add_subcommand("report", "verify and write the JSON report");
  add_common(report, opt);

  CLI::App* solve = app.add_subcommand("solve", "numerically solve the embedding system");
  add_common(solve, opt);
  solve->add_option("--restarts", restarts, "restart budget")->capture_default_str();
  solve->add_flag("--recognize", annotate, "annotate magnitudes with exact guesses");

  CLI::App* recog = app.add_subcommand("recognize", "match numbers against the dictionary");
  add_common(recog, opt);
  recog->add_option("list", list_path, "file with one number per line");
  recog->add_flag("--dump-dictionary", dump_dict, "write the dictionary JSON");

  CLI::App* exp = app.add_subcommand("export", "emit graph/cells/morphism/block JSON and relation files");
  add_common(exp, opt);

  try {
    app.parse(argc, argv);
    if (verify->parsed()) return cmd_verify(opt, with_report);
    if (report->parsed()) return cmd_verify(opt, true);
    if (solve->parsed()) return cmd_solve(opt, restarts, annotate);
    if (recog->parsed()) {
      if (!dump_dict && list_path.empty())
        throw CLI::ValidationError("recognize needs a list file or --dump-dictionary");
      return cmd_recognize(opt, list_path, dump_dict);
    }
    if (exp->parsed()) return cmd_export(opt);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
