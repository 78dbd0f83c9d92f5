#include "cellforge/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cellforge {

using nlohmann::json;
namespace fs = std::filesystem;

fs::path default_data_dir() {
  if (const char* env = std::getenv("CELLFORGE_DATA")) return fs::path(env);
  return fs::path(CELLFORGE_SOURCE_DATA_DIR);
}

std::string edge_ref(const OrientedGraph& g, EdgeId e) {
  const Edge& ed = g.edge(e);
  std::string out = std::to_string(ed.src) + ">" + std::to_string(ed.dst);
  if (!ed.label.empty()) out += ":" + ed.label;
  return out;
}

EdgeId parse_edge_ref(const OrientedGraph& g, const std::string& ref) {
  size_t gt = ref.find('>');
  if (gt == std::string::npos) throw IoError("bad edge reference: " + ref);
  size_t colon = ref.find(':', gt);
  int src = std::stoi(ref.substr(0, gt));
  int dst = std::stoi(ref.substr(gt + 1, colon == std::string::npos
                                             ? std::string::npos
                                             : colon - gt - 1));
  std::string label = colon == std::string::npos ? "" : ref.substr(colon + 1);
  return g.find_edge(src, dst, label);
}

namespace {

json path_to_json(const OrientedGraph& g, const Path& p) {
  json e = json::array();
  for (EdgeId id : p.edges) e.push_back(edge_ref(g, id));
  return json{{"v", p.start}, {"e", std::move(e)}};
}

Path path_from_json(const OrientedGraph& g, const json& j) {
  Path p;
  p.start = j.at("v").get<int>();
  for (const auto& s : j.at("e")) p.edges.push_back(parse_edge_ref(g, s.get<std::string>()));
  return p;
}

json coeff_to_json(const Coeff& c, long prec) {
  if (c.exact()) return qexpr_to_string(c.expr());
  Scalar v = c.eval(prec);
  return json{{"re", v.mid_re()}, {"im", v.mid_im()}};
}

Coeff coeff_from_json(const json& j, long prec) {
  if (j.is_string()) return Coeff(qexpr_parse(j.get<std::string>()));
  return Coeff(Scalar::from_double(j.at("re").get<double>(), j.at("im").get<double>(), prec));
}

}  // namespace

std::string graph_to_json(const OrientedGraph& g) {
  json j;
  j["schema"] = "cellforge/graph/v1";
  j["vertices"] = json::array();
  for (VertexId v = 1; v <= g.vertex_count(); ++v)
    j["vertices"].push_back({{"id", v}, {"label", std::to_string(v)}});
  j["edges"] = json::array();
  for (const Edge& e : g.edges())
    j["edges"].push_back({{"src", e.src}, {"dst", e.dst}, {"label", e.label}});
  j["fp"] = json::array();
  for (VertexId v = 1; v <= g.vertex_count(); ++v)
    j["fp"].push_back({{"vertex", v}, {"expr", qexpr_to_string(g.fp(v))}});
  return j.dump(2) + "\n";
}

OrientedGraph graph_from_json(const std::string& text) {
  json j = json::parse(text);
  int nv = (int)j.at("vertices").size();
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges"))
    edges.push_back(Edge{e.at("src").get<int>(), e.at("dst").get<int>(),
                         e.value("label", std::string())});
  std::vector<QExprPtr> fp(nv);
  for (const auto& f : j.at("fp"))
    fp[(size_t)f.at("vertex").get<int>() - 1] = qexpr_parse(f.at("expr").get<std::string>());
  for (const auto& p : fp)
    if (!p) throw IoError("graph JSON: FP vector incomplete");
  return OrientedGraph(nv, std::move(edges), std::move(fp));
}

OrientedGraph load_graph(const fs::path& file) { return graph_from_json(read_file(file)); }

std::string cells_to_json(const CellSystem& c) {
  const OrientedGraph& g = c.graph();
  json j;
  j["schema"] = "cellforge/cells/v1";
  j["graph_ref"] = "e412";
  j["closure"] = "none";  // the emitted list is fully closed (63 entries)
  j["generators"] = json::array();
  for (const auto& [t, w] : c.weights()) {
    const Edge& ab = g.edge(t.ab);
    const Edge& bc = g.edge(t.bc);
    json entry;
    entry["a"] = ab.src;
    entry["b"] = ab.dst;
    entry["c"] = bc.dst;
    entry["edges"] = {edge_ref(g, t.ab), edge_ref(g, t.bc), edge_ref(g, t.ca)};
    entry["coeff"] = coeff_to_json(w, 256);
    j["generators"].push_back(std::move(entry));
  }
  return j.dump(2) + "\n";
}

CellSystem cells_from_json(const std::string& text, const OrientedGraph& g) {
  json j = json::parse(text);
  std::map<Triangle, Coeff> gen;
  for (const auto& e : j.at("generators")) {
    Triangle t{};
    if (e.contains("edges")) {
      const auto& arr = e.at("edges");
      if (arr.size() != 3) throw IoError("cells JSON: triangle needs three edges");
      t = Triangle{parse_edge_ref(g, arr[0].get<std::string>()),
                   parse_edge_ref(g, arr[1].get<std::string>()),
                   parse_edge_ref(g, arr[2].get<std::string>())};
    } else {
      VertexId a = e.at("a").get<int>(), b = e.at("b").get<int>(), c = e.at("c").get<int>();
      std::string lab = e.value("edge_label", std::string());
      auto pick = [&](VertexId x, VertexId y) {
        auto es = g.edges_between(x, y);
        if (es.size() == 1) return es[0];
        return g.find_edge(x, y, lab);
      };
      t = Triangle{pick(a, b), pick(b, c), pick(c, a)};
    }
    if (!gen.emplace(t, coeff_from_json(e.at("coeff"), 256)).second)
      throw IoError("cells JSON: duplicate triangle");
  }
  std::string closure = j.value("closure", std::string("none"));
  if (closure == "rotational") return CellSystem::close_rotationally(g, gen);
  return CellSystem(&g, std::move(gen));
}

CellSystem load_cells(const fs::path& file, const OrientedGraph& g) {
  return cells_from_json(read_file(file), g);
}

std::string morphism_to_json(const Morphism& m, long prec) {
  json j;
  j["schema"] = "cellforge/morphism/v1";
  j["source"] = m.source();
  j["target"] = m.target();
  j["entries"] = json::array();
  for (const auto& [k, v] : m.entries()) {
    j["entries"].push_back({{"p", path_to_json(m.graph(), k.first)},
                            {"q", path_to_json(m.graph(), k.second)},
                            {"coeff", coeff_to_json(v, prec)}});
  }
  return j.dump(2) + "\n";
}

Morphism morphism_from_json(const std::string& text, const OrientedGraph& g) {
  json j = json::parse(text);
  Morphism m(&g, j.at("source").get<std::string>(), j.at("target").get<std::string>());
  for (const auto& e : j.at("entries"))
    m.set(path_from_json(g, e.at("p")), path_from_json(g, e.at("q")),
          coeff_from_json(e.at("coeff"), 256));
  return m;
}

std::string block_to_json(const BoltzmannBlock& b, const OrientedGraph& g, long prec) {
  json j;
  j["schema"] = "cellforge/block/v1";
  j["v1"] = b.v1;
  j["v2"] = b.v2;
  j["basis"] = json::array();
  for (const Path& p : b.basis) j["basis"].push_back(path_to_json(g, p));
  j["entries"] = json::array();
  for (const auto& row : b.entries) {
    json r = json::array();
    for (const Coeff& c : row) r.push_back(coeff_to_json(c, prec));
    j["entries"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

std::string report_to_json(const std::vector<CheckReport>& reports, bool verbose) {
  json j = json::array();
  for (const CheckReport& r : reports) {
    json e;
    e["relation"] = r.relation;
    e["equations"] = r.equation_count;
    e["status"] = to_string(r.status);
    e["max_residual_upper"] = r.max_residual.abs_upper_double();
    e["worst_basis_element"] = r.worst_basis_element;
    if (verbose) {
      e["per_equation"] = json::array();
      for (const auto& [key, val] : r.per_equation)
        e["per_equation"].push_back({{"key", key}, {"abs_upper", val.abs_upper_double()}});
    }
    j.push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

void write_file(const fs::path& file, const std::string& text) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write " + file.string());
  out << text;
}

std::string read_file(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cellforge
