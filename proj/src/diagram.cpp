#include "cellforge/diagram.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace cellforge {

namespace {

struct DParser {
  const std::string& s;
  size_t i = 0;
  explicit DParser(const std::string& text) : s(text) {}

  void skip() { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; }
  [[noreturn]] void fail(const std::string& what) {
    throw DiagramError("diagram parse error at position " + std::to_string(i) + ": " + what);
  }
  void expect(char c) {
    skip();
    if (i >= s.size() || s[i] != c) fail(std::string("expected '") + c + "'");
    ++i;
  }
  std::string quoted() {
    expect('"');
    std::string out;
    while (i < s.size() && s[i] != '"') out += s[i++];
    expect('"');
    return out;
  }
  std::string ident() {
    skip();
    std::string out;
    while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_')) out += s[i++];
    if (out.empty()) fail("expected identifier");
    return out;
  }

  DiagramPtr expr() {
    skip();
    size_t save = i;
    std::string id = ident();
    auto node = [&](DiagramExpr::Kind k) {
      auto d = std::make_shared<DiagramExpr>();
      d->kind = k;
      return d;
    };
    skip();
    bool call = i < s.size() && s[i] == '(';
    if (id == "id" && call) {
      auto d = node(DiagramExpr::Kind::Id);
      ++i;
      d->text = quoted();
      expect(')');
      return d;
    }
    if (id == "ev" && call) {
      auto d = node(DiagramExpr::Kind::Ev);
      ++i;
      d->text = quoted();
      expect(')');
      return d;
    }
    if (id == "coev" && call) {
      auto d = node(DiagramExpr::Kind::Coev);
      ++i;
      d->text = quoted();
      expect(')');
      return d;
    }
    if ((id == "comp" || id == "tens" || id == "add") && call) {
      auto d = node(id == "comp"  ? DiagramExpr::Kind::Comp
                    : id == "tens" ? DiagramExpr::Kind::Tens
                                   : DiagramExpr::Kind::Add);
      ++i;
      d->args.push_back(expr());
      skip();
      while (i < s.size() && s[i] == ',') {
        ++i;
        d->args.push_back(expr());
        skip();
      }
      expect(')');
      if (d->args.size() < 2) fail(id + " needs at least two arguments");
      return d;
    }
    if ((id == "dag" || id == "rot") && call) {
      auto d = node(id == "dag" ? DiagramExpr::Kind::Dag : DiagramExpr::Kind::Rot);
      ++i;
      d->args.push_back(expr());
      expect(')');
      return d;
    }
    if (id == "smul" && call) {
      auto d = node(DiagramExpr::Kind::Smul);
      ++i;
      // scalar part runs up to the matching top-level comma
      skip();
      std::string qtext;
      int depth = 0;
      while (i < s.size() && !(depth == 0 && s[i] == ',')) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') {
          if (depth == 0) fail("smul needs a scalar and a diagram");
          --depth;
        }
        qtext += s[i++];
      }
      expect(',');
      d->scalar = qexpr_parse(qtext);
      d->args.push_back(expr());
      expect(')');
      return d;
    }
    if (call) fail("unknown combinator '" + id + "'");
    i = save;
    auto d = node(DiagramExpr::Kind::Name);
    d->text = ident();
    return d;
  }
};

void print_diagram(std::ostringstream& os, const DiagramExpr& d) {
  using K = DiagramExpr::Kind;
  switch (d.kind) {
    case K::Name: os << d.text; break;
    case K::Id: os << "id(\"" << d.text << "\")"; break;
    case K::Ev: os << "ev(\"" << d.text << "\")"; break;
    case K::Coev: os << "coev(\"" << d.text << "\")"; break;
    case K::Dag:
    case K::Rot:
      os << (d.kind == K::Dag ? "dag(" : "rot(");
      print_diagram(os, *d.args[0]);
      os << ')';
      break;
    case K::Comp:
    case K::Tens:
    case K::Add: {
      os << (d.kind == K::Comp ? "comp(" : d.kind == K::Tens ? "tens(" : "add(");
      for (size_t i = 0; i < d.args.size(); ++i) {
        if (i) os << ',';
        print_diagram(os, *d.args[i]);
      }
      os << ')';
      break;
    }
    case K::Smul:
      os << "smul(" << qexpr_to_string(d.scalar) << ',';
      print_diagram(os, *d.args[0]);
      os << ')';
      break;
  }
}

}  // namespace

DiagramPtr diagram_parse(const std::string& text) {
  DParser p(text);
  DiagramPtr d = p.expr();
  p.skip();
  if (p.i != text.size()) p.fail("trailing input");
  return d;
}

std::string diagram_to_string(const DiagramPtr& d) {
  std::ostringstream os;
  print_diagram(os, *d);
  return os.str();
}

Morphism eval_diagram(const DiagramPtr& d, const OrientedGraph& g,
                      const std::map<std::string, Morphism>& bindings) {
  using K = DiagramExpr::Kind;
  auto subterm = [&]() { return diagram_to_string(d); };
  switch (d->kind) {
    case K::Name: {
      auto it = bindings.find(d->text);
      if (it == bindings.end())
        throw DiagramError("unbound generator '" + d->text + "'");
      return it->second;
    }
    case K::Id: return identity(g, d->text);
    case K::Ev: return ev(g, d->text);
    case K::Coev: return coev(g, d->text);
    case K::Dag: return dagger(eval_diagram(d->args[0], g, bindings));
    case K::Rot: return rotate(eval_diagram(d->args[0], g, bindings));
    case K::Comp: {
      // comp(f1,...,fn): fn applied first
      Morphism acc = eval_diagram(d->args.back(), g, bindings);
      for (size_t i = d->args.size() - 1; i-- > 0;) {
        Morphism next = eval_diagram(d->args[i], g, bindings);
        if (next.source() != acc.target())
          throw DiagramError("composition type mismatch in " + subterm() + ": '" +
                             acc.target() + "' into '" + next.source() + "'");
        acc = compose(next, acc);
      }
      return acc;
    }
    case K::Tens: {
      Morphism acc = eval_diagram(d->args[0], g, bindings);
      for (size_t i = 1; i < d->args.size(); ++i)
        acc = tensor(acc, eval_diagram(d->args[i], g, bindings));
      return acc;
    }
    case K::Add: {
      Morphism acc = eval_diagram(d->args[0], g, bindings);
      for (size_t i = 1; i < d->args.size(); ++i) {
        Morphism next = eval_diagram(d->args[i], g, bindings);
        if (next.source() != acc.source() || next.target() != acc.target())
          throw DiagramError("addition type mismatch in " + subterm());
        acc = acc + next;
      }
      return acc;
    }
    case K::Smul:
      return eval_diagram(d->args[0], g, bindings).scaled(Coeff(d->scalar));
  }
  throw DiagramError("unreachable");
}

RelationEncoding parse_relation_text(const std::string& text) {
  RelationEncoding out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key = line.substr(0, colon);
    std::string val = line.substr(colon + 1);
    auto trim = [](std::string& s) {
      while (!s.empty() && std::isspace((unsigned char)s.front())) s.erase(s.begin());
      while (!s.empty() && std::isspace((unsigned char)s.back())) s.pop_back();
    };
    trim(key);
    trim(val);
    if (key == "name") out.name = val;
    else if (key == "lhs") out.lhs = diagram_parse(val);
    else if (key == "rhs") out.rhs = diagram_parse(val);
    else throw DiagramError("unknown relation-file key '" + key + "'");
  }
  if (out.name.empty() || !out.lhs || !out.rhs)
    throw DiagramError("relation file must define name, lhs and rhs");
  return out;
}

RelationEncoding load_relation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DiagramError("cannot open relation file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_relation_text(ss.str());
}

}  // namespace cellforge
