#pragma once

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "i2dp/errors.hpp"
#include "i2dp/gadgets.hpp"
#include "i2dp/ipaths.hpp"
#include "i2dp/patterns.hpp"
#include "i2dp/power.hpp"

namespace i2dp {

// ---------------------------------------------------------------------------
// Graph text format
//
//   i2dp-graph 1
//   vertex <id> <label> [key=value ...]
//   edge <label> <label>
//   terminals <s1> <t1> <s2> <t2>
//
// Vertices appear in id order, edges sorted by endpoint ids.

inline std::string label_fields(const VertexLabel& l) {
  switch (l.kind) {
    case VertexLabel::Kind::kEntry:
      return "kind=entry j=" + std::to_string(l.j) + " d=" + dir_name(l.d);
    case VertexLabel::Kind::kClauseV:
      return "kind=corner j=" + std::to_string(l.j) + " slot=" + std::to_string(l.slot) + " corner=" + corner_name(l.corner);
    default:
      return "kind=w var=" + std::to_string(l.var) + " sign=" + (l.positive ? "+" : "-") + " j=" + std::to_string(l.j) +
             " d=" + dir_name(l.d);
  }
}

struct GraphFile {
  NamedGraph graph;
  std::optional<std::array<Vertex, 4>> terminals;
};

template <typename LabelFn, typename FieldFn>
std::string write_graph_text(const Graph& g, LabelFn label, FieldFn fields, const std::optional<std::array<Vertex, 4>>& t) {
  std::ostringstream os;
  os << "i2dp-graph 1\n";
  for (Vertex v = 0; v < static_cast<Vertex>(g.order()); ++v) {
    os << "vertex " << v << ' ' << label(v);
    std::string f = fields(v);
    if (!f.empty()) os << ' ' << f;
    os << '\n';
  }
  for (auto [a, b] : g.edges()) os << "edge " << label(a) << ' ' << label(b) << '\n';
  if (t) os << "terminals " << label((*t)[0]) << ' ' << label((*t)[1]) << ' ' << label((*t)[2]) << ' ' << label((*t)[3]) << '\n';
  return os.str();
}

inline std::string write_graph(const ReductionInstance& r) {
  const auto& T = r.terminals;
  return write_graph_text(
      r.graph.graph(), [&](Vertex v) { return r.graph.label(v).str(); },
      [&](Vertex v) { return label_fields(r.graph.label(v)); }, std::array<Vertex, 4>{T.s1, T.t1, T.s2, T.t2});
}

inline std::string write_graph(const NamedGraph& g, const std::optional<std::array<Vertex, 4>>& t = std::nullopt) {
  return write_graph_text(
      g.graph(), [&](Vertex v) { return g.label(v); }, [](Vertex) { return std::string(); }, t);
}

/// Malformed graph files are reported as I/O errors: they are artifacts
/// this tool wrote, not user input.
inline GraphFile read_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  GraphFile out;
  bool header = false;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kIo, "graph file line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (!header) {
      int version = 0;
      if (tag != "i2dp-graph" || !(ls >> version) || version != 1) fail("expected 'i2dp-graph 1'");
      header = true;
      continue;
    }
    if (tag == "vertex") {
      long id = -1;
      std::string label;
      if (!(ls >> id >> label)) fail("malformed vertex line");
      if (id != static_cast<long>(out.graph.order())) fail("vertex ids must be consecutive from 0");
      if (out.graph.contains(label)) fail("duplicate vertex " + label);
      out.graph.add_vertex(label);
    } else if (tag == "edge") {
      std::string a, b;
      if (!(ls >> a >> b)) fail("malformed edge line");
      auto va = out.graph.find(a), vb = out.graph.find(b);
      if (!va || !vb) fail("edge names an unknown vertex");
      if (*va == *vb) fail("self-loop");
      out.graph.add_edge(*va, *vb);
    } else if (tag == "terminals") {
      std::array<Vertex, 4> t{};
      for (auto& x : t) {
        std::string name;
        if (!(ls >> name)) fail("terminals line needs four vertices");
        auto v = out.graph.find(name);
        if (!v) fail("unknown terminal " + name);
        x = *v;
      }
      out.terminals = t;
    } else {
      fail("unexpected '" + tag + "'");
    }
  }
  if (!header) throw Error(ErrorCode::kIo, "not an i2dp graph file");
  return out;
}

template <typename LabelFn>
std::string write_dot_text(const Graph& g, const std::string& name, LabelFn label, const std::vector<Vertex>& highlight = {}) {
  std::ostringstream os;
  os << "graph \"" << name << "\" {\n  node [shape=point];\n";
  for (Vertex v = 0; v < static_cast<Vertex>(g.order()); ++v) {
    os << "  n" << v << " [xlabel=\"" << label(v) << "\"";
    if (std::find(highlight.begin(), highlight.end(), v) != highlight.end()) os << ", color=red";
    os << "];\n";
  }
  for (auto [a, b] : g.edges()) os << "  n" << a << " -- n" << b << ";\n";
  os << "}\n";
  return os.str();
}

inline std::string write_dot(const ReductionInstance& r) {
  const auto& T = r.terminals;
  return write_dot_text(r.graph.graph(), "reduction", [&](Vertex v) { return r.graph.label(v).str(); },
                        {T.s1, T.t1, T.s2, T.t2});
}

inline std::string write_dot(const NamedGraph& g, const std::string& name) {
  return write_dot_text(g.graph(), name, [&](Vertex v) { return g.label(v); });
}

// ---------------------------------------------------------------------------
// Witnesses: one ordered label list per path

template <typename LabelFn>
std::string write_witness_text(const PathWitness& w, LabelFn label) {
  std::ostringstream os;
  os << "i2dp-witness 1\n";
  for (const auto& p : w.paths) {
    os << "path";
    for (Vertex v : p) os << ' ' << label(v);
    os << '\n';
  }
  return os.str();
}

inline std::string write_witness(const ReductionInstance& r, const PathWitness& w) {
  return write_witness_text(w, [&](Vertex v) { return r.graph.label(v).str(); });
}

template <typename FindFn>
PathWitness read_witness_text(const std::string& text, FindFn find) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  PathWitness w;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (!header) {
      int version = 0;
      if (tag != "i2dp-witness" || !(ls >> version) || version != 1)
        throw ParseError("MalformedWitness", lineno, "expected 'i2dp-witness 1'");
      header = true;
      continue;
    }
    if (tag != "path") throw ParseError("MalformedWitness", lineno, "unexpected '" + tag + "'");
    Path p;
    std::string name;
    while (ls >> name) {
      std::optional<Vertex> v = find(name);
      if (!v) throw ParseError("MalformedWitness", lineno, "unknown vertex " + name);
      p.push_back(*v);
    }
    w.paths.push_back(std::move(p));
  }
  if (!header) throw ParseError("MalformedWitness", 0, "empty witness file");
  return w;
}

inline PathWitness read_witness(const ReductionInstance& r, const std::string& text) {
  return read_witness_text(text, [&](const std::string& s) -> std::optional<Vertex> {
    auto l = VertexLabel::parse(s);
    if (!l) return std::nullopt;
    return r.graph.find(*l);
  });
}

// ---------------------------------------------------------------------------
// Models (label maps)

inline std::string write_subdivision_model(const ComposedInstance& c, const SubdivisionModel& m) {
  const auto& P = c.pattern.graph;
  std::ostringstream os;
  os << "i2dp-subdivision-model 1\n";
  for (Vertex x = 0; x < static_cast<Vertex>(P.order()); ++x)
    os << "map " << P.label(x) << ' ' << c.graph.label(m.phi[x]) << '\n';
  auto edges = P.graph().edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    os << "path " << P.label(edges[k].first) << ' ' << P.label(edges[k].second) << " :";
    for (Vertex v : m.paths[k]) os << ' ' << c.graph.label(v);
    os << '\n';
  }
  return os.str();
}

inline std::string write_minor_model(const ComposedInstance& c, const MinorModel& m) {
  const auto& P = c.pattern.graph;
  std::ostringstream os;
  os << "i2dp-minor-model 1\n";
  for (Vertex x = 0; x < static_cast<Vertex>(P.order()); ++x) {
    os << "branch " << P.label(x) << " :";
    for (Vertex v : m.branch[x]) os << ' ' << c.graph.label(v);
    os << '\n';
  }
  return os.str();
}

inline nlohmann::json subdivision_model_json(const ComposedInstance& c, const SubdivisionModel& m) {
  const auto& P = c.pattern.graph;
  nlohmann::json j;
  j["type"] = "induced-subdivision";
  j["pattern"] = pattern_name(c.pattern.kind);
  nlohmann::json map = nlohmann::json::object();
  for (Vertex x = 0; x < static_cast<Vertex>(P.order()); ++x) map[P.label(x)] = c.graph.label(m.phi[x]);
  j["branching"] = map;
  nlohmann::json paths = nlohmann::json::array();
  auto edges = P.graph().edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    nlohmann::json e;
    e["edge"] = {P.label(edges[k].first), P.label(edges[k].second)};
    std::vector<std::string> names;
    for (Vertex v : m.paths[k]) names.push_back(c.graph.label(v));
    e["path"] = names;
    paths.push_back(e);
  }
  j["paths"] = paths;
  return j;
}

inline nlohmann::json minor_model_json(const ComposedInstance& c, const MinorModel& m) {
  const auto& P = c.pattern.graph;
  nlohmann::json j;
  j["type"] = "induced-minor";
  j["pattern"] = pattern_name(c.pattern.kind);
  nlohmann::json sets = nlohmann::json::object();
  for (Vertex x = 0; x < static_cast<Vertex>(P.order()); ++x) {
    std::vector<std::string> names;
    for (Vertex v : m.branch[x]) names.push_back(c.graph.label(v));
    sets[P.label(x)] = names;
  }
  j["branch_sets"] = sets;
  return j;
}

// ---------------------------------------------------------------------------
// Power witness: host graph followed by the map table

inline std::string write_power_witness(const ReductionInstance& r, const PowerHost& h, const PowerWitness& w) {
  std::ostringstream os;
  os << write_graph(h.graph);
  os << "radius " << w.radius << '\n';
  for (Vertex v = 0; v < static_cast<Vertex>(r.graph.order()); ++v)
    os << "map " << r.graph.label(v).str() << ' ' << h.graph.label(w.vmap[v]) << '\n';
  return os.str();
}

}  // namespace i2dp
