// i2dp: command-line front end for the reduction and its checkers.

#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "i2dp/io.hpp"
#include "i2dp/pipeline.hpp"

using namespace i2dp;

namespace {

struct Common {
  std::string input;
  std::string output;
  std::string format;
  PipelineOptions opt;
  std::string embedding;
};

void add_common(CLI::App* cmd, Common& c, bool input = true) {
  if (input) cmd->add_option("input", c.input, "DIMACS CNF file")->required();
  cmd->add_flag("--strict", c.opt.strict, "require at most 3 occurrences per variable, both polarities");
  cmd->add_option("--embedding", c.embedding, "rotation system file ('c embed' rows)");
  cmd->add_option("--threads", c.opt.threads, "solver threads")->check(CLI::PositiveNumber);
  cmd->add_option("-o,--output", c.output, "write the artifact here instead of stdout");
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty())
    std::cout << text;
  else
    write_file(c.output, text);
}

Prepared load(Common& c) {
  if (!c.embedding.empty()) c.opt.embedding_path = c.embedding;
  return prepare(load_instance(c.input, c.opt), c.opt);
}

const ReductionInstance& need_reduction(const Prepared& p) {
  if (!p.reduction) throw Error(ErrorCode::kPrecondition, "no clauses remain after normalization; nothing to reduce");
  return *p.reduction;
}

bool is_graph_file(const std::string& path) { return read_file(path).rfind("i2dp-graph", 0) == 0; }

int cmd_reduce(Common& c) {
  auto p = load(c);
  const auto& r = need_reduction(p);
  if (c.format == "dot")
    emit(c, write_dot(r));
  else
    emit(c, write_graph(r));
  return 0;
}

int cmd_solve(Common& c) {
  SolveOptions so;
  so.threads = c.opt.threads;
  if (is_graph_file(c.input)) {
    auto gf = read_graph(read_file(c.input));
    if (!gf.terminals) throw Error(ErrorCode::kIo, "graph file has no terminals line");
    auto& t = *gf.terminals;
    auto w = solve_i2dp(gf.graph.graph(), {t[0], t[1], t[2], t[3]}, so);
    if (!w) {
      emit(c, "no linkage\n");
      return 0;
    }
    emit(c, write_witness_text(*w, [&](Vertex v) { return gf.graph.label(v); }));
    return 0;
  }
  auto p = load(c);
  if (!p.reduction) {
    emit(c, "no clauses remain; trivially satisfiable\n");
    return 0;
  }
  auto w = solve_i2dp(p.reduction->graph.graph(), p.reduction->terminals, so);
  if (!w) {
    emit(c, "no linkage\n");
    return 0;
  }
  auto a = assignment_from_witness(*p.reduction, *w);
  std::string text = write_witness(*p.reduction, *w) + "c assignment";
  for (int i = 1; i <= p.reduction->source.num_vars; ++i) text += " " + std::to_string(a.at(i) ? i : -i);
  emit(c, text + "\n");
  return 0;
}

int cmd_flow(Common& c) {
  auto p = load(c);
  const auto& r = need_reduction(p);
  SolveOptions so;
  so.threads = c.opt.threads;
  auto f = solve_induced_st_flow(r.graph.graph(), {r.terminals.s1, r.terminals.s2}, {r.terminals.t1, r.terminals.t2}, so);
  if (!f) {
    emit(c, "no flow\n");
    return 0;
  }
  emit(c, std::string("c pairing ") + (f->straight ? "straight" : "crossed") + "\n" + write_witness(r, f->witness));
  return 0;
}

int cmd_verify(Common& c) {
  if (!c.embedding.empty()) c.opt.embedding_path = c.embedding;
  auto rep = verify_instance(load_instance(c.input, c.opt), c.opt);
  std::cout << rep.str();
  return rep.failed ? static_cast<int>(*rep.failed) : 0;
}

int cmd_strings(Common& c) {
  auto p = load(c);
  const auto& r = need_reduction(p);
  auto s = build_string_representation(r);
  emit(c, c.format == "svg" ? emit_svg(s) : write_representation(s));
  return 0;
}

int cmd_compose(Common& c, const std::string& pattern) {
  auto p = load(c);
  const auto& r = need_reduction(p);
  auto kind = pattern == "H" ? PatternKind::kH : PatternKind::kHprime;
  auto comp = compose(build_pattern(kind), r);
  if (c.format == "dot") {
    emit(c, write_dot(comp.graph, std::string("compose-") + pattern_name(kind)));
  } else if (c.format == "json-model") {
    SolveOptions so;
    so.threads = c.opt.threads;
    auto w = solve_i2dp(r.graph.graph(), r.terminals, so);
    if (!w) {
      emit(c, "null\n");
      return 0;
    }
    auto j = kind == PatternKind::kH ? subdivision_model_json(comp, subdivision_model_from_paths(comp, *w))
                                     : minor_model_json(comp, minor_model_from_paths(comp, *w));
    emit(c, j.dump(2) + "\n");
  } else {
    emit(c, write_graph(comp.graph, comp.terminals));
  }
  return 0;
}

int cmd_power(Common& c) {
  auto p = load(c);
  const auto& r = need_reduction(p);
  auto h = build_planar_host(r.source, *p.embedding);
  PowerWitness w;
  w.vmap = assign_vertices(r, h);
  w.host = h.graph.graph();
  w.host_embedding = h.rotation;
  auto a = verify_power_containment(r.graph.graph(), w);
  if (c.format == "graph") {
    emit(c, write_power_witness(r, h, w));
  } else {
    emit(c, "host " + std::to_string(w.host.order()) + " vertices, max degree " + std::to_string(w.host.max_degree()) +
                ", planar\nachieved radius " + std::to_string(a.max_stretch) + "\n");
  }
  return a.ok ? 0 : static_cast<int>(CheckCode::kPower);
}

int cmd_check_pattern(const std::string& name, const std::string& format) {
  auto p = build_pattern(name == "H" ? PatternKind::kH : PatternKind::kHprime);
  if (format == "graph") {
    std::cout << write_graph(p.graph);
    return 0;
  }
  if (format == "dot") {
    std::cout << write_dot(p.graph, pattern_name(p.kind));
    return 0;
  }
  auto bad = pattern_violations(p);
  std::cout << pattern_name(p.kind) << ": " << p.graph.order() << " vertices, " << p.graph.graph().size() << " edges\n";
  for (int k = 0; k < 4; ++k) std::cout << "A" << k + 1 << ": " << p.parts[k].size() << " vertices\n";
  for (const auto& b : bad) std::cout << "violation: " << b << '\n';
  std::cout << (bad.empty() ? "PASS" : "FAIL") << '\n';
  return bad.empty() ? 0 : static_cast<int>(ErrorCode::kInternal);
}

int cmd_corpus(Common& c) {
  int worst = 0;
  for (const auto& ni : load_corpus_dir(c.input)) {
    try {
      auto rep = verify_instance(ni.formula, c.opt);
      std::cout << ni.name << ' ' << (rep.failed ? std::string("FAIL ") + check_name(*rep.failed) : "PASS") << '\n';
      if (rep.failed && !worst) worst = static_cast<int>(*rep.failed);
    } catch (const Error& e) {
      std::cout << ni.name << " ERROR " << e.what() << '\n';
      if (!worst) worst = static_cast<int>(e.code());
    }
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clause-linked planar 3-SAT to Induced 2-Disjoint Paths, with checkers"};
  app.require_subcommand(1);
  Common c;
  std::string pattern = "H";

  auto* reduce = app.add_subcommand("reduce", "build the reduction graph");
  add_common(reduce, c);
  reduce->add_option("--format", c.format, "graph or dot")->check(CLI::IsMember({"graph", "dot"}));

  auto* solve = app.add_subcommand("solve", "find two mutually induced paths (CNF or graph file)");
  add_common(solve, c);

  auto* flow = app.add_subcommand("flow", "induced S-T flow on the reduction");
  add_common(flow, c);

  auto* verify = app.add_subcommand("verify", "run every oracle on one instance");
  add_common(verify, c);

  auto* strings = app.add_subcommand("strings", "string representation of the reduction graph");
  add_common(strings, c);
  strings->add_option("--format", c.format, "repr or svg")->check(CLI::IsMember({"repr", "svg"}));

  auto* comp = app.add_subcommand("compose", "glue the reduction into H or H'");
  add_common(comp, c);
  comp->add_option("--pattern", pattern, "H or H'")->check(CLI::IsMember({"H", "H'"}));
  comp->add_option("--format", c.format, "graph, dot or json-model")->check(CLI::IsMember({"graph", "dot", "json-model"}));

  auto* power = app.add_subcommand("power", "subcubic planar host and power audit");
  add_common(power, c);
  power->add_option("--format", c.format, "graph prints the witness")->check(CLI::IsMember({"graph"}));

  auto* check = app.add_subcommand("check-pattern", "build H or H' and check its invariants");
  std::string check_name;
  check->add_option("pattern", check_name, "H or H'")->required()->check(CLI::IsMember({"H", "H'"}));
  check->add_option("--format", c.format, "graph or dot")->check(CLI::IsMember({"graph", "dot"}));

  auto* corpus = app.add_subcommand("corpus", "verify every *.cnf in a directory");
  add_common(corpus, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ErrorCode::kUsage);
  }

  try {
    if (reduce->parsed()) return cmd_reduce(c);
    if (solve->parsed()) return cmd_solve(c);
    if (flow->parsed()) return cmd_flow(c);
    if (verify->parsed()) return cmd_verify(c);
    if (strings->parsed()) return cmd_strings(c);
    if (comp->parsed()) return cmd_compose(c, pattern);
    if (power->parsed()) return cmd_power(c);
    if (check->parsed()) return cmd_check_pattern(check_name, c.format);
    if (corpus->parsed()) return cmd_corpus(c);
  } catch (const PlanarityError& e) {
    // what() already lists the Kuratowski edges
    std::cerr << "planarity: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return static_cast<int>(ErrorCode::kInternal);
  }
  return static_cast<int>(ErrorCode::kUsage);
}
