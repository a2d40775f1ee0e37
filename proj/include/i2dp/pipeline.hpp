#pragma once

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "i2dp/corpus.hpp"
#include "i2dp/errors.hpp"
#include "i2dp/gadgets.hpp"
#include "i2dp/instance.hpp"
#include "i2dp/ipaths.hpp"
#include "i2dp/patterns.hpp"
#include "i2dp/power.hpp"
#include "i2dp/strings.hpp"

namespace i2dp {

/// Exit codes for oracle disagreements, one per checked property. They sit
/// above the error codes so a run tells "broken input" from "broken
/// construction".
enum class CheckCode : int {
  kEquivalence = 20,       // SAT oracle vs linkage solver
  kForwardWitness = 21,    // witness from a satisfying assignment
  kReadBack = 22,          // assignment read back from a solver witness
  kStrings = 23,           // string representation
  kPower = 24,             // power host
  kCutPremises = 25,       // cutvertex premises of the composition
  kFlow = 26,              // flow variant vs linkage
  kSubdivisionModel = 27,  // subdivision model of H
  kMinorModel = 28,        // minor model of H'
};

inline const char* check_name(CheckCode c) {
  switch (c) {
    case CheckCode::kEquivalence: return "EQUIVALENCE";
    case CheckCode::kForwardWitness: return "FORWARD_WITNESS";
    case CheckCode::kReadBack: return "READ_BACK";
    case CheckCode::kStrings: return "STRINGS";
    case CheckCode::kPower: return "POWER";
    case CheckCode::kCutPremises: return "CUT_PREMISES";
    case CheckCode::kFlow: return "FLOW";
    case CheckCode::kSubdivisionModel: return "SUBDIVISION_MODEL";
    case CheckCode::kMinorModel: return "MINOR_MODEL";
  }
  return "?";
}

struct PipelineOptions {
  bool strict = false;
  std::optional<std::string> embedding_path;
  int threads = 1;
};

/// Embedding rows from a side file: "c embed v n1 n2 ..." or "embed v ...".
inline std::vector<EmbeddingRow> parse_embedding_rows(const std::string& text) {
  std::vector<EmbeddingRow> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    std::size_t k = 0;
    if (toks[0] == "c") ++k;
    if (k >= toks.size() || toks[k] != "embed") {
      if (k == 1) continue;  // ordinary comment
      throw ParseError("MalformedEmbedding", lineno, "expected 'embed <vertex> <neighbors...>'");
    }
    if (k + 1 >= toks.size()) throw ParseError("MalformedEmbedding", lineno, "missing vertex name");
    EmbeddingRow row{std::string(toks[k + 1]), {}, lineno};
    for (std::size_t q = k + 2; q < toks.size(); ++q) row.neighbors.emplace_back(toks[q]);
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Everything up to and including the reduction.
struct Prepared {
  CnfInstance original;
  Normalized normalized;
  std::optional<PlanarEmbedding> embedding;  // absent when m = 0
  std::optional<ReductionInstance> reduction;
};

inline CnfInstance load_instance(const std::string& path, const PipelineOptions& opt) {
  auto f = parse_dimacs(read_file(path));
  if (opt.embedding_path) f.embedding = parse_embedding_rows(read_file(*opt.embedding_path));
  return f;
}

inline Prepared prepare(const CnfInstance& f, const PipelineOptions& opt) {
  Prepared p;
  p.original = f;
  p.normalized = normalize(f, opt.strict);
  const auto& g = p.normalized.formula;
  if (g.m() == 0) return p;
  p.embedding = check_clause_linked_planarity(g);
  p.reduction = assemble_reduction(g, p.embedding->sides);
  return p;
}

// ---------------------------------------------------------------------------
// Report

struct StageResult {
  std::string name;
  std::string status;  // PASS, FAIL, SKIP
  std::string detail;
  double ms = 0;
};

struct PipelineReport {
  std::vector<StageResult> stages;
  std::vector<std::string> artifacts;
  std::optional<CheckCode> failed;

  bool ok() const { return !failed; }

  std::string str() const {
    std::ostringstream os;
    for (const auto& s : stages) {
      char ms[32];
      std::snprintf(ms, sizeof ms, "%9.1f", s.ms);
      os << s.name;
      for (std::size_t k = s.name.size(); k < 12; ++k) os << ' ';
      os << s.status << "  " << ms << " ms  " << s.detail << '\n';
    }
    for (const auto& a : artifacts) os << "artifact " << a << '\n';
    os << (failed ? std::string("FAIL ") + check_name(*failed) : std::string("PASS")) << '\n';
    return os.str();
  }
};

namespace detail {

class StageTimer {
 public:
  StageTimer(PipelineReport& r, std::string name) : report_(r), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
  void done(const std::string& status, const std::string& detail) {
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    report_.stages.push_back({name_, status, detail, ms});
  }

 private:
  PipelineReport& report_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

/// Runs every oracle on one instance. Input errors propagate as Error;
/// oracle disagreements are recorded in the report (first one wins).
inline PipelineReport verify_instance(const CnfInstance& f, const PipelineOptions& opt) {
  PipelineReport rep;
  auto fail = [&](CheckCode c) {
    if (!rep.failed) rep.failed = c;
  };
  using detail::StageTimer;

  StageTimer t_norm(rep, "normalize");
  Prepared p;
  p.original = f;
  p.normalized = normalize(f, opt.strict);
  const CnfInstance& g = p.normalized.formula;
  t_norm.done("PASS", "n=" + std::to_string(g.num_vars) + " m=" + std::to_string(g.m()) +
                          (p.normalized.changed ? " (pure literals removed)" : ""));

  StageTimer t_sat(rep, "sat");
  auto model = brute_force_sat(f);
  t_sat.done("PASS", model ? "SAT" : "UNSAT");

  if (g.m() == 0) {
    rep.stages.push_back({"reduce", "SKIP", "no clauses left; satisfiable", 0});
    if (!model) fail(CheckCode::kEquivalence);
    return rep;
  }

  StageTimer t_pl(rep, "planarity");
  p.embedding = check_clause_linked_planarity(g);
  std::size_t lower = 0;
  for (Side s : p.embedding->sides.side) lower += s == Side::kLower;
  t_pl.done("PASS", std::string(p.embedding->supplied ? "supplied" : "computed") + " embedding, " +
                        std::to_string(lower) + " lower variable(s)");

  StageTimer t_red(rep, "reduce");
  p.reduction = assemble_reduction(g, p.embedding->sides);
  const auto& r = *p.reduction;
  const Graph& G = r.graph.graph();
  bool size_ok = r.graph.order() == expected_vertex_count(g);
  t_red.done(size_ok ? "PASS" : "FAIL", "|V|=" + std::to_string(r.graph.order()) + " |E|=" + std::to_string(G.size()));
  if (!size_ok) fail(CheckCode::kEquivalence);

  StageTimer t_solve(rep, "solve");
  SolveOptions so;
  so.threads = opt.threads;
  auto witness = solve_i2dp(G, r.terminals, so);
  t_solve.done("PASS", witness ? "linkage found" : "no linkage");

  StageTimer t_cross(rep, "cross-check");
  bool agree = model.has_value() == witness.has_value();
  t_cross.done(agree ? "PASS" : "FAIL",
               std::string("sat=") + (model ? "SAT" : "UNSAT") + " paths=" + (witness ? "found" : "none"));
  if (!agree) fail(CheckCode::kEquivalence);

  StageTimer t_flow(rep, "flow");
  auto flow = solve_induced_st_flow(G, {r.terminals.s1, r.terminals.s2}, {r.terminals.t1, r.terminals.t2}, so);
  auto crossed = solve_i2dp(G, {r.terminals.s1, r.terminals.t2, r.terminals.s2, r.terminals.t1}, so);
  bool flow_ok = flow.has_value() == witness.has_value() && (!flow || flow->straight) && !crossed;
  t_flow.done(flow_ok ? "PASS" : "FAIL", std::string(flow ? (flow->straight ? "straight pairing" : "crossed pairing") : "no flow") +
                                             (crossed ? ", crossed linkage exists" : ", no crossed linkage"));
  if (!flow_ok) fail(CheckCode::kFlow);

  StageTimer t_trip(rep, "round-trip");
  if (model) {
    std::string detail;
    bool ok1 = true, ok2 = true;
    // the formula was normalized; extend the model accordingly
    auto gm = brute_force_sat(g);
    try {
      validate_reduction_witness(r, witness_from_assignment(r, *gm));
    } catch (const Error& e) {
      ok1 = false;
      detail += std::string("forward: ") + e.what() + "; ";
    }
    if (witness) {
      try {
        auto a = assignment_from_witness(r, *witness);
        if (!satisfies(g, a)) ok2 = false;
      } catch (const Error& e) {
        ok2 = false;
        detail += std::string("read-back: ") + e.what();
      }
    }
    t_trip.done(ok1 && ok2 ? "PASS" : "FAIL", detail.empty() ? "witness and assignment maps agree" : detail);
    if (!ok1) fail(CheckCode::kForwardWitness);
    if (!ok2) fail(CheckCode::kReadBack);
  } else {
    t_trip.done("SKIP", "unsatisfiable");
  }

  StageTimer t_str(rep, "strings");
  try {
    auto s = build_string_representation(r);
    auto chk = verify_realization(r, s);
    std::string d = std::to_string(s.size()) + " strings";
    if (!chk.ok)
      d += ", " + std::to_string(chk.missing.size()) + " missing, " + std::to_string(chk.extra.size()) + " extra, " +
           std::to_string(chk.touches) + " touching";
    t_str.done(chk.ok ? "PASS" : "FAIL", d);
    if (!chk.ok) fail(CheckCode::kStrings);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kRouting && e.code() != ErrorCode::kDegenerate) throw;
    t_str.done("FAIL", e.what());
    fail(CheckCode::kStrings);
  }

  StageTimer t_comp(rep, "compose");
  {
    std::string d;
    bool prem = true, thm2 = true, thm3 = true;
    for (auto kind : {PatternKind::kH, PatternKind::kHprime}) {
      auto c = compose(build_pattern(kind), r);
      auto c5 = check_cut_premises(c);
      prem &= c5.ok();
      d += std::string(pattern_name(kind)) + ":|V|=" + std::to_string(c.graph.order()) + " ";
      if (!witness) continue;
      if (kind == PatternKind::kH) {
        auto sm = subdivision_model_from_paths(c, *witness);
        thm2 &= check_subdivision_model(c.graph.graph(), c.pattern.graph.graph(), sm).ok;
      } else {
        auto mm = minor_model_from_paths(c, *witness);
        thm3 &= check_minor_model(c.graph.graph(), c.pattern.graph.graph(), mm).ok;
      }
    }
    d += witness ? "models checked" : "premises only";
    t_comp.done(prem && thm2 && thm3 ? "PASS" : "FAIL", d);
    if (!prem) fail(CheckCode::kCutPremises);
    if (!thm2) fail(CheckCode::kSubdivisionModel);
    if (!thm3) fail(CheckCode::kMinorModel);
  }

  StageTimer t_pow(rep, "power");
  {
    auto w = build_power_witness(r, *p.embedding);
    auto a = verify_power_containment(G, w);
    bool ok = a.ok && w.host.max_degree() <= 3;
    t_pow.done(ok ? "PASS" : "FAIL",
               "host |V|=" + std::to_string(w.host.order()) + ", radius " + std::to_string(a.max_stretch) + " (limit 16)");
    if (!ok) fail(CheckCode::kPower);
  }
  return rep;
}

}  // namespace i2dp
