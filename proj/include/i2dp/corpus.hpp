#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "i2dp/errors.hpp"
#include "i2dp/instance.hpp"

namespace i2dp {

struct NamedInstance {
  std::string name;
  CnfInstance formula;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorCode::kIo, "cannot write " + p.string());
}

/// Every *.cnf file of a directory, sorted by file name.
inline std::vector<NamedInstance> load_corpus_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(dir, ec))
    if (e.path().extension() == ".cnf") files.push_back(e.path());
  if (ec) throw Error(ErrorCode::kIo, "cannot list " + dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());
  std::vector<NamedInstance> out;
  for (const auto& f : files) out.push_back({f.stem().string(), parse_dimacs(read_file(f))});
  return out;
}

/// All clauses over x1..x3 with 2 or 3 distinct variables in ascending
/// order: 12 two-clauses and 8 three-clauses.
inline std::vector<Clause> small_clauses() {
  std::vector<Clause> out;
  for (int k = 2; k <= 3; ++k)
    for (int mask = 0; mask < 8; ++mask) {
      std::vector<int> vars;
      for (int v = 1; v <= 3; ++v)
        if (mask >> (v - 1) & 1) vars.push_back(v);
      if (static_cast<int>(vars.size()) != k) continue;
      for (int sg = 0; sg < (1 << k); ++sg) {
        Clause c;
        for (int a = 0; a < k; ++a) c.push_back({vars[a], !(sg >> (k - 1 - a) & 1)});
        out.push_back(c);
      }
    }
  return out;
}

/// Clause sequences of length 1..3 over x1..x3 that are fixpoints of
/// normalization and clause-linked planar.
inline std::vector<NamedInstance> exhaustive_family() {
  auto cl = small_clauses();
  std::vector<NamedInstance> out;
  const int c = static_cast<int>(cl.size());
  for (int m = 1; m <= 3; ++m) {
    int total = 1;
    for (int k = 0; k < m; ++k) total *= c;
    for (int code = 0; code < total; ++code) {
      CnfInstance f;
      f.num_vars = 3;
      std::string name = "fam";
      int x = code;
      std::vector<int> idx(m);
      for (int k = m - 1; k >= 0; --k) {
        idx[k] = x % c;
        x /= c;
      }
      for (int k = 0; k < m; ++k) {
        f.clauses.push_back(cl[idx[k]]);
        name += "-" + std::to_string(idx[k]);
      }
      if (normalize(f).changed) continue;
      if (!test_planarity(augmented_graph(f).graph).planar) continue;
      out.push_back({name, std::move(f)});
    }
  }
  return out;
}

}  // namespace i2dp
