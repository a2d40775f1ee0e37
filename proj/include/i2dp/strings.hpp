#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "i2dp/errors.hpp"
#include "i2dp/gadgets.hpp"
#include "i2dp/graph.hpp"
#include "i2dp/instance.hpp"
#include "i2dp/rational.hpp"

namespace i2dp {

struct Point {
  Rational x, y;
  friend bool operator==(const Point&, const Point&) = default;
};
using Polyline = std::vector<Point>;

struct StringRepresentation {
  std::vector<std::string> labels;
  std::vector<Polyline> curves;

  std::size_t size() const { return labels.size(); }
  void add(std::string label, Polyline p) {
    labels.push_back(std::move(label));
    curves.push_back(std::move(p));
  }
};

// ---------------------------------------------------------------------------
// Clause templates. Coordinates are local to one gadget; positions 0,1,2
// are literal columns centered at x = 3, 5.5, 8. Names: entry strings
// uNL/uSL/uNR/uSR, corners v<p><corner>, stubs w<d><p>.

namespace detail {

struct RawString {
  std::string name;
  std::string points;  // "x,y x,y ..."
};

inline Polyline parse_points(const std::string& s) {
  Polyline out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    auto comma = tok.find(',');
    out.push_back({Rational::parse(tok.substr(0, comma)), Rational::parse(tok.substr(comma + 1))});
  }
  return out;
}

// The drawing of the clause gadget with two upper literals (0, 1) and one
// lower literal (2).
inline const std::vector<RawString>& template_uud() {
  static const std::vector<RawString> t = {
      {"uNL", "-1,1 1,1"},
      {"uSL", "-1,-1 1,-1"},
      {"uNR", "10,1 12,1"},
      {"uSR", "10,-1 12,-1"},
      {"wN0", "2.5,4 3.5,4"},
      {"wS0", "2.7,3 3.3,3"},
      {"wN1", "5,4 6,4"},
      {"wS1", "5.2,3 5.8,3"},
      {"wS2", "7.5,-4 8.5,-4"},
      {"wN2", "7.7,-3 8.3,-3"},
      {"v0NW", "10.1,-0.1 0.5,-0.1 0.5,1.5 2.6,1.5 2.6,4.1"},
      {"v0NE", "3.4,4.1 3.4,0.5 10.5,0.5 10.5,1.5"},
      {"v0SW", "0.5,-1.5 0.5,-0.9 10.3,-0.9 10.3,0.1 2.9,0.1 2.9,3.2"},
      {"v0SE", "10.5,-1.5 10.5,0.3 3.1,0.3 3.1,3.2"},
      {"v1NW", "10,-0.575 0.3,-0.575 0.3,1.15 2.1,1.15 2.1,-0.3 5.1,-0.3 5.1,4.1"},
      {"v1SW", "0.35,-1.5 0.35,-0.8 10.15,-0.8 10.15,-0.45 5.4,-0.45 5.4,3.2"},
      {"v1SE", "10.7,-1.5 10.7,-0.325 5.6,-0.325 5.6,3.2"},
      {"v1NE", "10.7,1.5 10.7,-0.2 5.9,-0.2 5.9,4.1"},
      {"v2NW", "0.1,0.5 0.1,1.3 7.9,1.3 7.9,-3.2"},
      {"v2SW", "0.2,-1.5 0.2,0.8 7.6,0.8 7.6,-4.1"},
      {"v2NE", "10.3,1.5 10.3,0.8 8.1,0.8 8.1,-3.2"},
      {"v2SE", "10.9,-1.5 10.9,0.65 8.4,0.65 8.4,-4.1"},
  };
  return t;
}

inline char position_of(const std::string& name) { return name[0] == 'v' ? name[1] : name.back(); }

inline std::vector<RawString> drop_position(const std::vector<RawString>& t, char p) {
  std::vector<RawString> out;
  for (const auto& s : t)
    if (s.name[0] == 'u' || position_of(s.name) != p) out.push_back(s);
  return out;
}

// Same as template_uud with literal 2 redrawn on the upper side.
inline std::vector<RawString> template_uuu() {
  std::vector<RawString> t = drop_position(template_uud(), '2');
  t.push_back({"wN2", "7.5,4 8.5,4"});
  t.push_back({"wS2", "7.7,3 8.3,3"});
  t.push_back({"v2NW", "0.1,1.5 0.1,-0.93 7.6,-0.93 7.6,4.1"});
  t.push_back({"v2SW", "0.2,-1.5 0.2,-0.96 7.9,-0.96 7.9,3.2"});
  t.push_back({"v2NE", "10.9,1.5 10.9,-0.93 8.4,-0.93 8.4,4.1"});
  t.push_back({"v2SE", "11,-1.5 11,-0.96 8.1,-0.96 8.1,3.2"});
  return t;
}

inline std::string swap_ns(std::string name) {
  for (auto& c : name) {
    if (c == 'N')
      c = 'S';
    else if (c == 'S')
      c = 'N';
  }
  return name;
}

}  // namespace detail

inline const Rational& column_center(int position) {
  static const Rational cx[] = {Rational(3), Rational(11, 2), Rational(8)};
  return cx[position];
}

/// Horizontal pitch between consecutive clause gadgets.
inline constexpr int kGadgetPitch = 12;

/// Template choice for one clause: which positions hold upper literals and
/// which literal slot (0-based) sits at each position.
struct ClauseLayout {
  std::vector<int> positions;          // used positions, ascending
  std::vector<Side> position_side;     // per used position
  std::vector<int> slot_at;            // per used position: literal slot
  bool reflected = false;
  std::vector<detail::RawString> raw;  // unreflected template strings
};

inline ClauseLayout clause_layout(int k, const ClauseSides& sides) {
  const int up = static_cast<int>(sides.upper.size());
  if (k < 2 || k > 3 || up + static_cast<int>(sides.lower.size()) != k)
    throw Error(ErrorCode::kPrecondition, "clause template needs 2 or 3 literals with sides");
  ClauseLayout L;
  // the unreflected template has at least as many upper as lower literals
  L.reflected = 2 * up < k;
  int major = L.reflected ? k - up : up;
  std::vector<Side> base_sides;
  if (k == 3 && major == 3) {
    L.raw = detail::template_uuu();
    L.positions = {0, 1, 2};
    base_sides = {Side::kUpper, Side::kUpper, Side::kUpper};
  } else if (k == 3) {
    L.raw = detail::template_uud();
    L.positions = {0, 1, 2};
    base_sides = {Side::kUpper, Side::kUpper, Side::kLower};
  } else if (major == 2) {
    L.raw = detail::drop_position(detail::template_uud(), '2');
    L.positions = {0, 1};
    base_sides = {Side::kUpper, Side::kUpper};
  } else {
    L.raw = detail::drop_position(detail::template_uud(), '1');
    L.positions = {0, 2};
    base_sides = {Side::kUpper, Side::kLower};
  }
  auto flip = [](Side s) { return s == Side::kUpper ? Side::kLower : Side::kUpper; };
  std::size_t next_up = 0, next_low = 0;
  for (Side s : base_sides) {
    Side actual = L.reflected ? flip(s) : s;
    L.position_side.push_back(actual);
    L.slot_at.push_back(actual == Side::kUpper ? sides.upper[next_up++] : sides.lower[next_low++]);
  }
  return L;
}

inline Rational gadget_offset(int j) { return Rational(kGadgetPitch * (j - 1)); }

/// Landing abscissa of the w-strings of literal `slot` in clause j.
inline Rational landing_x(int j, const ClauseLayout& L, int slot) {
  for (std::size_t q = 0; q < L.slot_at.size(); ++q)
    if (L.slot_at[q] == slot) return gadget_offset(j) + column_center(L.positions[q]);
  throw Error(ErrorCode::kInternal, "slot missing from clause layout");
}

/// Corner strings of clause j plus the w-stubs of its literals, labeled
/// with reduction vertex labels. Entry strings are added globally.
inline StringRepresentation build_clause_template(int j, const Clause& clause, const ClauseSides& sides) {
  auto L = clause_layout(static_cast<int>(clause.size()), sides);
  StringRepresentation out;
  const Rational dx = gadget_offset(j);
  std::vector<std::pair<VertexLabel, Polyline>> items;
  for (const auto& raw : L.raw) {
    if (raw.name[0] == 'u') continue;
    std::string name = L.reflected ? detail::swap_ns(raw.name) : raw.name;
    int pos = detail::position_of(raw.name) - '0';
    std::size_t q = std::find(L.positions.begin(), L.positions.end(), pos) - L.positions.begin();
    int slot = L.slot_at[q];
    Polyline pts = detail::parse_points(raw.points);
    for (auto& p : pts) {
      p.x += dx;
      if (L.reflected) p.y = -p.y;
    }
    VertexLabel label;
    if (name[0] == 'v') {
      std::string cn = name.substr(2);
      Corner c = Corner::kNW;
      for (Corner cc : kCorners)
        if (cn == corner_name(cc)) c = cc;
      label = VertexLabel::clause_v(j, slot + 1, c);
    } else {
      const auto& l = clause[slot];
      label = VertexLabel::var_w(l.var, l.positive, j, name[1] == 'N' ? Dir::kN : Dir::kS);
    }
    items.emplace_back(label, std::move(pts));
  }
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [l, p] : items) out.add(l.str(), std::move(p));
  return out;
}

// ---------------------------------------------------------------------------
// Variable sites

/// One occurrence of a variable as seen by the router.
struct StubSite {
  int j = 0;
  bool positive = true;
  Rational x;  // landing abscissa
};

/// Routing geometry of one variable; the frame is the upper half plane
/// (LOWER variables are mirrored).
struct VariableSite {
  int var = 0;
  Side side = Side::kUpper;
  int depth = 0;
  Rational base;
  std::vector<StubSite> stubs;  // ascending x
};

struct RoutingParams {
  Rational unit{1, 4};        // track spacing inside a site
  Rational outer{3, 50};      // half-width of the outer finger
  Rational inner{3, 100};     // half-width of the inner finger
  Rational outer_stub{1, 2};  // half-length of the outer stub
  Rational inner_stub{3, 10};
  Rational outer_y{4};
  Rational inner_y{3};
  Rational first_base{6};
};

namespace detail {

inline Point add(const Point& p, const Rational& dx, const Rational& dy) { return {p.x + dx, p.y + dy}; }

inline std::pair<int, int> unit_dir(const Point& a, const Point& b) {
  int sx = (b.x - a.x).sign(), sy = (b.y - a.y).sign();
  if (sx != 0 && sy != 0) throw Error(ErrorCode::kInternal, "corridor centerline is not axis-parallel");
  return {sx, sy};
}

/// Closed finger around an axis-parallel centerline: left offset out, a cap
/// beyond the end, right offset back. Ends at start +- a (left first).
inline Polyline finger(const Polyline& c, const Rational& a) {
  const std::size_t n = c.size();
  std::vector<std::pair<int, int>> dir;
  for (std::size_t k = 0; k + 1 < n; ++k) dir.push_back(unit_dir(c[k], c[k + 1]));
  auto left = [](std::pair<int, int> d) { return std::pair<int, int>{-d.second, d.first}; };
  auto offset_at = [&](std::size_t k, int s) {  // s=+1 left, -1 right
    if (k == 0) {
      auto nl = left(dir[0]);
      return add(c[0], a * s * nl.first, a * s * nl.second);
    }
    auto ni = left(dir[k - 1]);
    if (k == n - 1)
      return add(c[k], a * (s * ni.first + dir[k - 1].first), a * (s * ni.second + dir[k - 1].second));
    auto no = left(dir[k]);
    return add(c[k], a * s * (ni.first + no.first), a * s * (ni.second + no.second));
  };
  Polyline out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(offset_at(k, +1));
  for (std::size_t k = n; k-- > 0;) out.push_back(offset_at(k, -1));
  return out;
}

}  // namespace detail

/// Plans sites for the variables on one side. Landing sets must be
/// non-interleaving; a variable nested between two landings of another sits
/// one level lower.
inline std::vector<VariableSite> plan_sites(std::vector<VariableSite> vars, const RoutingParams& P, int max_benders) {
  const std::size_t n = vars.size();
  auto lo = [&](std::size_t a) { return vars[a].stubs.front().x; };
  auto hi = [&](std::size_t a) { return vars[a].stubs.back().x; };
  // nested[a][b]: b lies strictly inside a gap of a
  std::vector<std::vector<char>> inside(n, std::vector<char>(n, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      if (hi(b) < lo(a) || hi(a) < lo(b)) continue;
      // overlapping ranges: b must sit in a single gap of a, or vice versa
      auto gap_of = [&](std::size_t outer, const Rational& x) {
        int g = 0;
        for (const auto& s : vars[outer].stubs)
          if (s.x < x) ++g;
        return g;
      };
      int g_lo = gap_of(a, lo(b)), g_hi = gap_of(a, hi(b));
      bool b_in_a = lo(a) < lo(b) && hi(b) < hi(a) && g_lo == g_hi;
      bool a_in_b = lo(b) < lo(a) && hi(a) < hi(b);
      if (b_in_a) {
        for (const auto& s : vars[b].stubs)
          if (gap_of(a, s.x) != g_lo) b_in_a = false;
      }
      if (!b_in_a && !a_in_b)
        throw Error(ErrorCode::kRouting, "variables x" + std::to_string(vars[a].var) + " and x" +
                                             std::to_string(vars[b].var) + " interleave along the " +
                                             side_name(vars[a].side) + " side");
      if (b_in_a) inside[a][b] = 1;
    }
  // depth by repeated relaxation (nesting is acyclic)
  std::vector<int> depth(n, 0);
  for (std::size_t round = 0; round < n; ++round)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (inside[a][b]) depth[a] = std::max(depth[a], depth[b] + 1);
  Rational level = P.unit * (2 * max_benders + 3);
  for (std::size_t a = 0; a < n; ++a) {
    vars[a].depth = depth[a];
    vars[a].base = P.first_base + level * depth[a];
  }
  return vars;
}

/// Replaces the stubs of one variable by fingers realizing the biclique
/// between its positive and negative occurrences. Occurrences of the
/// smaller polarity class bend over the others; returns labeled polylines.
inline std::vector<std::pair<VertexLabel, Polyline>> edit_variable_strings(const VariableSite& site,
                                                                           const RoutingParams& P = {}) {
  int npos = 0, nneg = 0;
  for (const auto& s : site.stubs) (s.positive ? npos : nneg)++;
  if (npos == 0 || nneg == 0)
    throw Error(ErrorCode::kPrecondition, "variable x" + std::to_string(site.var) + " needs both polarities");
  const bool bend_positive = npos < nneg;
  const int b = bend_positive ? npos : nneg;
  const Rational& u = P.unit;
  const Rational xmin = site.stubs.front().x, xmax = site.stubs.back().x;
  const Rational top = site.base + u * (2 * b + 1);
  std::vector<std::pair<VertexLabel, Polyline>> out;
  int i = 0;
  for (const auto& s : site.stubs) {
    bool bender = s.positive == bend_positive;
    Polyline tail;  // centerline above the stub row, without its first point
    if (bender) {
      ++i;
      Rational h = site.base + u * (b - i + 1);
      Rational h2 = site.base + u * (b + i);
      Rational r = xmax + u * i;
      Rational l = xmin - u * i;
      tail = {{s.x, h}, {r, h}, {r, h2}, {l, h2}};
    } else {
      tail = {{s.x, top}};
    }
    for (int layer = 0; layer < 2; ++layer) {
      const bool outer = layer == 0;
      const Rational& y0 = outer ? P.outer_y : P.inner_y;
      const Rational& a = outer ? P.outer : P.inner;
      const Rational& hw = outer ? P.outer_stub : P.inner_stub;
      Polyline c{{s.x, y0}};
      c.insert(c.end(), tail.begin(), tail.end());
      Polyline f = detail::finger(c, a);
      Polyline w;
      w.push_back({s.x - hw, y0});
      w.insert(w.end(), f.begin(), f.end());
      w.push_back({s.x + hw, y0});
      if (site.side == Side::kLower)
        for (auto& p : w) p.y = -p.y;
      Dir d = (site.side == Side::kUpper) == outer ? Dir::kN : Dir::kS;
      out.emplace_back(VertexLabel::var_w(site.var, s.positive, s.j, d), std::move(w));
    }
  }
  return out;
}

inline RoutingParams routing_params_checked(int max_benders) {
  RoutingParams P;
  // a site spreads b tracks to each side of its landings; neighbouring
  // landings are at least 2.5 apart
  Rational spread = P.unit * (2 * max_benders) + P.outer * 4;
  if (!(spread < Rational(5, 2)))
    throw Error(ErrorCode::kRouting, "routing capacity exceeded: a variable site needs " + std::to_string(max_benders) +
                                         " bending tracks, at most 4 fit between adjacent literal columns");
  return P;
}

/// Complete representation of a reduction graph: templates placed left to
/// right, entry strings chained, w-strings routed to their variable sites.
inline StringRepresentation build_string_representation(const ReductionInstance& r) {
  const auto& f = r.source;
  const int m = f.m();
  if (static_cast<int>(r.sides.clauses.size()) != m) throw Error(ErrorCode::kPrecondition, "side assignment does not match instance");
  std::map<VertexLabel, Polyline> curves;
  std::vector<ClauseLayout> layouts;
  for (int j = 1; j <= m; ++j) {
    auto part = build_clause_template(j, f.clauses[j - 1], r.sides.clauses[j - 1]);
    layouts.push_back(clause_layout(static_cast<int>(f.clauses[j - 1].size()), r.sides.clauses[j - 1]));
    for (std::size_t k = 0; k < part.size(); ++k) {
      auto l = VertexLabel::parse(part.labels[k]);
      if (l->kind == VertexLabel::Kind::kClauseV) curves[*l] = part.curves[k];
    }
  }
  for (int j = 1; j <= m + 1; ++j) {
    Rational x0 = j == 1 ? gadget_offset(1) - 1 : gadget_offset(j - 1) + 10;
    Rational x1 = j == m + 1 ? gadget_offset(m) + 12 : gadget_offset(j) + 1;
    curves[VertexLabel::entry(j, Dir::kN)] = {{x0, Rational(1)}, {x1, Rational(1)}};
    curves[VertexLabel::entry(j, Dir::kS)] = {{x0, Rational(-1)}, {x1, Rational(-1)}};
  }
  // variable sites per side
  std::map<int, VariableSite> by_var;
  for (int j = 1; j <= m; ++j)
    for (int a = 0; a < static_cast<int>(f.clauses[j - 1].size()); ++a) {
      const auto& l = f.clauses[j - 1][a];
      auto& site = by_var[l.var];
      site.var = l.var;
      site.side = r.sides.side[l.var - 1];
      site.stubs.push_back({j, l.positive, landing_x(j, layouts[j - 1], a)});
    }
  int max_benders = 0;
  std::vector<VariableSite> upper, lower;
  for (auto& [v, site] : by_var) {
    std::sort(site.stubs.begin(), site.stubs.end(), [](const StubSite& a, const StubSite& b) { return a.x < b.x; });
    int p = 0, q = 0;
    for (const auto& s : site.stubs) (s.positive ? p : q)++;
    max_benders = std::max(max_benders, std::min(p, q));
    (site.side == Side::kUpper ? upper : lower).push_back(site);
  }
  auto P = routing_params_checked(max_benders);
  for (auto* group : {&upper, &lower})
    for (const auto& site : plan_sites(*group, P, max_benders))
      for (auto& [label, poly] : edit_variable_strings(site, P)) curves[label] = std::move(poly);

  StringRepresentation out;
  for (Vertex v = 0; v < static_cast<Vertex>(r.graph.order()); ++v) {
    auto it = curves.find(r.graph.label(v));
    if (it == curves.end()) throw Error(ErrorCode::kInternal, "no string for " + r.graph.label(v).str());
    out.add(r.graph.label(v).str(), it->second);
  }
  if (curves.size() != r.graph.order()) throw Error(ErrorCode::kInternal, "string set does not match the vertex set");
  return out;
}

// ---------------------------------------------------------------------------
// Exact intersection graph

struct IntersectionResult {
  Graph graph;                     // vertex k = string k
  std::vector<std::string> warnings;  // touching contacts
  std::size_t touches = 0;
};

namespace detail {

struct IPoint {
  std::int64_t x, y;
  friend bool operator==(const IPoint&, const IPoint&) = default;
};

inline int orient(const IPoint& a, const IPoint& b, const IPoint& c) {
  __int128 v = static_cast<__int128>(b.x - a.x) * (c.y - a.y) - static_cast<__int128>(b.y - a.y) * (c.x - a.x);
  return (v > 0) - (v < 0);
}

inline bool on_segment(const IPoint& a, const IPoint& b, const IPoint& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

enum class Contact { kNone, kCross, kTouch, kOverlap };

inline Contact classify(const IPoint& a, const IPoint& b, const IPoint& c, const IPoint& d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 == 0 && o2 == 0) {
    // collinear: compare projections
    bool horiz = a.x != b.x || c.x != d.x;
    auto key = [&](const IPoint& p) { return horiz ? p.x : p.y; };
    auto lo1 = std::min(key(a), key(b)), hi1 = std::max(key(a), key(b));
    auto lo2 = std::min(key(c), key(d)), hi2 = std::max(key(c), key(d));
    auto lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
    if (lo > hi) return Contact::kNone;
    return lo == hi ? Contact::kTouch : Contact::kOverlap;
  }
  if (o1 * o2 < 0 && o3 * o4 < 0) return Contact::kCross;
  if ((o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) || (o3 == 0 && on_segment(c, d, a)) ||
      (o4 == 0 && on_segment(c, d, b)))
    return Contact::kTouch;
  return Contact::kNone;
}

/// Exact intersection point of two crossing segments as (X, Y, D) with
/// point = (X/D, Y/D), reduced with D > 0.
inline std::tuple<__int128, __int128, __int128> crossing_point(const IPoint& a, const IPoint& b, const IPoint& c,
                                                               const IPoint& d) {
  __int128 rx = b.x - a.x, ry = b.y - a.y, sx = d.x - c.x, sy = d.y - c.y;
  __int128 den = rx * sy - ry * sx;
  __int128 tn = static_cast<__int128>(c.x - a.x) * sy - static_cast<__int128>(c.y - a.y) * sx;
  __int128 X = a.x * den + tn * rx, Y = a.y * den + tn * ry;
  if (den < 0) {
    den = -den;
    X = -X;
    Y = -Y;
  }
  auto g128 = [](__int128 p, __int128 q) {
    if (p < 0) p = -p;
    if (q < 0) q = -q;
    while (q) {
      auto t = p % q;
      p = q;
      q = t;
    }
    return p;
  };
  __int128 g = g128(g128(X, Y), den);
  if (g > 1) {
    X /= g;
    Y /= g;
    den /= g;
  }
  return {X, Y, den};
}

struct Box {
  std::int64_t x0, y0, x1, y1;
  bool meets(const Box& o) const { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }
};

inline Box box_of(const IPoint& a, const IPoint& b) {
  return {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
}

}  // namespace detail

/// Scales every coordinate by the common denominator. Throws kDegenerate on
/// malformed curves.
inline std::vector<std::vector<detail::IPoint>> integer_curves(const StringRepresentation& s) {
  std::int64_t den = 1;
  for (const auto& c : s.curves)
    for (const auto& p : c)
      for (const auto* r : {&p.x, &p.y}) {
        std::int64_t g = std::gcd(den, r->den());
        __int128 l = static_cast<__int128>(den / g) * r->den();
        if (l > (static_cast<__int128>(1) << 40)) throw Error(ErrorCode::kDegenerate, "coordinate denominators too large");
        den = static_cast<std::int64_t>(l);
      }
  std::vector<std::vector<detail::IPoint>> out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto& c = s.curves[k];
    if (c.size() < 2) throw Error(ErrorCode::kDegenerate, "string " + s.labels[k] + " has fewer than two points");
    std::vector<detail::IPoint> pts;
    for (const auto& p : c) {
      __int128 x = static_cast<__int128>(p.x.num()) * (den / p.x.den());
      __int128 y = static_cast<__int128>(p.y.num()) * (den / p.y.den());
      if (x > (static_cast<__int128>(1) << 50) || -x > (static_cast<__int128>(1) << 50) ||
          y > (static_cast<__int128>(1) << 50) || -y > (static_cast<__int128>(1) << 50))
        throw Error(ErrorCode::kDegenerate, "coordinates out of range");
      pts.push_back({static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)});
    }
    out.push_back(std::move(pts));
  }
  return out;
}

/// Intersection graph with exact integer arithmetic. Rejects
/// self-intersecting strings, overlapping segments and points shared by
/// three strings; touching contacts count as edges and are reported.
inline IntersectionResult intersection_graph(const StringRepresentation& s) {
  using namespace detail;
  auto curves = integer_curves(s);
  const std::size_t n = curves.size();
  IntersectionResult out{Graph(n), {}, 0};
  std::vector<Box> boxes;
  std::vector<std::vector<Box>> seg_boxes(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& c = curves[k];
    Box b{c[0].x, c[0].y, c[0].x, c[0].y};
    for (std::size_t q = 0; q + 1 < c.size(); ++q) {
      if (c[q] == c[q + 1]) throw Error(ErrorCode::kDegenerate, "string " + s.labels[k] + " has a zero-length segment");
      auto sb = box_of(c[q], c[q + 1]);
      seg_boxes[k].push_back(sb);
      b = {std::min(b.x0, sb.x0), std::min(b.y0, sb.y0), std::max(b.x1, sb.x1), std::max(b.y1, sb.y1)};
    }
    boxes.push_back(b);
    // simplicity: non-adjacent segments disjoint, adjacent ones meet only at
    // their shared endpoint
    for (std::size_t p = 0; p + 1 < c.size(); ++p)
      for (std::size_t q = p + 1; q + 1 < c.size(); ++q) {
        if (!seg_boxes[k][p].meets(seg_boxes[k][q])) continue;
        auto ct = classify(c[p], c[p + 1], c[q], c[q + 1]);
        if (q == p + 1) {
          // folding back onto itself shows up as collinear overlap
          if (ct == Contact::kOverlap || (orient(c[p], c[p + 1], c[q + 1]) == 0 && on_segment(c[p], c[p + 1], c[q + 1])))
            throw Error(ErrorCode::kDegenerate, "string " + s.labels[k] + " folds back on itself");
          continue;
        }
        if (ct != Contact::kNone) throw Error(ErrorCode::kDegenerate, "string " + s.labels[k] + " intersects itself");
      }
  }
  // points where strings meet, for the triple-point check
  std::map<std::tuple<__int128, __int128, __int128>, std::vector<std::size_t>> meet;
  auto note = [&](const std::tuple<__int128, __int128, __int128>& key, std::size_t a, std::size_t b) {
    auto& v = meet[key];
    for (std::size_t x : {a, b})
      if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!boxes[a].meets(boxes[b])) continue;
      const auto& A = curves[a];
      const auto& B = curves[b];
      bool touched = false;
      for (std::size_t p = 0; p + 1 < A.size(); ++p) {
        if (!seg_boxes[a][p].meets(boxes[b])) continue;
        for (std::size_t q = 0; q + 1 < B.size(); ++q) {
          if (!seg_boxes[a][p].meets(seg_boxes[b][q])) continue;
          auto ct = classify(A[p], A[p + 1], B[q], B[q + 1]);
          if (ct == Contact::kNone) continue;
          if (ct == Contact::kOverlap)
            throw Error(ErrorCode::kDegenerate, "strings " + s.labels[a] + " and " + s.labels[b] + " overlap along a segment");
          out.graph.add_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
          if (ct == Contact::kCross) {
            note(crossing_point(A[p], A[p + 1], B[q], B[q + 1]), a, b);
          } else {
            // the contact point is an endpoint of one of the segments
            for (const auto* pt : {&A[p], &A[p + 1], &B[q], &B[q + 1]}) {
              const auto& o1 = (pt == &A[p] || pt == &A[p + 1]) ? B[q] : A[p];
              const auto& o2 = (pt == &A[p] || pt == &A[p + 1]) ? B[q + 1] : A[p + 1];
              if (orient(o1, o2, *pt) == 0 && on_segment(o1, o2, *pt)) {
                note({pt->x, pt->y, 1}, a, b);
                break;
              }
            }
            touched = true;
          }
        }
      }
      if (touched) {
        ++out.touches;
        out.warnings.push_back("strings " + s.labels[a] + " and " + s.labels[b] + " touch without crossing");
      }
    }
  for (const auto& [pt, who] : meet)
    if (who.size() >= 3) {
      std::string names;
      for (auto k : who) names += " " + s.labels[k];
      throw Error(ErrorCode::kDegenerate, "three or more strings share a point:" + names);
    }
  return out;
}

struct RealizationCheck {
  bool ok = false;
  std::size_t touches = 0;
  std::vector<std::string> missing;  // edges of G without a crossing
  std::vector<std::string> extra;    // crossings without an edge in G
};

/// Compares the extracted graph with the reduction graph label by label.
inline RealizationCheck verify_realization(const ReductionInstance& r, const StringRepresentation& s) {
  RealizationCheck out;
  if (s.size() != r.graph.order()) throw Error(ErrorCode::kInternal, "representation size differs from |V(G)|");
  std::vector<Vertex> to_g(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    auto l = VertexLabel::parse(s.labels[k]);
    if (!l || !r.graph.contains(*l)) throw Error(ErrorCode::kInternal, "unknown string label " + s.labels[k]);
    to_g[k] = r.graph.at(*l);
  }
  auto ig = intersection_graph(s);
  out.touches = ig.touches;
  const auto& g = r.graph.graph();
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      bool want = g.has_edge(to_g[a], to_g[b]);
      bool got = ig.graph.has_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
      if (want && !got) out.missing.push_back(s.labels[a] + " " + s.labels[b]);
      if (got && !want) out.extra.push_back(s.labels[a] + " " + s.labels[b]);
    }
  out.ok = out.missing.empty() && out.extra.empty() && out.touches == 0;
  return out;
}

// ---------------------------------------------------------------------------
// Output

inline std::string write_representation(const StringRepresentation& s) {
  std::ostringstream os;
  os << "i2dp-strings 1\n";
  for (std::size_t k = 0; k < s.size(); ++k) {
    os << "string " << s.labels[k] << ' ' << s.curves[k].size();
    for (const auto& p : s.curves[k]) os << ' ' << p.x.str() << ' ' << p.y.str();
    os << '\n';
  }
  return os.str();
}

inline StringRepresentation read_representation(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  StringRepresentation s;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (!header) {
      int version = 0;
      if (tag != "i2dp-strings" || !(ls >> version) || version != 1)
        throw ParseError("MalformedRepresentation", lineno, "expected 'i2dp-strings 1'");
      header = true;
      continue;
    }
    if (tag != "string") throw ParseError("MalformedRepresentation", lineno, "unexpected '" + tag + "'");
    std::string label;
    std::size_t count = 0;
    if (!(ls >> label >> count)) throw ParseError("MalformedRepresentation", lineno, "missing label or point count");
    Polyline pts;
    for (std::size_t k = 0; k < count; ++k) {
      std::string xs, ys;
      if (!(ls >> xs >> ys)) throw ParseError("MalformedRepresentation", lineno, "too few coordinates");
      try {
        pts.push_back({Rational::parse(xs), Rational::parse(ys)});
      } catch (const std::exception& e) {
        throw ParseError("MalformedRepresentation", lineno, e.what());
      }
    }
    s.add(label, std::move(pts));
  }
  if (!header) throw ParseError("MalformedRepresentation", 0, "empty representation file");
  return s;
}

/// SVG for inspection; colors by string class (entry, corner, variable).
inline std::string emit_svg(const StringRepresentation& s) {
  double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
  bool first = true;
  for (const auto& c : s.curves)
    for (const auto& p : c) {
      double x = p.x.to_double(), y = -p.y.to_double();
      if (first) {
        x0 = x1 = x;
        y0 = y1 = y;
        first = false;
      }
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(4);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << x0 - 1 << ' ' << y0 - 1 << ' ' << (x1 - x0) + 2 << ' '
     << (y1 - y0) + 2 << "\">\n";
  for (std::size_t k = 0; k < s.size(); ++k) {
    char cls = s.labels[k].empty() ? '?' : s.labels[k][0];
    const char* color = cls == 'u' ? "#1f6fb4" : cls == 'v' ? "#c8312b" : "#111111";
    os << "<path data-label=\"" << s.labels[k] << "\" stroke=\"" << color
       << "\" stroke-width=\"0.02\" fill=\"none\" d=\"";
    for (std::size_t q = 0; q < s.curves[k].size(); ++q)
      os << (q ? " L" : "M") << s.curves[k][q].x.to_double() << ' ' << -s.curves[k][q].y.to_double();
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace i2dp
