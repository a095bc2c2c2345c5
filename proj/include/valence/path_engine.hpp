#pragma once

// Decision procedures over paths: word membership, emptiness, promising
// paths, constrained accepting-path search, and semilinear descriptions of
// closed-walk register values.
//
// Every decision reduces to one question on a derived arc graph: does a
// source -> target walk with register sum zero exist? Two engines answer
// it. The exact engine decomposes walks into a simple path plus a family
// of simple cycles connected to it, enforces family connectivity by
// enumerating connected-to-path clusters, and settles each candidate with
// a Diophantine feasibility query; a witness walk is rebuilt with an Euler
// trail and then canonicalized. The bounded engine is an independent
// breadth-first search over (vertex, register) states with length and norm
// caps; it is conclusive only when no cap was hit.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "valence/abelian.hpp"
#include "valence/automaton.hpp"
#include "valence/diophantine.hpp"
#include "valence/errors.hpp"
#include "valence/wqo.hpp"

namespace valence {

struct ExactLimits {
  std::size_t max_simple_cycles = 5000;
  std::size_t max_simple_paths = 200000;
  std::size_t max_families = 200000;
  std::size_t dioph_node_guard = 500000;
};

struct SearchMode {
  enum class Kind { Exact, Bounded };
  Kind kind = Kind::Exact;
  std::size_t max_path_len = 12;  // bounded mode: cap on witness length
  Int max_counter_norm = 24;      // bounded mode: cap on |free coordinate|
  ExactLimits limits;

  static SearchMode exact() { return SearchMode{}; }
  static SearchMode bounded(std::size_t max_len, Int max_norm) {
    SearchMode m;
    m.kind = Kind::Bounded;
    m.max_path_len = max_len;
    m.max_counter_norm = std::move(max_norm);
    return m;
  }
  bool is_exact() const { return kind == Kind::Exact; }
};

enum class VerdictKind { Yes, No, Unknown };

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<PathWord> witness;
  std::string reason;

  bool yes() const { return kind == VerdictKind::Yes; }
  bool no() const { return kind == VerdictKind::No; }
  bool unknown() const { return kind == VerdictKind::Unknown; }

  static Verdict make_yes(PathWord w) { return Verdict{VerdictKind::Yes, std::move(w), ""}; }
  static Verdict make_no() { return Verdict{VerdictKind::No, std::nullopt, ""}; }
  static Verdict make_unknown(std::string why) { return Verdict{VerdictKind::Unknown, std::nullopt, std::move(why)}; }
};

struct LinearSet {
  GroupVector base;
  std::vector<GroupVector> periods;
};

struct LinearSetFamily {
  AbelianSpec spec;
  std::vector<LinearSet> sets;

  bool contains(const GroupVector& v) const;
};

// ---------------------------------------------------------------------------
// Derived search graphs.

namespace detail {

struct WalkArc {
  std::size_t src = 0;
  std::size_t dst = 0;
  GroupVector value;
  std::vector<EdgeId> expansion;  // original edges this arc spells out
};

struct WalkGraph {
  AbelianSpec spec;
  std::size_t nv = 0;
  std::vector<WalkArc> arcs;
  std::size_t source = 0;
  std::size_t target = 0;

  std::vector<std::vector<std::size_t>> out() const {
    std::vector<std::vector<std::size_t>> o(nv);
    for (std::size_t i = 0; i < arcs.size(); ++i) o[arcs[i].src].push_back(i);
    return o;
  }
};

inline std::vector<EdgeId> expand_walk(const WalkGraph& g, const std::vector<std::size_t>& walk) {
  std::vector<EdgeId> out;
  for (std::size_t a : walk) out.insert(out.end(), g.arcs[a].expansion.begin(), g.arcs[a].expansion.end());
  return out;
}

// --- bounded engine -------------------------------------------------------

struct BoundedResult {
  enum class Status { Found, ExhaustedComplete, Inconclusive };
  Status status = Status::Inconclusive;
  std::vector<std::size_t> walk;
};

// Buckets by expanded length, processed in (length, lexicographic expanded
// path) order, so the first settled hit is the canonical witness. With no
// caps given the search is exhaustive over the reachable state space.
inline BoundedResult bounded_walk_search(const WalkGraph& g, std::optional<std::size_t> max_len,
                                         std::optional<Int> max_norm) {
  struct Entry {
    std::vector<EdgeId> expanded;
    std::vector<std::size_t> walk;
    std::size_t at;
    GroupVector value;

    bool operator<(const Entry& o) const {
      if (expanded != o.expanded) return expanded < o.expanded;
      if (at != o.at) return at < o.at;
      return value < o.value;
    }
  };
  std::map<std::size_t, std::set<Entry>> buckets;
  std::set<std::pair<std::size_t, GroupVector>> settled;
  bool pruned = false;
  buckets[0].insert(Entry{{}, {}, g.source, GroupVector::zero(g.spec)});
  auto outs = g.out();
  while (!buckets.empty()) {
    auto bit = buckets.begin();
    std::size_t len = bit->first;
    std::set<Entry>& bucket = bit->second;
    if (bucket.empty()) {
      buckets.erase(bit);
      continue;
    }
    Entry cur = *bucket.begin();
    bucket.erase(bucket.begin());
    if (!settled.emplace(cur.at, cur.value).second) continue;
    if (cur.at == g.target && cur.value.is_zero())
      return BoundedResult{BoundedResult::Status::Found, std::move(cur.walk)};
    for (std::size_t ai : outs[cur.at]) {
      const WalkArc& arc = g.arcs[ai];
      std::size_t len2 = len + arc.expansion.size();
      if (max_len && len2 > *max_len) {
        pruned = true;
        continue;
      }
      GroupVector val2 = cur.value + arc.value;
      if (max_norm && val2.free_norm() > *max_norm) {
        pruned = true;
        continue;
      }
      if (settled.count({arc.dst, val2})) continue;
      Entry child;
      child.expanded = cur.expanded;
      child.expanded.insert(child.expanded.end(), arc.expansion.begin(), arc.expansion.end());
      child.walk = cur.walk;
      child.walk.push_back(ai);
      child.at = arc.dst;
      child.value = std::move(val2);
      buckets[len2].insert(std::move(child));
    }
  }
  return BoundedResult{pruned ? BoundedResult::Status::Inconclusive : BoundedResult::Status::ExhaustedComplete, {}};
}

// --- exact engine ---------------------------------------------------------

struct CycleInfo {
  std::vector<std::size_t> arcs;
  std::vector<char> on_vertex;  // vertex support mask
  GroupVector value;
};

// All simple cycles (distinct arc sequences, distinct vertices) within the
// usable subgraph, each rooted at its least vertex.
inline std::vector<CycleInfo> simple_cycles(const WalkGraph& g, const std::vector<char>& usable_vertex,
                                            const std::vector<char>& usable_arc, std::size_t cap) {
  auto outs = g.out();
  std::vector<CycleInfo> cycles;
  std::vector<char> onpath(g.nv, 0);
  std::vector<std::size_t> arc_stack;
  for (std::size_t root = 0; root < g.nv; ++root) {
    if (!usable_vertex[root]) continue;
    // DFS over vertices >= root, closing cycles at root
    auto dfs = [&](auto&& self, std::size_t v) -> void {
      for (std::size_t ai : outs[v]) {
        if (!usable_arc[ai]) continue;
        const WalkArc& arc = g.arcs[ai];
        if (arc.dst < root || !usable_vertex[arc.dst]) continue;
        if (arc.dst == root) {
          arc_stack.push_back(ai);
          CycleInfo c;
          c.arcs = arc_stack;
          c.on_vertex.assign(g.nv, 0);
          GroupVector val = GroupVector::zero(g.spec);
          for (std::size_t x : c.arcs) {
            c.on_vertex[g.arcs[x].src] = 1;
            val = val + g.arcs[x].value;
          }
          c.value = std::move(val);
          cycles.push_back(std::move(c));
          if (cycles.size() > cap) throw ResourceLimitError("simple cycle enumeration exceeded its cap");
          arc_stack.pop_back();
        } else if (!onpath[arc.dst]) {
          onpath[arc.dst] = 1;
          arc_stack.push_back(ai);
          self(self, arc.dst);
          arc_stack.pop_back();
          onpath[arc.dst] = 0;
        }
      }
    };
    onpath[root] = 1;
    dfs(dfs, root);
    onpath[root] = 0;
  }
  return cycles;
}

inline std::vector<char> reachable_from(const WalkGraph& g, std::size_t start) {
  auto outs = g.out();
  std::vector<char> seen(g.nv, 0);
  std::vector<std::size_t> queue{start};
  seen[start] = 1;
  while (!queue.empty()) {
    std::size_t v = queue.back();
    queue.pop_back();
    for (std::size_t ai : outs[v])
      if (!seen[g.arcs[ai].dst]) {
        seen[g.arcs[ai].dst] = 1;
        queue.push_back(g.arcs[ai].dst);
      }
  }
  return seen;
}

inline std::vector<char> coreachable_to(const WalkGraph& g, std::size_t goal) {
  std::vector<std::vector<std::size_t>> in(g.nv);
  for (std::size_t i = 0; i < g.arcs.size(); ++i) in[g.arcs[i].dst].push_back(i);
  std::vector<char> seen(g.nv, 0);
  std::vector<std::size_t> queue{goal};
  seen[goal] = 1;
  while (!queue.empty()) {
    std::size_t v = queue.back();
    queue.pop_back();
    for (std::size_t ai : in[v])
      if (!seen[g.arcs[ai].src]) {
        seen[g.arcs[ai].src] = 1;
        queue.push_back(g.arcs[ai].src);
      }
  }
  return seen;
}

// Deterministic Euler trail over an arc multiset (counts indexed like
// g.arcs), smallest arc id first. The multiset must be trail-connected and
// balanced with a unit source/sink surplus (or be a circuit when
// source == target); both hold for the families the exact engine builds.
inline std::vector<std::size_t> euler_trail(const WalkGraph& g, std::vector<std::size_t> counts,
                                            std::size_t start) {
  std::vector<std::vector<std::size_t>> outs(g.nv);
  for (std::size_t i = 0; i < g.arcs.size(); ++i)
    if (counts[i] > 0) outs[g.arcs[i].src].push_back(i);
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  std::vector<std::size_t> ptr(g.nv, 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{start, static_cast<std::size_t>(-1)}};
  std::vector<std::size_t> out;
  while (!stack.empty()) {
    auto [v, via] = stack.back();
    std::size_t& p = ptr[v];
    while (p < outs[v].size() && counts[outs[v][p]] == 0) ++p;
    if (p == outs[v].size()) {
      if (via != static_cast<std::size_t>(-1)) out.push_back(via);
      stack.pop_back();
    } else {
      std::size_t ai = outs[v][p];
      --counts[ai];
      stack.emplace_back(g.arcs[ai].dst, ai);
    }
  }
  std::reverse(out.begin(), out.end());
  if (out.size() != total) throw ContractViolation("euler trail failed: arc multiset is not trail-connected");
  return out;
}

struct ExactSearch {
  const WalkGraph& g;
  const ExactLimits& lim;
  std::vector<char> usable_vertex;
  std::vector<char> usable_arc;
  std::vector<CycleInfo> cycles;
  bool cycles_ready = false;
  std::vector<std::vector<std::size_t>> cycle_adj;  // overlap graph, sorted
  std::map<std::pair<IntMatrix, IntRow>, std::vector<IntRow>> dioph_memo;
  std::size_t families_seen = 0;
  std::size_t paths_seen = 0;

  explicit ExactSearch(const WalkGraph& graph, const ExactLimits& limits) : g(graph), lim(limits) {
    auto reach = reachable_from(g, g.source);
    auto coreach = coreachable_to(g, g.target);
    usable_vertex.assign(g.nv, 0);
    for (std::size_t v = 0; v < g.nv; ++v) usable_vertex[v] = reach[v] && coreach[v];
    usable_arc.assign(g.arcs.size(), 0);
    for (std::size_t i = 0; i < g.arcs.size(); ++i)
      usable_arc[i] = usable_vertex[g.arcs[i].src] && usable_vertex[g.arcs[i].dst];
  }

  void ensure_cycles() {
    if (cycles_ready) return;
    cycles = simple_cycles(g, usable_vertex, usable_arc, lim.max_simple_cycles);
    cycle_adj.assign(cycles.size(), {});
    for (std::size_t i = 0; i < cycles.size(); ++i)
      for (std::size_t j = i + 1; j < cycles.size(); ++j) {
        bool touch = false;
        for (std::size_t v = 0; v < g.nv && !touch; ++v) touch = cycles[i].on_vertex[v] && cycles[j].on_vertex[v];
        if (touch) {
          cycle_adj[i].push_back(j);
          cycle_adj[j].push_back(i);
        }
      }
    cycles_ready = true;
  }

  const std::vector<IntRow>& solve(const IntMatrix& periods_cols, const IntRow& target) {
    auto key = std::make_pair(periods_cols, target);
    auto it = dioph_memo.find(key);
    if (it != dioph_memo.end()) return it->second;
    DiophantineSystem sys;
    const std::size_t rows = g.spec.dim();
    sys.a.assign(rows, IntRow(periods_cols.size(), Int(0)));
    for (std::size_t j = 0; j < periods_cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) sys.a[i][j] = periods_cols[j][i];
    sys.b = target;
    sys.moduli.assign(rows, Int(0));
    for (std::size_t t = 0; t < g.spec.torsion_moduli.size(); ++t)
      sys.moduli[g.spec.free_rank + t] = g.spec.torsion_moduli[t];
    auto sols = min_nonneg_solutions(sys, lim.dioph_node_guard);
    return dioph_memo.emplace(std::move(key), std::move(sols)).first->second;
  }

  // Feasibility for a fixed path and bridge set: cycles touching the path
  // ("anchored") take free multiplicities, bridge cycles are traversed at
  // least once. Returns a witness walk when the register sums cancel.
  std::optional<std::vector<std::size_t>> try_family(const std::vector<std::size_t>& pi,
                                                     const GroupVector& pi_sum,
                                                     const std::vector<std::size_t>& anchored,
                                                     const std::vector<std::size_t>& forced) {
    if (++families_seen > lim.max_families) throw ResourceLimitError("cycle family enumeration exceeded its cap");
    GroupVector offset = GroupVector::zero(g.spec);
    for (std::size_t c : forced) offset = offset + cycles[c].value;
    GroupVector target = -(pi_sum + offset);
    std::vector<IntRow> period_cols;
    for (std::size_t c : anchored) period_cols.push_back(cycles[c].value.coords());
    for (std::size_t c : forced) period_cols.push_back(cycles[c].value.coords());
    std::sort(period_cols.begin(), period_cols.end());
    period_cols.erase(std::unique(period_cols.begin(), period_cols.end()), period_cols.end());
    std::map<std::vector<Int>, Int> extra;  // period value -> extra multiplicity
    if (!target.is_zero()) {
      if (period_cols.empty()) return std::nullopt;
      const std::vector<IntRow>& sols = solve(period_cols, target.coords());
      if (sols.empty()) return std::nullopt;
      const IntRow& sol = sols.front();  // lexicographically least minimal solution
      for (std::size_t j = 0; j < period_cols.size(); ++j)
        if (sol[j] != 0) extra[period_cols[j]] = sol[j];
    }
    // arc multiset: pi once, every bridge cycle once, extra multiplicity on
    // the least usable cycle carrying each period value (anchored preferred)
    std::vector<std::size_t> counts(g.arcs.size(), 0);
    for (std::size_t ai : pi) ++counts[ai];
    std::map<std::vector<Int>, std::size_t> value_rep;
    for (std::size_t c : forced) {
      for (std::size_t ai : cycles[c].arcs) ++counts[ai];
      auto [it, fresh] = value_rep.emplace(cycles[c].value.coords(), c);
      if (!fresh) it->second = std::min(it->second, c);
    }
    for (std::size_t c : anchored) {
      auto [it, fresh] = value_rep.emplace(cycles[c].value.coords(), c);
      if (!fresh) it->second = std::min(it->second, c);
    }
    for (const auto& [val, mult] : extra) {
      std::size_t rep = value_rep.at(val);
      for (Int k = 0; k < mult; ++k)
        for (std::size_t ai : cycles[rep].arcs) ++counts[ai];
    }
    return euler_trail(g, std::move(counts), g.source);
  }

  // Bridge structures reaching cycles that do not touch the path: subsets S
  // where anchored members are stepping stones adjacent to remote members
  // and every overlap component of S contains an anchored member. Anchored
  // cycles outside S stay freely available, so S = {} already covers every
  // solution supported on path-touching cycles.
  std::optional<std::vector<std::size_t>> families_over(const std::vector<std::size_t>& pi,
                                                        const GroupVector& pi_sum,
                                                        const std::vector<char>& pi_mask) {
    ensure_cycles();
    std::vector<std::size_t> anchored;
    std::vector<char> is_anchored(cycles.size(), 0);
    std::vector<std::size_t> remote;
    for (std::size_t c = 0; c < cycles.size(); ++c) {
      bool touch = false;
      for (std::size_t v = 0; v < g.nv && !touch; ++v) touch = cycles[c].on_vertex[v] && pi_mask[v];
      if (touch) {
        anchored.push_back(c);
        is_anchored[c] = 1;
      } else {
        remote.push_back(c);
      }
    }
    std::vector<std::size_t> chosen;
    std::vector<char> banned(cycles.size(), 0), in_chosen(cycles.size(), 0);
    auto valid = [&]() {  // every component of `chosen` must touch an anchored member
      std::vector<char> seen(chosen.size(), 0);
      for (std::size_t s = 0; s < chosen.size(); ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> comp{s};
        seen[s] = 1;
        bool has_anchor = is_anchored[chosen[s]];
        for (std::size_t head = 0; head < comp.size(); ++head)
          for (std::size_t t = 0; t < chosen.size(); ++t) {
            if (seen[t]) continue;
            const auto& adj = cycle_adj[chosen[comp[head]]];
            if (std::find(adj.begin(), adj.end(), chosen[t]) != adj.end()) {
              seen[t] = 1;
              comp.push_back(t);
              has_anchor = has_anchor || is_anchored[chosen[t]];
            }
          }
        if (!has_anchor) return false;
      }
      return true;
    };
    std::optional<std::vector<std::size_t>> found;
    auto rec = [&](auto&& self, const std::vector<std::size_t>& cand) -> void {
      if (valid()) found = try_family(pi, pi_sum, anchored, chosen);
      if (found) return;
      std::vector<std::size_t> banned_here;
      for (std::size_t idx = 0; idx < cand.size() && !found; ++idx) {
        std::size_t c = cand[idx];
        if (banned[c] || in_chosen[c]) continue;
        chosen.push_back(c);
        in_chosen[c] = 1;
        std::vector<std::size_t> cand2(cand.begin() + idx + 1, cand.end());
        for (std::size_t nb : cycle_adj[c]) {
          if (banned[nb] || in_chosen[nb]) continue;
          if (is_anchored[nb] && is_anchored[c]) continue;  // stones only border remote members
          if (std::find(cand2.begin(), cand2.end(), nb) == cand2.end()) cand2.push_back(nb);
        }
        std::sort(cand2.begin(), cand2.end());
        self(self, cand2);
        chosen.pop_back();
        in_chosen[c] = 0;
        if (!found) {
          banned[c] = 1;  // subsets without c only, until this level unwinds
          banned_here.push_back(c);
        }
      }
      for (std::size_t c : banned_here) banned[c] = 0;
    };
    rec(rec, remote);
    return found;
  }

  std::optional<std::vector<std::size_t>> run() {
    if (!usable_vertex[g.source] || !usable_vertex[g.target]) return std::nullopt;
    std::optional<std::vector<std::size_t>> found;
    if (g.source == g.target) {
      std::vector<char> mask(g.nv, 0);
      mask[g.source] = 1;
      return families_over({}, GroupVector::zero(g.spec), mask);
    }
    auto outs = g.out();
    std::vector<char> onpath(g.nv, 0);
    std::vector<std::size_t> arcs_stack;
    GroupVector sum = GroupVector::zero(g.spec);
    auto dfs = [&](auto&& self, std::size_t v) -> bool {
      if (v == g.target) {
        if (++paths_seen > lim.max_simple_paths) throw ResourceLimitError("simple path enumeration exceeded its cap");
        std::vector<char> mask = onpath;
        if (auto walk = families_over(arcs_stack, sum, mask)) {
          found = std::move(walk);
          return true;
        }
        return false;
      }
      for (std::size_t ai : outs[v]) {
        if (!usable_arc[ai]) continue;
        const WalkArc& arc = g.arcs[ai];
        if (onpath[arc.dst]) continue;
        onpath[arc.dst] = 1;
        arcs_stack.push_back(ai);
        GroupVector keep = sum;
        sum = sum + arc.value;
        bool done = self(self, arc.dst);
        sum = std::move(keep);
        arcs_stack.pop_back();
        onpath[arc.dst] = 0;
        if (done) return true;
      }
      return false;
    };
    onpath[g.source] = 1;
    dfs(dfs, g.source);
    return found;
  }
};

// Exact zero-sum walk: a walk (arc sequence) from source to target with
// register sum zero, or nullopt when none exists.
inline std::optional<std::vector<std::size_t>> zero_sum_walk_exact(const WalkGraph& g, const ExactLimits& lim) {
  ExactSearch search(g, lim);
  return search.run();
}

// Canonical witness: lexicographically least among shortest, recovered by a
// cap-complete bounded pass once some witness length is known.
inline std::vector<std::size_t> canonicalize_walk(const WalkGraph& g, const std::vector<std::size_t>& walk) {
  std::size_t len = expand_walk(g, walk).size();
  Int norm = 0;
  for (const WalkArc& a : g.arcs) norm = std::max(norm, a.value.free_norm());
  norm = norm * Int(std::max<std::size_t>(len, 1));
  BoundedResult res = bounded_walk_search(g, len, norm);
  if (res.status != BoundedResult::Status::Found)
    throw ContractViolation("canonicalization pass failed to rediscover a witness");
  return res.walk;
}

inline Verdict decide_zero_sum_walk(const WalkGraph& g, const SearchMode& mode,
                                    const std::optional<VertexId>& empty_anchor) {
  auto to_witness = [&](const std::vector<std::size_t>& walk) {
    PathWord w{expand_walk(g, walk)};
    if (w.edges.empty()) w.anchor = empty_anchor;
    return w;
  };
  if (mode.is_exact()) {
    auto walk = zero_sum_walk_exact(g, mode.limits);
    if (!walk) return Verdict::make_no();
    return Verdict::make_yes(to_witness(canonicalize_walk(g, *walk)));
  }
  BoundedResult res = bounded_walk_search(g, mode.max_path_len, mode.max_counter_norm);
  switch (res.status) {
    case BoundedResult::Status::Found:
      return Verdict::make_yes(to_witness(res.walk));
    case BoundedResult::Status::ExhaustedComplete:
      return Verdict::make_no();
    default:
      return Verdict::make_unknown("bounded search exhausted its caps");
  }
}

// Layered product for word membership: letter edges advance the position,
// epsilon edges stay inside a layer.
inline WalkGraph layered_graph(const GAutomaton& a, const std::string& u) {
  WalkGraph g;
  g.spec = a.spec();
  const std::size_t nv = a.num_vertices();
  g.nv = nv * (u.size() + 1);
  for (std::size_t pos = 0; pos <= u.size(); ++pos) {
    for (EdgeId e = 0; e < a.num_edges(); ++e) {
      const Edge& ed = a.edge(e);
      if (ed.sigma.empty())
        g.arcs.push_back(WalkArc{pos * nv + ed.src, pos * nv + ed.dst, ed.label, {e}});
      else if (pos < u.size() && ed.sigma[0] == u[pos])
        g.arcs.push_back(WalkArc{pos * nv + ed.src, (pos + 1) * nv + ed.dst, ed.label, {e}});
    }
  }
  g.source = a.initial();
  g.target = u.size() * nv + a.terminal();
  return g;
}

inline WalkGraph full_graph(const GAutomaton& a) {
  WalkGraph g;
  g.spec = a.spec();
  g.nv = a.num_vertices();
  for (EdgeId e = 0; e < a.num_edges(); ++e) {
    const Edge& ed = a.edge(e);
    g.arcs.push_back(WalkArc{ed.src, ed.dst, ed.label, {e}});
  }
  g.source = a.initial();
  g.target = a.terminal();
  return g;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public operations.

// Membership of u in L(A): some path initial -> terminal spells u with
// register sum zero.
inline Verdict accepts(const GAutomaton& a, const std::string& u, const SearchMode& mode = SearchMode::exact()) {
  for (char c : u)
    if (!a.has_letter(c)) throw UsageError(std::string("word uses unknown letter '") + c + "'");
  detail::WalkGraph g = detail::layered_graph(a, u);
  Verdict v = detail::decide_zero_sum_walk(g, mode, a.initial());
  if (v.yes()) {
    const PathWord& w = *v.witness;
    if (!path_accepting(a, w) || path_sigma(a, w) != u)
      throw ContractViolation("accepts produced a witness that fails re-validation");
  }
  return v;
}

// Existence of any accepting path; Yes means the language is non-empty.
inline Verdict is_empty(const GAutomaton& a, const SearchMode& mode = SearchMode::exact()) {
  detail::WalkGraph g = detail::full_graph(a);
  Verdict v = detail::decide_zero_sum_walk(g, mode, a.initial());
  if (v.yes() && !path_accepting(a, *v.witness))
    throw ContractViolation("is_empty produced a witness that fails re-validation");
  return v;
}

struct PromisingVerdict {
  Verdict verdict;
  std::optional<std::pair<PathWord, PathWord>> flanks;  // (w1, w2) with w1.w.w2 accepting
};

// Is the path a subword of some accepting path?
inline PromisingVerdict is_promising(const GAutomaton& a, const PathWord& omega,
                                     const SearchMode& mode = SearchMode::exact()) {
  if (!path_is_valid(a, omega)) throw UsageError("is_promising requires a valid path");
  if (omega.empty()) {
    Verdict v = is_empty(a, mode);
    PromisingVerdict out{v, std::nullopt};
    if (v.yes()) out.flanks = {*v.witness, PathWord::empty_at(a.terminal())};
    return out;
  }
  detail::WalkGraph g;
  g.spec = a.spec();
  const std::size_t nv = a.num_vertices();
  g.nv = 2 * nv;
  for (EdgeId e = 0; e < a.num_edges(); ++e) {
    const Edge& ed = a.edge(e);
    g.arcs.push_back(detail::WalkArc{ed.src, ed.dst, ed.label, {e}});
  }
  for (EdgeId e = 0; e < a.num_edges(); ++e) {
    const Edge& ed = a.edge(e);
    g.arcs.push_back(detail::WalkArc{nv + ed.src, nv + ed.dst, ed.label, {e}});
  }
  // the only bridge between the copies spells omega, so every walk
  // traverses it exactly once
  const std::size_t bridge = g.arcs.size();
  g.arcs.push_back(detail::WalkArc{path_source(a, omega), nv + path_target(a, omega), path_weight(a, omega),
                                   omega.edges});
  g.source = a.initial();
  g.target = nv + a.terminal();

  std::optional<std::vector<std::size_t>> walk;
  if (mode.is_exact()) {
    walk = detail::zero_sum_walk_exact(g, mode.limits);
    if (!walk) return PromisingVerdict{Verdict::make_no(), std::nullopt};
    walk = detail::canonicalize_walk(g, *walk);
  } else {
    detail::BoundedResult res = detail::bounded_walk_search(g, mode.max_path_len, mode.max_counter_norm);
    if (res.status == detail::BoundedResult::Status::ExhaustedComplete)
      return PromisingVerdict{Verdict::make_no(), std::nullopt};
    if (res.status == detail::BoundedResult::Status::Inconclusive)
      return PromisingVerdict{Verdict::make_unknown("bounded search exhausted its caps"), std::nullopt};
    walk = std::move(res.walk);
  }
  std::vector<EdgeId> pre, post;
  bool crossed = false;
  for (std::size_t ai : *walk) {
    if (ai == bridge) {
      crossed = true;
      continue;
    }
    auto& side = crossed ? post : pre;
    side.insert(side.end(), g.arcs[ai].expansion.begin(), g.arcs[ai].expansion.end());
  }
  PathWord w1{std::move(pre)};
  if (w1.empty()) w1.anchor = a.initial();
  PathWord w2{std::move(post)};
  if (w2.empty()) w2.anchor = path_target(a, omega);
  PathWord alpha = path_concat(a, path_concat(a, w1, omega), w2);
  if (!crossed || !path_accepting(a, alpha)) throw ContractViolation("promising flanks fail re-validation");
  return PromisingVerdict{Verdict::make_yes(std::move(alpha)), std::make_pair(std::move(w1), std::move(w2))};
}

// ---------------------------------------------------------------------------
// Constrained accepting-path search.

struct DominateConstraint {
  PathWord mu;       // minimal accepting path to dominate
  PathWord sigma;    // closed path embedded contiguously...
  std::size_t block = 0;  // ...inside this block of the decomposition
};

struct PathConstraints {
  std::optional<std::string> spell;
  std::optional<DominateConstraint> dominate;
};

// Accepting path together with the block decomposition the chain search
// used, and the offset of sigma inside block j.
struct ChainWitness {
  PathWord alpha;
  std::vector<PathWord> blocks;
  std::size_t block_index = 0;
  std::size_t sigma_offset = 0;
};

namespace detail {

struct ChainResult {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<ChainWitness> witness;
};

// Chain graph: one automaton copy per block of mu's decomposition, marker
// arcs for mu's edges between them, and in block j a pre/post copy pair
// bridged only by an arc spelling sigma. Walks are exactly the accepting
// paths alpha = a_0 e_1 a_1 ... e_n a_n with sigma contiguous in a_j.
inline ChainResult chain_search(const GAutomaton& a, const PathWord& mu, const PathWord& sigma,
                                std::size_t block, const SearchMode& mode) {
  const std::size_t n = mu.size();
  if (block > n) throw UsageError("block index out of range");
  if (!path_is_valid(a, mu) || !path_is_valid(a, sigma)) throw UsageError("chain search requires valid paths");
  if (!path_closed(a, sigma)) throw UsageError("sigma must be a closed path");
  const std::size_t nv = a.num_vertices();
  const bool with_sigma = !sigma.empty();
  const std::size_t copies = n + 1 + (with_sigma ? 1 : 0);
  WalkGraph g;
  g.spec = a.spec();
  g.nv = copies * nv;
  // copy layout: blocks 0..j-1, then block j pre (and post right after when
  // sigma is present), then blocks j+1..n
  auto copy_of_block = [&](std::size_t i, bool post) -> std::size_t {
    if (i < block) return i;
    if (i == block) return block + (post && with_sigma ? 1 : 0);
    return i + (with_sigma ? 1 : 0);
  };
  for (std::size_t c = 0; c < copies; ++c)
    for (EdgeId e = 0; e < a.num_edges(); ++e) {
      const Edge& ed = a.edge(e);
      g.arcs.push_back(WalkArc{c * nv + ed.src, c * nv + ed.dst, ed.label, {e}});
    }
  std::vector<std::size_t> marker_arcs;
  for (std::size_t i = 0; i < n; ++i) {
    const Edge& ed = a.edge(mu.edges[i]);
    marker_arcs.push_back(g.arcs.size());
    g.arcs.push_back(WalkArc{copy_of_block(i, true) * nv + ed.src, copy_of_block(i + 1, false) * nv + ed.dst,
                             ed.label, {mu.edges[i]}});
  }
  std::size_t mega = g.arcs.size();
  if (with_sigma) {
    std::size_t q = path_source(a, sigma);
    g.arcs.push_back(WalkArc{copy_of_block(block, false) * nv + q, copy_of_block(block, true) * nv + q,
                             path_weight(a, sigma), sigma.edges});
  }
  VertexId v0 = n > 0 ? path_source(a, mu) : (mu.anchor ? *mu.anchor : a.initial());
  VertexId vn = n > 0 ? path_target(a, mu) : v0;
  g.source = copy_of_block(0, false) * nv + v0;
  g.target = copy_of_block(n, true) * nv + vn;

  std::optional<std::vector<std::size_t>> walk;
  if (mode.is_exact()) {
    walk = zero_sum_walk_exact(g, mode.limits);
    if (!walk) return ChainResult{VerdictKind::No, std::nullopt};
    walk = canonicalize_walk(g, *walk);
  } else {
    BoundedResult res = bounded_walk_search(g, mode.max_path_len, mode.max_counter_norm);
    if (res.status == BoundedResult::Status::ExhaustedComplete) return ChainResult{VerdictKind::No, std::nullopt};
    if (res.status == BoundedResult::Status::Inconclusive) return ChainResult{VerdictKind::Unknown, std::nullopt};
    walk = std::move(res.walk);
  }

  ChainWitness w;
  w.block_index = block;
  std::vector<EdgeId> expanded;
  std::size_t cur_block = 0;
  std::size_t block_start = 0;
  std::size_t marker_idx = 0;
  std::vector<std::pair<std::size_t, std::size_t>> block_spans;  // start, end in expanded
  std::size_t sigma_at = 0;
  for (std::size_t ai : *walk) {
    if (marker_idx < marker_arcs.size() && ai == marker_arcs[marker_idx]) {
      block_spans.emplace_back(block_start, expanded.size());
      expanded.push_back(g.arcs[ai].expansion[0]);
      block_start = expanded.size();
      ++marker_idx;
      ++cur_block;
      continue;
    }
    if (with_sigma && ai == mega) sigma_at = expanded.size();
    for (EdgeId e : g.arcs[ai].expansion) expanded.push_back(e);
  }
  block_spans.emplace_back(block_start, expanded.size());
  w.alpha = PathWord{expanded};
  if (w.alpha.empty()) w.alpha.anchor = v0;
  for (std::size_t i = 0; i <= n; ++i) {
    VertexId anchor = (i == 0) ? v0 : a.edge(mu.edges[i - 1]).dst;
    w.blocks.push_back(path_slice(a, w.alpha, block_spans[i].first, block_spans[i].second - block_spans[i].first,
                                  anchor));
  }
  w.sigma_offset = sigma_at - block_spans[block].first;
  return ChainResult{VerdictKind::Yes, std::move(w)};
}

}  // namespace detail

// Accepting-path search under an optional spell constraint or an optional
// domination constraint (mutually exclusive).
inline Verdict find_accepting_path(const GAutomaton& a, const PathConstraints& cons,
                                   const SearchMode& mode = SearchMode::exact()) {
  if (cons.spell && cons.dominate) throw UsageError("spell and dominate constraints cannot be combined");
  if (cons.spell) return accepts(a, *cons.spell, mode);
  if (cons.dominate) {
    auto res = detail::chain_search(a, cons.dominate->mu, cons.dominate->sigma, cons.dominate->block, mode);
    if (res.kind == VerdictKind::Yes) {
      if (!path_accepting(a, res.witness->alpha)) throw ContractViolation("chain witness fails re-validation");
      return Verdict::make_yes(res.witness->alpha);
    }
    if (res.kind == VerdictKind::No) return Verdict::make_no();
    return Verdict::make_unknown("bounded chain search exhausted its caps");
  }
  return is_empty(a, mode);
}

// ---------------------------------------------------------------------------
// Semilinear description of closed-walk register values at a vertex.

inline bool LinearSetFamily::contains(const GroupVector& v) const {
  for (const LinearSet& s : sets) {
    GroupVector diff = v - s.base;
    if (diff.is_zero()) return true;
    if (s.periods.empty()) continue;
    DiophantineSystem sys;
    const std::size_t rows = spec.dim();
    sys.a.assign(rows, IntRow(s.periods.size(), Int(0)));
    for (std::size_t j = 0; j < s.periods.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) sys.a[i][j] = s.periods[j][i];
    sys.b = diff.coords();
    sys.moduli.assign(rows, Int(0));
    for (std::size_t t = 0; t < spec.torsion_moduli.size(); ++t)
      sys.moduli[spec.free_rank + t] = spec.torsion_moduli[t];
    if (!min_nonneg_solutions(sys).empty()) return true;
  }
  return false;
}

// {l_G(sigma) : sigma a closed walk at p}, exactly, as a finite union of
// linear sets: one per connected-to-p cycle family, offset by the family's
// mandatory single traversals.
inline LinearSetFamily closed_value_sets(const GAutomaton& a, VertexId p,
                                         const ExactLimits& lim = ExactLimits{}) {
  detail::WalkGraph g = detail::full_graph(a);
  g.source = p;
  g.target = p;
  detail::ExactSearch search(g, lim);
  search.ensure_cycles();
  const auto& cycles = search.cycles;

  LinearSetFamily fam;
  fam.spec = a.spec();
  fam.sets.push_back(LinearSet{GroupVector::zero(a.spec()), {}});  // the empty walk

  std::vector<std::size_t> anchored;
  for (std::size_t c = 0; c < cycles.size(); ++c)
    if (cycles[c].on_vertex[p]) anchored.push_back(c);
  std::vector<std::size_t> chosen;
  std::vector<char> banned(cycles.size(), 0), in_chosen(cycles.size(), 0);
  std::size_t emitted = 0;
  auto emit = [&]() {
    if (++emitted > lim.max_families) throw ResourceLimitError("cycle family enumeration exceeded its cap");
    if (chosen.empty()) return;
    GroupVector base = GroupVector::zero(a.spec());
    std::set<std::vector<Int>> pv;
    for (std::size_t c : chosen) {
      base = base + cycles[c].value;
      pv.insert(cycles[c].value.coords());
    }
    LinearSet ls{std::move(base), {}};
    for (const auto& coords : pv) ls.periods.emplace_back(a.spec(), coords);
    fam.sets.push_back(std::move(ls));
  };
  auto rec = [&](auto&& self, const std::vector<std::size_t>& cand) -> void {
    emit();
    std::vector<std::size_t> banned_here;
    for (std::size_t idx = 0; idx < cand.size(); ++idx) {
      std::size_t c = cand[idx];
      if (banned[c] || in_chosen[c]) continue;
      chosen.push_back(c);
      in_chosen[c] = 1;
      std::vector<std::size_t> cand2(cand.begin() + idx + 1, cand.end());
      for (std::size_t nb : search.cycle_adj[c])
        if (!banned[nb] && !in_chosen[nb] && std::find(cand2.begin(), cand2.end(), nb) == cand2.end())
          cand2.push_back(nb);
      std::sort(cand2.begin(), cand2.end());
      self(self, cand2);
      chosen.pop_back();
      in_chosen[c] = 0;
      banned[c] = 1;
      banned_here.push_back(c);
    }
    for (std::size_t c : banned_here) banned[c] = 0;
  };
  rec(rec, anchored);

  // canonical form: dedupe, absorb components provably contained in others
  std::sort(fam.sets.begin(), fam.sets.end(), [](const LinearSet& x, const LinearSet& y) {
    if (!(x.base == y.base)) return x.base < y.base;
    return x.periods < y.periods;
  });
  fam.sets.erase(std::unique(fam.sets.begin(), fam.sets.end(),
                             [](const LinearSet& x, const LinearSet& y) {
                               return x.base == y.base && x.periods == y.periods;
                             }),
                 fam.sets.end());
  auto in_cone = [&](const GroupVector& v, const std::vector<GroupVector>& periods) {
    if (v.is_zero()) return true;
    if (periods.empty()) return false;
    DiophantineSystem sys;
    const std::size_t rows = a.spec().dim();
    sys.a.assign(rows, IntRow(periods.size(), Int(0)));
    for (std::size_t j = 0; j < periods.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) sys.a[i][j] = periods[j][i];
    sys.b = v.coords();
    sys.moduli.assign(rows, Int(0));
    for (std::size_t t = 0; t < a.spec().torsion_moduli.size(); ++t)
      sys.moduli[a.spec().free_rank + t] = a.spec().torsion_moduli[t];
    return !min_nonneg_solutions(sys).empty();
  };
  std::vector<LinearSet> kept;
  for (std::size_t i = 0; i < fam.sets.size(); ++i) {
    bool absorbed = false;
    for (std::size_t j = 0; j < fam.sets.size() && !absorbed; ++j) {
      if (i == j) continue;
      const LinearSet& big = fam.sets[j];
      const LinearSet& small = fam.sets[i];
      if (small.periods.size() > big.periods.size() ||
          (small.periods.size() == big.periods.size() && j > i))
        continue;  // deterministic tie-break, avoids mutual absorption
      bool periods_ok = true;
      for (const GroupVector& pv : small.periods) periods_ok = periods_ok && in_cone(pv, big.periods);
      if (periods_ok && in_cone(small.base - big.base, big.periods)) absorbed = true;
    }
    if (!absorbed) kept.push_back(fam.sets[i]);
  }
  fam.sets = std::move(kept);
  return fam;
}

}  // namespace valence
