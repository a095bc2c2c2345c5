#pragma once

// G-automata over f.g. abelian register groups: a finite labeled graph with
// a register label in G and a letter-or-epsilon input label per edge, plus
// initial and terminal vertices. A path accepts when it runs initial ->
// terminal with register sum zero. Paths are words over edge identities:
// parallel edges with equal labels are distinct path symbols.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "valence/abelian.hpp"
#include "valence/errors.hpp"
#include "valence/lattice.hpp"
#include "valence/target_group.hpp"

namespace valence {

using VertexId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  std::string name;
  VertexId src = 0;
  VertexId dst = 0;
  GroupVector label;   // register increment
  std::string sigma;   // single letter, or "" for epsilon
};

class GAutomaton {
 public:
  GAutomaton(AbelianSpec spec, std::vector<char> alphabet) : spec_(std::move(spec)), alphabet_(std::move(alphabet)) {
    spec_.check();
    std::sort(alphabet_.begin(), alphabet_.end());
    if (std::adjacent_find(alphabet_.begin(), alphabet_.end()) != alphabet_.end())
      throw UsageError("duplicate letter in alphabet");
  }

  const AbelianSpec& spec() const { return spec_; }
  const std::vector<char>& alphabet() const { return alphabet_; }
  bool has_letter(char c) const { return std::binary_search(alphabet_.begin(), alphabet_.end(), c); }

  VertexId add_vertex(const std::string& name) {
    if (vertex_ids_.count(name)) throw UsageError("duplicate vertex '" + name + "'");
    vertex_ids_.emplace(name, vertex_names_.size());
    vertex_names_.push_back(name);
    out_.emplace_back();
    return vertex_names_.size() - 1;
  }

  EdgeId add_edge(const std::string& name, VertexId src, VertexId dst, GroupVector label, const std::string& sigma) {
    if (edge_ids_.count(name)) throw UsageError("duplicate edge '" + name + "'");
    if (src >= vertex_names_.size() || dst >= vertex_names_.size()) throw UsageError("edge endpoint out of range");
    if (!(label.spec() == spec_)) throw UsageError("edge label spec mismatch on '" + name + "'");
    if (sigma.size() > 1 || (sigma.size() == 1 && !has_letter(sigma[0])))
      throw UsageError("edge '" + name + "' label must be one alphabet letter or epsilon");
    EdgeId id = edges_.size();
    edge_ids_.emplace(name, id);
    edges_.push_back(Edge{name, src, dst, std::move(label), sigma});
    out_[src].push_back(id);
    return id;
  }

  void set_initial(VertexId v) { init_ = v; }
  void set_terminal(VertexId v) { ter_ = v; }
  VertexId initial() const { return init_; }
  VertexId terminal() const { return ter_; }

  std::size_t num_vertices() const { return vertex_names_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::string& vertex_name(VertexId v) const { return vertex_names_[v]; }
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_[v]; }

  VertexId vertex_id(const std::string& name) const {
    auto it = vertex_ids_.find(name);
    if (it == vertex_ids_.end()) throw UsageError("unknown vertex '" + name + "'");
    return it->second;
  }

  EdgeId edge_id(const std::string& name) const {
    auto it = edge_ids_.find(name);
    if (it == edge_ids_.end()) throw UsageError("unknown edge '" + name + "'");
    return it->second;
  }

  bool has_vertex(const std::string& name) const { return vertex_ids_.count(name) != 0; }
  bool has_edge_name(const std::string& name) const { return edge_ids_.count(name) != 0; }

  friend bool operator==(const GAutomaton& a, const GAutomaton& b) {
    if (!(a.spec_ == b.spec_) || a.alphabet_ != b.alphabet_ || a.vertex_names_ != b.vertex_names_ ||
        a.init_ != b.init_ || a.ter_ != b.ter_ || a.edges_.size() != b.edges_.size())
      return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i) {
      const Edge& x = a.edges_[i];
      const Edge& y = b.edges_[i];
      if (x.name != y.name || x.src != y.src || x.dst != y.dst || !(x.label == y.label) || x.sigma != y.sigma)
        return false;
    }
    return true;
  }

 private:
  AbelianSpec spec_;
  std::vector<char> alphabet_;
  std::vector<std::string> vertex_names_;
  std::map<std::string, VertexId> vertex_ids_;
  std::vector<Edge> edges_;
  std::map<std::string, EdgeId> edge_ids_;
  std::vector<std::vector<EdgeId>> out_;
  VertexId init_ = 0;
  VertexId ter_ = 0;
};

// A path as a word over edge ids. The empty path carries an optional anchor
// vertex for the operations that need a base point.
struct PathWord {
  std::vector<EdgeId> edges;
  std::optional<VertexId> anchor;

  PathWord() = default;
  explicit PathWord(std::vector<EdgeId> e) : edges(std::move(e)) {}
  static PathWord empty_at(VertexId v) {
    PathWord p;
    p.anchor = v;
    return p;
  }

  bool empty() const { return edges.empty(); }
  std::size_t size() const { return edges.size(); }

  friend bool operator==(const PathWord& a, const PathWord& b) { return a.edges == b.edges; }
  // canonical order: shorter first, then lexicographic on edge ids
  friend bool operator<(const PathWord& a, const PathWord& b) {
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    return a.edges < b.edges;
  }
};

inline bool path_is_valid(const GAutomaton& a, const PathWord& p) {
  for (EdgeId e : p.edges)
    if (e >= a.num_edges()) return false;
  for (std::size_t i = 0; i + 1 < p.edges.size(); ++i)
    if (a.edge(p.edges[i]).dst != a.edge(p.edges[i + 1]).src) return false;
  if (!p.edges.empty() && p.anchor && *p.anchor != a.edge(p.edges[0]).src) return false;
  return true;
}

inline VertexId path_source(const GAutomaton& a, const PathWord& p) {
  if (!p.edges.empty()) return a.edge(p.edges[0]).src;
  if (p.anchor) return *p.anchor;
  throw UsageError("empty path without anchor has no source");
}

inline VertexId path_target(const GAutomaton& a, const PathWord& p) {
  if (!p.edges.empty()) return a.edge(p.edges.back()).dst;
  if (p.anchor) return *p.anchor;
  throw UsageError("empty path without anchor has no target");
}

inline bool path_closed(const GAutomaton& a, const PathWord& p) {
  return p.empty() || path_source(a, p) == path_target(a, p);
}

inline GroupVector path_weight(const GAutomaton& a, const PathWord& p) {
  GroupVector sum = GroupVector::zero(a.spec());
  for (EdgeId e : p.edges) sum = sum + a.edge(e).label;
  return sum;
}

inline std::string path_sigma(const GAutomaton& a, const PathWord& p) {
  std::string w;
  for (EdgeId e : p.edges) w += a.edge(e).sigma;
  return w;
}

inline PathWord path_concat(const GAutomaton& a, const PathWord& p, const PathWord& q) {
  if (p.edges.empty() && q.edges.empty()) {
    if (p.anchor && q.anchor && *p.anchor != *q.anchor) throw UsageError("concatenating empty paths at different vertices");
    return p.anchor ? p : q;
  }
  if (p.edges.empty()) {
    if (p.anchor && *p.anchor != path_source(a, q)) throw UsageError("path concatenation endpoint mismatch");
    return q;
  }
  if (q.edges.empty()) {
    if (q.anchor && *q.anchor != path_target(a, p)) throw UsageError("path concatenation endpoint mismatch");
    return p;
  }
  if (path_target(a, p) != path_source(a, q)) throw UsageError("path concatenation endpoint mismatch");
  PathWord r = p;
  r.edges.insert(r.edges.end(), q.edges.begin(), q.edges.end());
  return r;
}

inline PathWord path_slice(const GAutomaton& a, const PathWord& p, std::size_t offset, std::size_t len,
                           std::optional<VertexId> anchor_if_empty = std::nullopt) {
  PathWord out;
  out.edges.assign(p.edges.begin() + offset, p.edges.begin() + offset + len);
  if (out.edges.empty()) {
    if (anchor_if_empty)
      out.anchor = anchor_if_empty;
    else if (offset < p.edges.size())
      out.anchor = a.edge(p.edges[offset]).src;
    else if (!p.edges.empty())
      out.anchor = a.edge(p.edges.back()).dst;
    else
      out.anchor = p.anchor;
  }
  return out;
}

// The empty path is accepting iff initial = terminal.
inline bool path_accepting(const GAutomaton& a, const PathWord& p) {
  if (!path_is_valid(a, p)) return false;
  if (p.empty()) return a.initial() == a.terminal() && path_weight(a, p).is_zero();
  return path_source(a, p) == a.initial() && path_target(a, p) == a.terminal() && path_weight(a, p).is_zero();
}

inline std::string path_str(const GAutomaton& a, const PathWord& p) {
  if (p.empty()) return "<empty>";
  std::string s;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i) s += ".";
    s += a.edge(p.edges[i]).name;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Raw documents: named references, multi-letter sigma labels allowed.

struct RawEdge {
  std::string name;
  std::string src;
  std::string dst;
  std::vector<Int> g;
  std::string sigma;
};

struct RawAutomaton {
  AbelianSpec spec;
  std::vector<char> alphabet;
  std::vector<std::string> vertices;
  std::vector<RawEdge> edges;
  std::string init;
  std::string ter;
};

inline std::vector<std::string> validate(const RawAutomaton& raw) {
  std::vector<std::string> diags;
  for (const Int& d : raw.spec.torsion_moduli)
    if (d < 2) diags.push_back("torsion modulus " + d.str() + " is below 2");
  std::map<std::string, int> vcount;
  for (const std::string& v : raw.vertices)
    if (++vcount[v] == 2) diags.push_back("duplicate vertex '" + v + "'");
  std::map<std::string, int> ecount;
  for (const RawEdge& e : raw.edges) {
    if (++ecount[e.name] == 2) diags.push_back("duplicate edge '" + e.name + "'");
    if (!vcount.count(e.src)) diags.push_back("edge '" + e.name + "': unknown vertex '" + e.src + "'");
    if (!vcount.count(e.dst)) diags.push_back("edge '" + e.name + "': unknown vertex '" + e.dst + "'");
    if (e.g.size() != raw.spec.dim())
      diags.push_back("edge '" + e.name + "': register label has wrong dimension");
    for (char c : e.sigma)
      if (std::find(raw.alphabet.begin(), raw.alphabet.end(), c) == raw.alphabet.end())
        diags.push_back(std::string("edge '") + e.name + "': letter '" + c + "' not in alphabet");
  }
  if (!vcount.count(raw.init)) diags.push_back("unknown vertex '" + raw.init + "' as initial");
  if (!vcount.count(raw.ter)) diags.push_back("unknown vertex '" + raw.ter + "' as terminal");
  return diags;
}

inline std::vector<std::string> validate(const GAutomaton& a) {
  std::vector<std::string> diags;
  for (EdgeId e = 0; e < a.num_edges(); ++e) {
    const Edge& ed = a.edge(e);
    if (ed.sigma.size() > 1) diags.push_back("edge '" + ed.name + "' carries more than one letter");
    if (ed.sigma.size() == 1 && !a.has_letter(ed.sigma[0]))
      diags.push_back("edge '" + ed.name + "' letter not in alphabet");
  }
  if (a.num_vertices() == 0) diags.push_back("automaton has no vertices");
  return diags;
}

// Language-preserving normalization: split every multi-letter edge into a
// chain where the first edge keeps the register label and the rest carry 0.
inline GAutomaton subdivide_normalize(const RawAutomaton& raw) {
  std::vector<std::string> diags = validate(raw);
  if (!diags.empty()) {
    std::string msg = "invalid automaton:";
    for (const std::string& d : diags) msg += "\n  " + d;
    throw UsageError(msg);
  }
  GAutomaton a(raw.spec, raw.alphabet);
  for (const std::string& v : raw.vertices) a.add_vertex(v);
  auto fresh_vertex = [&a](std::string base) {
    while (a.has_vertex(base)) base += "'";
    return base;
  };
  auto fresh_edge = [&a](std::string base) {
    while (a.has_edge_name(base)) base += "'";
    return base;
  };
  for (const RawEdge& e : raw.edges) {
    GroupVector g(raw.spec, e.g);
    if (e.sigma.size() <= 1) {
      a.add_edge(fresh_edge(e.name), a.vertex_id(e.src), a.vertex_id(e.dst), g, e.sigma);
      continue;
    }
    VertexId prev = a.vertex_id(e.src);
    for (std::size_t i = 0; i < e.sigma.size(); ++i) {
      VertexId next = (i + 1 == e.sigma.size())
                          ? a.vertex_id(e.dst)
                          : a.add_vertex(fresh_vertex(e.name + "." + std::to_string(i + 1)));
      a.add_edge(fresh_edge(e.name + "." + std::to_string(i + 1)), prev, next,
                 i == 0 ? g : GroupVector::zero(raw.spec), std::string(1, e.sigma[i]));
      prev = next;
    }
  }
  a.set_initial(a.vertex_id(raw.init));
  a.set_terminal(a.vertex_id(raw.ter));
  return a;
}

// ---------------------------------------------------------------------------
// Word-problem builders.

// One vertex, a +/- loop pair per free generator of Z^n; accepts WP(Z^n).
inline std::pair<GAutomaton, ChoiceOfGenerators> build_wp_abelian(std::size_t n) {
  if (n < 1 || n > 26) throw UsageError("build_wp_abelian supports rank 1..26");
  AbelianSpec spec{n, {}};
  std::vector<char> alphabet;
  for (std::size_t i = 0; i < n; ++i) {
    alphabet.push_back(static_cast<char>('a' + i));
    alphabet.push_back(static_cast<char>('A' + i));
  }
  GAutomaton a(spec, alphabet);
  VertexId q = a.add_vertex("q");
  a.set_initial(q);
  a.set_terminal(q);
  std::vector<std::pair<char, TargetGroupElement>> images;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Int> plus(n, Int(0)), minus(n, Int(0));
    plus[i] = 1;
    minus[i] = -1;
    char lo = static_cast<char>('a' + i), hi = static_cast<char>('A' + i);
    a.add_edge(std::string("e_") + lo, q, q, GroupVector(spec, plus), std::string(1, lo));
    a.add_edge(std::string("e_") + hi, q, q, GroupVector(spec, minus), std::string(1, hi));
    images.emplace_back(lo, GroupVector(spec, plus));
    images.emplace_back(hi, GroupVector(spec, minus));
  }
  return {std::move(a), ChoiceOfGenerators(TargetGroup(spec), std::move(images))};
}

// Deterministic automaton on the point group: state f0 reads a letter with
// image (v, f) by moving to f0*f and adding f0.v to the register. Accepts
// exactly the word problem of the virtually abelian target.
inline GAutomaton build_wp_virtually_abelian(const VirtuallyAbelianSpec& h, const ChoiceOfGenerators& rho) {
  h.check();
  if (!std::holds_alternative<VirtuallyAbelianSpec>(rho.group().spec()) ||
      !(std::get<VirtuallyAbelianSpec>(rho.group().spec()) == h))
    throw UsageError("rho must map into the given virtually abelian group");
  AbelianSpec spec{h.rank, {}};
  GAutomaton a(spec, rho.alphabet());
  for (const std::string& name : h.point_group.names) a.add_vertex(name);
  a.set_initial(h.point_group.identity);
  a.set_terminal(h.point_group.identity);
  for (char c : rho.alphabet()) {
    const VaElement& img = std::get<VaElement>(rho.image(c));
    for (int f0 = 0; f0 < h.point_group.order(); ++f0) {
      IntRow inc = VirtuallyAbelianSpec::mat_apply(h.action[f0], img.translation);
      a.add_edge(std::string("e_") + c + "_" + h.point_group.names[f0], f0, h.point_group.mul(f0, img.point),
                 GroupVector(spec, inc), std::string(1, c));
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// Closure constructions.

// L(result) = phi^{-1}(L(a)) for phi: Delta -> Sigma*. Reading a letter d
// walks a fresh layered gadget that spells phi(d) through `a`, with the
// epsilon structure of `a` copied into every layer.
inline GAutomaton inverse_hom_pullback(const GAutomaton& a, const std::map<char, std::string>& phi) {
  for (const auto& [d, w] : phi)
    for (char c : w)
      if (!a.has_letter(c)) throw UsageError(std::string("phi image uses unknown letter '") + c + "'");
  std::vector<char> delta;
  for (const auto& [d, w] : phi) delta.push_back(d);
  GAutomaton b(a.spec(), delta);
  for (VertexId v = 0; v < a.num_vertices(); ++v) b.add_vertex(a.vertex_name(v));
  // interior layer vertices per letter
  std::map<std::pair<char, std::size_t>, std::vector<VertexId>> layer;  // (d, i) i in 1..|phi(d)|-1
  for (const auto& [d, w] : phi) {
    for (std::size_t i = 1; w.size() >= 2 && i <= w.size() - 1; ++i) {
      std::vector<VertexId>& ids = layer[{d, i}];
      for (VertexId v = 0; v < a.num_vertices(); ++v)
        ids.push_back(b.add_vertex(a.vertex_name(v) + "@" + d + std::to_string(i)));
    }
  }
  auto layer_vertex = [&](char d, std::size_t i, VertexId v) -> VertexId {
    // i = 0 and i = |phi(d)| are the shared base layer
    if (i == 0 || i == phi.at(d).size()) return v;
    return layer.at({d, i})[v];
  };
  // base epsilon structure
  for (EdgeId e = 0; e < a.num_edges(); ++e) {
    const Edge& ed = a.edge(e);
    if (ed.sigma.empty()) b.add_edge(ed.name, ed.src, ed.dst, ed.label, "");
  }
  for (const auto& [d, w] : phi) {
    if (w.empty()) {
      // reading d consumes nothing in `a`
      for (VertexId v = 0; v < a.num_vertices(); ++v)
        b.add_edge(std::string("e_") + d + "@" + a.vertex_name(v), v, v, GroupVector::zero(a.spec()),
                   std::string(1, d));
      continue;
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (EdgeId e = 0; e < a.num_edges(); ++e) {
        const Edge& ed = a.edge(e);
        if (ed.sigma != std::string(1, w[i])) continue;
        b.add_edge(ed.name + "@" + d + std::to_string(i + 1), layer_vertex(d, i, ed.src),
                   layer_vertex(d, i + 1, ed.dst), ed.label, i == 0 ? std::string(1, d) : "");
      }
      if (i > 0) {
        // epsilon moves inside the gadget layer
        for (EdgeId e = 0; e < a.num_edges(); ++e) {
          const Edge& ed = a.edge(e);
          if (!ed.sigma.empty()) continue;
          b.add_edge(ed.name + "@" + d + std::to_string(i), layer_vertex(d, i, ed.src), layer_vertex(d, i, ed.dst),
                     ed.label, "");
        }
      }
    }
  }
  b.set_initial(a.initial());
  b.set_terminal(a.terminal());
  return b;
}

// Relabel edges through an injective homomorphism into a larger register
// group: the free part goes through `embedding` (columns = source free
// rank), torsion coordinates pass through unchanged.
inline GAutomaton register_extend(const GAutomaton& a, const AbelianSpec& target, const IntMatrix& embedding) {
  if (target.torsion_moduli != a.spec().torsion_moduli)
    throw UsageError("register_extend requires identical torsion parts");
  if (embedding.size() != target.free_rank) throw UsageError("embedding has wrong number of rows");
  for (const IntRow& r : embedding)
    if (r.size() != a.spec().free_rank) throw UsageError("embedding has wrong number of columns");
  // injectivity: full column rank
  IntMatrix cols(a.spec().free_rank, IntRow(target.free_rank, Int(0)));
  for (std::size_t i = 0; i < embedding.size(); ++i)
    for (std::size_t j = 0; j < embedding[i].size(); ++j) cols[j][i] = embedding[i][j];
  if (row_hnf(cols, target.free_rank).h.size() != a.spec().free_rank)
    throw UsageError("embedding is not injective");
  GAutomaton b(target, a.alphabet());
  for (VertexId v = 0; v < a.num_vertices(); ++v) b.add_vertex(a.vertex_name(v));
  for (EdgeId e = 0; e < a.num_edges(); ++e) {
    const Edge& ed = a.edge(e);
    std::vector<Int> g(target.dim(), Int(0));
    for (std::size_t i = 0; i < target.free_rank; ++i)
      for (std::size_t j = 0; j < a.spec().free_rank; ++j) g[i] += embedding[i][j] * ed.label[j];
    for (std::size_t t = 0; t < target.torsion_moduli.size(); ++t)
      g[target.free_rank + t] = ed.label[a.spec().free_rank + t];
    b.add_edge(ed.name, ed.src, ed.dst, GroupVector(target, std::move(g)), ed.sigma);
  }
  b.set_initial(a.initial());
  b.set_terminal(a.terminal());
  return b;
}

// Coset construction for a finite index subgroup of a free register group:
// states track the coset of the running register sum, edge labels land in
// the subgroup and are rewritten in its basis coordinates.
inline GAutomaton register_restrict(const GAutomaton& a, const LatticeSubgroup& sub) {
  if (!(sub.spec() == a.spec())) throw UsageError("subgroup spec mismatch");
  if (!a.spec().torsion_moduli.empty())
    throw UsageError("register_restrict supports free register groups only");
  if (!sub.index_in_ambient()) throw UsageError("subgroup has infinite index");
  // transversal of canonical coset representatives, discovered by unit steps
  std::vector<GroupVector> reps{sub.coset_rep(GroupVector::zero(a.spec()))};
  std::map<GroupVector, std::size_t> rep_ids{{reps[0], 0}};
  for (std::size_t head = 0; head < reps.size(); ++head) {
    GroupVector cur = reps[head];
    for (std::size_t i = 0; i < a.spec().dim(); ++i) {
      std::vector<Int> unit(a.spec().dim(), Int(0));
      unit[i] = 1;
      GroupVector nb = sub.coset_rep(cur + GroupVector(a.spec(), unit));
      if (rep_ids.emplace(nb, reps.size()).second) reps.push_back(nb);
    }
  }
  std::vector<GroupVector> basis_vecs;
  for (const IntRow& row : sub.basis()) basis_vecs.emplace_back(a.spec(), row);
  AbelianSpec sub_spec{basis_vecs.size(), {}};
  GAutomaton b(sub_spec, a.alphabet());
  for (std::size_t c = 0; c < reps.size(); ++c)
    for (VertexId v = 0; v < a.num_vertices(); ++v) b.add_vertex(a.vertex_name(v) + "#" + std::to_string(c));
  auto state = [&](VertexId v, std::size_t c) { return c * a.num_vertices() + v; };
  for (std::size_t c = 0; c < reps.size(); ++c) {
    for (EdgeId e = 0; e < a.num_edges(); ++e) {
      const Edge& ed = a.edge(e);
      GroupVector moved = reps[c] + ed.label;
      GroupVector rep2 = sub.coset_rep(moved);
      std::size_t c2 = rep_ids.at(rep2);
      GroupVector in_sub = moved - rep2;  // element of the subgroup
      auto coeffs = solve_in_span(a.spec(), basis_vecs, in_sub);
      if (!coeffs) throw ContractViolation("coset construction produced a label outside the subgroup");
      b.add_edge(ed.name + "#" + std::to_string(c), state(ed.src, c), state(ed.dst, c2),
                 GroupVector(sub_spec, *coeffs), ed.sigma);
    }
  }
  b.set_initial(state(a.initial(), 0));
  b.set_terminal(state(a.terminal(), 0));
  return b;
}

// Deterministic DOT rendering; edges annotated "sigma / g".
inline std::string export_dot(const GAutomaton& a) {
  std::ostringstream os;
  os << "digraph gautomaton {\n";
  os << "  rankdir=LR;\n";
  os << "  __start [shape=point];\n";
  for (VertexId v = 0; v < a.num_vertices(); ++v) {
    os << "  \"" << a.vertex_name(v) << "\" [shape=" << (v == a.terminal() ? "doublecircle" : "circle") << "];\n";
  }
  os << "  __start -> \"" << a.vertex_name(a.initial()) << "\";\n";
  for (EdgeId e = 0; e < a.num_edges(); ++e) {
    const Edge& ed = a.edge(e);
    os << "  \"" << a.vertex_name(ed.src) << "\" -> \"" << a.vertex_name(ed.dst) << "\" [label=\""
       << (ed.sigma.empty() ? std::string("eps") : ed.sigma) << " / " << ed.label.str() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace valence
