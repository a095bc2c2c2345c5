#pragma once

// Subword and scattered-subword orders, antichain maintenance, and the
// enumeration of scattered-subword-minimal accepting paths with its pump
// constant. Minimality lives on E*: two parallel edges with equal labels
// are distinct path symbols.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "valence/automaton.hpp"
#include "valence/errors.hpp"

namespace valence {

// Strictly increasing positions embedding u into v.
using Embedding = std::vector<std::size_t>;

inline const std::string& seq_of(const std::string& s) { return s; }
inline const std::vector<EdgeId>& seq_of(const PathWord& p) { return p.edges; }

// Contiguous containment; returns the leftmost offset.
template <class T>
std::optional<std::size_t> subword_offset(const T& u_, const T& v_) {
  const auto& u = seq_of(u_);
  const auto& v = seq_of(v_);
  if (u.size() > v.size()) return std::nullopt;
  for (std::size_t off = 0; off + u.size() <= v.size(); ++off) {
    bool ok = true;
    for (std::size_t i = 0; i < u.size() && ok; ++i) ok = (u[i] == v[off + i]);
    if (ok) return off;
  }
  return std::nullopt;
}

template <class T>
bool is_subword(const T& u, const T& v) {
  return subword_offset(u, v).has_value();
}

// Greedy leftmost embedding witnessing u as a scattered subword of v.
template <class T>
std::optional<Embedding> scattered_embedding(const T& u_, const T& v_) {
  const auto& u = seq_of(u_);
  const auto& v = seq_of(v_);
  Embedding pos;
  pos.reserve(u.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    while (j < v.size() && !(v[j] == u[i])) ++j;
    if (j == v.size()) return std::nullopt;
    pos.push_back(j++);
  }
  return pos;
}

template <class T>
bool is_scattered_subword(const T& u, const T& v) {
  return scattered_embedding(u, v).has_value();
}

// Antichain under the scattered subword order, updated functionally:
// inserting a dominated element is a no-op, inserting a new element evicts
// everything it sits below.
template <class T>
class Antichain {
 public:
  Antichain() = default;
  explicit Antichain(std::vector<T> elems) : elems_(std::move(elems)) { normalize(); }

  const std::vector<T>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }

  bool dominates_member(const T& x) const {  // some member is <=_sc x
    for (const T& s : elems_)
      if (is_scattered_subword(s, x)) return true;
    return false;
  }

  Antichain insert(const T& x) const {
    if (dominates_member(x)) return *this;
    Antichain out;
    for (const T& s : elems_)
      if (!is_scattered_subword(x, s)) out.elems_.push_back(s);
    out.elems_.push_back(x);
    out.normalize();
    return out;
  }

  friend bool operator==(const Antichain& a, const Antichain& b) { return a.elems_ == b.elems_; }

 private:
  void normalize() {
    std::sort(elems_.begin(), elems_.end(), [](const T& a, const T& b) {
      const auto& x = seq_of(a);
      const auto& y = seq_of(b);
      if (x.size() != y.size()) return x.size() < y.size();
      return x < y;
    });
  }

  std::vector<T> elems_;
};

template <class T>
Antichain<T> antichain_insert(const Antichain<T>& s, const T& x) {
  return s.insert(x);
}

// ---------------------------------------------------------------------------
// Minimal accepting paths.

struct MinimalPathSet {
  std::vector<PathWord> paths;  // antichain, canonical (length, lex) order
  bool certified = false;       // true: exhaustive; false: complete up to explored_len only
  std::size_t explored_len = 0;
};

struct MinimalPathOptions {
  std::size_t max_len = 12;
  std::size_t node_guard = 2000000;
};

// Length-layered search over path prefixes with two sound prunes: a prefix
// revisiting a (vertex, register) configuration contains a removable closed
// zero-sum block, so no minimal path extends it; and a prefix dominated by
// an already-found accepting path only extends to dominated paths. When the
// frontier empties before any guard trips, the enumeration is exhaustive
// and the antichain is certified complete.
inline MinimalPathSet minimal_accepting_paths(const GAutomaton& a, const MinimalPathOptions& opt = {}) {
  struct Node {
    PathWord path;
    VertexId at;
    GroupVector sum;
    std::vector<std::pair<VertexId, GroupVector>> configs;
  };
  Antichain<PathWord> chain;
  Node root{PathWord::empty_at(a.initial()), a.initial(), GroupVector::zero(a.spec()), {}};
  root.configs.emplace_back(a.initial(), root.sum);
  std::vector<Node> level{std::move(root)};
  std::size_t nodes = 1;
  std::size_t complete_len = 0;  // all accepting paths of length <= this were folded in
  bool exhausted = false;
  bool aborted = false;
  for (std::size_t len = 0; !aborted; ++len) {
    std::vector<Node> next;
    for (const Node& n : level) {
      if (nodes > opt.node_guard) {
        aborted = true;  // this level is only partially folded
        break;
      }
      if (n.at == a.terminal() && n.sum.is_zero()) chain = chain.insert(n.path);
      if (chain.dominates_member(n.path)) continue;
      if (len == opt.max_len) continue;
      for (EdgeId e : a.out_edges(n.at)) {
        const Edge& ed = a.edge(e);
        GroupVector sum2 = n.sum + ed.label;
        bool revisit = false;
        for (const auto& [v, s] : n.configs)
          if (v == ed.dst && s == sum2) {
            revisit = true;
            break;
          }
        if (revisit) continue;
        ++nodes;
        Node child{n.path, ed.dst, sum2, n.configs};
        child.path.edges.push_back(e);
        child.configs.emplace_back(ed.dst, std::move(sum2));
        next.push_back(std::move(child));
      }
    }
    if (aborted) {
      complete_len = (len == 0) ? 0 : len - 1;
      break;
    }
    complete_len = len;
    if (next.empty()) {
      // every branch ended in a prune, not in a cap: the antichain is the
      // full minimal set
      exhausted = (len < opt.max_len);
      break;
    }
    level = std::move(next);
  }
  MinimalPathSet out;
  out.certified = exhausted;
  out.explored_len = complete_len;
  for (const PathWord& p : chain.elements())
    if (exhausted || p.size() <= complete_len) out.paths.push_back(p);
  return out;
}

// Block decomposition of a dominating accepting path: alpha = a_0 e_1 a_1
// ... e_n a_n along the greedy-leftmost embedding of mu.
struct DominationWitness {
  Embedding embedding;
  std::vector<PathWord> blocks;  // n + 1 closed blocks
};

inline std::optional<DominationWitness> dominates(const GAutomaton& a, const PathWord& alpha, const PathWord& mu) {
  auto emb = scattered_embedding(mu, alpha);
  if (!emb) return std::nullopt;
  DominationWitness w;
  w.embedding = *emb;
  std::size_t prev = 0;
  for (std::size_t i = 0; i <= mu.size(); ++i) {
    std::size_t end = (i < mu.size()) ? (*emb)[i] : alpha.size();
    std::optional<VertexId> anchor;
    if (i > 0)
      anchor = a.edge(mu.edges[i - 1]).dst;
    else if (!mu.empty())
      anchor = a.edge(mu.edges[0]).src;
    else if (!alpha.empty())
      anchor = path_source(a, alpha);
    else
      anchor = alpha.anchor ? alpha.anchor : mu.anchor;
    w.blocks.push_back(path_slice(a, alpha, prev, end - prev, anchor));
    prev = end + 1;
  }
  return w;
}

struct PumpConstant {
  std::size_t value = 1;
  bool certified = false;
};

// N = 1 + the maximum length of a minimal accepting path. An uncertified
// minimal set makes this a flagged lower bound.
inline PumpConstant pump_constant(const MinimalPathSet& minimal) {
  std::size_t longest = 0;
  for (const PathWord& p : minimal.paths) longest = std::max(longest, p.size());
  return PumpConstant{1 + longest, minimal.certified};
}

}  // namespace valence
