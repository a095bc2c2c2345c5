#pragma once

// Pumpable loops and the monoids M(mu, p): a closed path sigma is pumpable
// in a minimal accepting path mu when some accepting path dominating mu
// carries sigma as a contiguous block segment. M(mu, p) collects the
// pumpable loops based at p, plus the empty path. The witnesses here are
// constructive: concatenation merges two witnesses into one for sigma1
// sigma2, downward closure rebuilds a witness for any scattered subloop,
// and shrink trims a flank pair below |V| while re-certifying membership
// at every step.

#include <algorithm>
#include <optional>
#include <vector>

#include "valence/automaton.hpp"
#include "valence/errors.hpp"
#include "valence/path_engine.hpp"
#include "valence/wqo.hpp"

namespace valence {

struct PumpWitness {
  PathWord mu;
  PathWord sigma;
  PathWord alpha;
  std::vector<PathWord> blocks;  // |mu| + 1 closed blocks
  std::size_t block_index = 0;
  std::size_t sigma_offset = 0;  // offset of sigma inside blocks[block_index]
  VertexId base = 0;             // p = source of sigma
};

// Every stored witness re-validates: alpha accepts, interleaving the blocks
// with mu's edges rebuilds alpha, each block is closed at its decomposition
// vertex, and sigma sits contiguously at the recorded offset.
inline bool pump_witness_valid(const GAutomaton& a, const PumpWitness& w) {
  if (!path_is_valid(a, w.mu) || !path_is_valid(a, w.sigma) || !path_is_valid(a, w.alpha)) return false;
  if (!path_accepting(a, w.alpha)) return false;
  if (w.blocks.size() != w.mu.size() + 1 || w.block_index >= w.blocks.size()) return false;
  std::vector<EdgeId> rebuilt;
  for (std::size_t i = 0; i < w.blocks.size(); ++i) {
    rebuilt.insert(rebuilt.end(), w.blocks[i].edges.begin(), w.blocks[i].edges.end());
    if (i < w.mu.size()) rebuilt.push_back(w.mu.edges[i]);
  }
  if (rebuilt != w.alpha.edges) return false;
  for (std::size_t i = 0; i < w.blocks.size(); ++i) {
    if (!path_is_valid(a, w.blocks[i]) || !path_closed(a, w.blocks[i])) return false;
    if (!w.blocks[i].empty()) {
      VertexId expect = (i == 0) ? path_source(a, w.alpha.empty() ? w.mu : w.alpha)
                                 : a.edge(w.mu.edges[i - 1]).dst;
      if (path_source(a, w.blocks[i]) != expect) return false;
    }
  }
  const PathWord& blk = w.blocks[w.block_index];
  if (w.sigma_offset + w.sigma.size() > blk.size()) return false;
  for (std::size_t i = 0; i < w.sigma.size(); ++i)
    if (blk.edges[w.sigma_offset + i] != w.sigma.edges[i]) return false;
  if (!w.sigma.empty() && path_source(a, w.sigma) != w.base) return false;
  // block sums cancel: the mu edges already sum to zero
  GroupVector total = GroupVector::zero(a.spec());
  for (const PathWord& b : w.blocks) total = total + path_weight(a, b);
  return total.is_zero();
}

struct PumpVerdict {
  Verdict verdict;
  std::optional<PumpWitness> witness;
};

// Def 3.4 decision. Blocks are tried in increasing index order; the lowest
// feasible block wins.
inline PumpVerdict is_pumpable(const GAutomaton& a, const PathWord& sigma, const PathWord& mu,
                               const SearchMode& mode = SearchMode::exact()) {
  if (!path_is_valid(a, sigma) || !path_closed(a, sigma)) throw UsageError("sigma must be a closed path");
  if (!path_is_valid(a, mu) || !path_accepting(a, mu)) throw UsageError("mu must be an accepting path");
  if (sigma.empty()) {
    auto dom = dominates(a, mu, mu);
    PumpWitness w{mu, sigma, mu, dom->blocks, 0, 0, sigma.anchor ? *sigma.anchor : path_source(a, mu)};
    w.sigma.anchor = w.base;
    if (!pump_witness_valid(a, w)) throw ContractViolation("trivial pump witness fails re-validation");
    return PumpVerdict{Verdict::make_yes(w.alpha), std::move(w)};
  }
  bool saw_unknown = false;
  for (std::size_t j = 0; j <= mu.size(); ++j) {
    detail::ChainResult res = detail::chain_search(a, mu, sigma, j, mode);
    if (res.kind == VerdictKind::Yes) {
      PumpWitness w{mu, sigma, res.witness->alpha, res.witness->blocks, res.witness->block_index,
                    res.witness->sigma_offset, path_source(a, sigma)};
      if (!pump_witness_valid(a, w)) throw ContractViolation("pump witness fails re-validation");
      return PumpVerdict{Verdict::make_yes(w.alpha), std::move(w)};
    }
    if (res.kind == VerdictKind::Unknown) saw_unknown = true;
  }
  if (saw_unknown) return PumpVerdict{Verdict::make_unknown("bounded chain search exhausted its caps"), std::nullopt};
  return PumpVerdict{Verdict::make_no(), std::nullopt};
}

// Def 3.5 membership: pumpable and based at p, or the empty path.
inline PumpVerdict in_M(const GAutomaton& a, const PathWord& sigma, const PathWord& mu, VertexId p,
                        const SearchMode& mode = SearchMode::exact()) {
  if (sigma.empty()) {
    PathWord eps = PathWord::empty_at(p);
    return is_pumpable(a, eps, mu, mode);
  }
  if (!path_is_valid(a, sigma) || !path_closed(a, sigma)) throw UsageError("sigma must be a closed path");
  if (path_source(a, sigma) != p) {
    PumpVerdict out;
    out.verdict = Verdict::make_no();
    out.verdict.reason = "sigma is not based at p";
    return out;
  }
  return is_pumpable(a, sigma, mu, mode);
}

struct MonoidView {
  PathWord mu;
  VertexId p = 0;
  std::size_t explore_len = 0;
  std::vector<PathWord> members;      // canonical (length, lex) order, eps first
  std::vector<PumpWitness> witnesses;  // parallel to members
};

// Exactly the members of M(mu, p) of length <= explore_len. A window into a
// generally infinite monoid; downstream consumers must treat it as
// "members up to L", never the full M.
inline MonoidView enumerate_M(const GAutomaton& a, const PathWord& mu, VertexId p, std::size_t explore_len,
                              const SearchMode& mode = SearchMode::exact(), std::size_t path_guard = 200000) {
  MonoidView view;
  view.mu = mu;
  view.p = p;
  view.explore_len = explore_len;
  std::vector<PathWord> closed;
  std::size_t seen = 0;
  std::vector<EdgeId> stack;
  auto dfs = [&](auto&& self, VertexId v) -> void {
    if (++seen > path_guard) throw ResourceLimitError("loop enumeration exceeded its guard");
    if (v == p && !stack.empty()) closed.push_back(PathWord{stack});
    if (stack.size() == explore_len) return;
    for (EdgeId e : a.out_edges(v)) {
      stack.push_back(e);
      self(self, a.edge(e).dst);
      stack.pop_back();
    }
  };
  dfs(dfs, p);
  std::sort(closed.begin(), closed.end());
  PathWord eps = PathWord::empty_at(p);
  PumpVerdict eps_v = in_M(a, eps, mu, p, mode);
  if (eps_v.verdict.yes()) {
    view.members.push_back(eps);
    view.witnesses.push_back(std::move(*eps_v.witness));
  }
  for (const PathWord& sigma : closed) {
    PumpVerdict v = in_M(a, sigma, mu, p, mode);
    if (v.verdict.yes()) {
      view.members.push_back(sigma);
      view.witnesses.push_back(std::move(*v.witness));
    }
  }
  return view;
}

namespace detail {

inline void require_same_context(const GAutomaton& a, const PumpWitness& w1, const PumpWitness& w2) {
  if (!(w1.mu == w2.mu)) throw UsageError("witnesses certify different minimal paths");
  if (w1.base != w2.base) throw UsageError("witnesses are based at different vertices");
  if (!pump_witness_valid(a, w1) || !pump_witness_valid(a, w2))
    throw UsageError("witness fails validation before merging");
}

}  // namespace detail

// Lemma 3.6 merge: blockwise concatenation of the two dominating paths with
// sigma2 relocated next to sigma1 and the emptied flanks glued. The result
// is a permutation of the merged edge multiset, hence still accepting.
inline PumpWitness concat_witness(const GAutomaton& a, const PumpWitness& w1, const PumpWitness& w2) {
  detail::require_same_context(a, w1, w2);
  const std::size_t n = w1.mu.size();
  const std::size_t i = w1.block_index;
  const std::size_t j = w2.block_index;
  const VertexId p = w1.base;

  auto split3 = [&](const PumpWitness& w) {
    const PathWord& blk = w.blocks[w.block_index];
    PathWord pre = path_slice(a, blk, 0, w.sigma_offset,
                              blk.empty() ? blk.anchor : std::optional<VertexId>(path_source(a, blk)));
    PathWord mid = path_slice(a, blk, w.sigma_offset, w.sigma.size(), p);
    PathWord post = path_slice(a, blk, w.sigma_offset + w.sigma.size(),
                               blk.size() - w.sigma_offset - w.sigma.size(), p);
    return std::make_tuple(pre, mid, post);
  };
  auto [a_pre, s1, a_post] = split3(w1);
  auto [b_pre, s2, b_post] = split3(w2);

  PumpWitness out;
  out.mu = w1.mu;
  out.base = p;
  out.sigma = path_concat(a, w1.sigma, w2.sigma);
  if (out.sigma.empty()) out.sigma.anchor = p;
  out.block_index = i;
  out.sigma_offset = a_pre.size();
  for (std::size_t k = 0; k <= n; ++k) {
    PathWord block;
    if (k == i && i == j) {
      block = path_concat(a, a_pre, path_concat(a, out.sigma, path_concat(a, a_post, path_concat(a, b_pre, b_post))));
    } else if (k == i) {
      block = path_concat(a, a_pre, path_concat(a, out.sigma, path_concat(a, a_post, w2.blocks[k])));
    } else if (k == j) {
      block = path_concat(a, w1.blocks[k], path_concat(a, b_pre, b_post));
    } else {
      block = path_concat(a, w1.blocks[k], w2.blocks[k]);
    }
    if (block.empty() && !block.anchor)
      block.anchor = (k == 0) ? path_source(a, out.mu.empty() ? w1.alpha : out.mu) : a.edge(out.mu.edges[k - 1]).dst;
    out.blocks.push_back(std::move(block));
  }
  std::vector<EdgeId> alpha;
  for (std::size_t k = 0; k <= n; ++k) {
    alpha.insert(alpha.end(), out.blocks[k].edges.begin(), out.blocks[k].edges.end());
    if (k < n) alpha.push_back(out.mu.edges[k]);
  }
  out.alpha = PathWord{std::move(alpha)};
  if (out.alpha.empty()) out.alpha.anchor = w1.alpha.anchor;
  if (!pump_witness_valid(a, out)) throw ContractViolation("merged pump witness fails re-validation");
  return out;
}

// Lemma 3.7: given a witness for sigma and a closed tau <=_sc sigma based at
// the same vertex, square the witness and rebuild the sigma^2 span as
// tau . (s_0^2 e'_1 s_1^2 ... e'_k s_k^2), which has the same register sum.
inline PumpWitness downward_witness(const GAutomaton& a, const PumpWitness& w, const PathWord& tau) {
  if (!path_is_valid(a, tau) || !path_closed(a, tau)) throw UsageError("tau must be a closed path");
  if (!tau.empty() && path_source(a, tau) != w.base) throw UsageError("tau is not based at p");
  auto emb = scattered_embedding(tau, w.sigma);
  if (!emb) throw UsageError("tau is not a scattered subword of sigma");

  PumpWitness sq = concat_witness(a, w, w);  // witness for sigma^2
  // gaps of the embedding: sigma = s_0 e'_1 s_1 ... e'_k s_k
  std::vector<PathWord> gaps;
  std::size_t prev = 0;
  for (std::size_t t = 0; t <= tau.size(); ++t) {
    std::size_t end = (t < tau.size()) ? (*emb)[t] : w.sigma.size();
    std::optional<VertexId> anchor = (t == 0) ? w.base : a.edge(tau.edges[t - 1]).dst;
    gaps.push_back(path_slice(a, w.sigma, prev, end - prev, anchor));
    prev = end + 1;
  }
  PathWord replacement = tau;
  if (replacement.empty()) replacement.anchor = w.base;
  replacement = path_concat(a, replacement, path_concat(a, gaps[0], gaps[0]));
  for (std::size_t t = 1; t <= tau.size(); ++t) {
    PathWord marker{std::vector<EdgeId>{tau.edges[t - 1]}};
    replacement = path_concat(a, replacement, marker);
    replacement = path_concat(a, replacement, path_concat(a, gaps[t], gaps[t]));
  }
  if (replacement.size() != 2 * w.sigma.size())
    throw ContractViolation("downward replacement has unexpected length");

  PumpWitness out;
  out.mu = sq.mu;
  out.base = sq.base;
  out.sigma = tau;
  if (out.sigma.empty()) out.sigma.anchor = w.base;
  out.block_index = sq.block_index;
  out.sigma_offset = sq.sigma_offset;
  out.blocks = sq.blocks;
  const PathWord& blk = sq.blocks[sq.block_index];
  PathWord pre = path_slice(a, blk, 0, sq.sigma_offset,
                            blk.empty() ? blk.anchor : std::optional<VertexId>(path_source(a, blk)));
  PathWord post = path_slice(a, blk, sq.sigma_offset + sq.sigma.size(),
                             blk.size() - sq.sigma_offset - sq.sigma.size(), w.base);
  out.blocks[sq.block_index] = path_concat(a, pre, path_concat(a, replacement, post));
  std::vector<EdgeId> alpha;
  for (std::size_t k = 0; k < out.blocks.size(); ++k) {
    alpha.insert(alpha.end(), out.blocks[k].edges.begin(), out.blocks[k].edges.end());
    if (k < out.mu.size()) alpha.push_back(out.mu.edges[k]);
  }
  out.alpha = PathWord{std::move(alpha)};
  if (!pump_witness_valid(a, out)) throw ContractViolation("downward pump witness fails re-validation");
  return out;
}

struct ShrinkResult {
  PathWord flank1;
  PathWord flank2;
  PumpWitness certificate;  // witness for flank1 . omega . flank2 in M(mu, p)
};

// Lemma 3.8: trim the flanks of sigma around omega below |V| edges each.
// Any flank of length >= |V| revisits a vertex, so a closed subpath can be
// deleted; the trimmed loop is a scattered subword of the previous one and
// downward closure re-certifies it.
inline ShrinkResult shrink_with_witness(const GAutomaton& a, const PumpWitness& w, const PathWord& omega) {
  auto off = subword_offset(omega, w.sigma);
  if (!off) throw UsageError("omega is not a contiguous subword of sigma");
  const std::size_t nv = a.num_vertices();
  PathWord f1 = path_slice(a, w.sigma, 0, *off, w.base);
  PathWord f2 = path_slice(a, w.sigma, *off + omega.size(), w.sigma.size() - *off - omega.size(),
                           omega.empty() ? std::optional<VertexId>(w.base) : std::nullopt);
  if (f2.empty() && !f2.anchor) f2.anchor = w.base;
  PumpWitness cert = w;

  auto excise_first_repeat = [&](const PathWord& flank) -> PathWord {
    std::vector<VertexId> verts{path_source(a, flank)};
    for (EdgeId e : flank.edges) verts.push_back(a.edge(e).dst);
    for (std::size_t jj = 1; jj < verts.size(); ++jj)
      for (std::size_t ii = 0; ii < jj; ++ii)
        if (verts[ii] == verts[jj]) {
          PathWord trimmed;
          trimmed.edges.assign(flank.edges.begin(), flank.edges.begin() + ii);
          trimmed.edges.insert(trimmed.edges.end(), flank.edges.begin() + jj, flank.edges.end());
          if (trimmed.edges.empty()) trimmed.anchor = path_source(a, flank);
          return trimmed;
        }
    throw ContractViolation("flank of length >= |V| has no repeated vertex");
  };

  while (f1.size() >= nv || f2.size() >= nv) {
    bool first = f1.size() >= nv;
    PathWord trimmed = excise_first_repeat(first ? f1 : f2);
    PathWord tau = path_concat(a, first ? trimmed : f1, path_concat(a, omega, first ? f2 : trimmed));
    if (tau.empty()) tau.anchor = w.base;
    cert = downward_witness(a, cert, tau);
    (first ? f1 : f2) = std::move(trimmed);
  }
  return ShrinkResult{std::move(f1), std::move(f2), std::move(cert)};
}

inline ShrinkResult shrink(const GAutomaton& a, const PathWord& mu, VertexId p, const PathWord& sigma,
                           const PathWord& omega, const SearchMode& mode = SearchMode::exact()) {
  PumpVerdict v = in_M(a, sigma, mu, p, mode);
  if (!v.verdict.yes()) throw UsageError("sigma is not certified in M(mu, p)");
  return shrink_with_witness(a, *v.witness, omega);
}

}  // namespace valence
