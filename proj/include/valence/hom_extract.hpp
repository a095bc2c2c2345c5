#pragma once

// From an explored window of M(mu, p) to the extracted surjection: G(mu, p)
// is generated by the register values of the window's loops, H(mu, p) by
// their rho-images, and the homomorphism sends a register value g = sum of
// c_i * g_i to the product of h_i^{c_i}. The image of an abelian group is
// abelian, so the product order is immaterial. Well-definedness is exactly
// the word-problem contract; it is audited on sampled equal-value loop
// pairs rather than assumed.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "valence/automaton.hpp"
#include "valence/errors.hpp"
#include "valence/lattice.hpp"
#include "valence/pumpable.hpp"
#include "valence/target_group.hpp"

namespace valence {

struct GenPair {
  GroupVector g;
  TargetGroupElement h;
  PathWord witness;
};

struct StabilizationRound {
  std::size_t explore_len = 0;
  std::size_t members = 0;
  bool changed = true;
};

struct ExtractedHom {
  PathWord mu;
  VertexId p = 0;
  std::vector<GenPair> gen_pairs;  // deduped by (g, h), shortest witness kept
  LatticeSubgroup g_sub;
  std::vector<TargetGroupElement> h_gens;
  std::vector<PathWord> window;  // the explored members, for audits
  std::size_t explore_len = 0;
  std::vector<StabilizationRound> history;
  bool stabilized = false;
};

struct ExtractSchedule {
  std::size_t start_len = 1;
  std::size_t step = 1;
  std::size_t max_len = 6;
  std::size_t stall = 2;  // consecutive unchanged rounds before stopping
};

namespace detail {

inline void refresh_subgroups(const GAutomaton& a, const ChoiceOfGenerators& rho, ExtractedHom& hom) {
  std::vector<GroupVector> gs;
  std::vector<TargetGroupElement> hs;
  for (const GenPair& gp : hom.gen_pairs) {
    gs.push_back(gp.g);
    hs.push_back(gp.h);
  }
  hom.g_sub = canonical_basis(a.spec(), gs);
  hom.h_gens = std::move(hs);
  (void)rho;
}

}  // namespace detail

// Enumerate M(mu, p) at growing exploration lengths until both the register
// subgroup and the target subgroup stop changing for `stall` consecutive
// rounds. The paper gives no a-priori bound, so stabilization is a
// heuristic and reported as such; end-to-end sufficiency is certified
// against concrete ball elements by the coset cover.
inline ExtractedHom extract(const GAutomaton& a, const ChoiceOfGenerators& rho, const PathWord& mu, VertexId p,
                            const ExtractSchedule& schedule = {}, const SearchMode& mode = SearchMode::exact()) {
  ExtractedHom hom;
  hom.mu = mu;
  hom.p = p;
  std::string prev_fp;
  std::size_t unchanged = 0;
  for (std::size_t len = schedule.start_len;; len += schedule.step) {
    MonoidView view = enumerate_M(a, mu, p, len, mode);
    std::map<std::pair<std::vector<Int>, TargetGroupElement>, PathWord> pairs;
    for (const PathWord& sigma : view.members) {
      GroupVector g = path_weight(a, sigma);
      TargetGroupElement h = rho.evaluate_word(path_sigma(a, sigma));
      pairs.emplace(std::make_pair(g.coords(), std::move(h)), sigma);  // members arrive shortest-first
    }
    hom.gen_pairs.clear();
    for (auto& [key, witness] : pairs)
      hom.gen_pairs.push_back(GenPair{GroupVector(a.spec(), key.first), key.second, witness});
    detail::refresh_subgroups(a, rho, hom);
    hom.window = view.members;
    hom.explore_len = len;

    std::string fp = SubgroupOracle(rho.group(), hom.h_gens).fingerprint();
    for (const IntRow& r : hom.g_sub.basis()) {
      fp += "|";
      for (const Int& x : r) fp += x.str() + ",";
    }
    bool changed = (fp != prev_fp);
    prev_fp = std::move(fp);
    unchanged = changed ? 0 : unchanged + 1;
    hom.history.push_back(StabilizationRound{len, view.members.size(), changed});
    if (unchanged >= schedule.stall) {
      hom.stabilized = true;
      break;
    }
    if (len >= schedule.max_len) break;
  }
  return hom;
}

// Adjoin one certified member of M(mu, p); used when a coset check meets a
// loop outside the explored window. Monotone: subgroups only grow.
inline void absorb_loop(ExtractedHom& hom, const GAutomaton& a, const ChoiceOfGenerators& rho,
                        const PathWord& loop) {
  GroupVector g = path_weight(a, loop);
  TargetGroupElement h = rho.evaluate_word(path_sigma(a, loop));
  for (const GenPair& gp : hom.gen_pairs)
    if (gp.g == g && gp.h == h) return;
  hom.gen_pairs.push_back(GenPair{std::move(g), std::move(h), loop});
  std::sort(hom.gen_pairs.begin(), hom.gen_pairs.end(), [](const GenPair& x, const GenPair& y) {
    if (!(x.g == y.g)) return x.g < y.g;
    return x.h < y.h;
  });
  hom.window.push_back(loop);
  detail::refresh_subgroups(a, rho, hom);
}

// f~(g) for g in G(mu, p): solve g = sum c_i g_i over the integers and
// return the product of h_i^{c_i}. Well-definedness across solutions is
// Lemma-3.1 territory and is audited, not assumed.
inline TargetGroupElement hom_apply(const ExtractedHom& hom, const TargetGroup& group, const GroupVector& g) {
  if (!hom.g_sub.contains(g)) throw UsageError("element is outside G(mu, p)");
  std::vector<GroupVector> gens;
  for (const GenPair& gp : hom.gen_pairs) gens.push_back(gp.g);
  auto coeffs = solve_in_span(g.spec(), gens, g);
  if (!coeffs) throw ContractViolation("membership holds but no integer solution found");
  TargetGroupElement acc = group.identity();
  for (std::size_t i = 0; i < coeffs->size(); ++i) {
    if ((*coeffs)[i] == 0) continue;
    acc = group.mul(acc, group.pow(hom.gen_pairs[i].h, (*coeffs)[i]));
  }
  return acc;
}

struct AuditViolation {
  PathWord loop1;
  PathWord loop2;
  std::string detail;
};

struct AuditReport {
  std::size_t pairs_checked = 0;
  std::uint64_t seed = 0;
  std::optional<AuditViolation> violation;

  bool ok() const { return !violation.has_value(); }
  void require_ok() const {
    if (violation) throw ContractViolation("well-definedness audit failed: " + violation->detail);
  }
};

// Sample pairs of explored loops with equal register value and check their
// rho-images agree. A violation falsifies L(A) = WP_rho(H).
inline AuditReport audit_well_defined(const GAutomaton& a, const ChoiceOfGenerators& rho, const ExtractedHom& hom,
                                      std::size_t samples, std::uint64_t seed = 0) {
  AuditReport report;
  report.seed = seed;
  std::map<std::vector<Int>, std::vector<std::size_t>> by_value;
  for (std::size_t i = 0; i < hom.window.size(); ++i)
    by_value[path_weight(a, hom.window[i]).coords()].push_back(i);
  std::vector<const std::vector<std::size_t>*> groups;
  for (const auto& [val, idxs] : by_value)
    if (idxs.size() >= 2) groups.push_back(&idxs);
  if (groups.empty()) return report;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto& idxs = *groups[rng() % groups.size()];
    std::size_t i = idxs[rng() % idxs.size()];
    std::size_t j = idxs[rng() % idxs.size()];
    const PathWord& s1 = hom.window[i];
    const PathWord& s2 = hom.window[j];
    ++report.pairs_checked;
    TargetGroupElement h1 = rho.evaluate_word(path_sigma(a, s1));
    TargetGroupElement h2 = rho.evaluate_word(path_sigma(a, s2));
    if (!(h1 == h2)) {
      report.violation = AuditViolation{s1, s2,
                                        "loops " + path_str(a, s1) + " and " + path_str(a, s2) +
                                            " share register value " + path_weight(a, s1).str() +
                                            " but map to different target elements"};
      return report;
    }
  }
  return report;
}

// Index of H(mu, p) in H, from the explored generators.
inline std::optional<Int> image_index(const ExtractedHom& hom, const TargetGroup& group) {
  return subgroup_index_in_H(group, hom.h_gens);
}

}  // namespace valence
