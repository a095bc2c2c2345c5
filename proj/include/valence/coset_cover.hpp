#pragma once

// The main-theorem procedure. For h in H with witness word v: build
// w = (v vbar)^N for the pump constant N, find an accepting path spelling
// w, decompose it along a dominated minimal path, pick a v-segment that
// avoids every marker edge (guaranteed since N exceeds the marker count),
// shrink its flanks below |V|, and read off the coset h1^{-1} H(mu,p)
// h2^{-1} containing h. Covering a whole ball and selecting a finite-index
// H(mu, p) verifies the Neumann step on the explored data.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "valence/automaton.hpp"
#include "valence/errors.hpp"
#include "valence/hom_extract.hpp"
#include "valence/path_engine.hpp"
#include "valence/pumpable.hpp"
#include "valence/target_group.hpp"
#include "valence/wqo.hpp"

namespace valence {

struct CosetLocator {
  TargetGroupElement h;
  std::string v;
  std::string vbar;
  std::size_t pump_n = 1;
  bool provisional = false;  // minimal path set was not certified complete
  PathWord alpha;
  PathWord mu;
  VertexId p = 0;
  std::size_t segment_index = 0;  // which v-segment avoided all markers (1-based i)
  std::size_t block_index = 0;    // which block of the mu-decomposition holds it (j)
  PathWord omega;                 // the marker-free segment spelling v
  PathWord flank1, flank2;
  TargetGroupElement h1, h2;
  PumpWitness certificate;  // flank1 . omega . flank2 in M(mu, p)
  bool verified = false;    // oracle confirmed h1 h h2 in H(mu, p)
  bool augmented = false;   // the extraction window had to absorb the certified loop
};

struct CosetKey {
  PathWord mu;
  VertexId p = 0;
  TargetGroupElement h1, h2;

  friend bool operator<(const CosetKey& a, const CosetKey& b) {
    if (!(a.mu == b.mu)) return a.mu < b.mu;
    if (a.p != b.p) return a.p < b.p;
    if (!(a.h1 == b.h1)) return a.h1 < b.h1;
    return a.h2 < b.h2;
  }
  friend bool operator==(const CosetKey& a, const CosetKey& b) {
    return a.mu == b.mu && a.p == b.p && a.h1 == b.h1 && a.h2 == b.h2;
  }
};

struct CoverReport {
  std::size_t radius = 0;
  std::size_t pump_n = 1;
  bool provisional = false;
  std::vector<CosetLocator> locators;  // ball order
  std::vector<CosetKey> cosets;        // distinct, canonical order
  bool all_verified = false;
};

struct NeumannCandidate {
  PathWord mu;
  VertexId p = 0;
  std::optional<Int> index;  // nullopt = infinite on explored data
};

struct NeumannSelection {
  bool found = false;
  PathWord mu;
  VertexId p = 0;
  Int index = 0;
  std::vector<NeumannCandidate> table;
  std::string note;
};

struct PipelineOptions {
  std::size_t wp_check_len = 6;  // verify L(A) = WP on words up to this length
  MinimalPathOptions minimal;
  ExtractSchedule schedule;
  SearchMode mode = SearchMode::exact();
  std::size_t locate_radius_guard = 12;  // ball growth cap when locating by element
};

class PipelineSession {
 public:
  PipelineSession(GAutomaton automaton, ChoiceOfGenerators rho, PipelineOptions opt = {})
      : a_(std::move(automaton)), rho_(std::move(rho)), opt_(std::move(opt)) {
    check_wp_contract();
    minimal_ = minimal_accepting_paths(a_, opt_.minimal);
    if (minimal_.paths.empty())
      throw ContractViolation("no minimal accepting path found; the language looks empty, not a word problem");
    n_ = pump_constant(minimal_);
  }

  const GAutomaton& automaton() const { return a_; }
  const ChoiceOfGenerators& rho() const { return rho_; }
  const MinimalPathSet& minimal_paths() const { return minimal_; }
  const PumpConstant& pump() const { return n_; }

  const ExtractedHom& hom_at(const PathWord& mu, VertexId p) {
    auto key = std::make_pair(mu.edges, p);
    auto it = homs_.find(key);
    if (it == homs_.end())
      it = homs_.emplace(std::move(key), extract(a_, rho_, mu, p, opt_.schedule, opt_.mode)).first;
    return it->second;
  }

  CosetLocator locate_coset(const std::string& v) {
    CosetLocator loc;
    loc.h = rho_.evaluate_word(v);
    loc.v = v;
    loc.vbar = rho_.inverse_word(v);
    loc.pump_n = n_.value;
    loc.provisional = !n_.certified;

    std::string w;
    for (std::size_t i = 0; i < n_.value; ++i) w += v + loc.vbar;
    Verdict acc = accepts(a_, w, opt_.mode);
    if (!acc.yes())
      throw ContractViolation("no accepting path spells (v vbar)^N for v = '" + v +
                              "'; the automaton does not accept the word problem");
    loc.alpha = *acc.witness;

    // first minimal path dominated by alpha, in canonical order
    std::optional<DominationWitness> dom;
    for (const PathWord& mu : minimal_.paths) {
      dom = dominates(a_, loc.alpha, mu);
      if (dom) {
        loc.mu = mu;
        break;
      }
    }
    if (!dom)
      throw ContractViolation(n_.certified
                                  ? "accepting path dominates no minimal path; enumeration is inconsistent"
                                  : "accepting path dominates no explored minimal path; enlarge the exploration");

    // spans of the v-segments: segment k starts right after the last letter
    // of the preceding vbar and ends right after its own last letter
    std::vector<std::size_t> letter_pos;
    for (std::size_t pos = 0; pos < loc.alpha.size(); ++pos)
      if (!a_.edge(loc.alpha.edges[pos]).sigma.empty()) letter_pos.push_back(pos);
    if (letter_pos.size() != w.size()) throw ContractViolation("witness does not spell (v vbar)^N");
    const std::size_t piece = v.size() + loc.vbar.size();
    std::vector<std::pair<std::size_t, std::size_t>> v_spans;
    for (std::size_t k = 0; k < n_.value; ++k) {
      std::size_t start = (k == 0 || piece == 0) ? 0 : letter_pos[k * piece - 1] + 1;
      std::size_t end = v.empty() ? start : letter_pos[k * piece + v.size() - 1] + 1;
      v_spans.emplace_back(start, end);
    }

    // block spans of the mu-decomposition: markers sit between blocks
    std::vector<std::pair<std::size_t, std::size_t>> block_spans;
    {
      std::size_t prev = 0;
      for (std::size_t i = 0; i <= loc.mu.size(); ++i) {
        std::size_t end = (i < loc.mu.size()) ? dom->embedding[i] : loc.alpha.size();
        block_spans.emplace_back(prev, end);
        prev = end + 1;
      }
    }

    // counting argument, checked mechanically: N > n forces a marker-free
    // segment; pick smallest i, then smallest j
    bool found = false;
    for (std::size_t i = 0; i < v_spans.size() && !found; ++i) {
      for (std::size_t j = 0; j < block_spans.size() && !found; ++j) {
        if (block_spans[j].first <= v_spans[i].first && v_spans[i].second <= block_spans[j].second) {
          loc.segment_index = i + 1;
          loc.block_index = j;
          found = true;
        }
      }
    }
    if (!found)
      throw ContractViolation("no marker-free segment found although N exceeds the marker count");
    if (!(n_.value > loc.mu.size()))
      throw ContractViolation("pump constant does not exceed the dominated path length");

    const auto& bs = block_spans[loc.block_index];
    PathWord sigma = path_slice(a_, loc.alpha, bs.first, bs.second - bs.first,
                                loc.block_index == 0 ? path_source(a_, loc.alpha)
                                                     : a_.edge(loc.mu.edges[loc.block_index - 1]).dst);
    loc.p = path_source(a_, sigma);
    loc.omega = path_slice(a_, loc.alpha, v_spans[loc.segment_index - 1].first,
                           v_spans[loc.segment_index - 1].second - v_spans[loc.segment_index - 1].first, loc.p);
    if (path_sigma(a_, loc.omega) != v) throw ContractViolation("segment does not spell v");

    PumpWitness w0;
    w0.mu = loc.mu;
    w0.sigma = sigma;
    w0.alpha = loc.alpha;
    w0.blocks = dom->blocks;
    w0.block_index = loc.block_index;
    w0.sigma_offset = 0;
    w0.base = loc.p;
    if (!pump_witness_valid(a_, w0)) throw ContractViolation("block witness fails re-validation");

    PathWord omega_rel = loc.omega;  // omega as a subword of sigma
    ShrinkResult shrunk = shrink_with_witness(a_, w0, omega_rel);
    loc.flank1 = shrunk.flank1;
    loc.flank2 = shrunk.flank2;
    loc.certificate = shrunk.certificate;
    if (loc.flank1.size() >= a_.num_vertices() || loc.flank2.size() >= a_.num_vertices())
      throw ContractViolation("shrink left a flank of length >= |V|");
    loc.h1 = rho_.evaluate_word(path_sigma(a_, loc.flank1));
    loc.h2 = rho_.evaluate_word(path_sigma(a_, loc.flank2));

    // oracle check: h1 h h2 in H(mu, p); absorb the certified loop when the
    // explored window is too small to see it
    const TargetGroup& grp = rho_.group();
    TargetGroupElement probe = grp.mul(grp.mul(loc.h1, loc.h), loc.h2);
    auto key = std::make_pair(loc.mu.edges, loc.p);
    hom_at(loc.mu, loc.p);
    ExtractedHom& hom = homs_.at(key);
    if (!SubgroupOracle(grp, hom.h_gens).contains(probe)) {
      PathWord certified_loop = path_concat(a_, loc.flank1, path_concat(a_, loc.omega, loc.flank2));
      if (certified_loop.empty()) certified_loop.anchor = loc.p;
      absorb_loop(hom, a_, rho_, certified_loop);
      loc.augmented = true;
    }
    loc.verified = SubgroupOracle(grp, hom.h_gens).contains(probe);
    if (!loc.verified) throw ContractViolation("oracle rejected h1 h h2 in H(mu, p) after augmentation");
    return loc;
  }

  CosetLocator locate_coset_element(const TargetGroupElement& h) {
    for (std::size_t r = 0;; ++r) {
      if (r > opt_.locate_radius_guard)
        throw ResourceLimitError("element not reached within the ball radius guard");
      for (const auto& [elem, word] : ball(rho_, r))
        if (elem == h) return locate_coset(word);
    }
  }

  CoverReport cover_ball(std::size_t radius) {
    CoverReport report;
    report.radius = radius;
    report.pump_n = n_.value;
    report.provisional = !n_.certified;
    report.all_verified = true;
    for (const auto& [elem, word] : ball(rho_, radius)) {
      CosetLocator loc = locate_coset(word);
      report.all_verified = report.all_verified && loc.verified;
      report.cosets.push_back(CosetKey{loc.mu, loc.p, loc.h1, loc.h2});
      report.locators.push_back(std::move(loc));
    }
    std::sort(report.cosets.begin(), report.cosets.end());
    report.cosets.erase(std::unique(report.cosets.begin(), report.cosets.end()), report.cosets.end());
    return report;
  }

  // Among the (mu, p) used by the cover, pick one whose H(mu, p) has finite
  // index: smallest index, ties by canonical (mu, p) order. On explored
  // data this verifies Neumann's conclusion rather than proving it for all
  // of H.
  NeumannSelection neumann_select(const CoverReport& report) {
    NeumannSelection sel;
    std::vector<std::pair<PathWord, VertexId>> keys;
    for (const CosetKey& c : report.cosets) keys.emplace_back(c.mu, c.p);
    std::sort(keys.begin(), keys.end(), [](const auto& x, const auto& y) {
      if (!(x.first == y.first)) return x.first < y.first;
      return x.second < y.second;
    });
    keys.erase(std::unique(keys.begin(), keys.end(),
                           [](const auto& x, const auto& y) { return x.first == y.first && x.second == y.second; }),
               keys.end());
    for (const auto& [mu, p] : keys) {
      const ExtractedHom& hom = hom_at(mu, p);
      NeumannCandidate cand{mu, p, image_index(hom, rho_.group())};
      if (cand.index && (!sel.found || *cand.index < sel.index)) {
        sel.found = true;
        sel.mu = mu;
        sel.p = p;
        sel.index = *cand.index;
      }
      sel.table.push_back(std::move(cand));
    }
    if (!sel.found)
      sel.note = "no explored H(mu, p) has finite index; enlarge the exploration length or the ball radius";
    return sel;
  }

 private:
  void check_wp_contract() {
    std::vector<std::string> level{""};
    for (std::size_t len = 0; len <= opt_.wp_check_len; ++len) {
      for (const std::string& w : level) {
        bool in_language = accepts(a_, w, opt_.mode).yes();
        bool in_wp = rho_.group().is_identity(rho_.evaluate_word(w));
        if (in_language != in_wp)
          throw ContractViolation("word-problem contract violated at '" + w + "': automaton says " +
                                  (in_language ? "accept" : "reject") + ", oracle says " +
                                  (in_wp ? "identity" : "non-identity"));
      }
      if (len == opt_.wp_check_len) break;
      std::vector<std::string> next;
      for (const std::string& w : level)
        for (char c : rho_.alphabet()) next.push_back(w + c);
      level = std::move(next);
    }
  }

  GAutomaton a_;
  ChoiceOfGenerators rho_;
  PipelineOptions opt_;
  MinimalPathSet minimal_;
  PumpConstant n_;
  std::map<std::pair<std::vector<EdgeId>, VertexId>, ExtractedHom> homs_;
};

}  // namespace valence
