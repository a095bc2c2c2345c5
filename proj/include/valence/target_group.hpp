#pragma once

// Computable oracles for the finitely generated target group H: normal
// forms, word evaluation, ball enumeration with shortest witnesses, and
// exact finite-index decisions for subgroups. Three kinds of H are
// supported: f.g. abelian, finite (by multiplication table), and virtually
// abelian Z^m x| F with F acting by unimodular integer matrices.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "valence/abelian.hpp"
#include "valence/bigint.hpp"
#include "valence/errors.hpp"
#include "valence/lattice.hpp"

namespace valence {

struct FiniteGroupTable {
  std::vector<std::string> names;
  std::vector<std::vector<int>> table;  // table[a][b] = a * b
  int identity = 0;

  int order() const { return static_cast<int>(names.size()); }

  int mul(int a, int b) const { return table[a][b]; }

  int inverse(int a) const {
    for (int b = 0; b < order(); ++b)
      if (mul(a, b) == identity) return b;
    throw UsageError("element without inverse in finite group table");
  }

  void check() const {
    const int n = order();
    if (n == 0) throw UsageError("empty finite group table");
    if (static_cast<int>(table.size()) != n) throw UsageError("finite group table is not square");
    for (const auto& row : table) {
      if (static_cast<int>(row.size()) != n) throw UsageError("finite group table is not square");
      for (int x : row)
        if (x < 0 || x >= n) throw UsageError("finite group table entry out of range");
    }
    if (identity < 0 || identity >= n) throw UsageError("identity id out of range");
    for (int a = 0; a < n; ++a)
      if (mul(identity, a) != a || mul(a, identity) != a) throw UsageError("identity axiom fails in table");
    for (int a = 0; a < n; ++a) inverse(a);  // throws when missing
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw UsageError("associativity fails in table");
  }

  friend bool operator==(const FiniteGroupTable&, const FiniteGroupTable&) = default;
};

struct VirtuallyAbelianSpec {
  std::size_t rank = 0;          // translation rank m
  FiniteGroupTable point_group;  // F
  std::vector<IntMatrix> action;  // per F element, an m x m integer matrix

  void check() const {
    point_group.check();
    if (action.size() != point_group.names.size()) throw UsageError("action must list one matrix per point element");
    for (const IntMatrix& mat : action) {
      if (mat.size() != rank) throw UsageError("action matrix has wrong shape");
      for (const IntRow& row : mat)
        if (row.size() != rank) throw UsageError("action matrix has wrong shape");
      HnfResult h = row_hnf(mat, rank);
      Int det = 1;
      for (std::size_t i = 0; i < h.h.size(); ++i) det *= h.h[i][h.pivots[i]];
      if (h.h.size() != rank || det != 1) throw UsageError("action matrix is not invertible over the integers");
    }
    for (int f = 0; f < point_group.order(); ++f)
      for (int g = 0; g < point_group.order(); ++g)
        if (mat_mul(action[f], action[g]) != action[point_group.mul(f, g)])
          throw UsageError("action does not respect point group multiplication");
  }

  static IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.size();
    IntMatrix c(n, IntRow(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (a[i][k] != 0)
          for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
  }

  static IntRow mat_apply(const IntMatrix& a, const IntRow& v) {
    IntRow out(a.size(), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
    return out;
  }

  friend bool operator==(const VirtuallyAbelianSpec&, const VirtuallyAbelianSpec&) = default;
};

struct VaElement {
  IntRow translation;
  int point = 0;

  friend bool operator==(const VaElement&, const VaElement&) = default;
  friend bool operator<(const VaElement& a, const VaElement& b) {
    return std::tie(a.point, a.translation) < std::tie(b.point, b.translation);
  }
};

using TargetGroupSpec = std::variant<AbelianSpec, FiniteGroupTable, VirtuallyAbelianSpec>;
using TargetGroupElement = std::variant<GroupVector, int, VaElement>;

class TargetGroup {
 public:
  explicit TargetGroup(TargetGroupSpec spec) : spec_(std::move(spec)) {
    if (auto* a = std::get_if<AbelianSpec>(&spec_)) a->check();
    if (auto* f = std::get_if<FiniteGroupTable>(&spec_)) f->check();
    if (auto* v = std::get_if<VirtuallyAbelianSpec>(&spec_)) v->check();
  }

  const TargetGroupSpec& spec() const { return spec_; }

  TargetGroupElement identity() const {
    if (auto* a = std::get_if<AbelianSpec>(&spec_)) return GroupVector::zero(*a);
    if (auto* f = std::get_if<FiniteGroupTable>(&spec_)) return f->identity;
    const auto& v = std::get<VirtuallyAbelianSpec>(spec_);
    return VaElement{IntRow(v.rank, Int(0)), v.point_group.identity};
  }

  TargetGroupElement mul(const TargetGroupElement& x, const TargetGroupElement& y) const {
    if (std::holds_alternative<AbelianSpec>(spec_)) return std::get<GroupVector>(x) + std::get<GroupVector>(y);
    if (auto* f = std::get_if<FiniteGroupTable>(&spec_)) return f->mul(std::get<int>(x), std::get<int>(y));
    const auto& spec = std::get<VirtuallyAbelianSpec>(spec_);
    const auto& a = std::get<VaElement>(x);
    const auto& b = std::get<VaElement>(y);
    IntRow t = VirtuallyAbelianSpec::mat_apply(spec.action[a.point], b.translation);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += a.translation[i];
    return VaElement{std::move(t), spec.point_group.mul(a.point, b.point)};
  }

  TargetGroupElement inv(const TargetGroupElement& x) const {
    if (std::holds_alternative<AbelianSpec>(spec_)) return -std::get<GroupVector>(x);
    if (auto* f = std::get_if<FiniteGroupTable>(&spec_)) return f->inverse(std::get<int>(x));
    const auto& spec = std::get<VirtuallyAbelianSpec>(spec_);
    const auto& a = std::get<VaElement>(x);
    int pinv = spec.point_group.inverse(a.point);
    IntRow t = VirtuallyAbelianSpec::mat_apply(spec.action[pinv], a.translation);
    for (Int& c : t) c = -c;
    return VaElement{std::move(t), pinv};
  }

  TargetGroupElement pow(TargetGroupElement x, Int e) const {
    if (e < 0) {
      x = inv(x);
      e = -e;
    }
    TargetGroupElement acc = identity();
    while (e > 0) {  // e stays desk-scale; simple repeated squaring
      if ((e & 1) != 0) acc = mul(acc, x);
      e >>= 1;
      if (e > 0) x = mul(x, x);
    }
    return acc;
  }

  bool is_identity(const TargetGroupElement& x) const { return x == identity(); }

  std::string str(const TargetGroupElement& x) const {
    if (auto* gv = std::get_if<GroupVector>(&x)) return gv->str();
    if (auto* id = std::get_if<int>(&x)) return std::get<FiniteGroupTable>(spec_).names[*id];
    const auto& va = std::get<VaElement>(x);
    std::string s = "(";
    for (std::size_t i = 0; i < va.translation.size(); ++i) {
      if (i) s += ",";
      s += va.translation[i].str();
    }
    return s + ";" + std::get<VirtuallyAbelianSpec>(spec_).point_group.names[va.point] + ")";
  }

  friend bool operator==(const TargetGroup& a, const TargetGroup& b) { return a.spec_ == b.spec_; }

 private:
  TargetGroupSpec spec_;
};

// Surjective monoid homomorphism rho: Sigma* -> H by letter images. The
// alphabet must be inverse-closed: every letter needs a letter carrying the
// inverse image (lexicographically least match is the designated inverse).
class ChoiceOfGenerators {
 public:
  ChoiceOfGenerators(TargetGroup group, std::vector<std::pair<char, TargetGroupElement>> images)
      : group_(std::move(group)) {
    for (auto& [c, e] : images) {
      if (images_.count(c)) throw UsageError(std::string("duplicate letter '") + c + "'");
      alphabet_.push_back(c);
      images_.emplace(c, std::move(e));
    }
    std::sort(alphabet_.begin(), alphabet_.end());
    for (char c : alphabet_) {
      TargetGroupElement want = group_.inv(images_.at(c));
      bool found = false;
      for (char d : alphabet_) {
        if (images_.at(d) == want) {
          inverse_letter_.emplace(c, d);
          found = true;
          break;
        }
      }
      if (!found) throw UsageError(std::string("alphabet not inverse-closed: no inverse for letter '") + c + "'");
    }
    if (auto* f = std::get_if<FiniteGroupTable>(&group_.spec())) check_surjective_finite(*f);
  }

  const TargetGroup& group() const { return group_; }
  const std::vector<char>& alphabet() const { return alphabet_; }
  bool has_letter(char c) const { return images_.count(c) != 0; }

  const TargetGroupElement& image(char c) const {
    auto it = images_.find(c);
    if (it == images_.end()) throw UsageError(std::string("unknown letter '") + c + "'");
    return it->second;
  }

  char inverse_letter(char c) const {
    auto it = inverse_letter_.find(c);
    if (it == inverse_letter_.end()) throw UsageError(std::string("unknown letter '") + c + "'");
    return it->second;
  }

  TargetGroupElement evaluate_word(const std::string& w) const {
    TargetGroupElement acc = group_.identity();
    for (char c : w) acc = group_.mul(acc, image(c));
    return acc;
  }

  std::string inverse_word(const std::string& w) const {
    std::string out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse_letter(*it));
    return out;
  }

 private:
  void check_surjective_finite(const FiniteGroupTable& f) const {
    std::vector<bool> seen(f.names.size(), false);
    seen[f.identity] = true;
    std::vector<int> queue{f.identity};
    while (!queue.empty()) {
      int x = queue.back();
      queue.pop_back();
      for (char c : alphabet_) {
        int y = f.mul(x, std::get<int>(images_.at(c)));
        if (!seen[y]) {
          seen[y] = true;
          queue.push_back(y);
        }
      }
    }
    for (bool s : seen)
      if (!s) throw UsageError("letter images do not generate the finite target group");
  }

  TargetGroup group_;
  std::vector<char> alphabet_;
  std::map<char, TargetGroupElement> images_;
  std::map<char, char> inverse_letter_;
};

inline TargetGroupElement evaluate_word(const ChoiceOfGenerators& rho, const std::string& w) {
  return rho.evaluate_word(w);
}

inline bool is_identity(const TargetGroup& g, const TargetGroupElement& x) { return g.is_identity(x); }

inline std::string inverse_word(const ChoiceOfGenerators& rho, const std::string& w) { return rho.inverse_word(w); }

// Elements reachable by words of length <= radius, each with its shortest
// witness word (ties broken lexicographically). Sorted by (witness length,
// witness word).
inline std::vector<std::pair<TargetGroupElement, std::string>> ball(const ChoiceOfGenerators& rho,
                                                                    std::size_t radius,
                                                                    std::size_t element_guard = 1000000) {
  std::map<TargetGroupElement, std::string> seen;
  std::vector<std::pair<TargetGroupElement, std::string>> out;
  std::vector<std::pair<std::string, TargetGroupElement>> level{{"", rho.group().identity()}};
  seen.emplace(rho.group().identity(), "");
  out.emplace_back(rho.group().identity(), "");
  for (std::size_t len = 1; len <= radius && !level.empty(); ++len) {
    std::vector<std::pair<std::string, TargetGroupElement>> next;
    for (const auto& [w, e] : level) {
      for (char c : rho.alphabet()) {
        TargetGroupElement e2 = rho.group().mul(e, rho.image(c));
        std::string w2 = w + c;
        if (seen.emplace(e2, w2).second) {
          if (seen.size() > element_guard) throw ResourceLimitError("ball enumeration exceeded element guard");
          out.emplace_back(e2, w2);
          next.emplace_back(std::move(w2), std::move(e2));
        }
      }
    }
    std::sort(next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

// Exact membership and index oracle for the subgroup generated by `gens`.
class SubgroupOracle {
 public:
  SubgroupOracle(const TargetGroup& group, std::vector<TargetGroupElement> gens) : group_(group) {
    if (auto* a = std::get_if<AbelianSpec>(&group.spec())) {
      std::vector<GroupVector> vs;
      for (const auto& g : gens) vs.push_back(std::get<GroupVector>(g));
      lattice_ = canonical_basis(*a, vs);
    } else if (auto* f = std::get_if<FiniteGroupTable>(&group.spec())) {
      std::vector<bool> seen(f->names.size(), false);
      seen[f->identity] = true;
      std::vector<int> queue{f->identity};
      while (!queue.empty()) {
        int x = queue.back();
        queue.pop_back();
        for (const auto& g : gens) {
          int y = f->mul(x, std::get<int>(g));
          if (!seen[y]) {
            seen[y] = true;
            queue.push_back(y);
          }
        }
      }
      for (int i = 0; i < f->order(); ++i)
        if (seen[i]) closure_.push_back(i);
    } else {
      build_virtually_abelian(std::get<VirtuallyAbelianSpec>(group.spec()), gens);
    }
  }

  bool contains(const TargetGroupElement& x) const {
    if (std::holds_alternative<AbelianSpec>(group_.spec())) return lattice_.contains(std::get<GroupVector>(x));
    if (std::holds_alternative<FiniteGroupTable>(group_.spec()))
      return std::binary_search(closure_.begin(), closure_.end(), std::get<int>(x));
    const auto& e = std::get<VaElement>(x);
    auto it = transversal_.find(e.point);
    if (it == transversal_.end()) return false;
    IntRow diff = e.translation;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= it->second.translation[i];
    AbelianSpec free{std::get<VirtuallyAbelianSpec>(group_.spec()).rank, {}};
    return translation_lattice_.contains(GroupVector(free, std::move(diff)));
  }

  // Canonical description of the generated subgroup, independent of the
  // generating set: equal fingerprints iff equal subgroups.
  std::string fingerprint() const {
    std::string s;
    auto put_rows = [&s](const IntMatrix& rows) {
      for (const IntRow& r : rows) {
        for (const Int& x : r) s += x.str() + ",";
        s += ";";
      }
    };
    if (std::holds_alternative<AbelianSpec>(group_.spec())) {
      put_rows(lattice_.basis());
      return s;
    }
    if (std::holds_alternative<FiniteGroupTable>(group_.spec())) {
      for (int x : closure_) s += std::to_string(x) + ",";
      return s;
    }
    put_rows(translation_lattice_.basis());
    AbelianSpec free{std::get<VirtuallyAbelianSpec>(group_.spec()).rank, {}};
    for (const auto& [f, t] : transversal_) {
      s += std::to_string(f) + ":";
      GroupVector rep = translation_lattice_.coset_rep(GroupVector(free, t.translation));
      s += rep.str() + ";";
    }
    return s;
  }

  // Index of the subgroup in the whole group; nullopt = infinite.
  std::optional<Int> index() const {
    if (std::holds_alternative<AbelianSpec>(group_.spec())) return lattice_.index_in_ambient();
    if (auto* f = std::get_if<FiniteGroupTable>(&group_.spec()))
      return Int(f->order()) / Int(closure_.size());
    auto lat = translation_lattice_.index_in_ambient();
    if (!lat) return std::nullopt;
    const auto& spec = std::get<VirtuallyAbelianSpec>(group_.spec());
    return Int(spec.point_group.order()) / Int(transversal_.size()) * *lat;
  }

 private:
  // Reidemeister-Schreier: transversal over the reachable point parts, then
  // Schreier generators span the translation sublattice S n Z^m.
  void build_virtually_abelian(const VirtuallyAbelianSpec& spec, const std::vector<TargetGroupElement>& gens) {
    transversal_.emplace(spec.point_group.identity, VaElement{IntRow(spec.rank, Int(0)), spec.point_group.identity});
    std::vector<int> queue{spec.point_group.identity};
    while (!queue.empty()) {
      int f = queue.front();
      queue.erase(queue.begin());
      for (const auto& g : gens) {
        VaElement u = std::get<VaElement>(group_.mul(transversal_.at(f), g));
        if (!transversal_.count(u.point)) {
          queue.push_back(u.point);
          transversal_.emplace(u.point, std::move(u));
        }
      }
    }
    AbelianSpec free{spec.rank, {}};
    std::vector<GroupVector> schreier;
    for (const auto& [f, t] : transversal_) {
      for (const auto& g : gens) {
        TargetGroupElement u = group_.mul(t, g);
        const VaElement& ue = std::get<VaElement>(u);
        TargetGroupElement z = group_.mul(u, group_.inv(transversal_.at(ue.point)));
        schreier.emplace_back(free, std::get<VaElement>(z).translation);
      }
    }
    translation_lattice_ = canonical_basis(free, schreier);
  }

  TargetGroup group_;
  LatticeSubgroup lattice_;            // abelian case
  std::vector<int> closure_;           // finite case, sorted ids
  std::map<int, VaElement> transversal_;  // virtually abelian case
  LatticeSubgroup translation_lattice_;
};

inline std::optional<Int> subgroup_index_in_H(const TargetGroup& group, const std::vector<TargetGroupElement>& gens) {
  return SubgroupOracle(group, gens).index();
}

}  // namespace valence
