#pragma once

// One JSON document carries the automaton, the target group, and the
// choice of generators, so a pipeline run is a single file. Parsing
// normalizes multi-letter edges; emission writes the normalized form, so
// parse(emit(A)) == A.

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "valence/automaton.hpp"
#include "valence/errors.hpp"
#include "valence/path_engine.hpp"
#include "valence/target_group.hpp"

namespace valence {

using json = nlohmann::json;

inline json int_to_json(const Int& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

inline Int json_to_int(const json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw UsageError("expected an integer or a decimal string, got " + j.dump());
}

inline std::vector<Int> json_to_int_vector(const json& j) {
  if (!j.is_array()) throw UsageError("expected an array of integers, got " + j.dump());
  std::vector<Int> out;
  for (const json& x : j) out.push_back(json_to_int(x));
  return out;
}

inline json int_vector_to_json(const std::vector<Int>& v) {
  json out = json::array();
  for (const Int& x : v) out.push_back(int_to_json(x));
  return out;
}

inline AbelianSpec parse_abelian_spec(const json& j) {
  AbelianSpec spec;
  spec.free_rank = j.at("rank").get<std::size_t>();
  if (j.contains("torsion")) spec.torsion_moduli = json_to_int_vector(j.at("torsion"));
  spec.check();
  return spec;
}

inline json abelian_spec_to_json(const AbelianSpec& spec) {
  return json{{"rank", spec.free_rank}, {"torsion", int_vector_to_json(spec.torsion_moduli)}};
}

// --- target group ----------------------------------------------------------

inline FiniteGroupTable parse_finite_table(const json& j) {
  FiniteGroupTable f;
  for (const json& n : j.at("elements")) f.names.push_back(n.get<std::string>());
  for (const json& row : j.at("table")) {
    std::vector<int> r;
    for (const json& x : row) r.push_back(x.get<int>());
    f.table.push_back(std::move(r));
  }
  std::string id = j.at("identity").get<std::string>();
  auto it = std::find(f.names.begin(), f.names.end(), id);
  if (it == f.names.end()) throw UsageError("identity '" + id + "' is not an element");
  f.identity = static_cast<int>(it - f.names.begin());
  return f;
}

inline json finite_table_to_json(const FiniteGroupTable& f) {
  json rows = json::array();
  for (const auto& r : f.table) rows.push_back(r);
  return json{{"elements", f.names}, {"table", rows}, {"identity", f.names[f.identity]}};
}

inline TargetGroupSpec parse_target_group(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "abelian") return parse_abelian_spec(j);
  if (kind == "finite") return parse_finite_table(j);
  if (kind == "virtually_abelian") {
    VirtuallyAbelianSpec v;
    v.rank = j.at("rank").get<std::size_t>();
    v.point_group = parse_finite_table(j.at("point_group"));
    v.action.resize(v.point_group.names.size());
    const json& act = j.at("action");
    for (std::size_t f = 0; f < v.point_group.names.size(); ++f) {
      const json& mat = act.at(v.point_group.names[f]);
      IntMatrix m;
      for (const json& row : mat) m.push_back(json_to_int_vector(row));
      v.action[f] = std::move(m);
    }
    return v;
  }
  throw UsageError("unknown target group kind '" + kind + "'");
}

inline json target_group_to_json(const TargetGroupSpec& spec) {
  if (auto* a = std::get_if<AbelianSpec>(&spec)) {
    json out = abelian_spec_to_json(*a);
    out["kind"] = "abelian";
    return out;
  }
  if (auto* f = std::get_if<FiniteGroupTable>(&spec)) {
    json out = finite_table_to_json(*f);
    out["kind"] = "finite";
    return out;
  }
  const auto& v = std::get<VirtuallyAbelianSpec>(spec);
  json act = json::object();
  for (std::size_t f = 0; f < v.point_group.names.size(); ++f) {
    json mat = json::array();
    for (const IntRow& row : v.action[f]) mat.push_back(int_vector_to_json(row));
    act[v.point_group.names[f]] = std::move(mat);
  }
  return json{{"kind", "virtually_abelian"},
              {"rank", v.rank},
              {"point_group", finite_table_to_json(v.point_group)},
              {"action", std::move(act)}};
}

inline TargetGroupElement parse_element(const TargetGroup& g, const json& j) {
  if (std::holds_alternative<AbelianSpec>(g.spec()))
    return GroupVector(std::get<AbelianSpec>(g.spec()), json_to_int_vector(j));
  if (auto* f = std::get_if<FiniteGroupTable>(&g.spec())) {
    std::string name = j.get<std::string>();
    auto it = std::find(f->names.begin(), f->names.end(), name);
    if (it == f->names.end()) throw UsageError("unknown finite group element '" + name + "'");
    return static_cast<int>(it - f->names.begin());
  }
  const auto& spec = std::get<VirtuallyAbelianSpec>(g.spec());
  VaElement e;
  e.translation = json_to_int_vector(j.at("v"));
  if (e.translation.size() != spec.rank) throw UsageError("element translation has wrong rank");
  std::string name = j.at("f").get<std::string>();
  auto it = std::find(spec.point_group.names.begin(), spec.point_group.names.end(), name);
  if (it == spec.point_group.names.end()) throw UsageError("unknown point element '" + name + "'");
  e.point = static_cast<int>(it - spec.point_group.names.begin());
  return e;
}

inline json element_to_json(const TargetGroup& g, const TargetGroupElement& e) {
  if (auto* gv = std::get_if<GroupVector>(&e)) return int_vector_to_json(gv->coords());
  if (auto* id = std::get_if<int>(&e)) return std::get<FiniteGroupTable>(g.spec()).names[*id];
  const auto& va = std::get<VaElement>(e);
  return json{{"v", int_vector_to_json(va.translation)},
              {"f", std::get<VirtuallyAbelianSpec>(g.spec()).point_group.names[va.point]}};
}

// --- documents --------------------------------------------------------------

struct Document {
  RawAutomaton raw;
  GAutomaton automaton;
  std::optional<TargetGroup> group;
  std::optional<ChoiceOfGenerators> rho;
};

inline Document parse_document(const json& j) {
  RawAutomaton raw;
  raw.spec = parse_abelian_spec(j.at("spec"));
  for (const json& c : j.at("alphabet")) {
    std::string s = c.get<std::string>();
    if (s.size() != 1) throw UsageError("alphabet letters must be single characters, got '" + s + "'");
    raw.alphabet.push_back(s[0]);
  }
  for (const json& v : j.at("vertices")) raw.vertices.push_back(v.get<std::string>());
  for (const json& e : j.at("edges")) {
    RawEdge edge;
    edge.name = e.at("id").get<std::string>();
    edge.src = e.at("src").get<std::string>();
    edge.dst = e.at("dst").get<std::string>();
    edge.g = json_to_int_vector(e.at("g"));
    edge.sigma = e.value("sigma", std::string());
    raw.edges.push_back(std::move(edge));
  }
  raw.init = j.at("init").get<std::string>();
  raw.ter = j.at("ter").get<std::string>();

  Document doc{raw, subdivide_normalize(raw), std::nullopt, std::nullopt};
  if (j.contains("target_group") != j.contains("rho"))
    throw UsageError("target_group and rho must be given together");
  if (j.contains("target_group")) {
    doc.group = TargetGroup(parse_target_group(j.at("target_group")));
    std::vector<std::pair<char, TargetGroupElement>> images;
    const json& rho = j.at("rho");
    for (char c : doc.automaton.alphabet()) {
      std::string key(1, c);
      if (!rho.contains(key)) throw UsageError(std::string("rho is missing letter '") + c + "'");
      images.emplace_back(c, parse_element(*doc.group, rho.at(key)));
    }
    if (rho.size() != doc.automaton.alphabet().size())
      throw UsageError("rho maps letters outside the alphabet");
    doc.rho = ChoiceOfGenerators(*doc.group, std::move(images));
  }
  return doc;
}

inline json automaton_to_json(const GAutomaton& a) {
  json edges = json::array();
  for (EdgeId e = 0; e < a.num_edges(); ++e) {
    const Edge& ed = a.edge(e);
    edges.push_back(json{{"id", ed.name},
                         {"src", a.vertex_name(ed.src)},
                         {"dst", a.vertex_name(ed.dst)},
                         {"g", int_vector_to_json(ed.label.coords())},
                         {"sigma", ed.sigma}});
  }
  json alphabet = json::array();
  for (char c : a.alphabet()) alphabet.push_back(std::string(1, c));
  json vertices = json::array();
  for (VertexId v = 0; v < a.num_vertices(); ++v) vertices.push_back(a.vertex_name(v));
  return json{{"spec", abelian_spec_to_json(a.spec())}, {"alphabet", std::move(alphabet)},
              {"vertices", std::move(vertices)},        {"edges", std::move(edges)},
              {"init", a.vertex_name(a.initial())},     {"ter", a.vertex_name(a.terminal())}};
}

inline json document_to_json(const Document& doc) {
  json out = automaton_to_json(doc.automaton);
  if (doc.group) {
    out["target_group"] = target_group_to_json(doc.group->spec());
    json rho = json::object();
    for (char c : doc.rho->alphabet()) rho[std::string(1, c)] = element_to_json(*doc.group, doc.rho->image(c));
    out["rho"] = std::move(rho);
  }
  return out;
}

inline Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError("malformed JSON in '" + path + "': " + e.what());
  }
  try {
    return parse_document(j);
  } catch (const json::exception& e) {
    throw UsageError("invalid document '" + path + "': " + e.what());
  }
}

// --- report fragments -------------------------------------------------------

inline json path_to_json(const GAutomaton& a, const PathWord& p) {
  json edges = json::array();
  for (EdgeId e : p.edges) edges.push_back(a.edge(e).name);
  json out{{"edges", std::move(edges)}};
  if (p.empty() && p.anchor) out["anchor"] = a.vertex_name(*p.anchor);
  return out;
}

inline PathWord json_to_path(const GAutomaton& a, const json& j) {
  PathWord p;
  for (const json& e : j.at("edges")) p.edges.push_back(a.edge_id(e.get<std::string>()));
  if (p.edges.empty() && j.contains("anchor")) p.anchor = a.vertex_id(j.at("anchor").get<std::string>());
  return p;
}

inline json verdict_to_json(const GAutomaton& a, const Verdict& v) {
  json out{{"kind", v.yes() ? "yes" : v.no() ? "no" : "unknown"}};
  if (v.witness) out["witness"] = path_to_json(a, *v.witness);
  if (!v.reason.empty()) out["reason"] = v.reason;
  return out;
}

}  // namespace valence
