// JSON description of an algebra structure: parsing, validation, and a
// deterministic echo used for hashing and round-trip checks.
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "infty/structure.hpp"

namespace infty {

using nlohmann::json;

struct AlgebraSpec {
  int schema = 1;
  std::string name;
  Structure S;
  int cap = 8;      // default weight cap
  int deg_lo = 0;   // default degree window
  int deg_hi = 6;
};

namespace detail {

inline const json& field(const json& j, const char* key,
                         const std::string& where) {
  auto it = j.find(key);
  require(it != j.end(), "ParseError",
          where + ": missing field '" + std::string(key) + "'");
  return *it;
}

}  // namespace detail

inline AlgebraSpec parse_spec_json(const json& j) {
  require(j.is_object(), "ParseError", "spec root is not an object");
  AlgebraSpec spec;
  spec.schema = detail::field(j, "schema", "spec").get<int>();
  require(spec.schema == 1, "ParseError",
          "unsupported schema version " + std::to_string(spec.schema));
  spec.name = detail::field(j, "name", "spec").get<std::string>();

  std::string kind = detail::field(j, "kind", "spec").get<std::string>();
  if (kind == "ainf")
    spec.S.kind = Kind::Ainf;
  else if (kind == "cinf")
    spec.S.kind = Kind::Cinf;
  else if (kind == "linf")
    spec.S.kind = Kind::Linf;
  else
    fail("ParseError", "spec.kind: unknown kind '" + kind + "'");

  const json& gens = detail::field(j, "generators", "spec");
  require(gens.is_array() && !gens.empty(), "ParseError",
          "spec.generators: expected a nonempty array");
  for (const auto& g : gens) {
    spec.S.basis.names.push_back(
        detail::field(g, "name", "generator").get<std::string>());
    spec.S.basis.vdeg.push_back(
        detail::field(g, "degree", "generator").get<int>());
  }
  spec.S.basis.check_names_unique();

  if (j.contains("unit") && !j["unit"].is_null())
    spec.S.basis.unit = spec.S.basis.index_of(j["unit"].get<std::string>());

  std::vector<VMultiMap> tables;
  int max_arity = 0;
  const json& ops = detail::field(j, "operations", "spec");
  require(ops.is_array(), "ParseError", "spec.operations: expected an array");
  for (const auto& op : ops) {
    int arity = detail::field(op, "arity", "operation").get<int>();
    require(arity >= 1, "ParseError", "operation arity must be >= 1");
    if (arity >= (int)tables.size()) tables.resize(arity + 1);
    max_arity = std::max(max_arity, arity);
    const json& entries = detail::field(op, "entries", "operation");
    for (const auto& e : entries) {
      const json& inputs = detail::field(e, "inputs", "entry");
      require((int)inputs.size() == arity, "ParseError",
              "entry input count does not match the operation arity");
      Word w;
      for (const auto& n : inputs)
        w.push_back(spec.S.basis.index_of(n.get<std::string>()));
      int out = spec.S.basis.index_of(
          detail::field(e, "output", "entry").get<std::string>());
      Rat c =
          rat_parse(detail::field(e, "coeff", "entry").get<std::string>());
      auto& cell = tables[arity][w];
      set_entry(cell, out, get_entry(cell, out) + c);
    }
  }
  spec.S.comp = dualize_structure(tables, spec.S.basis);
  spec.S.max_arity = max_arity;
  spec.S.validate_degrees();

  if (j.contains("caps")) {
    const json& caps = j["caps"];
    if (caps.contains("weight")) spec.cap = caps["weight"].get<int>();
    if (caps.contains("degrees")) {
      spec.deg_lo = caps["degrees"].at(0).get<int>();
      spec.deg_hi = caps["degrees"].at(1).get<int>();
    }
  }
  return spec;
}

inline AlgebraSpec parse_spec(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "ParseError", "cannot open spec file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail("ParseError", std::string("spec file is not valid JSON: ") + e.what());
  }
  return parse_spec_json(j);
}

// Deterministic echo of the parsed spec: generators in declared order,
// operation tables sorted by (arity, inputs), coefficients as "p/q".
inline json emit_spec(const AlgebraSpec& spec) {
  json j;
  j["schema"] = spec.schema;
  j["name"] = spec.name;
  j["kind"] = spec.S.kind == Kind::Ainf
                  ? "ainf"
                  : spec.S.kind == Kind::Cinf ? "cinf" : "linf";
  j["generators"] = json::array();
  for (int g = 0; g < spec.S.basis.size(); ++g)
    j["generators"].push_back({{"name", spec.S.basis.names[g]},
                               {"degree", spec.S.basis.vdeg[g]}});
  if (spec.S.basis.unit >= 0)
    j["unit"] = spec.S.basis.names[spec.S.basis.unit];
  auto tables = undualize_structure(spec.S.comp, spec.S.basis);
  j["operations"] = json::array();
  for (int arity = 1; arity < (int)tables.size(); ++arity) {
    if (tables[arity].empty()) continue;
    json op{{"arity", arity}, {"entries", json::array()}};
    for (const auto& [w, value] : tables[arity])
      for (const auto& [out, c] : value) {
        json inputs = json::array();
        for (int g : w) inputs.push_back(spec.S.basis.names[g]);
        op["entries"].push_back({{"inputs", inputs},
                                 {"output", spec.S.basis.names[out]},
                                 {"coeff", rat_str(c)}});
      }
    j["operations"].push_back(op);
  }
  j["caps"] = {{"weight", spec.cap},
               {"degrees", {spec.deg_lo, spec.deg_hi}}};
  return j;
}

// FNV-1a hash of the canonical echo, for report provenance.
inline std::string spec_hash(const AlgebraSpec& spec) {
  std::string s = emit_spec(spec).dump();
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace infty
