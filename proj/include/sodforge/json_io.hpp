#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "sodforge/hpd.hpp"
#include "sodforge/lefschetz.hpp"
#include "sodforge/mutation.hpp"
#include "sodforge/sod.hpp"
#include "sodforge/verification.hpp"

namespace sodforge {

using Json = nlohmann::ordered_json;

// --------------------------------------------------------------------------
// Sod: {"ambient": string, "blocks": [{"symbol": string, "twist": {class:
// int, ...}, "shift": int, "box": string|null, "annotation": string|null}]}.
// Encoding round-trips bit-exactly through the decoder.

inline Json encode_twist(const Twist& t) {
  Json j = Json::object();
  for (const auto& [cls, c] : t.coeffs) j[cls] = c;
  return j;
}

inline Json encode_block(const Block& b) {
  Json j;
  j["symbol"] = b.symbol.name;
  j["twist"] = encode_twist(b.twist);
  j["shift"] = b.twist.shift;
  j["box"] = b.box ? Json(b.box->name) : Json(nullptr);
  j["annotation"] = b.annotation ? Json(*b.annotation) : Json(nullptr);
  return j;
}

inline Json encode_sod(const Sod& s) {
  Json j;
  j["ambient"] = s.ambient();
  Json blocks = Json::array();
  for (const auto& b : s.blocks()) blocks.push_back(encode_block(b));
  j["blocks"] = std::move(blocks);
  return j;
}

inline Block decode_block(const Json& j) {
  if (!j.contains("symbol") || !j["symbol"].is_string())
    throw ValidationError("block JSON needs a string \"symbol\"");
  Block b(CategorySymbol(j["symbol"].get<std::string>()));
  if (j.contains("twist")) {
    if (!j["twist"].is_object()) throw ValidationError("block twist must be an object");
    for (const auto& [cls, c] : j["twist"].items()) {
      if (!c.is_number_integer())
        throw ValidationError("twist coefficient for " + cls + " must be an integer");
      int v = c.get<int>();
      if (v != 0) b.twist.coeffs[cls] = v;
    }
  }
  if (j.contains("shift") && !j["shift"].is_null()) b.twist.shift = j["shift"].get<int>();
  if (j.contains("box") && !j["box"].is_null())
    b.box = CategorySymbol(j["box"].get<std::string>());
  if (j.contains("annotation") && !j["annotation"].is_null())
    b.annotation = j["annotation"].get<std::string>();
  return b;
}

inline Sod decode_sod(const Json& j,
                      DivisorClassLattice lattice = duality_lattice(false)) {
  if (!j.is_object() || !j.contains("ambient") || !j.contains("blocks"))
    throw ValidationError("sod JSON needs \"ambient\" and \"blocks\"");
  std::vector<Block> blocks;
  for (const auto& bj : j["blocks"]) blocks.push_back(decode_block(bj));
  return Sod(j["ambient"].get<std::string>(), std::move(lattice), std::move(blocks));
}

// --------------------------------------------------------------------------
// Lefschetz structures and grids.

inline Json encode_lefschetz(const LefschetzStructure& L) {
  Json j;
  j["ambient"] = L.ambient();
  j["length"] = L.length();
  j["twist_class"] = L.twist_class();
  Json comps = Json::array();
  for (const auto& comp : L.components()) {
    Json names = Json::array();
    for (const auto& sym : comp) names.push_back(sym.name);
    comps.push_back(std::move(names));
  }
  j["components"] = std::move(comps);
  return j;
}

inline Json encode_grid(const Grid& g) {
  Json j;
  j["rows"] = g.rows;
  Json cells = Json::array();
  for (const auto& row : g.cells) {
    Json r = Json::array();
    for (bool c : row) r.push_back(c);
    cells.push_back(std::move(r));
  }
  j["cells"] = std::move(cells);
  return j;
}

inline Grid decode_grid(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cells"))
    throw ValidationError("grid JSON needs \"rows\" and \"cells\"");
  Grid g;
  for (const auto& r : j["rows"]) g.rows.push_back(r.get<std::string>());
  for (const auto& row : j["cells"]) {
    std::vector<bool> cells;
    for (const auto& c : row) cells.push_back(c.get<bool>());
    g.cells.push_back(std::move(cells));
  }
  if (g.cells.size() != g.rows.size())
    throw ValidationError("grid JSON: one cell row per symbol row required");
  for (const auto& row : g.cells)
    if (row.size() != g.cells.front().size())
      throw ValidationError("grid JSON: ragged cell rows");
  return g;
}

// --------------------------------------------------------------------------
// Derivations: {"initial": Sod, "steps": [{"rule", "pos", "expect"}],
// "splices": [{"pos", "replacement"}], "final": Sod}. The optional
// "locally_free" flag selects the lattice; "rules" may rebind the shipped
// rule pair to another center symbol / class pair.

inline Json encode_derivation(const Derivation& d) {
  Json j;
  j["initial"] = encode_sod(d.initial);
  Json steps = Json::array();
  for (const auto& s : d.steps) {
    Json sj;
    sj["rule"] = s.rule;
    sj["pos"] = s.pos;
    sj["expect"] = s.expect ? encode_sod(*s.expect) : Json(nullptr);
    steps.push_back(std::move(sj));
  }
  j["steps"] = std::move(steps);
  Json splices = Json::array();
  for (const auto& s : d.splices) {
    Json sj;
    sj["pos"] = s.pos;
    sj["replacement"] = encode_sod(s.replacement);
    splices.push_back(std::move(sj));
  }
  j["splices"] = std::move(splices);
  j["final"] = encode_sod(d.final_sod);
  return j;
}

struct DerivationFile {
  Derivation derivation;
  RuleTable rules;
};

inline DerivationFile decode_derivation(const Json& j) {
  if (!j.is_object() || !j.contains("initial") || !j.contains("final"))
    throw ValidationError("derivation JSON needs \"initial\" and \"final\"");
  bool locally_free = j.value("locally_free", false);
  DivisorClassLattice lattice = duality_lattice(locally_free);

  DerivationFile out;
  out.derivation.initial = decode_sod(j["initial"], lattice);
  out.derivation.final_sod = decode_sod(j["final"], lattice);
  if (j.contains("steps"))
    for (const auto& sj : j["steps"]) {
      DerivationStep step;
      step.rule = sj.at("rule").get<std::string>();
      step.pos = sj.at("pos").get<std::size_t>();
      if (sj.contains("expect") && !sj["expect"].is_null())
        step.expect = decode_sod(sj["expect"], lattice);
      out.derivation.steps.push_back(std::move(step));
    }
  if (j.contains("splices"))
    for (const auto& sj : j["splices"]) {
      SpliceRecord rec;
      rec.pos = sj.at("pos").get<std::size_t>();
      rec.replacement = decode_sod(sj.at("replacement"), lattice);
      out.derivation.splices.push_back(std::move(rec));
    }

  std::string center = kSymResolution;
  std::string exceptional = kClassE;
  std::string step_class = kClassHp;
  if (j.contains("rules")) {
    const Json& r = j["rules"];
    center = r.value("center", center);
    exceptional = r.value("exceptional_class", exceptional);
    step_class = r.value("step_class", step_class);
  }
  out.rules = make_blowup_rules(center, exceptional, step_class);
  return out;
}

// --------------------------------------------------------------------------
// Reports and descriptors.

inline Json encode_replay_report(const ReplayReport& r) {
  Json j;
  j["ok"] = r.ok;
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json ej;
    ej["stage"] = e.stage;
    ej["ok"] = e.ok;
    if (!e.message.empty()) ej["message"] = e.message;
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  j["computed"] = encode_sod(r.computed);
  return j;
}

inline Json encode_hpd_pair(const HpdPairDescriptor& d) {
  Json j;
  j["special_case"] = to_string(d.special_case);
  Json left;
  left["space"] = d.left_space;
  left["N"] = d.geometry.N;
  left["k"] = d.geometry.k;
  left["l"] = d.geometry.l();
  left["locally_free"] = d.geometry.locally_free();
  j["left"] = std::move(left);
  Json right;
  right["space"] = d.right_space;
  right["lefschetz"] = encode_lefschetz(d.right_lefschetz);
  j["right"] = std::move(right);
  if (!d.note.empty()) j["note"] = d.note;
  return j;
}

inline Json encode_section_sods(const SectionSods& s) {
  Json j;
  j["first"] = encode_sod(s.first);
  j["second"] = encode_sod(s.second);
  j["prim_equivalence"] =
      Json::array({s.primitive_equivalence.first, s.primitive_equivalence.second});
  return j;
}

inline Json encode_check(const CheckResult& c) {
  Json j;
  j["name"] = c.name;
  j["engine"] = c.engine;
  j["oracle"] = c.oracle;
  j["pass"] = c.pass();
  return j;
}

inline Json encode_duality_replay(const DualityReplayReport& r) {
  Json j;
  j["special_case"] = to_string(r.special_case);
  j["replay"] = encode_replay_report(r.replay_report);
  j["final"] = encode_sod(r.final_post_twist);
  j["expected"] = encode_sod(r.expected);
  j["hpd_identification"] = encode_block(r.hpd_identification);
  j["multiset_equal"] = r.multiset_equal;
  j["ordered_equal"] = r.ordered_equal;
  j["ok"] = r.ok;
  return j;
}

}  // namespace sodforge
