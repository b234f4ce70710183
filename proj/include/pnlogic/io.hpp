#ifndef PNLOGIC_IO_HPP
#define PNLOGIC_IO_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pnlogic/conditions.hpp"
#include "pnlogic/frame.hpp"
#include "pnlogic/proof.hpp"
#include "pnlogic/search.hpp"
#include "pnlogic/semantics.hpp"
#include "pnlogic/syntax.hpp"

// JSON exchange format for frames and models:
//
//   { "worlds": 3,
//     "order": [[2,0]],
//     "nbhd": { "0": [[0],[0,1,2]], "1": [[1]], "2": [[0,1,2]] },
//     "valuation": { "p": [0], "q": [0,1] } }
//
// "order" lists pairs [w,v] meaning w <= v; reflexive pairs may be omitted.
// Worlds missing from "nbhd" get the empty family. A frame file has no
// "valuation". Countermodel files add a "witness" block.
namespace pnlogic::io {

using Json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline World world_index(const Json& j, unsigned worlds, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw FormatError(where + ": world index must be a non-negative integer");
  auto w = j.get<unsigned long long>();
  if (w >= worlds) throw FormatError(where + ": world index " + std::to_string(w) + " out of range");
  return static_cast<World>(w);
}

inline WorldSet world_set(const Json& j, unsigned worlds, const std::string& where) {
  if (!j.is_array()) throw FormatError(where + ": expected an array of world indices");
  WorldSet s;
  for (const auto& e : j) s.insert(world_index(e, worlds, where));
  return s;
}

}  // namespace detail

inline Json world_set_json(WorldSet s) {
  Json arr = Json::array();
  for (World w : s.members()) arr.push_back(w);
  return arr;
}

// Warnings (e.g. reflexive pairs added to the order) are appended to
// `warnings` when given.
inline Frame frame_from_json(const Json& j, std::vector<std::string>* warnings = nullptr) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  if (!j.contains("worlds") || !j["worlds"].is_number_integer()) throw FormatError("missing integer field 'worlds'");
  long long count = j["worlds"].get<long long>();
  if (count < 1 || count > static_cast<long long>(kMaxWorlds))
    throw FormatError("'worlds' must be in 1.." + std::to_string(kMaxWorlds));
  const auto n = static_cast<unsigned>(count);

  std::vector<OrderPair> order;
  if (j.contains("order")) {
    if (!j["order"].is_array()) throw FormatError("'order' must be an array of pairs");
    for (const auto& pair : j["order"]) {
      if (!pair.is_array() || pair.size() != 2) throw FormatError("'order' entries must be pairs [w, v]");
      order.emplace_back(detail::world_index(pair[0], n, "order"), detail::world_index(pair[1], n, "order"));
    }
  }

  std::vector<Family> nbhd(n);
  if (j.contains("nbhd")) {
    if (!j["nbhd"].is_object()) throw FormatError("'nbhd' must be an object keyed by world");
    for (const auto& [key, fam] : j["nbhd"].items()) {
      World w;
      try {
        std::size_t used = 0;
        unsigned long v = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
        w = static_cast<World>(v);
      } catch (const std::exception&) {
        throw FormatError("nbhd: key '" + key + "' is not a world index");
      }
      if (w >= n) throw FormatError("nbhd: world index " + key + " out of range");
      if (!fam.is_array()) throw FormatError("nbhd." + key + ": expected an array of sets");
      std::vector<WorldSet> sets;
      for (const auto& s : fam) sets.push_back(detail::world_set(s, n, "nbhd." + key));
      nbhd[w] = Family(std::move(sets));
    }
  }

  Frame frame(n, order, std::move(nbhd));
  if (warnings && frame.reflexive_pairs_added() > 0)
    warnings->push_back("order: added " + std::to_string(frame.reflexive_pairs_added()) + " reflexive pair(s)");
  return frame;
}

inline Model model_from_json(const Json& j, std::vector<std::string>* warnings = nullptr) {
  Frame frame = frame_from_json(j, warnings);
  Valuation valuation;
  if (j.contains("valuation")) {
    if (!j["valuation"].is_object()) throw FormatError("'valuation' must be an object keyed by atom");
    for (const auto& [atom, set] : j["valuation"].items()) {
      if (!is_identifier(atom)) throw FormatError("valuation: invalid atom name '" + atom + "'");
      valuation.emplace(atom, detail::world_set(set, frame.world_count(), "valuation." + atom));
    }
  }
  return Model(std::move(frame), std::move(valuation));
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json to_json(const Frame& f) {
  Json j;
  j["worlds"] = f.world_count();
  Json order = Json::array();
  for (auto [w, v] : f.strict_pairs()) order.push_back({w, v});
  j["order"] = order;
  Json nbhd = Json::object();
  for (World w = 0; w < f.world_count(); ++w) {
    Json fam = Json::array();
    for (WorldSet s : f.nbhd(w)) fam.push_back(world_set_json(s));
    nbhd[std::to_string(w)] = fam;
  }
  j["nbhd"] = nbhd;
  return j;
}

inline Json to_json(const Valuation& v) {
  Json j = Json::object();
  for (const auto& [atom, set] : v) j[atom] = world_set_json(set);
  return j;
}

inline Json to_json(const Model& m) {
  Json j = to_json(m.frame());
  j["valuation"] = to_json(m.valuation());
  return j;
}

inline Json to_json(const ConditionReport& r) {
  Json j;
  j["condition"] = condition_name(r.condition);
  j["holds"] = r.holds;
  if (r.witness) {
    Json w;
    if (!r.witness->rule.empty()) w["rule"] = r.witness->rule;
    if (!r.witness->atom.empty()) w["atom"] = r.witness->atom;
    w["worlds"] = r.witness->worlds;
    Json sets = Json::array();
    for (WorldSet s : r.witness->sets) sets.push_back(world_set_json(s));
    w["sets"] = sets;
    j["witness"] = w;
  }
  return j;
}

// Model plus a witness block: {"scheme", "assignment", "world"}.
inline Json countermodel_json(const Model& m, const std::string& scheme, World world) {
  Json j = to_json(m);
  Json w;
  w["scheme"] = scheme;
  w["assignment"] = to_json(m.valuation());
  w["world"] = world;
  j["witness"] = w;
  return j;
}

// Elapsed time is left out unless asked for, so output is reproducible.
inline Json to_json(const SearchOutcome& o, const std::string& scheme, bool include_timing = false) {
  Json j;
  j["verdict"] = verdict_name(o.verdict);
  j["scheme"] = scheme;
  if (o.model && o.world) j["countermodel"] = countermodel_json(*o.model, scheme, *o.world);
  Json stats;
  stats["frames_visited"] = o.stats.frames_visited;
  stats["models_visited"] = o.stats.models_visited;
  if (include_timing) stats["elapsed_ms"] = o.stats.elapsed_ms;
  j["stats"] = stats;
  if (!o.message.empty()) j["message"] = o.message;
  return j;
}

inline Json to_json(const ProofReport& r) {
  Json j;
  j["valid"] = r.valid;
  if (r.first_error) j["first_error"] = {{"line", r.first_error->line}, {"reason", r.first_error->reason}};
  return j;
}

inline Json to_json(const SoundnessReport& r) {
  Json j;
  j["clean"] = r.clean();
  j["frames_checked"] = r.frames_checked;
  j["lines_checked"] = r.lines_checked;
  if (r.violation) {
    Json v;
    v["line"] = r.violation->line;
    v["frame"] = to_json(r.violation->frame);
    v["assignment"] = to_json(r.violation->assignment);
    v["world"] = r.violation->world;
    j["violation"] = v;
  }
  return j;
}

}  // namespace pnlogic::io

#endif  // PNLOGIC_IO_HPP
