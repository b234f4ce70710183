#ifndef PNLOGIC_REPLICATION_HPP
#define PNLOGIC_REPLICATION_HPP

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pnlogic/conditions.hpp"
#include "pnlogic/fixtures.hpp"
#include "pnlogic/io.hpp"
#include "pnlogic/search.hpp"
#include "pnlogic/semantics.hpp"
#include "pnlogic/syntax.hpp"

// Self-contained scenarios, each checking one known property of the logic
// against an expected verdict.
namespace pnlogic::replication {

struct CaseResult {
  std::string name;
  bool passed = false;
  std::string summary;
  io::Json evidence;
};

namespace detail {

struct Check {
  io::Json evidence = io::Json::object();
  bool ok = true;

  void expect(const std::string& key, bool actual, bool expected) {
    evidence[key] = actual;
    ok = ok && actual == expected;
  }
};

inline io::Json outcome_json(const SearchOutcome& o, const std::string& scheme) { return io::to_json(o, scheme); }

inline bool replays(const SearchOutcome& o, const Formula& scheme, BoxMode mode) {
  return o.verdict == Verdict::CountermodelFound && o.model && o.world &&
         !forces(EvalContext(*o.model, mode), *o.world, scheme) && is_well_formed(*o.model);
}

inline CaseResult birel() {
  Check c;
  std::size_t rows = 0, misses = 0;
  for (BoxMode clause : {BoxMode::RelPlain, BoxMode::RelReflexiveStyle}) {
    RefutationTranscript t = birelational_refutation(clause);
    io::Json j;
    j["relations"] = t.rows.size();
    j["matches"] = t.matches;
    j["neighborhood_forces_box_pq"] = t.neighborhood_first;
    j["neighborhood_forces_box_p"] = t.neighborhood_second;
    c.evidence[std::string(box_mode_name(clause))] = j;
    c.ok = c.ok && t.rows.size() == 16 && t.matches == 0 && t.neighborhood_first && !t.neighborhood_second;
    rows += t.rows.size();
    misses += t.rows.size() - t.matches;
  }
  return {"birel", c.ok,
          std::to_string(misses) + "/" + std::to_string(rows) +
              " relations fail to force [](p & q) without []p at w; the neighborhood model does",
          c.evidence};
}

inline CaseResult k_fail() {
  Check c;
  const Model m = fixtures::k_countermodel();
  EvalContext ctx(m);
  c.expect("model_well_formed", is_well_formed(m), true);
  c.expect("v_forces_box_p_implies_q", forces(ctx, 2, parse("[](p -> q)")), true);
  c.expect("v_forces_box_p_implies_box_q", forces(ctx, 2, parse("[]p -> []q")), false);
  c.expect("s_forces_box_p", forces(ctx, 0, parse("[]p")), true);
  c.expect("s_forces_box_q", forces(ctx, 0, parse("[]q")), false);
  const std::string scheme = "[](a -> b) -> ([]a -> []b)";
  SearchOutcome o = find_countermodel({parse(scheme), 3, {}});
  c.evidence["search"] = outcome_json(o, scheme);
  c.expect("search_replays", replays(o, parse(scheme), BoxMode::Standard), true);
  return {"k-fail", c.ok, "K fails: v forces [](p -> q) but not []p -> []q", c.evidence};
}

inline CaseResult mon_fail() {
  Check c;
  const Model m = fixtures::mon_countermodel();
  EvalContext ctx(m);
  c.expect("model_well_formed", is_well_formed(m), true);
  c.expect("premise_valid", valid_in_model(m, BoxMode::Standard, parse("p -> q")), true);
  c.expect("conclusion_valid", valid_in_model(m, BoxMode::Standard, parse("[]p -> []q")), false);
  c.expect("w_forces_box_p", forces(ctx, 0, parse("[]p")), true);
  c.expect("w_forces_box_q", forces(ctx, 0, parse("[]q")), false);
  SearchOutcome o = rule_countermodel_mon(2);
  c.evidence["search"] = outcome_json(o, "p -> q / []p -> []q");
  bool replay = o.verdict == Verdict::CountermodelFound && o.model &&
                valid_in_model(*o.model, BoxMode::Standard, parse("p -> q")) &&
                !valid_in_model(*o.model, BoxMode::Standard, parse("[]p -> []q"));
  c.expect("search_replays", replay, true);
  return {"mon-fail", c.ok, "rule MON fails: p -> q valid, []p -> []q not", c.evidence};
}

inline CaseResult exhausted_case(std::string name, const std::string& scheme, BoxMode mode,
                                 std::vector<Condition> required, std::string summary) {
  Check c;
  SearchOutcome o = find_countermodel({parse(scheme), 3, std::move(required), mode});
  c.evidence["search"] = outcome_json(o, scheme);
  c.ok = o.verdict == Verdict::Exhausted;
  return {std::move(name), c.ok, std::move(summary), c.evidence};
}

inline CaseResult simple_t_fail() {
  Check c;
  const std::string scheme = "[]a -> a";
  SearchOutcome simple = find_countermodel({parse(scheme), 2, {Condition::Cond2}, BoxMode::Simple});
  c.evidence["simple"] = outcome_json(simple, scheme);
  c.expect("simple_replays", replays(simple, parse(scheme), BoxMode::Simple), true);
  c.expect("frame_satisfies_cond2", simple.model && check_cond2(simple.model->frame()).holds, true);
  SearchOutcome standard = find_countermodel({parse(scheme), 3, {}});
  c.evidence["standard"] = outcome_json(standard, scheme);
  c.expect("standard_exhausted", standard.verdict == Verdict::Exhausted, true);
  return {"simple-t-fail", c.ok, "T fails with the simplified box, holds with the standard one", c.evidence};
}

inline CaseResult nabla_vs_diamond() {
  Check c;
  const std::string nabla = "[]a -> <>a", diamond = "[]a -> <*>a";
  SearchOutcome n = find_countermodel({parse(nabla), 3, {Condition::Cond2}});
  SearchOutcome d = find_countermodel({parse(diamond), 3, {Condition::Cond2}});
  c.evidence["nabla"] = outcome_json(n, nabla);
  c.evidence["diamond"] = outcome_json(d, diamond);
  c.expect("nabla_exhausted", n.verdict == Verdict::Exhausted, true);
  c.expect("diamond_replays", replays(d, parse(diamond), BoxMode::Standard), true);
  return {"nabla-vs-diamond", c.ok, "[]a -> <>a valid on cond2 frames; []a -> <*>a refuted", c.evidence};
}

inline CaseResult four_star() {
  Check c;
  const Model m = fixtures::star_without_four();
  EvalContext ctx(m);
  c.expect("model_well_formed", is_well_formed(m), true);
  c.expect("star_holds", check_star(m.frame()).holds, true);
  c.expect("starstar_holds", check_starstar(m.frame()).holds, false);
  c.expect("v_forces_box_p", forces(ctx, 0, parse("[]p")), true);
  c.expect("v_forces_box_box_p", forces(ctx, 0, parse("[][]p")), false);
  c.expect("box_p_extension_is_v", extension(ctx, parse("[]p")) == WorldSet{0}, true);
  c.expect("four_frame_valid", scheme_valid_in_frame(m.frame(), BoxMode::Standard, parse("[]a -> [][]a")), false);
  return {"four-star", c.ok, "star condition holds, yet v forces []p and not [][]p", c.evidence};
}

inline CaseResult starstar_four() {
  Check c;
  StarStarFourReport r = verify_starstar_implies_four(3);
  c.evidence["frames_checked"] = r.frames_checked;
  c.expect("counterexample", r.counterexample.has_value(), false);
  if (r.counterexample) c.evidence["counterexample_frame"] = io::to_json(*r.counterexample);
  c.expect("replay_star_holds", r.replay_star_holds, true);
  c.expect("replay_starstar_holds", r.replay_starstar_holds, false);
  c.expect("replay_forces_box_box", r.replay_forces_box_box, false);
  c.ok = c.ok && r.passed();
  return {"starstar-four", c.ok,
          "axiom 4 valid on all " + std::to_string(r.frames_checked) + " subset-closed frames up to 3 worlds",
          c.evidence};
}

}  // namespace detail

struct NamedCase {
  std::string_view name;
  CaseResult (*run)();
};

inline const std::vector<NamedCase>& cases() {
  static const std::vector<NamedCase> kCases = {
      {"birel", detail::birel},
      {"k-fail", detail::k_fail},
      {"mon-fail", detail::mon_fail},
      {"d-valid",
       [] {
         return detail::exhausted_case("d-valid", "[]a -> ~[]~a", BoxMode::Standard, {},
                                       "D has no countermodel up to 3 worlds");
       }},
      {"t-sound",
       [] {
         return detail::exhausted_case("t-sound", "[]a -> a", BoxMode::Standard, {},
                                       "T has no countermodel up to 3 worlds");
       }},
      {"simple-t-fail", detail::simple_t_fail},
      {"nabla-vs-diamond", detail::nabla_vs_diamond},
      {"four-star", detail::four_star},
      {"starstar-four", detail::starstar_four},
  };
  return kCases;
}

inline std::optional<CaseResult> run_case(std::string_view name) {
  for (const auto& c : cases())
    if (c.name == name) return c.run();
  return std::nullopt;
}

inline std::vector<CaseResult> run_all() {
  std::vector<CaseResult> out;
  for (const auto& c : cases()) out.push_back(c.run());
  return out;
}

inline io::Json to_json(const std::vector<CaseResult>& results) {
  io::Json arr = io::Json::array();
  std::size_t passed = 0;
  for (const auto& r : results) {
    io::Json j;
    j["name"] = r.name;
    j["passed"] = r.passed;
    j["summary"] = r.summary;
    j["evidence"] = r.evidence;
    arr.push_back(j);
    if (r.passed) ++passed;
  }
  io::Json out;
  out["cases"] = arr;
  out["passed"] = passed;
  out["total"] = results.size();
  return out;
}

}  // namespace pnlogic::replication

#endif  // PNLOGIC_REPLICATION_HPP
