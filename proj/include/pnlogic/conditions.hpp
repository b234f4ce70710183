#ifndef PNLOGIC_CONDITIONS_HPP
#define PNLOGIC_CONDITIONS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pnlogic/frame.hpp"

namespace pnlogic {

enum class Condition {
  OrderAxioms,        // reflexive, transitive, antisymmetric
  Cond1,              // w <= v, v in X, X in N(w)  =>  X in N(v)
  Cond2,              // w <= v  =>  N(w) subset of N(v)
  Star,               // X in N(w)  =>  {v : X in N(v)} in N(w)
  StarStar,           // each N(w) is closed under subsets
  ValuationMonotone,  // every valuation set is upward closed
};

inline std::string_view condition_name(Condition c) {
  switch (c) {
    case Condition::OrderAxioms: return "order-axioms";
    case Condition::Cond1: return "cond1";
    case Condition::Cond2: return "cond2";
    case Condition::Star: return "star";
    case Condition::StarStar: return "starstar";
    case Condition::ValuationMonotone: return "valuation-monotone";
  }
  return "?";
}

// The tuple that breaks a condition. Layout per condition:
//   order-axioms        rule + worlds (w) | (a,b,c) | (a,b)
//   cond1, cond2        worlds (w,v), sets (X)
//   star                worlds (w), sets (X, {v : X in N(v)})
//   starstar            worlds (w), sets (X, Y) with Y subset of X
//   valuation-monotone  atom, worlds (w,v)
struct Witness {
  std::string rule;
  std::vector<World> worlds;
  std::vector<WorldSet> sets;
  std::string atom;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct ConditionReport {
  Condition condition;
  bool holds = true;
  std::optional<Witness> witness;

  static ConditionReport ok(Condition c) { return {c, true, std::nullopt}; }
  static ConditionReport violated(Condition c, Witness w) { return {c, false, std::move(w)}; }

  std::string describe() const {
    std::string out(condition_name(condition));
    if (holds) return out + ": holds";
    out += ": fails";
    if (!witness) return out;
    const Witness& w = *witness;
    out += " (";
    bool first = true;
    auto sep = [&] {
      if (!first) out += ", ";
      first = false;
    };
    if (!w.rule.empty()) sep(), out += w.rule;
    if (!w.atom.empty()) sep(), out += w.atom;
    for (World x : w.worlds) sep(), out += std::to_string(x);
    for (WorldSet s : w.sets) sep(), out += to_string(s);
    return out + ")";
  }
};

inline ConditionReport check_order_axioms(const Frame& f) {
  const unsigned n = f.world_count();
  for (World w = 0; w < n; ++w)
    if (!f.leq(w, w)) return ConditionReport::violated(Condition::OrderAxioms, {"reflexivity", {w}, {}, {}});
  for (World a = 0; a < n; ++a)
    for (World b = 0; b < n; ++b) {
      if (!f.leq(a, b)) continue;
      for (World c = 0; c < n; ++c)
        if (f.leq(b, c) && !f.leq(a, c))
          return ConditionReport::violated(Condition::OrderAxioms, {"transitivity", {a, b, c}, {}, {}});
    }
  for (World a = 0; a < n; ++a)
    for (World b = a + 1; b < n; ++b)
      if (f.leq(a, b) && f.leq(b, a))
        return ConditionReport::violated(Condition::OrderAxioms, {"antisymmetry", {a, b}, {}, {}});
  return ConditionReport::ok(Condition::OrderAxioms);
}

inline ConditionReport check_cond1(const Frame& f) {
  const unsigned n = f.world_count();
  for (World w = 0; w < n; ++w)
    for (World v = 0; v < n; ++v) {
      if (v == w || !f.leq(w, v)) continue;
      for (WorldSet x : f.nbhd(w))
        if (x.contains(v) && !f.nbhd(v).contains(x))
          return ConditionReport::violated(Condition::Cond1, {{}, {w, v}, {x}, {}});
    }
  return ConditionReport::ok(Condition::Cond1);
}

// Order axioms and cond1: together they make `f` a well-formed frame.
inline std::vector<ConditionReport> validate_frame(const Frame& f) { return {check_order_axioms(f), check_cond1(f)}; }

inline bool is_well_formed(const Frame& f) { return check_order_axioms(f).holds && check_cond1(f).holds; }

inline ConditionReport check_cond2(const Frame& f) {
  const unsigned n = f.world_count();
  for (World w = 0; w < n; ++w)
    for (World v = 0; v < n; ++v) {
      if (v == w || !f.leq(w, v)) continue;
      for (WorldSet x : f.nbhd(w))
        if (!f.nbhd(v).contains(x)) return ConditionReport::violated(Condition::Cond2, {{}, {w, v}, {x}, {}});
    }
  return ConditionReport::ok(Condition::Cond2);
}

// {v : x in N(v)}
inline WorldSet worlds_with_neighborhood(const Frame& f, WorldSet x) {
  WorldSet out;
  for (World v = 0; v < f.world_count(); ++v)
    if (f.nbhd(v).contains(x)) out.insert(v);
  return out;
}

inline ConditionReport check_star(const Frame& f) {
  for (World w = 0; w < f.world_count(); ++w)
    for (WorldSet x : f.nbhd(w)) {
      WorldSet owners = worlds_with_neighborhood(f, x);
      if (!f.nbhd(w).contains(owners)) return ConditionReport::violated(Condition::Star, {{}, {w}, {x, owners}, {}});
    }
  return ConditionReport::ok(Condition::Star);
}

inline ConditionReport check_starstar(const Frame& f) {
  for (World w = 0; w < f.world_count(); ++w)
    for (WorldSet x : f.nbhd(w)) {
      // Submasks of x in ascending order, starting from the empty set.
      std::uint32_t sub = 0;
      do {
        if (!f.nbhd(w).contains(WorldSet(sub)))
          return ConditionReport::violated(Condition::StarStar, {{}, {w}, {x, WorldSet(sub)}, {}});
        sub = (sub - x.bits()) & x.bits();
      } while (sub != 0);
    }
  return ConditionReport::ok(Condition::StarStar);
}

inline ConditionReport check_valuation_monotone(const Model& m) {
  const Frame& f = m.frame();
  for (const auto& [atom, set] : m.valuation())
    for (World w : set.members())
      for (World v = 0; v < f.world_count(); ++v)
        if (f.leq(w, v) && !set.contains(v))
          return ConditionReport::violated(Condition::ValuationMonotone, {{}, {w, v}, {}, atom});
  return ConditionReport::ok(Condition::ValuationMonotone);
}

inline std::vector<ConditionReport> validate_model(const Model& m) {
  auto reports = validate_frame(m.frame());
  reports.push_back(check_valuation_monotone(m));
  return reports;
}

inline bool is_well_formed(const Model& m) {
  for (const auto& r : validate_model(m))
    if (!r.holds) return false;
  return true;
}

// Every report the tooling knows about, in a fixed order.
inline std::vector<ConditionReport> all_conditions(const Frame& f) {
  return {check_order_axioms(f), check_cond1(f), check_cond2(f), check_star(f), check_starstar(f)};
}

inline std::vector<ConditionReport> all_conditions(const Model& m) {
  auto reports = all_conditions(m.frame());
  reports.push_back(check_valuation_monotone(m));
  return reports;
}

// Replays a witness against the condition's definition. True when the
// witness really is a violation.
inline bool witness_violates(const Model& m, const ConditionReport& report) {
  if (!report.witness) return false;
  const Frame& f = m.frame();
  const Witness& w = *report.witness;
  auto in_range = [&](World x) { return x < f.world_count(); };
  for (World x : w.worlds)
    if (!in_range(x)) return false;
  switch (report.condition) {
    case Condition::OrderAxioms:
      if (w.rule == "reflexivity" && w.worlds.size() == 1) return !f.leq(w.worlds[0], w.worlds[0]);
      if (w.rule == "transitivity" && w.worlds.size() == 3)
        return f.leq(w.worlds[0], w.worlds[1]) && f.leq(w.worlds[1], w.worlds[2]) && !f.leq(w.worlds[0], w.worlds[2]);
      if (w.rule == "antisymmetry" && w.worlds.size() == 2)
        return w.worlds[0] != w.worlds[1] && f.leq(w.worlds[0], w.worlds[1]) && f.leq(w.worlds[1], w.worlds[0]);
      return false;
    case Condition::Cond1:
      if (w.worlds.size() != 2 || w.sets.size() != 1) return false;
      return f.leq(w.worlds[0], w.worlds[1]) && w.sets[0].contains(w.worlds[1]) && f.nbhd(w.worlds[0]).contains(w.sets[0]) &&
             !f.nbhd(w.worlds[1]).contains(w.sets[0]);
    case Condition::Cond2:
      if (w.worlds.size() != 2 || w.sets.size() != 1) return false;
      return f.leq(w.worlds[0], w.worlds[1]) && f.nbhd(w.worlds[0]).contains(w.sets[0]) &&
             !f.nbhd(w.worlds[1]).contains(w.sets[0]);
    case Condition::Star:
      if (w.worlds.size() != 1 || w.sets.size() != 2) return false;
      return f.nbhd(w.worlds[0]).contains(w.sets[0]) && worlds_with_neighborhood(f, w.sets[0]) == w.sets[1] &&
             !f.nbhd(w.worlds[0]).contains(w.sets[1]);
    case Condition::StarStar:
      if (w.worlds.size() != 1 || w.sets.size() != 2) return false;
      return f.nbhd(w.worlds[0]).contains(w.sets[0]) && w.sets[1].subset_of(w.sets[0]) &&
             !f.nbhd(w.worlds[0]).contains(w.sets[1]);
    case Condition::ValuationMonotone:
      if (w.worlds.size() != 2) return false;
      return m.value(w.atom).contains(w.worlds[0]) && f.leq(w.worlds[0], w.worlds[1]) &&
             !m.value(w.atom).contains(w.worlds[1]);
  }
  return false;
}

inline bool witness_violates(const Frame& f, const ConditionReport& report) {
  return witness_violates(Model(f), report);
}

}  // namespace pnlogic

#endif  // PNLOGIC_CONDITIONS_HPP
