#ifndef PNLOGIC_SEARCH_HPP
#define PNLOGIC_SEARCH_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pnlogic/conditions.hpp"
#include "pnlogic/fixtures.hpp"
#include "pnlogic/formula.hpp"
#include "pnlogic/frame.hpp"
#include "pnlogic/semantics.hpp"
#include "pnlogic/syntax.hpp"

namespace pnlogic {

inline constexpr unsigned kMaxSearchWorlds = 3;
inline constexpr unsigned kMaxFamilyCap = 4;
inline constexpr std::size_t kDefaultAssignmentBudget = std::size_t{1} << 18;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool valid_in_model(const Model& m, BoxMode mode, const Formula& f) {
  return extension(EvalContext(m, mode), f) == m.frame().universe();
}

// All upward-closed subsets of the frame's worlds, ascending by bitmask.
inline std::vector<WorldSet> upsets(const Frame& frame) {
  std::vector<WorldSet> out;
  const std::uint32_t limit = std::uint32_t{1} << frame.world_count();
  for (std::uint32_t m = 0; m < limit; ++m)
    if (is_upward_closed(frame, WorldSet(m))) out.push_back(WorldSet(m));
  return out;
}

struct FrameFailure {
  Valuation assignment;
  World world;
};

// Decides validity of a scheme on frames: the scheme must be forced
// everywhere under every assignment of upward-closed sets to its letters.
//
// Assignments and the neighborhood-independent part of the formula only
// depend on the order, so they are computed once per distinct order and
// reused while consecutive frames share it (frame enumeration is
// order-major).
class SchemeChecker {
 public:
  explicit SchemeChecker(const Formula& scheme, BoxMode mode = BoxMode::Standard,
                         std::size_t budget = kDefaultAssignmentBudget)
      : program_(scheme), mode_(mode), budget_(budget) {
    if (is_relational(mode_)) throw EvalError("scheme validity is defined for neighborhood box modes only");
  }

  const CompiledFormula& program() const { return program_; }
  // Assignments examined so far, across all frames.
  std::uint64_t models_checked() const { return models_checked_; }

  // Number of assignments for this frame; throws BudgetExceeded past the budget.
  std::size_t assignment_count(const Frame& frame) {
    prepare(frame);
    return assignment_count_;
  }

  // The first assignment (letters ordered by name, each ranging over upsets
  // in ascending order) under which some world fails to force the scheme.
  std::optional<FrameFailure> first_failure(const Frame& frame) {
    prepare(frame);
    const std::size_t m = program_.size();
    const WorldSet all = frame.universe();
    if (program_.root_is_static()) {
      if (!static_failure_) {
        models_checked_ += assignment_count_;
        return std::nullopt;
      }
      models_checked_ += *static_failure_ + 1;
      return failure_at(*static_failure_, static_values_[*static_failure_ * m + program_.root()], all);
    }
    scratch_.resize(m);
    const std::size_t k = program_.atoms().size();
    for (std::size_t i = 0; i < assignment_count_; ++i) {
      ++models_checked_;
      std::copy_n(static_values_.begin() + static_cast<std::ptrdiff_t>(i * m), m, scratch_.begin());
      std::span<const WorldSet> values(assignments_.data() + i * k, k);
      program_.evaluate_dynamic(frame, values, mode_, nullptr, scratch_);
      WorldSet root = scratch_[program_.root()];
      if (root != all) return failure_at(i, root, all);
    }
    return std::nullopt;
  }

  bool valid_on(const Frame& frame) { return !first_failure(frame); }

 private:
  FrameFailure failure_at(std::size_t index, WorldSet root, WorldSet all) const {
    const std::size_t k = program_.atoms().size();
    FrameFailure f{{}, (all - root).members().front()};
    for (std::size_t j = 0; j < k; ++j) f.assignment.emplace(program_.atoms()[j], assignments_[index * k + j]);
    return f;
  }

  void prepare(const Frame& frame) {
    if (cached_order_ && cached_order_->same_order(frame)) return;
    cached_order_.reset();
    std::vector<WorldSet> ups = upsets(frame);
    const std::size_t k = program_.atoms().size();
    std::size_t count = 1;
    for (std::size_t j = 0; j < k; ++j) {
      if (count > budget_ / ups.size())
        throw BudgetExceeded("scheme letters range over more than " + std::to_string(budget_) + " assignments");
      count *= ups.size();
    }
    assignment_count_ = count;
    assignments_.assign(count * k, WorldSet{});
    // Mixed radix counter, first letter most significant.
    std::vector<std::size_t> digits(k, 0);
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = 0; j < k; ++j) assignments_[i * k + j] = ups[digits[j]];
      for (std::size_t j = k; j-- > 0;) {
        if (++digits[j] < ups.size()) break;
        digits[j] = 0;
      }
    }
    const std::size_t m = program_.size();
    static_values_.assign(count * m, WorldSet{});
    static_failure_.reset();
    for (std::size_t i = 0; i < count; ++i) {
      std::span<WorldSet> out(static_values_.data() + i * m, m);
      program_.evaluate_static(frame, std::span<const WorldSet>(assignments_.data() + i * k, k), out);
      if (program_.root_is_static() && !static_failure_ && out[program_.root()] != frame.universe()) static_failure_ = i;
    }
    cached_order_.emplace(frame);
  }

  CompiledFormula program_;
  BoxMode mode_;
  std::size_t budget_;
  std::optional<Frame> cached_order_;
  std::size_t assignment_count_ = 0;
  std::vector<WorldSet> assignments_;
  std::vector<WorldSet> static_values_;
  std::optional<std::size_t> static_failure_;
  std::vector<WorldSet> scratch_;
  std::uint64_t models_checked_ = 0;
};

inline bool scheme_valid_in_frame(const Frame& frame, BoxMode mode, const Formula& scheme,
                                  std::size_t budget = kDefaultAssignmentBudget) {
  return SchemeChecker(scheme, mode, budget).valid_on(frame);
}

struct EnumerationOptions {
  unsigned min_worlds = 1;
  unsigned max_worlds = kMaxSearchWorlds;
  // Maximum number of sets in one neighborhood family.
  unsigned cap = 3;
  // Extra conditions; only cond2, star and starstar are meaningful.
  std::vector<Condition> required;
  // When false, frames violating cond1 are produced too (the order is
  // always a partial order).
  bool require_cond1 = true;
};

// Exhaustive, deterministic enumeration of labeled frames. Order: world
// count, then the order relation (bitmask over off-diagonal pairs in
// row-major order, ascending), then the neighborhood families of worlds
// 0, 1, ... lexicographically, where families are ranked by size and then by
// their ascending list of sets.
class FrameEnumerator {
 public:
  explicit FrameEnumerator(EnumerationOptions opts) : opts_(std::move(opts)) {
    if (opts_.min_worlds < 1 || opts_.max_worlds > kMaxSearchWorlds || opts_.min_worlds > opts_.max_worlds)
      throw std::invalid_argument("world bounds must satisfy 1 <= min <= max <= " + std::to_string(kMaxSearchWorlds));
    if (opts_.cap > kMaxFamilyCap)
      throw std::invalid_argument("family cap must be at most " + std::to_string(kMaxFamilyCap));
    for (Condition c : opts_.required) {
      if (c == Condition::Cond2) need_cond2_ = true;
      else if (c == Condition::Star) need_star_ = true;
      else if (c == Condition::StarStar) need_starstar_ = true;
      else if (c != Condition::Cond1 && c != Condition::OrderAxioms)
        throw std::invalid_argument("condition " + std::string(condition_name(c)) + " cannot filter frames");
    }
  }

  // Calls visit(const Frame&) for each frame until it returns false.
  // Returns true when the enumeration ran to completion.
  template <class Visit>
  bool run(Visit&& visit) {
    for (unsigned n = opts_.min_worlds; n <= opts_.max_worlds; ++n)
      if (!run_size(n, visit)) return false;
    return true;
  }

 private:
  using FamilyMask = std::uint32_t;  // bit s set iff WorldSet(s) is in the family

  template <class Visit>
  bool run_size(unsigned n, Visit& visit) {
    n_ = n;
    const unsigned set_count = 1u << n;
    build_families(set_count);
    for (World v = 0; v < n; ++v) {
      contains_[v] = 0;
      for (unsigned s = 0; s < set_count; ++s)
        if ((s >> v) & 1u) contains_[v] |= FamilyMask{1} << s;
    }
    std::vector<OrderPair> off_diagonal;
    for (World w = 0; w < n; ++w)
      for (World v = 0; v < n; ++v)
        if (w != v) off_diagonal.emplace_back(w, v);
    const std::uint32_t order_limit = std::uint32_t{1} << off_diagonal.size();
    for (std::uint32_t om = 0; om < order_limit; ++om) {
      std::vector<OrderPair> pairs;
      for (std::size_t bit = 0; bit < off_diagonal.size(); ++bit)
        if ((om >> bit) & 1u) pairs.push_back(off_diagonal[bit]);
      Frame frame(n, pairs);
      if (!check_order_axioms(frame).holds) continue;
      frame.nbhd_.assign(n, Family{});
      if (!assign(0, frame, visit)) return false;
    }
    return true;
  }

  void build_families(unsigned set_count) {
    families_.clear();
    const std::uint64_t limit = std::uint64_t{1} << set_count;
    for (std::uint64_t fm = 0; fm < limit; ++fm) {
      auto mask = static_cast<FamilyMask>(fm);
      if (static_cast<unsigned>(std::popcount(mask)) > opts_.cap) continue;
      if (need_starstar_ && !downward_closed(mask)) continue;
      families_.push_back(mask);
    }
    auto members = [](FamilyMask m) {
      std::vector<unsigned> out;
      for (; m != 0; m &= m - 1) out.push_back(static_cast<unsigned>(std::countr_zero(m)));
      return out;
    };
    std::sort(families_.begin(), families_.end(), [&](FamilyMask a, FamilyMask b) {
      if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
      return members(a) < members(b);
    });
    family_objects_.clear();
    for (FamilyMask m : families_) {
      std::vector<WorldSet> sets;
      for (unsigned s : members(m)) sets.push_back(WorldSet(s));
      family_objects_.emplace_back(std::move(sets));
    }
  }

  static bool downward_closed(FamilyMask m) {
    for (FamilyMask rest = m; rest != 0; rest &= rest - 1) {
      auto x = static_cast<std::uint32_t>(std::countr_zero(rest));
      std::uint32_t sub = 0;
      do {
        if (!((m >> sub) & 1u)) return false;
        sub = (sub - x) & x;
      } while (sub != 0);
    }
    return true;
  }

  // Constraints between world k (just assigned) and the earlier worlds.
  bool consistent(const Frame& frame, World k) const {
    const FamilyMask fk = families_[choice_[k]];
    for (World i = 0; i < k; ++i) {
      const FamilyMask fi = families_[choice_[i]];
      if (frame.leq(i, k) && !pair_ok(fi, fk, k)) return false;
      if (frame.leq(k, i) && !pair_ok(fk, fi, i)) return false;
    }
    return true;
  }

  // For w <= v with families fw, fv.
  bool pair_ok(FamilyMask fw, FamilyMask fv, World v) const {
    if (opts_.require_cond1 && (fw & contains_[v] & ~fv) != 0) return false;
    if (need_cond2_ && (fw & ~fv) != 0) return false;
    return true;
  }

  bool star_ok() const {
    for (World w = 0; w < n_; ++w) {
      const FamilyMask fw = families_[choice_[w]];
      for (FamilyMask rest = fw; rest != 0; rest &= rest - 1) {
        unsigned x = static_cast<unsigned>(std::countr_zero(rest));
        std::uint32_t owners = 0;
        for (World v = 0; v < n_; ++v)
          if ((families_[choice_[v]] >> x) & 1u) owners |= 1u << v;
        if (!((fw >> owners) & 1u)) return false;
      }
    }
    return true;
  }

  template <class Visit>
  bool assign(World k, Frame& frame, Visit& visit) {
    if (k == n_) {
      if (need_star_ && !star_ok()) return true;
      for (World w = 0; w < n_; ++w) frame.nbhd_[w] = family_objects_[choice_[w]];
      return visit(static_cast<const Frame&>(frame));
    }
    for (std::size_t fi = 0; fi < families_.size(); ++fi) {
      choice_[k] = fi;
      if (!consistent(frame, k)) continue;
      if (!assign(k + 1, frame, visit)) return false;
    }
    return true;
  }

  EnumerationOptions opts_;
  bool need_cond2_ = false;
  bool need_star_ = false;
  bool need_starstar_ = false;
  unsigned n_ = 0;
  std::vector<FamilyMask> families_;
  std::vector<Family> family_objects_;
  std::array<FamilyMask, kMaxSearchWorlds> contains_{};
  std::array<std::size_t, kMaxSearchWorlds> choice_{};
};

inline std::vector<Frame> enumerate_frames(unsigned max_worlds, unsigned cap, std::vector<Condition> required = {}) {
  std::vector<Frame> out;
  FrameEnumerator(EnumerationOptions{1, max_worlds, cap, std::move(required)}).run([&](const Frame& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

struct SearchSpec {
  Formula scheme;
  unsigned max_worlds = kMaxSearchWorlds;
  std::vector<Condition> required;
  BoxMode mode = BoxMode::Standard;
  unsigned cap = 3;
  // Per-frame limit on assignments to the scheme letters.
  std::size_t assignment_budget = kDefaultAssignmentBudget;
  // Limit on assignments across the whole search; 0 means unlimited.
  std::uint64_t model_budget = 0;
};

enum class Verdict { CountermodelFound, Exhausted, BudgetExhausted };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::CountermodelFound: return "countermodel-found";
    case Verdict::Exhausted: return "exhausted-no-countermodel";
    case Verdict::BudgetExhausted: return "sample-budget-exhausted";
  }
  return "?";
}

struct SearchStats {
  std::uint64_t frames_visited = 0;
  std::uint64_t models_visited = 0;
  double elapsed_ms = 0;
};

struct SearchOutcome {
  Verdict verdict = Verdict::Exhausted;
  std::optional<Model> model;
  std::optional<World> world;
  SearchStats stats;
  std::string message;
};

inline void validate(const SearchSpec& spec) {
  if (spec.max_worlds < 1 || spec.max_worlds > kMaxSearchWorlds)
    throw std::invalid_argument("max worlds must be in 1.." + std::to_string(kMaxSearchWorlds));
  if (spec.cap > kMaxFamilyCap) throw std::invalid_argument("family cap must be in 0.." + std::to_string(kMaxFamilyCap));
  if (spec.mode != BoxMode::Standard && spec.mode != BoxMode::Simple)
    throw std::invalid_argument("search supports the standard and simple box modes only");
  for (Condition c : spec.required)
    if (c != Condition::Cond2 && c != Condition::Star && c != Condition::StarStar)
      throw std::invalid_argument("required conditions must be among cond2, star, starstar");
}

namespace detail {

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace detail

// Walks the frames admitted by the spec in enumeration order and returns the
// first frame, assignment and world refuting the scheme. The scheme's letters
// become the atoms of the returned model.
inline SearchOutcome find_countermodel(const SearchSpec& spec) {
  validate(spec);
  detail::Stopwatch clock;
  SearchOutcome out;
  SchemeChecker checker(spec.scheme, spec.mode, spec.assignment_budget);
  FrameEnumerator frames({1, spec.max_worlds, spec.cap, spec.required});
  try {
    frames.run([&](const Frame& f) {
      ++out.stats.frames_visited;
      if (auto failure = checker.first_failure(f)) {
        out.verdict = Verdict::CountermodelFound;
        out.model.emplace(f, std::move(failure->assignment));
        out.world = failure->world;
        return false;
      }
      if (spec.model_budget != 0 && checker.models_checked() >= spec.model_budget) {
        out.verdict = Verdict::BudgetExhausted;
        out.message = "model budget of " + std::to_string(spec.model_budget) + " exhausted";
        return false;
      }
      return true;
    });
  } catch (const BudgetExceeded& e) {
    out.verdict = Verdict::BudgetExhausted;
    out.message = e.what();
  }
  out.stats.models_visited = checker.models_checked();
  out.stats.elapsed_ms = clock.elapsed_ms();
  return out;
}

// Looks for a model where p -> q is valid but []p -> []q is not, which
// shows the monotonicity rule is not admissible.
inline SearchOutcome rule_countermodel_mon(unsigned max_worlds, unsigned cap = 3) {
  detail::Stopwatch clock;
  const Formula p = Formula::atom("p"), q = Formula::atom("q");
  const CompiledFormula premise(Formula::implies(p, q));
  const CompiledFormula conclusion(Formula::implies(Formula::box(p), Formula::box(q)));
  std::vector<WorldSet> premise_out(premise.size()), conclusion_out(conclusion.size());
  SearchOutcome out;
  FrameEnumerator({1, max_worlds, cap, {}}).run([&](const Frame& f) {
    ++out.stats.frames_visited;
    const std::vector<WorldSet> ups = upsets(f);
    for (WorldSet pv : ups)
      for (WorldSet qv : ups) {
        ++out.stats.models_visited;
        // Both programs have atoms {p, q} in that order.
        const WorldSet values[] = {pv, qv};
        premise.evaluate(f, values, BoxMode::Standard, nullptr, premise_out);
        if (premise_out[premise.root()] != f.universe()) continue;
        conclusion.evaluate(f, values, BoxMode::Standard, nullptr, conclusion_out);
        WorldSet ext = conclusion_out[conclusion.root()];
        if (ext == f.universe()) continue;
        out.verdict = Verdict::CountermodelFound;
        out.model.emplace(f, Valuation{{"p", pv}, {"q", qv}});
        out.world = (f.universe() - ext).members().front();
        return false;
      }
    return true;
  });
  out.stats.elapsed_ms = clock.elapsed_ms();
  return out;
}

struct StarStarFourReport {
  std::uint64_t frames_checked = 0;
  // A frame closed under subsets on which axiom 4 fails; never expected.
  std::optional<Frame> counterexample;
  std::optional<Valuation> counterexample_assignment;
  // Replay of the three-world model satisfying the star condition.
  bool replay_star_holds = false;
  bool replay_starstar_holds = true;
  bool replay_forces_box = false;
  bool replay_forces_box_box = true;

  bool passed() const {
    return !counterexample && replay_star_holds && !replay_starstar_holds && replay_forces_box && !replay_forces_box_box;
  }
};

// Checks that []a -> [][]a is valid on every enumerated frame whose
// neighborhoods are closed under subsets, and replays the model showing the
// star condition alone does not give axiom 4.
inline StarStarFourReport verify_starstar_implies_four(unsigned max_worlds, unsigned cap = 3) {
  StarStarFourReport report;
  SchemeChecker four(parse("[]a -> [][]a"), BoxMode::Standard);
  FrameEnumerator({1, max_worlds, cap, {Condition::StarStar}}).run([&](const Frame& f) {
    ++report.frames_checked;
    if (auto failure = four.first_failure(f)) {
      report.counterexample = f;
      report.counterexample_assignment = std::move(failure->assignment);
      return false;
    }
    return true;
  });
  const Model seven = fixtures::star_without_four();
  report.replay_star_holds = check_star(seven.frame()).holds;
  report.replay_starstar_holds = check_starstar(seven.frame()).holds;
  EvalContext ctx(seven, BoxMode::Standard);
  report.replay_forces_box = forces(ctx, 0, parse("[]p"));
  report.replay_forces_box_box = forces(ctx, 0, parse("[][]p"));
  return report;
}

}  // namespace pnlogic

#endif  // PNLOGIC_SEARCH_HPP
