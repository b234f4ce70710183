#ifndef PNLOGIC_SEMANTICS_HPP
#define PNLOGIC_SEMANTICS_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pnlogic/fixtures.hpp"
#include "pnlogic/formula.hpp"
#include "pnlogic/frame.hpp"

namespace pnlogic {

// How []phi is read at a world w, where E is the extension of phi:
//   Standard           w in E and E in N(w)
//   Simple             E in N(w)
//   RelPlain           R(w) subset of E
//   RelReflexiveStyle  w in E and R(w) subset of E
enum class BoxMode { Standard, Simple, RelPlain, RelReflexiveStyle };

inline bool is_relational(BoxMode m) { return m == BoxMode::RelPlain || m == BoxMode::RelReflexiveStyle; }

inline std::string_view box_mode_name(BoxMode m) {
  switch (m) {
    case BoxMode::Standard: return "standard";
    case BoxMode::Simple: return "simple";
    case BoxMode::RelPlain: return "rel-plain";
    case BoxMode::RelReflexiveStyle: return "rel-reflexive";
  }
  return "?";
}

inline std::optional<BoxMode> parse_box_mode(std::string_view s) {
  for (BoxMode m : {BoxMode::Standard, BoxMode::Simple, BoxMode::RelPlain, BoxMode::RelReflexiveStyle})
    if (box_mode_name(m) == s) return m;
  return std::nullopt;
}

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A modal accessibility relation over at most kMaxWorlds worlds.
class Relation {
 public:
  Relation() = default;
  Relation(std::initializer_list<OrderPair> pairs) {
    for (auto [w, v] : pairs) add(w, v);
  }
  explicit Relation(std::span<const OrderPair> pairs) {
    for (auto [w, v] : pairs) add(w, v);
  }

  void add(World w, World v) {
    if (w >= kMaxWorlds || v >= kMaxWorlds) throw std::out_of_range("relation pair out of range");
    succ_[w].insert(v);
  }
  WorldSet image(World w) const { return succ_[w]; }
  bool related(World w, World v) const { return succ_[w].contains(v); }

  std::vector<OrderPair> pairs() const {
    std::vector<OrderPair> out;
    for (World w = 0; w < kMaxWorlds; ++w) succ_[w].for_each([&](World v) { out.emplace_back(w, v); });
    return out;
  }

  // Largest world index mentioned plus one.
  unsigned bound() const {
    unsigned b = 0;
    for (World w = 0; w < kMaxWorlds; ++w)
      if (!succ_[w].empty()) b = std::max({b, w + 1, succ_[w].bound()});
    return b;
  }

 private:
  std::array<WorldSet, kMaxWorlds> succ_{};
};

// A formula flattened into a DAG of instructions in evaluation order.
// Structurally equal subformulas share one instruction, so each distinct
// subformula is evaluated once per pass. Atoms are numbered by sorted name.
class CompiledFormula {
 public:
  enum class Op : std::uint8_t { Atom, Bottom, And, Or, Implies, Box, Nabla, Diamond };

  struct Instr {
    Op op;
    std::uint32_t a = 0;  // atom slot, or first operand
    std::uint32_t b = 0;  // second operand
    // Independent of the neighborhood function (no modal operator below).
    bool is_static = true;
  };

  explicit CompiledFormula(const Formula& f) {
    std::set<std::string> names = pnlogic::atoms(f);
    atoms_.assign(names.begin(), names.end());
    std::unordered_map<Formula, std::uint32_t, FormulaHash> seen;
    compile(f, seen);
    for (std::uint32_t i = 0; i < instrs_.size(); ++i) (instrs_[i].is_static ? static_ : dynamic_).push_back(i);
  }

  const std::vector<std::string>& atoms() const { return atoms_; }
  std::size_t size() const { return instrs_.size(); }
  std::uint32_t root() const { return static_cast<std::uint32_t>(instrs_.size() - 1); }
  const Instr& instr(std::uint32_t i) const { return instrs_[i]; }
  bool root_is_static() const { return instrs_.back().is_static; }
  bool uses_neighborhood_possibility() const { return has_possibility_; }

  std::optional<std::uint32_t> atom_slot(std::string_view name) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), name);
    if (it == atoms_.end() || *it != name) return std::nullopt;
    return static_cast<std::uint32_t>(it - atoms_.begin());
  }

  // Fills `out[i]` with the extension of instruction i, for every i.
  void evaluate(const Frame& frame, std::span<const WorldSet> atom_values, BoxMode mode, const Relation* rel,
                std::span<WorldSet> out) const {
    for (std::uint32_t i = 0; i < instrs_.size(); ++i) out[i] = step(i, frame, atom_values, mode, rel, out);
  }

  // Static instructions only; their results depend on the order and the
  // atom values, never on neighborhoods.
  void evaluate_static(const Frame& frame, std::span<const WorldSet> atom_values, std::span<WorldSet> out) const {
    for (std::uint32_t i : static_) out[i] = step(i, frame, atom_values, BoxMode::Standard, nullptr, out);
  }

  // Remaining instructions, assuming `out` already holds the static ones.
  void evaluate_dynamic(const Frame& frame, std::span<const WorldSet> atom_values, BoxMode mode, const Relation* rel,
                        std::span<WorldSet> out) const {
    for (std::uint32_t i : dynamic_) out[i] = step(i, frame, atom_values, mode, rel, out);
  }

 private:
  std::uint32_t compile(const Formula& f, std::unordered_map<Formula, std::uint32_t, FormulaHash>& seen) {
    if (auto it = seen.find(f); it != seen.end()) return it->second;
    Instr ins{};
    switch (f.kind()) {
      case Connective::Atom:
        ins.op = Op::Atom;
        ins.a = *atom_slot(f.name());
        break;
      case Connective::Bottom: ins.op = Op::Bottom; break;
      case Connective::And:
      case Connective::Or:
      case Connective::Implies: {
        ins.op = f.kind() == Connective::And ? Op::And : f.kind() == Connective::Or ? Op::Or : Op::Implies;
        ins.a = compile(f.lhs(), seen);
        ins.b = compile(f.rhs(), seen);
        ins.is_static = instrs_[ins.a].is_static && instrs_[ins.b].is_static;
        break;
      }
      case Connective::Box:
      case Connective::Nabla:
      case Connective::Diamond:
        ins.op = f.kind() == Connective::Box ? Op::Box : f.kind() == Connective::Nabla ? Op::Nabla : Op::Diamond;
        ins.a = compile(f.operand(), seen);
        ins.is_static = false;
        if (f.kind() != Connective::Box) has_possibility_ = true;
        break;
    }
    instrs_.push_back(ins);
    auto idx = static_cast<std::uint32_t>(instrs_.size() - 1);
    seen.emplace(f, idx);
    return idx;
  }

  WorldSet step(std::uint32_t i, const Frame& frame, std::span<const WorldSet> atom_values, BoxMode mode,
                const Relation* rel, std::span<const WorldSet> out) const {
    const Instr& ins = instrs_[i];
    const unsigned n = frame.world_count();
    switch (ins.op) {
      case Op::Atom: return atom_values[ins.a] & frame.universe();
      case Op::Bottom: return {};
      case Op::And: return out[ins.a] & out[ins.b];
      case Op::Or: return out[ins.a] | out[ins.b];
      case Op::Implies: {
        // w forces a -> b iff no successor of w forces a without forcing b.
        WorldSet bad = out[ins.a] - out[ins.b];
        WorldSet res;
        for (World w = 0; w < n; ++w)
          if (!frame.successors(w).intersects(bad)) res.insert(w);
        return res;
      }
      case Op::Box: {
        WorldSet ext = out[ins.a];
        WorldSet res;
        for (World w = 0; w < n; ++w) {
          bool holds = false;
          switch (mode) {
            case BoxMode::Standard: holds = ext.contains(w) && frame.nbhd(w).contains(ext); break;
            case BoxMode::Simple: holds = frame.nbhd(w).contains(ext); break;
            case BoxMode::RelPlain: holds = rel->image(w).subset_of(ext); break;
            case BoxMode::RelReflexiveStyle: holds = ext.contains(w) && rel->image(w).subset_of(ext); break;
          }
          if (holds) res.insert(w);
        }
        return res;
      }
      case Op::Nabla: {
        WorldSet ext = out[ins.a];
        WorldSet res;
        for (World w = 0; w < n; ++w)
          if (std::any_of(frame.nbhd(w).begin(), frame.nbhd(w).end(), [&](WorldSet x) { return x.intersects(ext); }))
            res.insert(w);
        return res;
      }
      case Op::Diamond: {
        WorldSet ext = out[ins.a];
        WorldSet res;
        for (World w = 0; w < n; ++w)
          if (std::all_of(frame.nbhd(w).begin(), frame.nbhd(w).end(), [&](WorldSet x) { return x.intersects(ext); }))
            res.insert(w);
        return res;
      }
    }
    return {};
  }

  std::vector<std::string> atoms_;
  std::vector<Instr> instrs_;
  std::vector<std::uint32_t> static_;
  std::vector<std::uint32_t> dynamic_;
  bool has_possibility_ = false;
};

// A model plus the reading of the box. The relational modes need a relation
// and ignore neighborhoods; the neighborhood modes must not be given one.
// Holds a reference: the model must outlive the context.
class EvalContext {
 public:
  EvalContext(const Model& model, BoxMode mode = BoxMode::Standard, std::optional<Relation> relation = std::nullopt)
      : model_(&model), mode_(mode), relation_(std::move(relation)) {
    if (is_relational(mode_) != relation_.has_value())
      throw EvalError(is_relational(mode_) ? "relational box mode requires a relation"
                                           : "neighborhood box modes take no relation");
    if (relation_ && relation_->bound() > model.frame().world_count())
      throw EvalError("relation mentions worlds outside the model");
  }

  const Model& model() const { return *model_; }
  BoxMode mode() const { return mode_; }
  const std::optional<Relation>& relation() const { return relation_; }

 private:
  const Model* model_;
  BoxMode mode_;
  std::optional<Relation> relation_;
};

inline std::vector<WorldSet> atom_values(const CompiledFormula& program, const Model& model) {
  std::vector<WorldSet> values;
  values.reserve(program.atoms().size());
  for (const auto& name : program.atoms()) values.push_back(model.value(name));
  return values;
}

inline WorldSet extension(const EvalContext& ctx, const CompiledFormula& program) {
  if (is_relational(ctx.mode()) && program.uses_neighborhood_possibility())
    throw EvalError("possibility operators are only defined over neighborhoods");
  std::vector<WorldSet> values = atom_values(program, ctx.model());
  std::vector<WorldSet> out(program.size());
  program.evaluate(ctx.model().frame(), values, ctx.mode(), ctx.relation() ? &*ctx.relation() : nullptr, out);
  return out[program.root()];
}

// The set of worlds forcing f.
inline WorldSet extension(const EvalContext& ctx, const Formula& f) { return extension(ctx, CompiledFormula(f)); }

inline bool forces(const EvalContext& ctx, World w, const Formula& f) {
  if (w >= ctx.model().frame().world_count()) throw std::out_of_range("world " + std::to_string(w) + " out of range");
  return extension(ctx, f).contains(w);
}

// A pair (w, v) with w <= v where w forces f and v does not, if any.
inline std::optional<std::pair<World, World>> check_monotonicity(const EvalContext& ctx, const Formula& f) {
  const Frame& frame = ctx.model().frame();
  WorldSet ext = extension(ctx, f);
  for (World w : ext.members()) {
    WorldSet missing = frame.successors(w) - ext;
    if (!missing.empty()) return std::pair{w, missing.members().front()};
  }
  return std::nullopt;
}

struct RefutationRow {
  std::vector<OrderPair> relation;
  bool holds_first = false;   // the formula that should be forced
  bool holds_second = false;  // the formula that should not be forced
  bool match = false;         // first forced and second not
};

struct RefutationTranscript {
  BoxMode clause = BoxMode::RelPlain;
  World world = 0;
  std::string first;
  std::string second;
  // What the neighborhood reading (Standard mode) gives on the base model.
  bool neighborhood_first = false;
  bool neighborhood_second = false;
  std::vector<RefutationRow> rows;
  std::size_t matches = 0;
};

// Tries every relation R over the worlds of `base` under a relational box
// clause, keeping worlds and valuation fixed, and records whether R makes
// `first` forced and `second` unforced at `world`.
inline RefutationTranscript birelational_refutation(const Model& base, BoxMode clause, World world, const Formula& first,
                                                    const Formula& second, std::string first_text = {},
                                                    std::string second_text = {}) {
  if (!is_relational(clause)) throw EvalError("refutation needs a relational box clause");
  const unsigned n = base.frame().world_count();
  if (n > 4) throw EvalError("relation enumeration is limited to 4 worlds");
  RefutationTranscript t;
  t.clause = clause;
  t.world = world;
  t.first = std::move(first_text);
  t.second = std::move(second_text);
  EvalContext nctx(base, BoxMode::Standard);
  t.neighborhood_first = forces(nctx, world, first);
  t.neighborhood_second = forces(nctx, world, second);
  CompiledFormula p1(first), p2(second);
  const unsigned pair_count = n * n;
  for (std::uint32_t mask = 0; mask < (1u << pair_count); ++mask) {
    Relation rel;
    for (unsigned bit = 0; bit < pair_count; ++bit)
      if ((mask >> bit) & 1u) rel.add(bit / n, bit % n);
    EvalContext ctx(base, clause, rel);
    RefutationRow row;
    row.relation = rel.pairs();
    row.holds_first = extension(ctx, p1).contains(world);
    row.holds_second = extension(ctx, p2).contains(world);
    row.match = row.holds_first && !row.holds_second;
    if (row.match) ++t.matches;
    t.rows.push_back(std::move(row));
  }
  return t;
}

// The two-world universe where the neighborhood reading separates
// [](p & q) from []p at world 0.
inline RefutationTranscript birelational_refutation(BoxMode clause) {
  Formula p = Formula::atom("p"), q = Formula::atom("q");
  return birelational_refutation(fixtures::two_world_separation(), clause, 0, Formula::box(Formula::conj(p, q)),
                                 Formula::box(p), "[](p & q)", "[]p");
}

}  // namespace pnlogic

#endif  // PNLOGIC_SEMANTICS_HPP
