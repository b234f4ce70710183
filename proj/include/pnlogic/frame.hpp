#ifndef PNLOGIC_FRAME_HPP
#define PNLOGIC_FRAME_HPP

#include <algorithm>
#include <array>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pnlogic/formula.hpp"
#include "pnlogic/world_set.hpp"

namespace pnlogic {

// A neighborhood family: a finite set of world-sets, kept deduplicated and in
// ascending order so that equal families compare equal.
class Family {
 public:
  Family() = default;
  Family(std::initializer_list<WorldSet> sets) : sets_(sets) { normalize(); }
  explicit Family(std::vector<WorldSet> sets) : sets_(std::move(sets)) { normalize(); }

  bool contains(WorldSet s) const { return std::binary_search(sets_.begin(), sets_.end(), s); }
  bool empty() const { return sets_.empty(); }
  std::size_t size() const { return sets_.size(); }
  const std::vector<WorldSet>& sets() const { return sets_; }
  auto begin() const { return sets_.begin(); }
  auto end() const { return sets_.end(); }

  bool subset_of(const Family& other) const {
    return std::includes(other.sets_.begin(), other.sets_.end(), sets_.begin(), sets_.end());
  }

  friend bool operator==(const Family&, const Family&) = default;

 private:
  void normalize() {
    std::sort(sets_.begin(), sets_.end());
    sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
  }

  std::vector<WorldSet> sets_;
};

using OrderPair = std::pair<World, World>;

class FrameEnumerator;

// Worlds 0..n-1, an order relation (w <= v) and a neighborhood function. The
// relation is reflexively closed on construction; other order axioms and the
// neighborhood/order coherence conditions are checked by the validators, not
// enforced here, so malformed frames can still be inspected.
class Frame {
 public:
  Frame(unsigned world_count, std::span<const OrderPair> order = {}, std::vector<Family> nbhd = {})
      : world_count_(world_count) {
    if (world_count == 0 || world_count > kMaxWorlds)
      throw std::invalid_argument("world count must be in 1.." + std::to_string(kMaxWorlds));
    for (World w = 0; w < world_count_; ++w) up_[w] = WorldSet::singleton(w);
    WorldSet explicit_reflexive;
    for (auto [w, v] : order) {
      check_world(w);
      check_world(v);
      if (w == v) explicit_reflexive.insert(w);
      up_[w].insert(v);
    }
    reflexive_added_ = world_count_ - explicit_reflexive.size();
    if (nbhd.size() > world_count_) throw std::invalid_argument("neighborhood map names more worlds than the frame has");
    nbhd.resize(world_count_);
    for (const Family& fam : nbhd)
      for (WorldSet s : fam)
        if (!s.subset_of(universe())) throw std::out_of_range("neighborhood set " + to_string(s) + " leaves the universe");
    nbhd_ = std::move(nbhd);
  }

  Frame(unsigned world_count, std::initializer_list<OrderPair> order, std::vector<Family> nbhd = {})
      : Frame(world_count, std::span<const OrderPair>(order.begin(), order.size()), std::move(nbhd)) {}

  unsigned world_count() const { return world_count_; }
  WorldSet universe() const { return WorldSet::full(world_count_); }

  bool leq(World w, World v) const { return up_[w].contains(v); }
  // {v : w <= v}
  WorldSet successors(World w) const { return up_[w]; }
  const Family& nbhd(World w) const { return nbhd_[w]; }

  // Reflexive pairs that had to be added because the input omitted them.
  unsigned reflexive_pairs_added() const { return reflexive_added_; }

  // Non-reflexive pairs of the order, in row-major order.
  std::vector<OrderPair> strict_pairs() const {
    std::vector<OrderPair> out;
    for (World w = 0; w < world_count_; ++w)
      up_[w].for_each([&](World v) {
        if (v != w) out.emplace_back(w, v);
      });
    return out;
  }

  bool identity_order() const {
    for (World w = 0; w < world_count_; ++w)
      if (up_[w] != WorldSet::singleton(w)) return false;
    return true;
  }

  bool same_order(const Frame& other) const {
    return world_count_ == other.world_count_ && std::equal(up_.begin(), up_.begin() + world_count_, other.up_.begin());
  }

  friend bool operator==(const Frame& a, const Frame& b) { return a.same_order(b) && a.nbhd_ == b.nbhd_; }

 private:
  friend class FrameEnumerator;

  void check_world(World w) const {
    if (w >= world_count_) throw std::out_of_range("world index " + std::to_string(w) + " out of range");
  }

  unsigned world_count_;
  std::array<WorldSet, kMaxWorlds> up_{};
  std::vector<Family> nbhd_;
  unsigned reflexive_added_ = 0;
};

using Valuation = std::map<std::string, WorldSet>;

// A frame together with an atom valuation. Atoms missing from the valuation
// denote the empty set.
class Model {
 public:
  Model(Frame frame, Valuation valuation = {}) : frame_(std::move(frame)), valuation_(std::move(valuation)) {
    for (const auto& [atom, set] : valuation_) {
      if (!is_identifier(atom)) throw std::invalid_argument("invalid atom name '" + atom + "'");
      if (!set.subset_of(frame_.universe()))
        throw std::out_of_range("valuation of '" + atom + "' leaves the universe");
    }
  }

  const Frame& frame() const { return frame_; }
  const Valuation& valuation() const { return valuation_; }
  WorldSet value(const std::string& atom) const {
    auto it = valuation_.find(atom);
    return it == valuation_.end() ? WorldSet{} : it->second;
  }

  friend bool operator==(const Model&, const Model&) = default;

 private:
  Frame frame_;
  Valuation valuation_;
};

// Least superset of `s` closed under the order.
inline WorldSet upward_closure(const Frame& frame, WorldSet s) {
  WorldSet cur = s;
  for (;;) {
    WorldSet next = cur;
    cur.for_each([&](World w) { next = next | frame.successors(w); });
    if (next == cur) return cur;
    cur = next;
  }
}

inline bool is_upward_closed(const Frame& frame, WorldSet s) {
  bool closed = true;
  s.for_each([&](World w) { closed = closed && frame.successors(w).subset_of(s); });
  return closed;
}

}  // namespace pnlogic

#endif  // PNLOGIC_FRAME_HPP
