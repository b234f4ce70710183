#ifndef PNLOGIC_WORLD_SET_HPP
#define PNLOGIC_WORLD_SET_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace pnlogic {

using World = unsigned;

// Frames are capped at 16 worlds so a set of worlds fits in one machine word.
inline constexpr unsigned kMaxWorlds = 16;

// A finite set of world indices, stored as a bitmask.
class WorldSet {
 public:
  constexpr WorldSet() = default;
  constexpr explicit WorldSet(std::uint32_t bits) : bits_(bits) {}
  WorldSet(std::initializer_list<World> worlds) {
    for (World w : worlds) insert(w);
  }

  static constexpr WorldSet full(unsigned world_count) {
    return WorldSet(world_count >= 32 ? ~0u : ((1u << world_count) - 1u));
  }
  static constexpr WorldSet singleton(World w) { return WorldSet(1u << w); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool contains(World w) const { return (bits_ >> w) & 1u; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr unsigned size() const { return static_cast<unsigned>(std::popcount(bits_)); }
  constexpr bool subset_of(WorldSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(WorldSet other) const { return (bits_ & other.bits_) != 0; }

  constexpr void insert(World w) { bits_ |= 1u << w; }
  constexpr void erase(World w) { bits_ &= ~(1u << w); }

  // Highest member plus one, or zero for the empty set.
  constexpr unsigned bound() const { return 32u - static_cast<unsigned>(std::countl_zero(bits_)); }

  std::vector<World> members() const {
    std::vector<World> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<World>(std::countr_zero(b)));
    return out;
  }

  template <class F>
  constexpr void for_each(F&& f) const {
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) f(static_cast<World>(std::countr_zero(b)));
  }

  friend constexpr WorldSet operator&(WorldSet a, WorldSet b) { return WorldSet(a.bits_ & b.bits_); }
  friend constexpr WorldSet operator|(WorldSet a, WorldSet b) { return WorldSet(a.bits_ | b.bits_); }
  friend constexpr WorldSet operator-(WorldSet a, WorldSet b) { return WorldSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(WorldSet, WorldSet) = default;
  // Canonical order of sets inside a neighborhood family.
  friend constexpr auto operator<=>(WorldSet a, WorldSet b) { return a.bits_ <=> b.bits_; }

 private:
  std::uint32_t bits_ = 0;
};

inline std::string to_string(WorldSet s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](World w) {
    if (!first) out += ",";
    out += std::to_string(w);
    first = false;
  });
  return out + "}";
}

}  // namespace pnlogic

#endif  // PNLOGIC_WORLD_SET_HPP
