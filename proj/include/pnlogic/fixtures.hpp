#ifndef PNLOGIC_FIXTURES_HPP
#define PNLOGIC_FIXTURES_HPP

#include "pnlogic/frame.hpp"

// Small models that witness the known facts about this logic. World names
// in the comments map to indices as listed.
namespace pnlogic::fixtures {

// w=0, v=1; identity order; N(w)={{w}}, N(v)={{v}}; V(p)={w,v}, V(q)={w}.
// w forces [](p & q) but not []p.
inline Model two_world_separation() {
  Frame frame(2, {}, {Family{WorldSet{0}}, Family{WorldSet{1}}});
  return Model(std::move(frame), {{"p", WorldSet{0, 1}}, {"q", WorldSet{0}}});
}

// s=0, c=1, v=2; v <= s; N(s)={{s},{s,c,v}}, N(c)={{c}}, N(v)={{s,c,v}};
// V(p)={s}, V(q)={s,c}. v forces [](p -> q) but not []p -> []q.
inline Model k_countermodel() {
  Frame frame(3, {{2, 0}}, {Family{WorldSet{0}, WorldSet{0, 1, 2}}, Family{WorldSet{1}}, Family{WorldSet{0, 1, 2}}});
  return Model(std::move(frame), {{"p", WorldSet{0}}, {"q", WorldSet{0, 1}}});
}

// w=0, v=1; identity order; N(w)={{w}}, N(v)={{v}}; V(p)={w}, V(q)={w,v}.
// p -> q is valid, yet w forces []p and not []q.
inline Model mon_countermodel() {
  Frame frame(2, {}, {Family{WorldSet{0}}, Family{WorldSet{1}}});
  return Model(std::move(frame), {{"p", WorldSet{0}}, {"q", WorldSet{0, 1}}});
}

// v=0, z=1, u=2; identity order; N(v)=N(z)={{u,v},{v,z}}, N(u)={{u}};
// V(p)={v,u}. Satisfies the star condition, yet v forces []p and not [][]p.
inline Model star_without_four() {
  Family vz{WorldSet{0, 2}, WorldSet{0, 1}};
  Frame frame(3, {}, {vz, vz, Family{WorldSet{2}}});
  return Model(std::move(frame), {{"p", WorldSet{0, 2}}});
}

}  // namespace pnlogic::fixtures

#endif  // PNLOGIC_FIXTURES_HPP
