#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "generators.hpp"
#include "pnlogic/proof.hpp"
#include "pnlogic/search.hpp"
#include "pnlogic/syntax.hpp"

namespace pnlogic {
namespace {

namespace fs = std::filesystem;

std::vector<ProofLine> proof(const char* text) { return parse_proof(text); }

const char* kTInstance =
    "1: []p -> p ; axiom T\n"
    "2: ([]p -> p) -> (q -> ([]p -> p)) ; axiom A1\n"
    "3: q -> ([]p -> p) ; mp 1 2\n";

const char* kIdentity =
    "1: p -> ((p -> p) -> p) ; axiom A1\n"
    "2: (p -> ((p -> p) -> p)) -> ((p -> (p -> p)) -> (p -> p)) ; axiom A2\n"
    "3: (p -> (p -> p)) -> (p -> p) ; mp 1 2\n"
    "4: p -> (p -> p) ; axiom A1\n"
    "5: p -> p ; mp 4 3\n";

TEST(MatchAxiom, Examples) {
  auto t = match_axiom(parse("[]p -> p"));
  ASSERT_TRUE(t);
  EXPECT_EQ(t->id, "T");
  EXPECT_EQ(t->substitution, (Substitution{{"a", parse("p")}}));

  auto a1 = match_axiom(parse("p -> (q -> p)"));
  ASSERT_TRUE(a1);
  EXPECT_EQ(a1->id, "A1");
  EXPECT_EQ(substitute(find_scheme("A1")->templ, a1->substitution), parse("p -> (q -> p)"));

  EXPECT_FALSE(match_axiom(parse("p -> q")));
  EXPECT_FALSE(match_axiom(parse("[](p -> q) -> ([]p -> []q)")));
}

TEST(MatchAxiom, PriorityFollowsSchemeOrder) {
  // p -> (p -> p) is an A1 instance; A1 wins over anything later.
  EXPECT_EQ(match_axiom(parse("p -> (p -> p)"))->id, "A1");
  ASSERT_EQ(axiom_schemes().size(), 10u);
  EXPECT_EQ(axiom_schemes().front().id, "A1");
  EXPECT_EQ(axiom_schemes().back().id, "T");
}

TEST(CheckProof, Examples) {
  EXPECT_TRUE(check_proof(proof(kTInstance)).valid);
  EXPECT_TRUE(check_proof(proof(kIdentity)).valid);
  EXPECT_TRUE(check_proof(std::vector<ProofLine>{}).valid);
}

TEST(CheckProof, Ext) {
  auto lines = proof(
      "1: p & p -> p ; axiom A3\n"
      "2: p -> ((p -> p) -> p) ; axiom A1\n"
      "3: (p -> ((p -> p) -> p)) -> ((p -> (p -> p)) -> (p -> p)) ; axiom A2\n"
      "4: (p -> (p -> p)) -> (p -> p) ; mp 2 3\n"
      "5: p -> (p -> p) ; axiom A1\n"
      "6: p -> p ; mp 5 4\n"
      "7: p -> (p -> p & p) ; axiom A5\n"
      "8: (p -> (p -> p & p)) -> ((p -> p) -> (p -> p & p)) ; axiom A2\n"
      "9: (p -> p) -> (p -> p & p) ; mp 7 8\n"
      "10: p -> p & p ; mp 6 9\n"
      "11: [](p & p) -> []p ; ext 1 10\n"
      "12: []p -> [](p & p) ; ext 1 10\n");
  auto report = check_proof(lines);
  EXPECT_TRUE(report.valid) << (report.first_error ? report.first_error->reason : "");
  auto sweep = soundness_sweep(lines, 2);
  EXPECT_TRUE(sweep.clean());
  EXPECT_EQ(sweep.lines_checked, 12u);
}

TEST(CheckProof, Errors) {
  auto expect_error_at = [](const char* text, std::size_t line) {
    auto r = check_proof(parse_proof(text));
    ASSERT_FALSE(r.valid);
    ASSERT_TRUE(r.first_error);
    EXPECT_EQ(r.first_error->line, line) << r.first_error->reason;
  };
  expect_error_at("1: p -> q ; axiom A1\n", 1);
  expect_error_at("1: []p -> p ; axiom K\n", 1);
  expect_error_at("1: []p -> p ; axiom T {a := q}\n", 1);
  expect_error_at("1: q ; mp 2 3\n2: p ; axiom T\n", 1);
  expect_error_at("1: []p -> p ; axiom T\n2: p ; mp 1 1\n", 2);
  expect_error_at("1: []p -> p ; axiom T\n3: p ; axiom T\n", 3);
  expect_error_at("1: p & q -> p ; axiom A3\n2: []p -> [](p & q) ; ext 1 1\n", 2);
  // MON is not a rule of the system.
  expect_error_at("1: p & q -> p ; axiom A3\n2: [](p & q) -> []p ; mp 1 1\n", 2);
}

TEST(CheckProof, ExplicitSubstitution) {
  EXPECT_TRUE(check_proof(proof("1: [](p & q) -> p & q ; axiom t {a := p & q}\n")).valid);
  EXPECT_FALSE(check_proof(proof("1: _|_ -> []r ; axiom A9 {a := r}\n")).valid);
}

TEST(ParseProof, Errors) {
  EXPECT_THROW(parse_proof("1 []p -> p ; axiom T"), ProofFormatError);
  EXPECT_THROW(parse_proof("1: []p -> ; axiom T"), ProofFormatError);
  EXPECT_THROW(parse_proof("1: p ; frobnicate 1"), ProofFormatError);
  EXPECT_THROW(parse_proof("1: p ; mp 1"), ProofFormatError);
  EXPECT_THROW(parse_proof("x: p ; mp 1 2"), ProofFormatError);
  EXPECT_THROW(parse_proof("1: p ; axiom T {a = p}"), ProofFormatError);
  try {
    parse_proof("# header\n\n1: p ; axiom A1\n2: p ;\n");
    FAIL();
  } catch (const ProofFormatError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(Soundness, Examples) {
  auto t = soundness_sweep(proof(kTInstance), 2);
  EXPECT_TRUE(t.clean());
  EXPECT_GT(t.frames_checked, 0u);
  EXPECT_TRUE(soundness_sweep(std::vector<ProofLine>{}, 2).clean());
  EXPECT_THROW(soundness_sweep(proof("1: p ; axiom T\n"), 2), std::invalid_argument);
}

TEST(Soundness, KHasACountermodel) {
  SearchSpec spec{parse("[](a->b) -> ([]a -> []b)"), 3, {}};
  auto out = find_countermodel(spec);
  ASSERT_EQ(out.verdict, Verdict::CountermodelFound);
  EXPECT_FALSE(match_axiom(spec.scheme));
}

TEST(Property, AxiomInstancesMatch) {
  std::mt19937 rng(17);
  testing::FormulaShape shape{{"p", "q", "r"}, true, true, true};
  for (const AxiomScheme& s : axiom_schemes())
    for (int i = 0; i < 300; ++i) {
      Substitution sub;
      for (const std::string& letter : atoms(s.templ)) sub.emplace(letter, testing::random_formula(rng, 3, shape));
      Formula inst = substitute(s.templ, sub);
      auto m = match_axiom(inst);
      ASSERT_TRUE(m) << s.id << ": " << print(inst);
      EXPECT_EQ(substitute(find_scheme(m->id)->templ, m->substitution), inst);
      EXPECT_TRUE(check_proof(std::vector<ProofLine>{{1, inst, AxiomRef{s.id, sub}}}).valid);
    }
}

TEST(Property, PrefixesOfValidProofsAreValid) {
  auto lines = proof(kIdentity);
  for (std::size_t n = 0; n <= lines.size(); ++n)
    EXPECT_TRUE(check_proof(std::span<const ProofLine>(lines.data(), n)).valid) << n;
}

TEST(Property, ProvedFormulasHaveNoCountermodel) {
  // One pass over the default search space for all lines at once, plus the
  // search itself on each conclusion.
  for (const char* text : {kTInstance, kIdentity}) {
    auto lines = proof(text);
    EXPECT_TRUE(soundness_sweep(lines, kMaxSearchWorlds).clean());
    SearchSpec spec{lines.back().formula, kMaxSearchWorlds, {}};
    EXPECT_EQ(find_countermodel(spec).verdict, Verdict::Exhausted) << print(spec.scheme);
  }
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Corpus, ClassifiedAsLabelled) {
  const fs::path dir = fs::path(PNLOGIC_DATA_DIR) / "proofs";
  std::size_t valid = 0, broken = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".proof") continue;
    const std::string text = slurp(entry.path());
    std::istringstream first(text);
    std::string header;
    std::getline(first, header);
    ASSERT_EQ(header.rfind("# expect: ", 0), 0u) << entry.path();
    std::istringstream label(header.substr(10));
    std::string kind;
    label >> kind;
    auto lines = parse_proof(text);
    auto report = check_proof(lines);
    if (kind == "valid") {
      ++valid;
      EXPECT_TRUE(report.valid) << entry.path() << ": " << (report.first_error ? report.first_error->reason : "");
      if (report.valid) {
        EXPECT_TRUE(soundness_sweep(lines, 2).clean()) << entry.path();
      }
    } else {
      ++broken;
      std::size_t line = 0;
      label >> line;
      ASSERT_FALSE(report.valid) << entry.path();
      EXPECT_EQ(report.first_error->line, line) << entry.path() << ": " << report.first_error->reason;
    }
  }
  EXPECT_GE(valid, 3u);
  EXPECT_GE(broken, 3u);
}

}  // namespace
}  // namespace pnlogic
