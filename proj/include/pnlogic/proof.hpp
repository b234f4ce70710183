#ifndef PNLOGIC_PROOF_HPP
#define PNLOGIC_PROOF_HPP

#include <algorithm>
#include <cctype>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pnlogic/formula.hpp"
#include "pnlogic/search.hpp"
#include "pnlogic/syntax.hpp"

namespace pnlogic {

struct AxiomScheme {
  std::string id;
  Formula templ;
};

// Intuitionistic propositional basis A1..A9 plus T. Letters a, b, c are
// metavariables.
inline const std::vector<AxiomScheme>& axiom_schemes() {
  static const std::vector<AxiomScheme> kSchemes = [] {
    std::vector<AxiomScheme> s;
    auto add = [&](const char* id, const char* text) { s.push_back({id, parse(text)}); };
    add("A1", "a -> (b -> a)");
    add("A2", "(a -> (b -> c)) -> ((a -> b) -> (a -> c))");
    add("A3", "a & b -> a");
    add("A4", "a & b -> b");
    add("A5", "a -> (b -> a & b)");
    add("A6", "a -> a | b");
    add("A7", "b -> a | b");
    add("A8", "(a -> c) -> ((b -> c) -> (a | b -> c))");
    add("A9", "_|_ -> a");
    add("T", "[]a -> a");
    return s;
  }();
  return kSchemes;
}

inline const AxiomScheme* find_scheme(std::string_view id) {
  for (const auto& s : axiom_schemes())
    if (s.id == id) return &s;
  return nullptr;
}

namespace detail {

inline bool match_into(const Formula& templ, const Formula& f, Substitution& sub) {
  if (templ.kind() == Connective::Atom) {
    auto [it, inserted] = sub.emplace(templ.name(), f);
    return inserted || it->second == f;
  }
  if (templ.kind() != f.kind()) return false;
  switch (templ.kind()) {
    case Connective::Bottom: return true;
    case Connective::Box:
    case Connective::Nabla:
    case Connective::Diamond: return match_into(templ.operand(), f.operand(), sub);
    default: return match_into(templ.lhs(), f.lhs(), sub) && match_into(templ.rhs(), f.rhs(), sub);
  }
}

}  // namespace detail

// Substitution making `templ` equal to `f`, if one exists.
inline std::optional<Substitution> match_scheme(const Formula& templ, const Formula& f) {
  Substitution sub;
  if (!detail::match_into(templ, f, sub)) return std::nullopt;
  return sub;
}

struct AxiomMatch {
  std::string id;
  Substitution substitution;
};

// First scheme (A1..A9, then T) that `f` instantiates.
inline std::optional<AxiomMatch> match_axiom(const Formula& f) {
  for (const auto& s : axiom_schemes())
    if (auto sub = match_scheme(s.templ, f)) return AxiomMatch{s.id, std::move(*sub)};
  return std::nullopt;
}

struct AxiomRef {
  std::string id;
  std::optional<Substitution> substitution;
};

// Line `antecedent` holds phi, line `implication` holds phi -> psi.
struct ModusPonens {
  std::size_t antecedent;
  std::size_t implication;
};

// Lines hold phi -> psi and psi -> phi; the conclusion is []phi -> []psi or
// []psi -> []phi.
struct Extensionality {
  std::size_t forward;
  std::size_t backward;
};

using Justification = std::variant<AxiomRef, ModusPonens, Extensionality>;

struct ProofLine {
  std::size_t index;
  Formula formula;
  Justification justification;
};

struct ProofError {
  std::size_t line;
  std::string reason;
};

struct ProofReport {
  bool valid = true;
  std::optional<ProofError> first_error;
};

namespace detail {

inline std::optional<std::string> check_axiom(const ProofLine& line, const AxiomRef& ref) {
  const AxiomScheme* scheme = find_scheme(ref.id);
  if (!scheme) return "unknown axiom scheme '" + ref.id + "'";
  if (!ref.substitution) {
    if (!match_scheme(scheme->templ, line.formula)) return "not an instance of axiom " + ref.id;
    return std::nullopt;
  }
  for (const auto& [letter, image] : *ref.substitution)
    if (!atoms(scheme->templ).contains(letter)) return "axiom " + ref.id + " has no metavariable '" + letter + "'";
  try {
    if (!(substitute(scheme->templ, *ref.substitution) == line.formula))
      return "substitution instance of axiom " + ref.id + " differs from the line";
  } catch (const MissingBinding& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

inline std::optional<std::string> check_citation(std::size_t cited, std::size_t own) {
  if (cited == 0 || cited >= own)
    return "line " + std::to_string(cited) + " is not an earlier line";
  return std::nullopt;
}

}  // namespace detail

inline ProofReport check_proof(std::span<const ProofLine> lines) {
  auto fail = [](std::size_t line, std::string reason) { return ProofReport{false, ProofError{line, std::move(reason)}}; };
  for (std::size_t pos = 0; pos < lines.size(); ++pos) {
    const ProofLine& line = lines[pos];
    const std::size_t own = pos + 1;
    if (line.index != own) return fail(line.index, "expected line number " + std::to_string(own));
    std::optional<std::string> err;
    if (const auto* ax = std::get_if<AxiomRef>(&line.justification)) {
      err = detail::check_axiom(line, *ax);
    } else if (const auto* mp = std::get_if<ModusPonens>(&line.justification)) {
      err = detail::check_citation(mp->antecedent, own);
      if (!err) err = detail::check_citation(mp->implication, own);
      if (!err) {
        const Formula& imp = lines[mp->implication - 1].formula;
        if (imp.kind() != Connective::Implies)
          err = "mp: line " + std::to_string(mp->implication) + " is not an implication";
        else if (!(imp.lhs() == lines[mp->antecedent - 1].formula))
          err = "mp: antecedent of line " + std::to_string(mp->implication) + " is not line " +
                std::to_string(mp->antecedent);
        else if (!(imp.rhs() == line.formula))
          err = "mp: consequent of line " + std::to_string(mp->implication) + " is not this line";
      }
    } else {
      const auto& ext = std::get<Extensionality>(line.justification);
      err = detail::check_citation(ext.forward, own);
      if (!err) err = detail::check_citation(ext.backward, own);
      if (!err) {
        const Formula& fwd = lines[ext.forward - 1].formula;
        const Formula& bwd = lines[ext.backward - 1].formula;
        const Formula& f = line.formula;
        if (fwd.kind() != Connective::Implies || bwd.kind() != Connective::Implies || !(fwd.lhs() == bwd.rhs()) ||
            !(fwd.rhs() == bwd.lhs())) {
          err = "ext: lines " + std::to_string(ext.forward) + " and " + std::to_string(ext.backward) +
                " are not converse implications";
        } else if (f.kind() != Connective::Implies || f.lhs().kind() != Connective::Box ||
                   f.rhs().kind() != Connective::Box) {
          err = "ext: conclusion must be an implication between boxed formulas";
        } else {
          const Formula& x = f.lhs().operand();
          const Formula& y = f.rhs().operand();
          bool forward = x == fwd.lhs() && y == fwd.rhs();
          bool backward = x == fwd.rhs() && y == fwd.lhs();
          if (!forward && !backward) err = "ext: conclusion does not box the cited formulas";
        }
      }
    }
    if (err) return fail(own, *err);
  }
  return {};
}

class ProofFormatError : public std::runtime_error {
 public:
  ProofFormatError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::size_t parse_index(const std::string& tok, std::size_t text_line) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ProofFormatError(text_line, "expected a line number, got '" + tok + "'");
  return std::stoul(tok);
}

inline Substitution parse_substitution(std::string_view body, std::size_t text_line) {
  Substitution sub;
  std::string item;
  std::stringstream ss{std::string(body)};
  while (std::getline(ss, item, ',')) {
    auto pos = item.find(":=");
    if (pos == std::string::npos) throw ProofFormatError(text_line, "expected 'letter := formula' in substitution");
    std::string letter = trim(item.substr(0, pos));
    if (!is_identifier(letter)) throw ProofFormatError(text_line, "bad metavariable '" + letter + "'");
    try {
      sub.insert_or_assign(letter, parse(item.substr(pos + 2)));
    } catch (const ParseError& e) {
      throw ProofFormatError(text_line, e.what());
    }
  }
  return sub;
}

inline Justification parse_justification(const std::string& text, std::size_t text_line) {
  std::string head = text, braces;
  if (auto open = text.find('{'); open != std::string::npos) {
    auto close = text.rfind('}');
    if (close == std::string::npos || close < open) throw ProofFormatError(text_line, "unterminated substitution");
    head = text.substr(0, open);
    braces = text.substr(open + 1, close - open - 1);
  }
  std::istringstream in(head);
  std::string keyword;
  in >> keyword;
  std::vector<std::string> args;
  for (std::string tok; in >> tok;) args.push_back(tok);
  if (keyword == "axiom") {
    if (args.size() != 1) throw ProofFormatError(text_line, "axiom takes one scheme id");
    std::string id = args[0];
    std::transform(id.begin(), id.end(), id.begin(), [](unsigned char c) { return std::toupper(c); });
    AxiomRef ref{id, std::nullopt};
    if (!braces.empty() || text.find('{') != std::string::npos) ref.substitution = parse_substitution(braces, text_line);
    return ref;
  }
  if (keyword == "mp" || keyword == "ext") {
    if (args.size() != 2 || !braces.empty()) throw ProofFormatError(text_line, keyword + " takes two line numbers");
    std::size_t i = parse_index(args[0], text_line), j = parse_index(args[1], text_line);
    if (keyword == "mp") return ModusPonens{i, j};
    return Extensionality{i, j};
  }
  throw ProofFormatError(text_line, "unknown justification '" + keyword + "'");
}

}  // namespace detail

// Line-oriented proof text:
//
//   <n>: <formula> ; axiom <id> [{a := <formula>, ...}]
//   <n>: <formula> ; mp <antecedent line> <implication line>
//   <n>: <formula> ; ext <line> <line>
//
// '#' starts a comment; blank lines are ignored.
inline std::vector<ProofLine> parse_proof(std::string_view text) {
  std::vector<ProofLine> lines;
  std::size_t text_line = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++text_line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string line = detail::trim(raw);
    if (line.empty()) continue;
    auto colon = line.find(':');
    auto semi = line.find(';');
    if (colon == std::string::npos || semi == std::string::npos || semi < colon)
      throw ProofFormatError(text_line, "expected '<n>: <formula> ; <justification>'");
    std::size_t index = detail::parse_index(detail::trim(line.substr(0, colon)), text_line);
    Formula f = Formula::bottom();
    try {
      f = parse(line.substr(colon + 1, semi - colon - 1));
    } catch (const ParseError& e) {
      throw ProofFormatError(text_line, e.what());
    }
    lines.push_back({index, std::move(f), detail::parse_justification(detail::trim(line.substr(semi + 1)), text_line)});
  }
  return lines;
}

struct SoundnessViolation {
  std::size_t line;
  Frame frame;
  Valuation assignment;
  World world;
};

struct SoundnessReport {
  std::uint64_t frames_checked = 0;
  std::size_t lines_checked = 0;
  std::optional<SoundnessViolation> violation;

  bool clean() const { return !violation; }
};

// Every line of a checked proof must be valid, read as a scheme, on every
// enumerated frame. A violation means the checker or the evaluator is wrong.
inline SoundnessReport soundness_sweep(std::span<const ProofLine> lines, unsigned max_worlds, unsigned cap = 3) {
  if (!check_proof(lines).valid) throw std::invalid_argument("soundness sweep needs a valid proof");
  SoundnessReport report;
  report.lines_checked = lines.size();
  if (lines.empty()) return report;
  std::vector<SchemeChecker> checkers;
  checkers.reserve(lines.size());
  for (const auto& l : lines) checkers.emplace_back(l.formula, BoxMode::Standard);
  FrameEnumerator({1, max_worlds, cap, {}}).run([&](const Frame& f) {
    ++report.frames_checked;
    for (std::size_t i = 0; i < checkers.size(); ++i)
      if (auto failure = checkers[i].first_failure(f)) {
        report.violation = SoundnessViolation{lines[i].index, f, std::move(failure->assignment), failure->world};
        return false;
      }
    return true;
  });
  return report;
}

}  // namespace pnlogic

#endif  // PNLOGIC_PROOF_HPP
