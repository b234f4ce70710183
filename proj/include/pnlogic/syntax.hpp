#ifndef PNLOGIC_SYNTAX_HPP
#define PNLOGIC_SYNTAX_HPP

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pnlogic/formula.hpp"

namespace pnlogic {

// Concrete syntax (ASCII):
//
//   formula  := impl
//   impl     := disj ( ("->" | "<->") impl )?
//   disj     := conj ( "|" conj )*
//   conj     := unary ( "&" unary )*
//   unary    := ("~" | "[]" | "<>" | "<*>") unary | atomterm
//   atomterm := IDENT | "_|_" | "(" formula ")"
//
// "<>" is the existential possibility (nabla), "<*>" the universal one (diamond).

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::string expected)
      : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": expected " + expected),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

namespace detail {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse_all() {
    Formula f = parse_impl();
    skip_space();
    if (pos_ != text_.size()) throw ParseError(pos_, "end of input");
    return f;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  Formula parse_impl() {
    Formula lhs = parse_disj();
    if (accept("->")) return Formula::implies(lhs, parse_impl());
    if (accept("<->")) return Formula::iff(lhs, parse_impl());
    return lhs;
  }

  Formula parse_disj() {
    Formula lhs = parse_conj();
    while (accept("|")) lhs = Formula::disj(lhs, parse_conj());
    return lhs;
  }

  Formula parse_conj() {
    Formula lhs = parse_unary();
    while (accept("&")) lhs = Formula::conj(lhs, parse_unary());
    return lhs;
  }

  Formula parse_unary() {
    if (accept("~")) return Formula::negation(parse_unary());
    if (accept("[]")) return Formula::box(parse_unary());
    if (accept("<*>")) return Formula::diamond(parse_unary());
    // "<->" never starts a unary term, so "<>" is unambiguous here.
    if (accept("<>")) return Formula::nabla(parse_unary());
    return parse_atomterm();
  }

  Formula parse_atomterm() {
    skip_space();
    if (accept("_|_")) return Formula::bottom();
    if (accept("(")) {
      Formula inner = parse_impl();
      if (!accept(")")) throw ParseError(pos_, "')'");
      return inner;
    }
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] >= 'a' && text_[pos_] <= 'z') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return Formula::atom(std::string(text_.substr(start, pos_ - start)));
    }
    throw ParseError(pos_, "atom, '_|_', '(' or unary operator");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse(std::string_view text) { return detail::FormulaParser(text).parse_all(); }

enum class Notation { Ascii, Unicode };

namespace detail {

enum Level { kImplLevel = 1, kDisjLevel = 2, kConjLevel = 3, kUnaryLevel = 4 };

inline int print_level(const Formula& f) {
  if (f.is_negation()) return kUnaryLevel;
  if (f.is_biconditional()) return kImplLevel;
  switch (f.kind()) {
    case Connective::Implies: return kImplLevel;
    case Connective::Or: return kDisjLevel;
    case Connective::And: return kConjLevel;
    default: return kUnaryLevel;
  }
}

struct Symbols {
  const char* bottom;
  const char* neg;
  const char* conj;
  const char* disj;
  const char* impl;
  const char* iff;
  const char* box;
  const char* nabla;
  const char* diamond;
};

inline const Symbols& symbols(Notation n) {
  static const Symbols ascii{"_|_", "~", " & ", " | ", " -> ", " <-> ", "[]", "<>", "<*>"};
  static const Symbols unicode{"⊥", "¬", " ∧ ", " ∨ ", " → ", " ↔ ", "□", "∇", "◇"};
  return n == Notation::Unicode ? unicode : ascii;
}

inline void print_into(const Formula& f, int min_level, const Symbols& sym, std::string& out) {
  bool parens = print_level(f) < min_level;
  if (parens) out += '(';
  if (f.is_negation()) {
    out += sym.neg;
    print_into(f.lhs(), kUnaryLevel, sym, out);
  } else if (f.is_biconditional()) {
    print_into(f.lhs().lhs(), kDisjLevel, sym, out);
    out += sym.iff;
    print_into(f.lhs().rhs(), kImplLevel, sym, out);
  } else {
    switch (f.kind()) {
      case Connective::Atom: out += f.name(); break;
      case Connective::Bottom: out += sym.bottom; break;
      case Connective::Implies:
        print_into(f.lhs(), kDisjLevel, sym, out);
        out += sym.impl;
        print_into(f.rhs(), kImplLevel, sym, out);
        break;
      case Connective::Or:
        print_into(f.lhs(), kDisjLevel, sym, out);
        out += sym.disj;
        print_into(f.rhs(), kConjLevel, sym, out);
        break;
      case Connective::And:
        print_into(f.lhs(), kConjLevel, sym, out);
        out += sym.conj;
        print_into(f.rhs(), kUnaryLevel, sym, out);
        break;
      case Connective::Box:
        out += sym.box;
        print_into(f.operand(), kUnaryLevel, sym, out);
        break;
      case Connective::Nabla:
        out += sym.nabla;
        print_into(f.operand(), kUnaryLevel, sym, out);
        break;
      case Connective::Diamond:
        out += sym.diamond;
        print_into(f.operand(), kUnaryLevel, sym, out);
        break;
    }
  }
  if (parens) out += ')';
}

}  // namespace detail

// Renders with the fewest parentheses the grammar allows, preferring the
// `~` and `<->` abbreviations wherever the tree matches them.
inline std::string print(const Formula& f, Notation notation = Notation::Ascii) {
  std::string out;
  detail::print_into(f, detail::kImplLevel, detail::symbols(notation), out);
  return out;
}

}  // namespace pnlogic

#endif  // PNLOGIC_SYNTAX_HPP
