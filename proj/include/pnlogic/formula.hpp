#ifndef PNLOGIC_FORMULA_HPP
#define PNLOGIC_FORMULA_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace pnlogic {

// Primitive connectives. Negation and the biconditional are abbreviations and
// never appear as nodes.
enum class Connective { Atom, Bottom, And, Or, Implies, Box, Nabla, Diamond };

inline bool is_modal(Connective c) {
  return c == Connective::Box || c == Connective::Nabla || c == Connective::Diamond;
}

inline bool is_binary(Connective c) {
  return c == Connective::And || c == Connective::Or || c == Connective::Implies;
}

inline bool is_identifier(std::string_view s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  for (char ch : s) {
    bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '_';
    if (!ok) return false;
  }
  return true;
}

// Immutable formula tree with shared subterms. Copies are cheap; equality is
// structural.
class Formula {
  struct Node;

 public:
  static Formula atom(std::string name) {
    if (!is_identifier(name)) throw std::invalid_argument("invalid atom name '" + name + "'");
    return Formula(std::make_shared<const Node>(Connective::Atom, std::move(name), nullptr, nullptr));
  }
  static Formula bottom() {
    static const Formula kBottom(std::make_shared<const Node>(Connective::Bottom, std::string{}, nullptr, nullptr));
    return kBottom;
  }
  static Formula conj(Formula a, Formula b) { return binary(Connective::And, std::move(a), std::move(b)); }
  static Formula disj(Formula a, Formula b) { return binary(Connective::Or, std::move(a), std::move(b)); }
  static Formula implies(Formula a, Formula b) { return binary(Connective::Implies, std::move(a), std::move(b)); }
  static Formula box(Formula a) { return unary(Connective::Box, std::move(a)); }
  static Formula nabla(Formula a) { return unary(Connective::Nabla, std::move(a)); }
  static Formula diamond(Formula a) { return unary(Connective::Diamond, std::move(a)); }
  static Formula negation(Formula a) { return implies(std::move(a), bottom()); }
  static Formula iff(Formula a, Formula b) { return conj(implies(a, b), implies(b, a)); }

  static Formula make(Connective c, Formula a, Formula b) {
    if (is_binary(c)) return binary(c, std::move(a), std::move(b));
    return unary(c, std::move(a));
  }

  Connective kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  // Operand of a unary node or left operand of a binary one.
  const Formula& lhs() const { return *node_->lhs; }
  const Formula& rhs() const { return *node_->rhs; }
  const Formula& operand() const { return *node_->lhs; }

  std::size_t hash() const { return node_->hash; }
  // Identity of the shared node; used as a memo key during evaluation.
  const void* id() const { return node_.get(); }

  bool is_negation() const { return kind() == Connective::Implies && rhs().kind() == Connective::Bottom; }
  // Matches (a -> b) & (b -> a).
  bool is_biconditional() const {
    if (kind() != Connective::And) return false;
    const Formula& l = lhs();
    const Formula& r = rhs();
    return l.kind() == Connective::Implies && r.kind() == Connective::Implies && l.lhs() == r.rhs() &&
           l.rhs() == r.lhs();
  }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind) return false;
    switch (a.kind()) {
      case Connective::Atom: return a.name() == b.name();
      case Connective::Bottom: return true;
      case Connective::Box:
      case Connective::Nabla:
      case Connective::Diamond: return a.lhs() == b.lhs();
      default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
  }

 private:
  struct Node {
    Node(Connective k, std::string n, std::shared_ptr<const Formula> l, std::shared_ptr<const Formula> r)
        : kind(k), name(std::move(n)), lhs(std::move(l)), rhs(std::move(r)) {
      std::size_t h = std::hash<int>{}(static_cast<int>(kind)) * 0x9e3779b97f4a7c15ull;
      if (kind == Connective::Atom) h ^= std::hash<std::string>{}(name);
      if (lhs) h = (h ^ lhs->hash()) * 0x100000001b3ull + 0x51;
      if (rhs) h = (h ^ (rhs->hash() << 1)) * 0x100000001b3ull + 0x3f;
      hash = h;
    }
    Connective kind;
    std::string name;
    std::shared_ptr<const Formula> lhs;
    std::shared_ptr<const Formula> rhs;
    std::size_t hash = 0;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Formula unary(Connective c, Formula a) {
    return Formula(std::make_shared<const Node>(c, std::string{}, std::make_shared<const Formula>(std::move(a)), nullptr));
  }
  static Formula binary(Connective c, Formula a, Formula b) {
    return Formula(std::make_shared<const Node>(c, std::string{}, std::make_shared<const Formula>(std::move(a)),
                                                std::make_shared<const Formula>(std::move(b))));
  }

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

inline void collect_atoms(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Connective::Atom: out.insert(f.name()); return;
    case Connective::Bottom: return;
    case Connective::Box:
    case Connective::Nabla:
    case Connective::Diamond: collect_atoms(f.operand(), out); return;
    default:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
  }
}

inline std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

inline bool contains_connective(const Formula& f, Connective c) {
  if (f.kind() == c) return true;
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Bottom: return false;
    case Connective::Box:
    case Connective::Nabla:
    case Connective::Diamond: return contains_connective(f.operand(), c);
    default: return contains_connective(f.lhs(), c) || contains_connective(f.rhs(), c);
  }
}

inline std::size_t depth(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Bottom: return 0;
    case Connective::Box:
    case Connective::Nabla:
    case Connective::Diamond: return 1 + depth(f.operand());
    default: return 1 + std::max(depth(f.lhs()), depth(f.rhs()));
  }
}

// Maps scheme letters to the formulas replacing them.
using Substitution = std::map<std::string, Formula>;

class MissingBinding : public std::runtime_error {
 public:
  explicit MissingBinding(const std::string& var)
      : std::runtime_error("no binding for metavariable '" + var + "'"), variable_(var) {}
  const std::string& variable() const { return variable_; }

 private:
  std::string variable_;
};

// Uniform replacement of every atom of `scheme` by its image under `map`.
inline Formula substitute(const Formula& scheme, const Substitution& map) {
  switch (scheme.kind()) {
    case Connective::Atom: {
      auto it = map.find(scheme.name());
      if (it == map.end()) throw MissingBinding(scheme.name());
      return it->second;
    }
    case Connective::Bottom: return scheme;
    case Connective::Box:
    case Connective::Nabla:
    case Connective::Diamond: return Formula::make(scheme.kind(), substitute(scheme.operand(), map), scheme);
    default: return Formula::make(scheme.kind(), substitute(scheme.lhs(), map), substitute(scheme.rhs(), map));
  }
}

}  // namespace pnlogic

#endif  // PNLOGIC_FORMULA_HPP
