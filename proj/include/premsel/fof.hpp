#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace premsel {

/// A first-order term. Bound variables are stored as de Bruijn indices
/// (0 = innermost enclosing quantifier).
struct Term {
  enum class Kind : std::uint8_t { Variable, Application };

  Kind kind = Kind::Application;
  std::uint32_t index = 0;  // Variable only
  std::string symbol;       // Application only
  std::vector<Term> args;   // Application only; arity = args.size()

  static Term variable(std::uint32_t index);
  static Term apply(std::string symbol, std::vector<Term> args = {});

  std::size_t arity() const { return args.size(); }
  bool is_variable() const { return kind == Kind::Variable; }

  friend bool operator==(const Term&, const Term&) = default;
};

enum class FormulaKind : std::uint8_t {
  Universal,
  Existential,
  Conjunction,
  Disjunction,
  Negation,
  Implication,
  Equivalence,
  Atom,
  Equality,
};

/// A first-order formula in nameless form. Connectives hold their operands in
/// `children`; atoms hold a predicate symbol and term arguments; equality
/// atoms hold exactly two term arguments.
struct Formula {
  FormulaKind kind = FormulaKind::Atom;
  std::vector<Formula> children;
  std::string predicate;
  std::vector<Term> args;

  static Formula atom(std::string predicate, std::vector<Term> args = {});
  static Formula equality(Term lhs, Term rhs);
  static Formula negation(Formula body);
  static Formula binary(FormulaKind kind, Formula lhs, Formula rhs);
  static Formula quantified(FormulaKind kind, Formula body);

  friend bool operator==(const Formula&, const Formula&) = default;
};

enum class Role : std::uint8_t { Axiom, Definition, Theorem, Conjecture };

std::string_view role_name(Role role);

struct NamedItem {
  std::string id;
  Role role = Role::Axiom;
  Formula formula;

  friend bool operator==(const NamedItem&, const NamedItem&) = default;
};

/// Syntax or scoping error with a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column,
             const std::string& source = {});

  /// Same error attributed to a file.
  ParseError in_source(const std::string& source) const;

  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// Parses exactly one `fof(name, role, formula).` item.
NamedItem parse_item(std::string_view text);

/// Parses a whole file: zero or more items, `%` line comments and `/* */`
/// block comments allowed. Identifiers must be unique.
std::vector<NamedItem> parse_items(std::string_view text);

std::string print_term(const Term& term, std::size_t depth);
std::string print_formula(const Formula& formula);
std::string print_item(const NamedItem& item);

/// Number of quantifiers enclosing the deepest point of the formula.
std::size_t quantifier_depth(const Formula& formula);

/// Checks arity and de Bruijn scoping invariants.
bool well_formed(const Formula& formula);

}  // namespace premsel
