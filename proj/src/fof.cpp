#include "premsel/fof.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>
#include <utility>

namespace premsel {

Term Term::variable(std::uint32_t index) {
  Term t;
  t.kind = Kind::Variable;
  t.index = index;
  return t;
}

Term Term::apply(std::string symbol, std::vector<Term> args) {
  Term t;
  t.kind = Kind::Application;
  t.symbol = std::move(symbol);
  t.args = std::move(args);
  return t;
}

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  Formula f;
  f.kind = FormulaKind::Atom;
  f.predicate = std::move(predicate);
  f.args = std::move(args);
  return f;
}

Formula Formula::equality(Term lhs, Term rhs) {
  Formula f;
  f.kind = FormulaKind::Equality;
  f.args.push_back(std::move(lhs));
  f.args.push_back(std::move(rhs));
  return f;
}

Formula Formula::negation(Formula body) {
  Formula f;
  f.kind = FormulaKind::Negation;
  f.children.push_back(std::move(body));
  return f;
}

Formula Formula::binary(FormulaKind kind, Formula lhs, Formula rhs) {
  Formula f;
  f.kind = kind;
  f.children.push_back(std::move(lhs));
  f.children.push_back(std::move(rhs));
  return f;
}

Formula Formula::quantified(FormulaKind kind, Formula body) {
  Formula f;
  f.kind = kind;
  f.children.push_back(std::move(body));
  return f;
}

std::string_view role_name(Role role) {
  switch (role) {
    case Role::Axiom: return "axiom";
    case Role::Definition: return "definition";
    case Role::Theorem: return "theorem";
    case Role::Conjecture: return "conjecture";
  }
  return "axiom";
}

ParseError::ParseError(const std::string& message, std::size_t line,
                       std::size_t column, const std::string& source)
    : std::runtime_error((source.empty() ? "" : source + ":") +
                         std::to_string(line) + ":" + std::to_string(column) +
                         ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

ParseError ParseError::in_source(const std::string& source) const {
  return ParseError(message_, line_, column_, source);
}

namespace {

enum class Tok {
  LowerWord,
  UpperWord,
  DollarWord,
  Quoted,
  Integer,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Dot,
  Colon,
  Bang,
  Question,
  Tilde,
  Amp,
  Pipe,
  Implies,
  Iff,
  Eq,
  Neq,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::string describe(Tok kind) {
  switch (kind) {
    case Tok::LowerWord: return "lower-case word";
    case Tok::UpperWord: return "variable";
    case Tok::DollarWord: return "$-word";
    case Tok::Quoted: return "quoted name";
    case Tok::Integer: return "integer";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Colon: return "':'";
    case Tok::Bang: return "'!'";
    case Tok::Question: return "'?'";
    case Tok::Tilde: return "'~'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Implies: return "'=>'";
    case Tok::Iff: return "'<=>'";
    case Tok::Eq: return "'='";
    case Tok::Neq: return "'!='";
    case Tok::End: return "end of input";
  }
  return "token";
}

bool is_alnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  std::size_t line = 1;
  std::size_t col = 1;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      std::size_t l0 = line, c0 = col;
      advance(2);
      while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/'))
        advance(1);
      if (i + 1 >= src.size()) throw ParseError("unterminated comment", l0, c0);
      advance(2);
      continue;
    }

    Token tok{Tok::End, {}, line, col};
    auto punct = [&](Tok kind, std::size_t len) {
      tok.kind = kind;
      tok.text = std::string(src.substr(i, len));
      advance(len);
    };

    if (std::islower(static_cast<unsigned char>(c)) ||
        std::isupper(static_cast<unsigned char>(c)) || c == '$') {
      std::size_t j = i + 1;
      while (j < src.size() && is_alnum(src[j])) ++j;
      if (c == '$' && j == i + 1) throw ParseError("bare '$'", line, col);
      tok.kind = c == '$'                                           ? Tok::DollarWord
                 : std::isupper(static_cast<unsigned char>(c)) != 0 ? Tok::UpperWord
                                                                    : Tok::LowerWord;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      tok.kind = Tok::Integer;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '\'') {
      std::string text;
      std::size_t j = i + 1;
      bool closed = false;
      while (j < src.size()) {
        char d = src[j];
        if (d == '\\' && j + 1 < src.size() &&
            (src[j + 1] == '\\' || src[j + 1] == '\'')) {
          text.push_back(src[j + 1]);
          j += 2;
          continue;
        }
        if (d == '\'') {
          closed = true;
          break;
        }
        if (d == '\n' || d == '\r' || static_cast<unsigned char>(d) < 0x20)
          break;
        text.push_back(d);
        ++j;
      }
      if (!closed) throw ParseError("unterminated quoted name", line, col);
      if (text.empty()) throw ParseError("empty quoted name", line, col);
      tok.kind = Tok::Quoted;
      tok.text = std::move(text);
      advance(j + 1 - i);
    } else {
      auto rest = src.substr(i);
      if (rest.starts_with("<=>")) punct(Tok::Iff, 3);
      else if (rest.starts_with("=>")) punct(Tok::Implies, 2);
      else if (rest.starts_with("!=")) punct(Tok::Neq, 2);
      else {
        switch (c) {
          case '(': punct(Tok::LParen, 1); break;
          case ')': punct(Tok::RParen, 1); break;
          case '[': punct(Tok::LBracket, 1); break;
          case ']': punct(Tok::RBracket, 1); break;
          case ',': punct(Tok::Comma, 1); break;
          case '.': punct(Tok::Dot, 1); break;
          case ':': punct(Tok::Colon, 1); break;
          case '!': punct(Tok::Bang, 1); break;
          case '?': punct(Tok::Question, 1); break;
          case '~': punct(Tok::Tilde, 1); break;
          case '&': punct(Tok::Amp, 1); break;
          case '|': punct(Tok::Pipe, 1); break;
          case '=': punct(Tok::Eq, 1); break;
          default:
            throw ParseError(std::string("unexpected character '") + c + "'",
                             line, col);
        }
      }
    }
    out.push_back(std::move(tok));
  }
  out.push_back(Token{Tok::End, {}, line, col});
  return out;
}

constexpr std::size_t kMaxNesting = 512;

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  bool at_end() const { return peek().kind == Tok::End; }

  NamedItem item() {
    const Token& head = expect(Tok::LowerWord);
    if (head.text != "fof")
      throw error_at(head, "expected 'fof', found '" + head.text + "'");
    expect(Tok::LParen);
    NamedItem out;
    const Token& name = next();
    if (name.kind != Tok::LowerWord && name.kind != Tok::Quoted &&
        name.kind != Tok::Integer)
      throw error_at(name, "expected item name, found " + describe(name.kind));
    out.id = name.text;
    expect(Tok::Comma);
    const Token& role = expect(Tok::LowerWord);
    if (role.text == "axiom") out.role = Role::Axiom;
    else if (role.text == "definition") out.role = Role::Definition;
    else if (role.text == "theorem") out.role = Role::Theorem;
    else if (role.text == "conjecture") out.role = Role::Conjecture;
    else throw error_at(role, "unsupported role '" + role.text + "'");
    expect(Tok::Comma);
    scope_.clear();
    out.formula = formula();
    expect(Tok::RParen);
    expect(Tok::Dot);
    return out;
  }

  const Token& peek() const { return toks_[pos_]; }

  ParseError error_at(const Token& t, const std::string& msg) const {
    return ParseError(msg, t.line, t.column);
  }

 private:
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::End) ++pos_;
    return t;
  }

  const Token& expect(Tok kind) {
    const Token& t = peek();
    if (t.kind != kind)
      throw error_at(t, "expected " + describe(kind) + ", found " +
                            (t.kind == Tok::End ? describe(t.kind)
                                                : "'" + t.text + "'"));
    return next();
  }

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxNesting)
        throw p.error_at(p.peek(), "nesting too deep");
    }
    ~DepthGuard() { --p.depth_; }
  };

  Formula formula() {
    DepthGuard guard(*this);
    Formula lhs = unit();
    Tok op = peek().kind;
    if (op == Tok::Implies || op == Tok::Iff) {
      next();
      Formula rhs = unit();
      auto kind = op == Tok::Implies ? FormulaKind::Implication
                                     : FormulaKind::Equivalence;
      lhs = Formula::binary(kind, std::move(lhs), std::move(rhs));
      check_no_connective();
      return lhs;
    }
    if (op == Tok::Amp || op == Tok::Pipe) {
      auto kind = op == Tok::Amp ? FormulaKind::Conjunction
                                 : FormulaKind::Disjunction;
      while (peek().kind == op) {
        next();
        Formula rhs = unit();
        lhs = Formula::binary(kind, std::move(lhs), std::move(rhs));
      }
      check_no_connective();
    }
    return lhs;
  }

  void check_no_connective() const {
    Tok k = peek().kind;
    if (k == Tok::Implies || k == Tok::Iff || k == Tok::Amp || k == Tok::Pipe)
      throw error_at(peek(), "ambiguous connective " + describe(k) +
                                 "; add parentheses");
  }

  Formula unit() {
    DepthGuard guard(*this);
    const Token& t = peek();
    switch (t.kind) {
      case Tok::LParen: {
        next();
        Formula f = formula();
        expect(Tok::RParen);
        return f;
      }
      case Tok::Tilde:
        next();
        return Formula::negation(unit());
      case Tok::Bang:
      case Tok::Question: {
        auto kind = t.kind == Tok::Bang ? FormulaKind::Universal
                                        : FormulaKind::Existential;
        next();
        expect(Tok::LBracket);
        std::size_t bound = 0;
        while (true) {
          const Token& v = expect(Tok::UpperWord);
          scope_.push_back(v.text);
          ++bound;
          if (peek().kind == Tok::Comma) {
            next();
            continue;
          }
          break;
        }
        expect(Tok::RBracket);
        expect(Tok::Colon);
        Formula body = unit();
        scope_.resize(scope_.size() - bound);
        for (std::size_t k = 0; k < bound; ++k)
          body = Formula::quantified(kind, std::move(body));
        return body;
      }
      default:
        return atomic();
    }
  }

  Formula atomic() {
    const Token& start = peek();
    bool is_var = start.kind == Tok::UpperWord;
    Term lhs = term();
    Tok k = peek().kind;
    if (k == Tok::Eq || k == Tok::Neq) {
      next();
      Term rhs = term();
      Formula eq = Formula::equality(std::move(lhs), std::move(rhs));
      return k == Tok::Eq ? eq : Formula::negation(std::move(eq));
    }
    if (is_var) throw error_at(start, "variable used as a formula");
    return Formula::atom(std::move(lhs.symbol), std::move(lhs.args));
  }

  Term term() {
    DepthGuard guard(*this);
    const Token& t = next();
    switch (t.kind) {
      case Tok::UpperWord: {
        for (std::size_t k = scope_.size(); k-- > 0;) {
          if (scope_[k] == t.text)
            return Term::variable(
                static_cast<std::uint32_t>(scope_.size() - 1 - k));
        }
        throw error_at(t, "unbound variable '" + t.text + "'");
      }
      case Tok::LowerWord:
      case Tok::DollarWord:
      case Tok::Quoted:
      case Tok::Integer: {
        std::vector<Term> args;
        if (peek().kind == Tok::LParen) {
          next();
          args.push_back(term());
          while (peek().kind == Tok::Comma) {
            next();
            args.push_back(term());
          }
          expect(Tok::RParen);
        }
        return Term::apply(t.text, std::move(args));
      }
      default:
        throw error_at(t, "expected term, found " +
                              (t.kind == Tok::End ? describe(t.kind)
                                                  : "'" + t.text + "'"));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
  std::vector<std::string> scope_;
};

bool plain_word(std::string_view s) {
  if (s.empty()) return false;
  unsigned char c0 = static_cast<unsigned char>(s[0]);
  if (std::islower(c0) || c0 == '$') {
    if (c0 == '$' && s.size() == 1) return false;
    return std::all_of(s.begin() + 1, s.end(), is_alnum);
  }
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

std::string quote_name(std::string_view s) {
  if (plain_word(s)) return std::string(s);
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

void print_term_to(std::string& out, const Term& t, std::size_t depth) {
  if (t.is_variable()) {
    out += 'V';
    out += std::to_string(depth - 1 - t.index);
    return;
  }
  out += quote_name(t.symbol);
  if (!t.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      if (i) out += ',';
      print_term_to(out, t.args[i], depth);
    }
    out += ')';
  }
}

void print_formula_to(std::string& out, const Formula& f, std::size_t depth) {
  switch (f.kind) {
    case FormulaKind::Universal:
    case FormulaKind::Existential:
      out += f.kind == FormulaKind::Universal ? "![V" : "?[V";
      out += std::to_string(depth);
      out += "]: ";
      print_formula_to(out, f.children[0], depth + 1);
      return;
    case FormulaKind::Negation:
      out += '~';
      print_formula_to(out, f.children[0], depth);
      return;
    case FormulaKind::Conjunction:
    case FormulaKind::Disjunction:
    case FormulaKind::Implication:
    case FormulaKind::Equivalence: {
      const char* op = f.kind == FormulaKind::Conjunction   ? " & "
                       : f.kind == FormulaKind::Disjunction ? " | "
                       : f.kind == FormulaKind::Implication ? " => "
                                                            : " <=> ";
      out += '(';
      print_formula_to(out, f.children[0], depth);
      out += op;
      print_formula_to(out, f.children[1], depth);
      out += ')';
      return;
    }
    case FormulaKind::Atom:
      out += quote_name(f.predicate);
      if (!f.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.args.size(); ++i) {
          if (i) out += ',';
          print_term_to(out, f.args[i], depth);
        }
        out += ')';
      }
      return;
    case FormulaKind::Equality:
      print_term_to(out, f.args[0], depth);
      out += " = ";
      print_term_to(out, f.args[1], depth);
      return;
  }
}

bool term_well_formed(const Term& t, std::size_t depth) {
  if (t.is_variable()) return t.index < depth && t.args.empty();
  if (t.symbol.empty()) return false;
  return std::all_of(t.args.begin(), t.args.end(), [&](const Term& a) {
    return term_well_formed(a, depth);
  });
}

bool formula_well_formed(const Formula& f, std::size_t depth) {
  auto terms_ok = [&] {
    return std::all_of(f.args.begin(), f.args.end(), [&](const Term& a) {
      return term_well_formed(a, depth);
    });
  };
  switch (f.kind) {
    case FormulaKind::Universal:
    case FormulaKind::Existential:
      return f.children.size() == 1 && f.args.empty() &&
             formula_well_formed(f.children[0], depth + 1);
    case FormulaKind::Negation:
      return f.children.size() == 1 && f.args.empty() &&
             formula_well_formed(f.children[0], depth);
    case FormulaKind::Conjunction:
    case FormulaKind::Disjunction:
    case FormulaKind::Implication:
    case FormulaKind::Equivalence:
      return f.children.size() == 2 && f.args.empty() &&
             formula_well_formed(f.children[0], depth) &&
             formula_well_formed(f.children[1], depth);
    case FormulaKind::Atom:
      return f.children.empty() && !f.predicate.empty() && terms_ok();
    case FormulaKind::Equality:
      return f.children.empty() && f.args.size() == 2 && terms_ok();
  }
  return false;
}

}  // namespace

NamedItem parse_item(std::string_view text) {
  Parser parser(tokenize(text));
  NamedItem item = parser.item();
  if (!parser.at_end())
    throw parser.error_at(parser.peek(), "trailing input after item");
  return item;
}

std::vector<NamedItem> parse_items(std::string_view text) {
  Parser parser(tokenize(text));
  std::vector<NamedItem> items;
  std::unordered_set<std::string> seen;
  while (!parser.at_end()) {
    Token head = parser.peek();
    NamedItem item = parser.item();
    if (!seen.insert(item.id).second)
      throw ParseError("duplicate item name '" + item.id + "'", head.line,
                       head.column);
    items.push_back(std::move(item));
  }
  return items;
}

std::string print_term(const Term& term, std::size_t depth) {
  std::string out;
  print_term_to(out, term, depth);
  return out;
}

std::string print_formula(const Formula& formula) {
  std::string out;
  print_formula_to(out, formula, 0);
  return out;
}

std::string print_item(const NamedItem& item) {
  std::string out = "fof(";
  out += quote_name(item.id);
  out += ", ";
  out += role_name(item.role);
  out += ", ";
  print_formula_to(out, item.formula, 0);
  out += ").";
  return out;
}

std::size_t quantifier_depth(const Formula& formula) {
  std::size_t best = 0;
  for (const auto& c : formula.children) best = std::max(best, quantifier_depth(c));
  if (formula.kind == FormulaKind::Universal ||
      formula.kind == FormulaKind::Existential)
    ++best;
  return best;
}

bool well_formed(const Formula& formula) { return formula_well_formed(formula, 0); }

}  // namespace premsel
