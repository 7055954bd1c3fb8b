#include <doctest.h>

#include <string>

#include "premsel/fof.hpp"
#include "support.hpp"

using namespace premsel;
using premsel::testing::Rng;

namespace {

Term var(std::uint32_t i) { return Term::variable(i); }
Term con(const char* s) { return Term::apply(s); }

ParseError parse_failure(std::string_view text) {
  try {
    parse_items(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for: " << text);
  return ParseError("", 0, 0);
}

}  // namespace

TEST_CASE("parse: constant atom") {
  auto item = parse_item("fof(t1, axiom, p(a)).");
  CHECK(item.id == "t1");
  CHECK(item.role == Role::Axiom);
  CHECK(item.formula == Formula::atom("p", {con("a")}));
}

TEST_CASE("parse: single binder gets index 0") {
  auto item = parse_item("fof(t2, theorem, ![X]: p(X)).");
  CHECK(item.role == Role::Theorem);
  CHECK(item.formula == Formula::quantified(FormulaKind::Universal, Formula::atom("p", {var(0)})));
}

TEST_CASE("parse: two binders count outward from the innermost") {
  // X is bound one level further out than Y.
  auto expected = Formula::quantified(
      FormulaKind::Universal,
      Formula::quantified(FormulaKind::Existential, Formula::atom("r", {var(1), var(0)})));
  CHECK(parse_item("fof(t3, theorem, ![X]: ?[Y]: r(X,Y)).").formula == expected);
}

TEST_CASE("parse: variable lists desugar to nested binders") {
  auto a = parse_item("fof(x, axiom, ![X, Y]: r(X, Y)).").formula;
  auto b = parse_item("fof(x, axiom, ![X]: ![Y]: r(X, Y)).").formula;
  CHECK(a == b);
}

TEST_CASE("parse: shadowing resolves to the innermost binder") {
  auto f = parse_item("fof(x, axiom, ![X]: (p(X) & ?[X]: q(X))).").formula;
  auto inner = Formula::quantified(FormulaKind::Existential, Formula::atom("q", {var(0)}));
  auto expected = Formula::quantified(
      FormulaKind::Universal,
      Formula::binary(FormulaKind::Conjunction, Formula::atom("p", {var(0)}), inner));
  CHECK(f == expected);
}

TEST_CASE("parse: connectives, equality and disequality") {
  CHECK_NOTHROW(parse_item("fof(x, axiom, ((a = b & c != d) => ~p) <=> q)."));
  CHECK_THROWS_AS(parse_item("fof(x, axiom, (a = b & c != d) => ~p <=> q)."), ParseError);
  auto g = parse_item("fof(x, axiom, a != b).").formula;
  CHECK(g == Formula::negation(Formula::equality(con("a"), con("b"))));
  auto h = parse_item("fof(x, axiom, p | q | r).").formula;
  auto left = Formula::binary(FormulaKind::Disjunction, Formula::atom("p"), Formula::atom("q"));
  CHECK(h == Formula::binary(FormulaKind::Disjunction, left, Formula::atom("r")));
}

TEST_CASE("parse: roles") {
  CHECK(parse_item("fof(d, definition, p).").role == Role::Definition);
  CHECK(parse_item("fof(c, conjecture, p).").role == Role::Conjecture);
  CHECK_THROWS_AS(parse_item("fof(c, lemma_x, p)."), ParseError);
}

TEST_CASE("parse: quoted names and comments") {
  auto items = parse_items(
      "% header\n"
      "fof('my item', axiom, 'Big Pred'(a)).\n"
      "/* block\n comment */ fof(b, axiom, 'it\\'s'(a)).\n");
  REQUIRE(items.size() == 2);
  CHECK(items[0].id == "my item");
  CHECK(items[0].formula.predicate == "Big Pred");
  CHECK(items[1].formula.predicate == "it's");
}

TEST_CASE("parse: errors carry positions") {
  auto e = parse_failure("fof(a, axiom, p(a)).\nfof(b, axiom, p(X)).");
  CHECK(e.line() == 2);
  CHECK(e.column() == 17);
  CHECK(e.message().find("unbound") != std::string::npos);

  CHECK(parse_failure("fof(a, axiom, p & q | r).").message().find("ambiguous") != std::string::npos);
  CHECK(parse_failure("fof(a, axiom, p). fof(a, axiom, q).").message().find("duplicate") !=
        std::string::npos);
  CHECK(parse_failure("fof(a, axiom, p)").line() == 1);
  CHECK(parse_failure("fof(a, axiom, p). /* open").message().find("unterminated") !=
        std::string::npos);
  CHECK(parse_failure("fof(a, axiom, ![X]: X).").message().find("variable") != std::string::npos);
  CHECK(parse_failure("fof(a, axiom, 'p).").message().find("unterminated") != std::string::npos);
  CHECK_THROWS_AS(parse_item(""), ParseError);
  CHECK_THROWS_AS(parse_item("fof(a, axiom, p). fof(b, axiom, p)."), ParseError);
}

TEST_CASE("parse: nesting limit") {
  std::string deep = "fof(a, axiom, ";
  for (int i = 0; i < 2000; ++i) deep += "~";
  deep += "p).";
  auto e = parse_failure(deep);
  CHECK(e.message().find("deep") != std::string::npos);

  std::string ok = "fof(a, axiom, ";
  for (int i = 0; i < 100; ++i) ok += "~";
  ok += "p).";
  CHECK_NOTHROW(parse_item(ok));
}

TEST_CASE("print: canonical text") {
  NamedItem item{"t1", Role::Axiom, Formula::atom("p", {con("a")})};
  CHECK(print_item(item) == "fof(t1, axiom, p(a)).");

  auto t3 = parse_item("fof(t3, theorem, ![X]: ?[Y]: r(X,Y)).");
  CHECK(print_item(t3) == "fof(t3, theorem, ![V0]: ?[V1]: r(V0,V1)).");
  CHECK(parse_item(print_item(t3)) == t3);
}

TEST_CASE("print: shadowed source names get distinct generated names") {
  auto item = parse_item("fof(s, axiom, ![X]: (p(X) => ![X]: ?[X]: r(X, X))).");
  auto text = print_item(item);
  CHECK(text.find("V0") != std::string::npos);
  CHECK(text.find("V2") != std::string::npos);
  CHECK(parse_item(text) == item);
}

TEST_CASE("property: parse after print is the identity on random items") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    auto item = premsel::testing::random_item(rng, 5);
    REQUIRE(well_formed(item.formula));
    auto text = print_item(item);
    INFO(text);
    CHECK(parse_item(text) == item);
  }
}

TEST_CASE("property: alpha-variants parse to identical trees") {
  Rng rng(12);
  premsel::testing::NamedPrinter printer(rng);
  for (int i = 0; i < 500; ++i) {
    auto f = premsel::testing::random_formula(rng, 0, 5);
    auto a = printer.formula(f);
    auto b = printer.formula(f);
    INFO(a);
    INFO(b);
    auto fa = parse_item("fof(x, axiom, " + a + ").").formula;
    auto fb = parse_item("fof(x, axiom, " + b + ").").formula;
    CHECK(fa == f);
    CHECK(fb == f);
  }
}

TEST_CASE("property: the parser is total") {
  static const char* pieces[] = {"fof", "(", ")", ",", ".", "axiom", "theorem", "![X]:",
                                 "?[Y,Z]:", "X", "Y", "p", "f(", "'q r'", "'", "&", "|",
                                 "=>", "<=>", "<=", "~", "=", "!=", "$true", "%c\n",
                                 "/*", "*/", " ", "\n", "42", "[", "]", "@", "\\"};
  Rng rng(13);
  std::size_t parsed = 0;
  for (int i = 0; i < 5000; ++i) {
    std::string text;
    if (i % 3 == 0) text = "fof(a, axiom, ";
    std::size_t len = premsel::testing::uniform(rng, 24);
    for (std::size_t k = 0; k < len; ++k)
      text += pieces[premsel::testing::uniform(rng, std::size(pieces))];
    if (i % 3 == 0) text += ").";
    if (i % 7 == 0 && !text.empty())
      text[premsel::testing::uniform(rng, text.size())] =
          static_cast<char>(premsel::testing::uniform(rng, 256));
    try {
      auto items = parse_items(text);
      ++parsed;
      for (const auto& it : items) CHECK(well_formed(it.formula));
    } catch (const ParseError& e) {
      CHECK(e.line() >= 1);
      CHECK(e.column() >= 1);
    }
  }
  CHECK(parsed > 0);
}

TEST_CASE("quantifier depth and well-formedness") {
  auto f = parse_item("fof(x, axiom, ![X]: (p(X) & ?[Y]: ![Z]: q(Y))).").formula;
  CHECK(quantifier_depth(f) == 3);
  CHECK(well_formed(f));
  CHECK_FALSE(well_formed(Formula::atom("p", {var(0)})));
  Formula bad_eq;
  bad_eq.kind = FormulaKind::Equality;
  bad_eq.args = {con("a")};
  CHECK_FALSE(well_formed(bad_eq));
}
