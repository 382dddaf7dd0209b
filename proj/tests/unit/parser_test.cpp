#include <gtest/gtest.h>

#include "dcmon/dc/parser.hpp"
#include "dcmon/error.hpp"
#include "gen.hpp"

namespace dcmon::dc {
namespace {

TEST(Parser, RequirementShape) {
  const Formula got = parse_formula("[](len >= 11 => int(I) + int(M) <= b)");
  const Formula want = box(implies(pred(Relation::Ge, length(), literal(Rational(11))),
                                   pred(Relation::Le, add(duration(obs("I")), duration(obs("M"))),
                                        global("b"))));
  EXPECT_TRUE(equal(got, want));
}

TEST(Parser, AlmostEverywhere) {
  EXPECT_TRUE(equal(parse_formula("ae(I)"), ae(obs("I"))));
  EXPECT_TRUE(equal(parse_formula("ae(E1) ; ae(E2 & !E3)"),
                    chop(ae(obs("E1")), ae(conj(obs("E2"), negate(obs("E3")))))));
}

TEST(Parser, ChopBindsLoosestAndAssociatesRight) {
  EXPECT_TRUE(equal(parse_formula("ae(a) & ae(b) ; ae(c)"),
                    chop(conj(ae(obs("a")), ae(obs("b"))), ae(obs("c")))));
  EXPECT_TRUE(equal(parse_formula("ae(a) ; ae(b) ; ae(c)"),
                    chop(ae(obs("a")), chop(ae(obs("b")), ae(obs("c"))))));
  EXPECT_TRUE(equal(parse_formula("ae(a) => ae(b) ; ae(c)"),
                    chop(implies(ae(obs("a")), ae(obs("b"))), ae(obs("c")))));
}

TEST(Parser, ConnectivePrecedence) {
  const Formula a = ae(obs("a"));
  const Formula b = ae(obs("b"));
  const Formula c = ae(obs("c"));
  EXPECT_TRUE(equal(parse_formula("ae(a) | ae(b) & ae(c)"), disj(a, conj(b, c))));
  EXPECT_TRUE(equal(parse_formula("!ae(a) & ae(b)"), conj(negate(a), b)));
  EXPECT_TRUE(equal(parse_formula("ae(a) => ae(b) => ae(c)"), implies(a, implies(b, c))));
  EXPECT_TRUE(equal(parse_formula("ae(a) | ae(b) => ae(c)"), implies(disj(a, b), c)));
  EXPECT_TRUE(equal(parse_formula("forall x in {1}: ae(a) ; ae(b)"),
                    forall("x", {"", {Rational(1)}}, chop(a, b))));
}

TEST(Parser, TermsAndNumbers) {
  EXPECT_TRUE(equal(parse_term("1 + 2 * x"),
                    add(literal(Rational(1)), mul(literal(Rational(2)), global("x")))));
  EXPECT_TRUE(equal(parse_term("a - b - c"), sub(sub(global("a"), global("b")), global("c"))));
  EXPECT_TRUE(equal(parse_term("-2.5"), literal(Rational(-5, 2))));
  EXPECT_TRUE(equal(parse_term("-x"), neg(global("x"))));
  EXPECT_TRUE(equal(parse_term("min(len, 3, x)"),
                    minimum({length(), literal(Rational(3)), global("x")})));
  EXPECT_TRUE(equal(parse_term("1e-2"), literal(Rational(1, 100))));
}

TEST(Parser, StateAssertions) {
  EXPECT_TRUE(equal(parse_state("X = 2 | !Y"), disj(obs("X", 2), negate(obs("Y")))));
  EXPECT_TRUE(equal(parse_state("A => B => C"),
                    implies(obs("A"), implies(obs("B"), obs("C")))));
  EXPECT_TRUE(equal(parse_state("0 | 1"), disj(const0(), const1())));
  EXPECT_THROW(parse_state("2"), ParseError);
}

TEST(Parser, ParenthesisedTermStartsAPredicate) {
  EXPECT_TRUE(equal(parse_formula("(len + 1) * 2 > 3"),
                    pred(Relation::Gt, mul(add(length(), literal(Rational(1))), literal(Rational(2))),
                         literal(Rational(3)))));
  EXPECT_TRUE(equal(parse_formula("(ae(a))"), ae(obs("a"))));
  EXPECT_TRUE(equal(parse_formula("((len = 0))"), pred(Relation::Eq, length(), literal(Rational(0)))));
}

TEST(Parser, ReportsLineAndColumn) {
  try {
    parse_formula("ae(I) &\n  len >");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 8u);
  }
  try {
    parse_formula("ae(I) $ ae(M)");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 7u);
  }
  EXPECT_THROW(parse_formula("ae(I) ae(M)"), ParseError);
  EXPECT_THROW(parse_formula("len"), ParseError);
  EXPECT_THROW(parse_formula("int = 3"), ParseError);
  EXPECT_THROW(parse_formula("(len = 1"), ParseError);
}

TEST(Parser, ChecksDeclarations) {
  Declarations d;
  d.observables["I"] = Observable{"I"};
  d.observables["mode"] = Observable{"mode", {0, 1, 2}};
  d.globals = {"b"};
  d.domains = {"D"};
  EXPECT_NO_THROW(parse_formula("[](int(I) <= b) & ae(mode = 2)", &d));
  EXPECT_NO_THROW(parse_formula("forall x in D: len <= x", &d));
  EXPECT_THROW(parse_formula("ae(J)", &d), ParseError);
  EXPECT_THROW(parse_formula("len <= c", &d), ParseError);
  EXPECT_THROW(parse_formula("ae(mode = 3)", &d), ParseError);
  EXPECT_THROW(parse_formula("forall x in E: true", &d), ParseError);
  EXPECT_THROW(parse_formula("forall I in D: true", &d), ParseError);
  EXPECT_THROW(parse_formula("len <= I", &d), ParseError);
  EXPECT_THROW(parse_formula("len <= x", &d), ParseError);
}

TEST(Format, CanonicalText) {
  EXPECT_EQ(format(truth()), "true");
  EXPECT_EQ(format(parse_formula("ae(a) ; (ae(b) ; ae(c))")), "ae(a) ; ae(b) ; ae(c)");
  EXPECT_EQ(format(parse_formula("(ae(a) ; ae(b)) ; ae(c)")), "(ae(a) ; ae(b)) ; ae(c)");
  EXPECT_EQ(format(parse_formula("[](len >= 11=>int(I)+int(M)<=b)")),
            "[](len >= 11 => int(I) + int(M) <= b)");
  EXPECT_EQ(format(parse_state("!(a | b) & X = 2")), "!(a | b) & (X = 2)");
}

TEST(Format, RoundTripsGeneratedFormulas) {
  testing::Gen g(77);
  const std::vector<Observable> schema{{"A"}, {"B"}, {"mode", {0, 1, 2}}};
  testing::GenOptions opt{schema, {"b", "r"}, {"D"}, true, true};
  for (int i = 0; i < 500; ++i) {
    const Formula h = testing::random_formula(g, opt, 6);
    ASSERT_LE(depth(h), 6);
    const std::string text = format(h);
    Formula back;
    ASSERT_NO_THROW(back = parse_formula(text)) << text;
    ASSERT_TRUE(equal(back, h)) << text << "\n -> " << format(back);
    EXPECT_EQ(format(back), text);
  }
}

}  // namespace
}  // namespace dcmon::dc
