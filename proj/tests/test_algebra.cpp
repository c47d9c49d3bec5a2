#include "support.hpp"

#include "polybound/formula.hpp"

#include <gtest/gtest.h>

using namespace polybound;
using namespace testing_support;

namespace {

const std::vector<Var> xs = vars_x(5);

TEST(Polynomial, ArithmeticAndPrinting) {
    Polynomial a = poly("x2 - x3^3", xs);
    EXPECT_EQ(a.to_string(), "x2 - x3^3");
    EXPECT_EQ((a * 9 + poly("x3^3", xs)).degree(), 3u);
    EXPECT_EQ((a - a).is_zero(), true);
    EXPECT_EQ(poly("(x1 + 1)^2", xs), poly("x1^2 + 2*x1 + 1", xs));
    EXPECT_EQ(Polynomial().to_string(), "0");
    EXPECT_EQ(Polynomial(Rat(-3, 2)).to_string(), "-3/2");
}

TEST(Polynomial, Queries) {
    Polynomial p = poly("3*x1^2*x2 - x4 + 7", xs);
    EXPECT_EQ(p.degree(), 3u);
    EXPECT_EQ(p.degree_in(v("x1")), 2u);
    EXPECT_EQ(p.constant_term(), 7);
    EXPECT_EQ(p.linear_coeff(v("x4")), -1);
    EXPECT_EQ(p.vars(), (std::set<Var>{v("x1"), v("x2"), v("x4")}));
    EXPECT_TRUE(p.has_integer_coefficients());
    EXPECT_FALSE((p * Polynomial(Rat(1, 2))).has_integer_coefficients());
    EXPECT_EQ((p * Polynomial(Rat(1, 6))).denominator_lcm(), 6);
}

TEST(Polynomial, SubstituteAndEvaluate) {
    Polynomial p = poly("x1^2 + x3^5", xs);
    Polynomial q = p.substitute({{v("x1"), poly("4*x1", xs)}});
    EXPECT_EQ(q, poly("16*x1^2 + x3^5", xs));
    State s{{v("x1"), 2}, {v("x3"), -1}};
    EXPECT_EQ(p.evaluate(s), 3);
}

TEST(Polynomial, AbsoluteCoefficients) {
    EXPECT_EQ(poly_abs(poly("x2 - 8*x3^3", xs)), poly("x2 + 8*x3^3", xs));
}

TEST(PolynomialProperty, RingLaws) {
    Gen g(7);
    for (int i = 0; i < 200; ++i) {
        Polynomial a = g.polynomial(xs, 3, 9, 4);
        Polynomial b = g.polynomial(xs, 3, 9, 4);
        Polynomial c = g.polynomial(xs, 3, 9, 4);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a - a, Polynomial());
        EXPECT_EQ(a.pow(2), a * a);
        State s = g.state(xs, 6);
        EXPECT_EQ((a * b).evaluate(s), a.evaluate(s) * b.evaluate(s));
        EXPECT_EQ((a + c).evaluate(s), a.evaluate(s) + c.evaluate(s));
    }
}

TEST(PolynomialProperty, AbsDominates) {
    Gen g(11);
    for (int i = 0; i < 200; ++i) {
        Polynomial a = g.polynomial(xs, 3, 9, 5);
        State s = g.state(xs, 8);
        State as = s;
        for (auto &[x, val] : as) {
            val = abs(val);
        }
        EXPECT_LE(abs(a.evaluate(s)), poly_abs(a).evaluate(as));
    }
}

TEST(NormalizeAtom, Relations) {
    Polynomial x1 = P("x1");
    Formula ne = normalize_atom(x1, Relation::Ne, Polynomial());
    EXPECT_EQ(ne, Formula::atom(x1) || Formula::atom(-x1));
    EXPECT_TRUE(normalize_atom(x1, Relation::Ge, x1).is_true());
    EXPECT_EQ(normalize_atom(P("x"), Relation::Lt, P("y")), Formula::atom(P("y") - P("x")));
    EXPECT_EQ(normalize_atom(P("x"), Relation::Le, P("y")), Formula::atom(P("y") - P("x") + 1));
    EXPECT_EQ(normalize_atom(P("x"), Relation::Eq, Polynomial(3)).atoms().size(), 2u);
}

TEST(NormalizeAtom, ClearsDenominators) {
    Formula f = normalize_atom(P("x") * Polynomial(Rat(1, 2)), Relation::Gt, Polynomial(Rat(1, 3)));
    ASSERT_EQ(f.kind(), Formula::Kind::Atom);
    EXPECT_EQ(f.poly(), poly("3*x1 - 2", {v("x1")}).substitute({{v("x1"), P("x")}}));
}

TEST(NormalizeAtomProperty, AgreesWithRelation) {
    Gen g(3);
    const Relation rels[] = {Relation::Lt, Relation::Gt, Relation::Le, Relation::Ge, Relation::Eq, Relation::Ne};
    for (int i = 0; i < 300; ++i) {
        Polynomial a = g.polynomial(xs, 2, 5, 3);
        Polynomial b = g.polynomial(xs, 2, 5, 3);
        Relation r = rels[g.uniform(0, 5)];
        Formula f = normalize_atom(a, r, b);
        State s = g.state(xs, 4);
        Rat l = a.evaluate(s);
        Rat h = b.evaluate(s);
        bool expected = r == Relation::Lt   ? l < h
                        : r == Relation::Gt ? l > h
                        : r == Relation::Le ? l <= h
                        : r == Relation::Ge ? l >= h
                        : r == Relation::Eq ? l == h
                                            : l != h;
        EXPECT_EQ(f.holds(s), expected);
        EXPECT_EQ(negate(f).holds(s), !expected);
    }
}

TEST(Dnf, Distribution) {
    Formula a = Formula::atom(P("a")), b = Formula::atom(P("b")), c = Formula::atom(P("c")),
            d = Formula::atom(P("d"));
    auto clauses = dnf((a || b) && c);
    ASSERT_EQ(clauses.size(), 2u);
    EXPECT_EQ(clauses[0], (Clause{P("a"), P("c")}));
    EXPECT_EQ(clauses[1], (Clause{P("b"), P("c")}));
    EXPECT_EQ(dnf(a).size(), 1u);
    EXPECT_EQ(dnf((a || b) && (c || d)).size(), 4u);
}

TEST(Dnf, CapExceeded) {
    std::vector<Formula> parts;
    for (int i = 0; i < 7; ++i) {
        parts.push_back(Formula::atom(P("a" + std::to_string(i))) || Formula::atom(P("b" + std::to_string(i))));
    }
    EXPECT_THROW(dnf(Formula::conj(parts)), DnfCapExceeded);
    EXPECT_EQ(dnf(Formula::conj(parts), 128).size(), 128u);
}

TEST(DnfProperty, Equivalent) {
    Gen g(5);
    std::vector<Var> two = vars_x(2);
    for (int i = 0; i < 100; ++i) {
        std::vector<Formula> ors;
        for (int j = 0; j < 3; ++j) {
            ors.push_back(Formula::atom(g.polynomial(two, 2, 3, 3)) || Formula::atom(g.polynomial(two, 2, 3, 3)));
        }
        Formula f = Formula::conj(ors);
        auto clauses = dnf(f);
        for (int k = 0; k < 10; ++k) {
            State s = g.state(two, 4);
            bool any = false;
            for (const auto &cl : clauses) {
                bool all = true;
                for (const auto &a : cl) {
                    all = all && a.evaluate(s) > 0;
                }
                any = any || all;
            }
            EXPECT_EQ(any, f.holds(s));
        }
    }
}

} // namespace
