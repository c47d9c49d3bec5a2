#include "support.hpp"

#include "polybound/bound.hpp"

#include <gtest/gtest.h>

using namespace polybound;
using namespace testing_support;

namespace {

const std::vector<Var> xs = vars_x(5);

Bound bv(const std::string &n) { return Bound::var(v(n)); }

std::map<Var, Int> nat(std::initializer_list<std::pair<const char *, long>> xs_) {
    std::map<Var, Int> m;
    for (const auto &[k, val] : xs_) {
        m[v(k)] = val;
    }
    return m;
}

TEST(BoundOfPoly, Examples) {
    EXPECT_EQ(bound_of_poly(poly("x2 - x3^3", xs)).to_string(), "x2+x3*x3*x3");
    EXPECT_EQ(bound_of_poly(poly("9*x2 - 8*x3^3", xs)).to_string(), "9*x2+8*x3*x3*x3");
    EXPECT_EQ(bound_of_poly(Polynomial(Rat(-1, 2)) * P("x")).to_string(), "x");
    EXPECT_EQ(bound_of_poly(poly("x4 - 1", xs)).to_string(), "x4+1");
}

TEST(BoundEval, Examples) {
    Bound b = bv("x4") * (Bound(2) * bv("x5") + Bound(1));
    EXPECT_EQ(bound_eval(b, nat({{"x4", 1}, {"x5", 3}})), ExtNat::of(7));
    EXPECT_TRUE(bound_eval(Bound::omega() + Bound(5), {}).is_omega());
    EXPECT_EQ(bound_eval(Bound::exp(2, bv("x")), nat({{"x", 10}})), ExtNat::of(1024));
    EXPECT_TRUE(bound_eval(Bound::exp(2, Bound::constant(Int(1) << 40)), {}).is_omega());
}

TEST(BoundSubst, Examples) {
    Bound local = Bound(2) * bv("x2") + Bound(1);
    EXPECT_EQ(simplify(bound_subst(local, {{v("x2"), bv("x5")}})).to_string(), "2*x5+1");
    EXPECT_TRUE(bound_subst(bv("x"), {{v("x"), Bound::omega()}}).is_omega());
    EXPECT_TRUE(bound_subst(local, {{v("x2"), bv("x2")}}).same_as(local));
}

TEST(Simplify, Examples) {
    EXPECT_EQ(simplify(Bound(1) * bv("x") + Bound(0)).to_string(), "x");
    EXPECT_TRUE(simplify(Bound(0) * Bound::omega()).is_zero());
    EXPECT_EQ(simplify(Bound(2) + Bound(3)).to_string(), "5");
    EXPECT_EQ(simplify(bv("x") * (bv("y") + Bound(1)) + bv("x")).to_string(), "x*y+2*x");
}

TEST(AsymptoticClass, Examples) {
    EXPECT_EQ(asymptotic_class(bv("x4") * (Bound(2) * bv("x5") + Bound(1))), Complexity::poly(2));
    EXPECT_EQ(asymptotic_class(Bound(5)), Complexity::constant());
    EXPECT_EQ(asymptotic_class(Bound::exp(2, bv("x"))), Complexity::exp());
    EXPECT_EQ(asymptotic_class(Bound::exp(2, Bound(3)) * bv("x")), Complexity::poly(1));
    EXPECT_EQ(asymptotic_class(Bound::exp(2, bv("x")) + Bound::omega()), Complexity::inf());
    EXPECT_EQ(Complexity::poly(1).to_string(), "O(n)");
    EXPECT_EQ(Complexity::poly(3).to_string(), "O(n^3)");
    EXPECT_EQ(Complexity::inf().to_string(), "ω");
}

TEST(Bound, Printing) {
    EXPECT_EQ((bv("x") * (bv("y") + Bound(1))).to_string(), "x*(y+1)");
    EXPECT_EQ(Bound::exp(3, bv("x") + Bound(1)).to_string(), "3^(x+1)");
    EXPECT_EQ(Bound::omega().to_string(), "ω");
}

Bound random_bound(Gen &g, int depth) {
    const std::vector<std::string> names = {"x1", "x2", "x3"};
    long pick = depth == 0 ? g.uniform(0, 1) : g.uniform(0, 5);
    switch (pick) {
    case 0:
        return Bound(static_cast<int>(g.uniform(0, 4)));
    case 1:
        return bv(names[g.uniform(0, 2)]);
    case 2:
    case 3:
        return random_bound(g, depth - 1) + random_bound(g, depth - 1);
    case 4:
        return random_bound(g, depth - 1) * random_bound(g, depth - 1);
    default:
        return Bound::exp(g.uniform(1, 3), random_bound(g, depth - 2 < 0 ? 0 : depth - 2));
    }
}

std::map<Var, Int> random_nat(Gen &g, long hi) {
    return {{v("x1"), g.uniform(0, hi)}, {v("x2"), g.uniform(0, hi)}, {v("x3"), g.uniform(0, hi)}};
}

TEST(BoundProperty, Monotone) {
    Gen g(31);
    for (int i = 0; i < 300; ++i) {
        Bound b = random_bound(g, 4);
        auto s = random_nat(g, 5);
        auto t = s;
        for (auto &[x, val] : t) {
            val += g.uniform(0, 3);
        }
        EXPECT_TRUE(bound_eval(b, s) <= bound_eval(b, t)) << b.to_string();
    }
}

TEST(BoundProperty, SimplifyPreservesValue) {
    Gen g(37);
    for (int i = 0; i < 300; ++i) {
        Bound b = random_bound(g, 4);
        auto s = random_nat(g, 6);
        EXPECT_EQ(bound_eval(simplify(b), s), bound_eval(b, s)) << b.to_string();
    }
}

TEST(BoundProperty, SubstitutionComposes) {
    Gen g(41);
    for (int i = 0; i < 200; ++i) {
        Bound b = random_bound(g, 3);
        std::map<Var, Bound> m{{v("x1"), random_bound(g, 2)}, {v("x2"), random_bound(g, 2)}, {v("x3"), bv("x1")}};
        auto s = random_nat(g, 3);
        std::map<Var, Int> inner;
        bool omega = false;
        for (const auto &[x, mb] : m) {
            ExtNat e = bound_eval(mb, s);
            omega = omega || e.is_omega();
            inner[x] = e.is_omega() ? Int(0) : *e.value;
        }
        if (omega) {
            continue;
        }
        EXPECT_EQ(bound_eval(bound_subst(b, m), s), bound_eval(b, inner)) << b.to_string();
    }
}

TEST(BoundProperty, PolynomialDominated) {
    Gen g(43);
    for (int i = 0; i < 300; ++i) {
        Polynomial p = g.polynomial(xs, 3, 9, 4) * Polynomial(Rat(1, g.uniform(1, 3)));
        State s = g.state(xs, 9);
        ExtNat e = bound_eval(bound_of_poly(p), abs_state(s));
        ASSERT_FALSE(e.is_omega());
        EXPECT_LE(abs(p.evaluate(s)), Rat(*e.value)) << p.to_string();
    }
}

TEST(BoundProperty, AsPolynomialRoundTrip) {
    Gen g(47);
    for (int i = 0; i < 100; ++i) {
        Polynomial p = poly_abs(g.polynomial(xs, 3, 9, 4));
        auto back = as_polynomial(bound_of_poly(p));
        ASSERT_TRUE(back.has_value());
        EXPECT_EQ(*back, p);
    }
}

} // namespace
