#include "support.hpp"

#include "polybound/engine.hpp"
#include "polybound/report.hpp"
#include "polybound/sim.hpp"

#include <gtest/gtest.h>

using namespace polybound;
using namespace testing_support;

namespace {

RankingOptions ropts() {
    RankingOptions o;
    o.smt = SmtOptions::from_env();
    return o;
}

AnalysisConfig config() {
    AnalysisConfig c;
    c.ranking = ropts();
    return c;
}

TEST(Ranking, Countdown) {
    Program p = load("countdown.koat");
    auto inv = propagate_guard_invariants(p);
    RankingAttempt a = synthesize_lrf(p, {1}, {1}, inv, ropts());
    ASSERT_TRUE(a.rf.has_value()) << a.reason;
    EXPECT_EQ(a.rf->f.at({"l1"}), P("x"));
    EXPECT_EQ(validate_ranking_function(p, *a.rf, inv, 1000, 1), "");
    EXPECT_EQ(rf_local_bound(*a.rf, {0}, p).to_string(), "x");
}

TEST(Ranking, Divergent) {
    Program p = load("nonterm.koat");
    auto inv = propagate_guard_invariants(p);
    RankingAttempt a = synthesize_lrf(p, {1}, {1}, inv, ropts());
    EXPECT_FALSE(a.rf.has_value());
    EXPECT_FALSE(a.reason.empty());
    RankingFunction bogus{{{{"l1"}, P("x")}}, {1}, {1}};
    EXPECT_NE(validate_ranking_function(p, bogus, inv, 100, 1), "");
}

TEST(Ranking, Fig1Singletons) {
    Program p = load("fig1.koat");
    auto inv = propagate_guard_invariants(p);
    TransitionSet scc{1, 2, 3};
    EXPECT_FALSE(synthesize_lrf(p, scc, scc, inv, ropts()).rf.has_value());
    EXPECT_FALSE(synthesize_lrf(p, scc, {3}, inv, ropts()).rf.has_value());
    for (std::size_t t : {1, 2}) {
        RankingAttempt a = synthesize_lrf(p, scc, {t}, inv, ropts());
        ASSERT_TRUE(a.rf.has_value()) << t << ": " << a.reason;
        EXPECT_EQ(rf_local_bound(*a.rf, {0}, p).to_string(), "x4");
    }
}

TEST(Ranking, WithoutInvariantsFig1NeedsThem) {
    Program p = load("fig1.koat");
    TransitionSet scc{1, 2, 3};
    EXPECT_FALSE(synthesize_lrf(p, scc, {2}, {}, ropts()).rf.has_value());
}

TEST(Ranking, DnfCap) {
    Program p = load("fig1.koat");
    RankingOptions o = ropts();
    o.dnf_cap = 1; // the guard of t3 has two clauses
    RankingAttempt a = synthesize_lrf(p, {1, 2, 3}, {1}, {}, o);
    EXPECT_FALSE(a.rf.has_value());
    EXPECT_NE(a.reason.find("cap"), std::string::npos);
}

TEST(RankingProperty, RandomLinearLoopsAreSound) {
    Gen g(55);
    int found = 0;
    for (int i = 0; i < 40; ++i) {
        auto vars = vars_x(2);
        Update u;
        for (const auto &x : vars) {
            u[x] = g.polynomial(vars, 1, 3, 3);
        }
        Formula guard = Formula::atom(g.polynomial(vars, 1, 3, 3)) && Formula::atom(g.polynomial(vars, 1, 3, 3));
        Program p(vars, {"l0"},
                  {Transition{"t0", {"l0"}, Formula::truth(), {}, {"l1"}}, Transition{"t1", {"l1"}, guard, u, {"l1"}}});
        auto inv = propagate_guard_invariants(p);
        RankingAttempt a = synthesize_lrf(p, {1}, {1}, inv, ropts());
        if (!a.rf) {
            continue;
        }
        ++found;
        Bound b = rf_local_bound(*a.rf, {0}, p);
        for (int k = 0; k < 30; ++k) {
            State s = g.state(vars, 15);
            auto n = iterate_loop(p.transition(1), s, 100000);
            ASSERT_TRUE(n.has_value()) << p.to_koat();
            EXPECT_LE(Int(*n), *bound_eval(b, abs_state(s)).value) << p.to_koat();
        }
    }
    EXPECT_GT(found, 5);
}

TEST(SizeBounds, Local) {
    Program p = load("fig1.koat");
    EXPECT_EQ(local_size_bound(p.transition(1), v("x2")).to_string(), "x5");
    EXPECT_EQ(local_size_bound(p.transition(2), v("x4")).to_string(), "x4+1");
    EXPECT_EQ(local_size_bound(p.transition(2), v("x3")).to_string(), "x3");
}

TEST(SizeBounds, Fig1) {
    Program p = load("fig1.koat");
    AnalysisResult r = analyze(p, config());
    EXPECT_EQ(r.sb.get(0, v("x4")).to_string(), "x4");
    EXPECT_EQ(r.sb.get(1, v("x2")).to_string(), "x5");
    EXPECT_EQ(r.sb.get(1, v("x3")).to_string(), "x3");
    EXPECT_TRUE(r.sb.get(3, v("x2")).is_finite());
}

TEST(SizeBounds, SquaringFallsBack) {
    Program p = load("square.koat");
    AnalysisResult r = analyze(p, config());
    EXPECT_TRUE(r.sb.get(1, v("x")).is_omega());
    EXPECT_EQ(r.sb.get(1, v("y")).to_string(), "2*y");
}

TEST(SizeBounds, Additive) {
    Program p = load("two_phase.koat");
    RuntimeBoundMap rb{{0, Bound(1)}, {1, Bound::var(v("x"))}, {2, Bound(1)}, {3, Bound::omega()}};
    SizeBoundMap sb;
    size_bounds_acyclic(p, 0, sb);
    size_bounds_for_scc(p, {1}, rb, {}, sb);
    EXPECT_EQ(sb.get(1, v("x")).to_string(), "2*x");
    EXPECT_EQ(sb.get(1, v("y")).to_string(), "y");
    size_bounds_acyclic(p, 2, sb);
    size_bounds_for_scc(p, {3}, rb, {}, sb);
    EXPECT_TRUE(sb.get(3, v("y")).is_omega());
}

TEST(SizeBoundsProperty, MonotoneInRuntimeBounds) {
    Program p = load("two_phase.koat");
    Gen g(3);
    for (int i = 0; i < 50; ++i) {
        Bound small = Bound::var(v("x")) * Bound(static_cast<int>(g.uniform(0, 3)));
        Bound large = small + Bound(static_cast<int>(g.uniform(0, 3)));
        SizeBoundMap a, b;
        for (auto *sb : {&a, &b}) {
            size_bounds_acyclic(p, 0, *sb);
        }
        size_bounds_for_scc(p, {1}, {{1, small}}, {}, a);
        size_bounds_for_scc(p, {1}, {{1, large}}, {}, b);
        auto s = abs_state(g.state(p.vars(), 10));
        EXPECT_TRUE(bound_eval(a.get(1, v("x")), s) <= bound_eval(b.get(1, v("x")), s));
    }
}

TEST(Lift, Examples) {
    RuntimeBoundMap rb{{0, Bound(1)}};
    SizeBoundMap sb;
    sb.set(0, v("x4"), Bound::var(v("x4")));
    sb.set(0, v("x2"), Bound::var(v("x5")));
    EXPECT_EQ(lift_local_bound(Bound::var(v("x4")), {0}, rb, sb).to_string(), "x4");
    rb[0] = Bound::var(v("x4"));
    Bound local = Bound(2) * Bound::var(v("x2")) + Bound(1);
    EXPECT_EQ(lift_local_bound(local, {0}, rb, sb).to_string(), "2*x4*x5+x4");
    EXPECT_TRUE(lift_local_bound(local, {}, rb, sb).is_zero());
}

TEST(Engine, Fig1) {
    Program p = load("fig1.koat");
    AnalysisResult r = analyze(p, config());
    EXPECT_EQ(r.rb.at(0).to_string(), "1");
    EXPECT_EQ(r.rb.at(1).to_string(), "x4");
    EXPECT_EQ(r.rb.at(2).to_string(), "x4");
    EXPECT_EQ(asymptotic_class(r.rb.at(3)).kind, Complexity::Kind::Poly);
    EXPECT_LE(asymptotic_class(r.rb.at(3)).degree, 6u);
    EXPECT_EQ(r.provenance.at(0).kind, Provenance::Kind::Trivial);
    EXPECT_EQ(r.provenance.at(1).kind, Provenance::Kind::Ranking);
    EXPECT_EQ(r.provenance.at(3).kind, Provenance::Kind::Twn);
    EXPECT_TRUE(r.overall.is_finite());
}

TEST(Engine, Ablations) {
    Program fig1 = load("fig1.koat");
    AnalysisConfig no_twn = config();
    no_twn.use_twn = false;
    AnalysisResult r = analyze(fig1, no_twn);
    EXPECT_TRUE(r.rb.at(3).is_omega());
    EXPECT_TRUE(r.overall.is_omega());

    AnalysisConfig no_rank = config();
    no_rank.use_ranking = false;
    AnalysisResult c = analyze(load("countdown.koat"), no_rank);
    EXPECT_TRUE(c.overall.is_finite());
    EXPECT_EQ(c.provenance.at(1).kind, Provenance::Kind::Twn);
}

TEST(Engine, TrivialPrograms) {
    AnalysisResult s = analyze(load("straight.koat"), config());
    EXPECT_EQ(s.overall.to_string(), "3");
    EXPECT_EQ(s.cls, Complexity::constant());
    AnalysisResult n = analyze(load("nonterm.koat"), config());
    EXPECT_TRUE(n.rb.at(1).is_omega());
    EXPECT_EQ(n.cls, Complexity::inf());
}

TEST(Engine, DepthNote) {
    AnalysisConfig c = config();
    c.mprf_depth = 3;
    AnalysisResult r = analyze(load("countdown.koat"), c);
    ASSERT_EQ(r.notes.size(), 1u);
    EXPECT_NE(r.notes[0].find("NotImplemented"), std::string::npos);
}

TEST(EngineProperty, GlobalSoundness) {
    Gen g(2024);
    for (const auto &name : fixture_names()) {
        Program p = load(name);
        AnalysisResult r = analyze(p, config());
        ExploreLimits lim;
        lim.max_steps = 2000;
        for (int i = 0; i < 50; ++i) {
            State s0 = g.state(p.vars(), 15);
            auto abs0 = abs_state(s0);
            ExhaustiveResult run = exhaustive_run(p, s0, lim);
            ExtNat total = bound_eval(r.overall, abs0);
            if (run.exceeded) {
                EXPECT_TRUE(total.is_omega() || *total.value >= lim.max_steps) << name;
                continue;
            }
            for (std::size_t t = 0; t < p.size(); ++t) {
                EXPECT_TRUE(ExtNat::of(run.per_transition[t]) <= bound_eval(r.rb.at(t), abs0))
                    << name << " " << p.transition(t).id;
            }
            EXPECT_TRUE(ExtNat::of(run.rc) <= total) << name;
        }
    }
}

TEST(EngineProperty, SizeBoundsSound) {
    Gen g(77);
    for (const auto &name : fixture_names()) {
        Program p = load(name);
        AnalysisResult r = analyze(p, config());
        for (int i = 0; i < 50; ++i) {
            State s0 = g.state(p.vars(), 15);
            auto abs0 = abs_state(s0);
            // random walks: every visited post-state must respect SB
            Configuration c{p.init(), s0};
            for (int k = 0; k < 300; ++k) {
                auto next = step(p, c);
                if (next.empty()) {
                    break;
                }
                auto [t, c2] = next[g.uniform(0, next.size() - 1)];
                for (const auto &x : p.vars()) {
                    EXPECT_TRUE(ExtNat::of(abs(c2.state.at(x))) <= bound_eval(r.sb.get(t, x), abs0))
                        << name << " SB(" << p.transition(t).id << "," << x.name << ")";
                }
                c = c2;
            }
        }
    }
}

TEST(Engine, Deterministic) {
    for (const auto &name : fixture_names()) {
        Program p = load(name);
        ReportOptions ro;
        ro.timings = false;
        EXPECT_EQ(report_json(p, analyze(p, config()), ro), report_json(p, analyze(p, config()), ro)) << name;
    }
}

TEST(Report, Shape) {
    Program p = load("fig1.koat");
    AnalysisResult r = analyze(p, config());
    auto j = report_json(p, r);
    EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
    ASSERT_EQ(j["transitions"].size(), 4u);
    EXPECT_EQ(j["transitions"][1]["runtime_bound"], "x4");
    EXPECT_EQ(j["transitions"][1]["size_bounds"]["x2"], "x5");
    EXPECT_EQ(j["transitions"][3]["provenance"]["kind"], "twn");
    EXPECT_EQ(j["transitions"][3]["twn"]["verdict"], "terminating");
    EXPECT_TRUE(j["finite"].get<bool>());
    EXPECT_TRUE(j.contains("timings_ms"));
    std::string text = report_text(p, r);
    EXPECT_NE(text.find("RB(t1) = x4"), std::string::npos);
    EXPECT_NE(text.find("SB(t1,x2) = x5"), std::string::npos);
}

} // namespace
