#include "polybound/engine.hpp"

#include <chrono>

namespace polybound {

std::string Provenance::kind_name(Kind k) {
    switch (k) {
    case Kind::Trivial:
        return "trivial";
    case Kind::Ranking:
        return "ranking";
    case Kind::Twn:
        return "twn";
    case Kind::None:
        break;
    }
    return "none";
}

Bound lift_local_bound(const Bound &local, const TransitionSet &entries, const RuntimeBoundMap &rb,
                       const SizeBoundMap &sb) {
    std::vector<Bound> parts;
    for (auto r : entries) {
        std::map<Var, Bound> m;
        for (const auto &v : local.vars()) {
            m[v] = sb.get(r, v);
        }
        auto it = rb.find(r);
        Bound times = it == rb.end() ? Bound::omega() : it->second;
        parts.push_back(times * bound_subst(local, m));
    }
    return simplify(Bound::sum(std::move(parts)));
}

namespace {

class Timer {
public:
    Timer(std::map<std::string, double> &sink, std::string key)
        : sink_(sink), key_(std::move(key)), start_(std::chrono::steady_clock::now()) {}
    ~Timer() {
        std::chrono::duration<double, std::milli> d = std::chrono::steady_clock::now() - start_;
        sink_[key_] += d.count();
    }

private:
    std::map<std::string, double> &sink_;
    std::string key_;
    std::chrono::steady_clock::time_point start_;
};

std::string blocking_entry(const Program &p, const TransitionSet &entries, const RuntimeBoundMap &rb) {
    for (auto r : entries) {
        if (!rb.at(r).is_finite()) {
            return "unbounded entry " + p.transition(r).id;
        }
    }
    return "unbounded size bound on entry";
}

class Analyzer {
public:
    Analyzer(const Program &p, const AnalysisConfig &cfg) : p_(p), cfg_(cfg), dec_(p) {
        inv_ = propagate_guard_invariants(p);
    }

    AnalysisResult run() {
        if (cfg_.mprf_depth > 1) {
            res_.notes.push_back("NotImplemented: multiphase ranking functions of depth " +
                                 std::to_string(cfg_.mprf_depth) + "; proceeding with depth 1");
        }
        for (std::size_t i = 0; i < p_.size(); ++i) {
            if (dec_.cyclic(i)) {
                res_.rb[i] = Bound::omega();
                res_.provenance[i] = {Provenance::Kind::None, "no bound found"};
            } else {
                res_.rb[i] = Bound(1);
                res_.provenance[i] = {Provenance::Kind::Trivial, "not on a cycle"};
            }
        }
        for (const auto &comp : dec_.components()) {
            TransitionSet scc;
            for (std::size_t i = 0; i < p_.size(); ++i) {
                const auto &t = p_.transition(i);
                if (dec_.cyclic(i) && dec_.component_of(t.src) == dec_.component_of(comp.front())) {
                    scc.insert(i);
                }
            }
            if (!scc.empty()) {
                process_scc(scc);
            }
            Timer timer(res_.timings_ms, "size_bounds");
            for (const auto &l : comp) {
                for (auto i : p_.outgoing(l)) {
                    if (!dec_.cyclic(i)) {
                        size_bounds_acyclic(p_, i, res_.sb);
                    }
                }
            }
        }
        std::vector<Bound> all;
        for (const auto &[i, b] : res_.rb) {
            all.push_back(b);
        }
        res_.overall = simplify(Bound::sum(std::move(all)));
        res_.cls = asymptotic_class(res_.overall);
        return std::move(res_);
    }

private:
    void process_scc(const TransitionSet &scc) {
        {
            Timer timer(res_.timings_ms, "size_bounds");
            size_bounds_for_scc(p_, scc, res_.rb, twn_info_, res_.sb);
        }
        if (cfg_.use_ranking) {
            {
                Timer timer(res_.timings_ms, "ranking");
                ranking_phase(scc);
            }
            Timer timer(res_.timings_ms, "size_bounds");
            size_bounds_for_scc(p_, scc, res_.rb, twn_info_, res_.sb);
        }
        if (cfg_.use_twn) {
            Timer timer(res_.timings_ms, "twn");
            twn_phase(scc);
        }
        Timer timer(res_.timings_ms, "size_bounds");
        size_bounds_for_scc(p_, scc, res_.rb, twn_info_, res_.sb);
    }

    TransitionSet unbounded(const TransitionSet &scc) const {
        TransitionSet out;
        for (auto i : scc) {
            if (!res_.rb.at(i).is_finite()) {
                out.insert(i);
            }
        }
        return out;
    }

    bool try_ranking(const TransitionSet &scc, const TransitionSet &strict) {
        RankingAttempt a = synthesize_lrf(p_, scc, strict, inv_, cfg_.ranking);
        if (!a.rf) {
            if (strict.size() == 1) {
                res_.provenance[*strict.begin()].detail = "ranking: " + a.reason;
            }
            return false;
        }
        TransitionSet entries = entry_transitions(p_, scc);
        Bound local = rf_local_bound(*a.rf, entries, p_);
        Bound global = lift_local_bound(local, entries, res_.rb, res_.sb);
        for (auto i : strict) {
            if (global.is_finite()) {
                res_.rb[i] = global;
                res_.provenance[i] = {Provenance::Kind::Ranking, a.rf->to_string()};
            } else {
                res_.provenance[i] = {Provenance::Kind::None,
                                      blocking_entry(p_, entries, res_.rb)};
            }
        }
        return true;
    }

    void ranking_phase(const TransitionSet &scc) {
        TransitionSet pending = unbounded(scc);
        if (pending.empty() || try_ranking(scc, pending)) {
            return;
        }
        for (auto i : pending) {
            try_ranking(scc, {i});
        }
    }

    void twn_phase(const TransitionSet &scc) {
        for (auto i : unbounded(scc)) {
            const auto &t = p_.transition(i);
            if (!t.is_self_loop()) {
                continue;
            }
            TwnAnalysis a = twn_local_runtime_bound(t, p_, cfg_.ranking.smt);
            if (a.local_bound) {
                TransitionSet entries = entry_transitions(p_, {i});
                Bound global = lift_local_bound(*a.local_bound, entries, res_.rb, res_.sb);
                twn_info_.insert_or_assign(i, TwnSizeInfo{*a.loop, *a.closed_form, *a.local_bound});
                if (global.is_finite()) {
                    res_.rb[i] = global;
                    res_.provenance[i] = {Provenance::Kind::Twn, "local bound " + a.local_bound->to_string()};
                } else {
                    res_.provenance[i] = {Provenance::Kind::None,
                                          blocking_entry(p_, entries, res_.rb)};
                }
            } else {
                res_.provenance[i] = {Provenance::Kind::None, "twn: " + a.reason};
            }
            res_.twn.insert_or_assign(i, std::move(a));
        }
    }

    const Program &p_;
    const AnalysisConfig &cfg_;
    SccDecomposition dec_;
    Invariants inv_;
    std::map<std::size_t, TwnSizeInfo> twn_info_;
    AnalysisResult res_;
};

} // namespace

AnalysisResult analyze(const Program &p, const AnalysisConfig &cfg) { return Analyzer(p, cfg).run(); }

} // namespace polybound
