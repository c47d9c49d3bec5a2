#pragma once

#include "polybound/ranking.hpp"
#include "polybound/sizebounds.hpp"
#include "polybound/twnbounds.hpp"

#include <map>
#include <string>
#include <vector>

namespace polybound {

struct AnalysisConfig {
    bool use_twn = true;
    bool use_ranking = true;
    unsigned mprf_depth = 1;
    RankingOptions ranking; ///< also carries the solver options
};

struct Provenance {
    enum class Kind { Trivial, Ranking, Twn, None };
    Kind kind = Kind::None;
    std::string detail;

    static std::string kind_name(Kind k);
};

struct AnalysisResult {
    RuntimeBoundMap rb;
    SizeBoundMap sb;
    Bound overall;
    Complexity cls;
    std::map<std::size_t, Provenance> provenance;
    std::map<std::size_t, TwnAnalysis> twn;
    std::vector<std::string> notes;
    std::map<std::string, double> timings_ms;
};

/// sum over r in entries of RB(r) * local[v := SB(r, v)], simplified.
Bound lift_local_bound(const Bound &local, const TransitionSet &entries, const RuntimeBoundMap &rb,
                       const SizeBoundMap &sb);

AnalysisResult analyze(const Program &p, const AnalysisConfig &cfg);

} // namespace polybound
