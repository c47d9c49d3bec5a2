#pragma once

#include "polybound/bound.hpp"
#include "polybound/graph.hpp"
#include "polybound/smt.hpp"

#include <map>
#include <optional>
#include <string>

namespace polybound {

using Invariants = std::map<Loc, std::vector<Polynomial>>;

/// Location-wise affine ranking function for the scope T' with decreasing set T'_>.
///
/// For t = (l, guard, eta, l') in T': guard implies f_l(x) - f_l'(eta(x)) >= 1 if t is in
/// T'_> and >= 0 otherwise. For t in T'_>: guard implies f_l(x) >= 1. Hence the number of
/// T'_> steps in a T'-run entered at location l with state s is at most f_l(s).
struct RankingFunction {
    std::map<Loc, Polynomial> f;
    TransitionSet strict;
    TransitionSet scope;

    std::string to_string() const;
};

struct RankingOptions {
    SmtOptions smt;
    std::size_t dnf_cap = 64;
    std::size_t validation_samples = 1000;
    unsigned seed = 42;
};

struct RankingAttempt {
    std::optional<RankingFunction> rf;
    std::string reason; ///< why no ranking function was found
};

/// Synthesizes an affine ranking function through Farkas' lemma and an SMT solver. Guards are
/// strengthened with `invariants`; non-linear atoms are dropped from the antecedent.
RankingAttempt synthesize_lrf(const Program &p, const TransitionSet &scope, const TransitionSet &strict,
                              const Invariants &invariants, const RankingOptions &opts);

/// Sum over the distinct entry locations l of bound_of_poly(f_l).
Bound rf_local_bound(const RankingFunction &rf, const TransitionSet &entries, const Program &p);

/// Checks the ranking conditions on random states satisfying the strengthened guards. Returns
/// a description of the first violation, or an empty string.
std::string validate_ranking_function(const Program &p, const RankingFunction &rf, const Invariants &invariants,
                                      std::size_t samples, unsigned seed);

} // namespace polybound
