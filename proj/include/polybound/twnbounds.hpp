#pragma once

#include "polybound/bound.hpp"
#include "polybound/smt.hpp"
#include "polybound/twn.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace polybound {

struct TerminationVerdict {
    enum class Kind { Terminating, NonTerminating, Unknown };
    Kind kind = Kind::Unknown;
    State witness;      ///< NonTerminating
    std::string reason; ///< Unknown

    std::string to_string() const;
};

/// Formula over the program variables equivalent to "exists m. forall n >= m. p(n) > 0".
Formula eventual_atom(const PolyExp &p);

/// The guard with each atom replaced by the eventual_atom of its closed-form image.
Formula nontermination_formula(const TwnLoop &loop, const ClosedForm &cf);

TerminationVerdict prove_termination(const TwnLoop &loop, const ClosedForm &cf, const SmtOptions &opts);

class CapExceeded : public std::runtime_error {
public:
    CapExceeded() : std::runtime_error("dominance threshold search exceeded its cap") {}
};

/// Smallest D >= 1 with n * n^a_low * b_low^n <= n^a_high * b_high^n for all n >= D.
/// Requires (b_low, a_low) < (b_high, a_high) lexicographically.
unsigned long dominance_threshold(unsigned a_low, const Int &b_low, unsigned a_high, const Int &b_high,
                                  unsigned long cap = 1000000);

/// Sound bound on the iteration count after which every guard atom keeps its truth value.
Bound stabilization_bound(const TwnLoop &loop, const ClosedForm &cf);

/// Stabilization bound of a single atom's closed-form image (n0 not included).
Bound atom_stabilization_bound(const PolyExp &image);

/// Outcome of running the twn pipeline on one transition.
struct TwnAnalysis {
    std::optional<TwnLoop> loop;
    std::optional<ClosedForm> closed_form;
    TerminationVerdict verdict;
    std::optional<Bound> local_bound; ///< set iff the loop was proven terminating
    std::string reason;               ///< why no bound was produced
};

/// twn_check, closed_form, prove_termination, stabilization_bound; doubled plus one for chained loops.
TwnAnalysis twn_local_runtime_bound(const Transition &t, const Program &p, const SmtOptions &opts);

/// Bound on |v| after at most `iterations` runs of the loop, in terms of the loop's entry state.
Bound twn_size_bound(const TwnLoop &loop, const ClosedForm &cf, const Var &v, const Bound &iterations);

} // namespace polybound
