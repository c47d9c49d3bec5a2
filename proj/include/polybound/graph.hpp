#pragma once

#include "polybound/program.hpp"

#include <map>
#include <vector>

namespace polybound {

/// Strongly connected components of the location graph.
class SccDecomposition {
public:
    explicit SccDecomposition(const Program &p);

    /// Nontrivial SCCs as transition sets (both endpoints inside), in topological order.
    const std::vector<TransitionSet> &sccs() const { return sccs_; }
    /// All location components (trivial ones included) in topological order.
    const std::vector<std::vector<Loc>> &components() const { return components_; }
    bool cyclic(std::size_t t) const { return cyclic_.contains(t); }
    std::size_t component_of(const Loc &l) const { return comp_of_.at(l); }

private:
    std::vector<TransitionSet> sccs_;
    std::vector<std::vector<Loc>> components_;
    std::map<Loc, std::size_t> comp_of_;
    TransitionSet cyclic_;
};

inline std::vector<TransitionSet> sccs(const Program &p) { return SccDecomposition(p).sccs(); }

/// { t in T \ T' | target(t) is the source of some transition in T' }.
TransitionSet entry_transitions(const Program &p, const TransitionSet &scope);

/// Location invariants obtained by propagating guard conjuncts along transitions that leave
/// their variables unchanged (greatest inductive subset). The initial location has none.
std::map<Loc, std::vector<Polynomial>> propagate_guard_invariants(const Program &p);

/// Guard of `t` conjoined with the invariant of its source location.
Formula strengthened_guard(const Program &p, std::size_t t,
                           const std::map<Loc, std::vector<Polynomial>> &invariants);

} // namespace polybound
