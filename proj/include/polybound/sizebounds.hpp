#pragma once

#include "polybound/bound.hpp"
#include "polybound/graph.hpp"
#include "polybound/twn.hpp"

#include <map>
#include <string>

namespace polybound {

/// SB(t, v): bound on |v| right after any run ending with t, over the initial absolute values.
/// Missing entries read as omega.
class SizeBoundMap {
public:
    const Bound &get(std::size_t t, const Var &v) const;
    bool has(std::size_t t, const Var &v) const { return map_.contains({t, v}); }
    void set(std::size_t t, const Var &v, Bound b) { map_.insert_or_assign({t, v}, std::move(b)); }
    const std::map<std::pair<std::size_t, Var>, Bound> &entries() const { return map_; }

private:
    std::map<std::pair<std::size_t, Var>, Bound> map_;
};

using RuntimeBoundMap = std::map<std::size_t, Bound>;

/// Closed-form data for a self-loop whose twn analysis succeeded.
struct TwnSizeInfo {
    TwnLoop loop;
    ClosedForm closed_form;
    Bound local_bound;
};

/// bound_of_poly(eta_t(v)).
Bound local_size_bound(const Transition &t, const Var &v);

/// Size bounds of a transition that lies on no cycle.
void size_bounds_acyclic(const Program &p, std::size_t t, SizeBoundMap &sb);

/// Size bounds for every transition of a nontrivial SCC. Rule per (t, v), first match wins:
///   invariant      v is unchanged by the whole SCC: sum of entry bounds
///   additive       every update is v, v + c or c: entries + resets + sum |c| * RB
///   local          eta_t(v) over bounds already known for all transitions into src(t)
///   closed form    t is a twn self-loop: twn_size_bound lifted through the entries of {t}
///   fallback       omega
/// The local and closed-form rules are applied until nothing changes.
void size_bounds_for_scc(const Program &p, const TransitionSet &scc, const RuntimeBoundMap &rb,
                         const std::map<std::size_t, TwnSizeInfo> &twn, SizeBoundMap &sb);

} // namespace polybound
