#include "polybound/sizebounds.hpp"

#include "polybound/twnbounds.hpp"

#include <optional>

namespace polybound {

const Bound &SizeBoundMap::get(std::size_t t, const Var &v) const {
    static const Bound omega = Bound::omega();
    auto it = map_.find({t, v});
    return it == map_.end() ? omega : it->second;
}

Bound local_size_bound(const Transition &t, const Var &v) { return bound_of_poly(t.update.at(v)); }

namespace {

// w -> sum of SB(r, w) over `from`; nullopt if some entry is still undetermined. Variables in
// `uniform` use that bound instead.
std::optional<std::map<Var, Bound>> sum_over(const TransitionSet &from, const std::set<Var> &vars,
                                             const SizeBoundMap &sb, const std::map<Var, Bound> &uniform = {}) {
    std::map<Var, Bound> m;
    for (const auto &w : vars) {
        if (auto it = uniform.find(w); it != uniform.end()) {
            m[w] = it->second;
            continue;
        }
        std::vector<Bound> parts;
        for (auto r : from) {
            if (!sb.has(r, w)) {
                return std::nullopt;
            }
            parts.push_back(sb.get(r, w));
        }
        m[w] = simplify(Bound::sum(std::move(parts)));
    }
    return m;
}

enum class Shape { Identity, Increment, Reset, Other };

Shape shape_of(const Polynomial &up, const Var &v, Rat &c) {
    if (up.is_constant()) {
        c = up.constant_term();
        return Shape::Reset;
    }
    Polynomial rest = up - Polynomial(v);
    if (rest.is_constant()) {
        c = rest.constant_term();
        return c == 0 ? Shape::Identity : Shape::Increment;
    }
    return Shape::Other;
}

} // namespace

void size_bounds_acyclic(const Program &p, std::size_t t, SizeBoundMap &sb) {
    const auto &tr = p.transition(t);
    for (const auto &v : p.vars()) {
        Bound local = local_size_bound(tr, v);
        if (tr.src == p.init()) {
            sb.set(t, v, simplify(local));
            continue;
        }
        std::map<Var, Bound> m;
        for (const auto &w : local.vars()) {
            std::vector<Bound> parts;
            for (auto r : p.incoming(tr.src)) {
                parts.push_back(sb.get(r, w));
            }
            m[w] = Bound::sum(std::move(parts));
        }
        sb.set(t, v, simplify(bound_subst(local, m)));
    }
}

void size_bounds_for_scc(const Program &p, const TransitionSet &scc, const RuntimeBoundMap &rb,
                         const std::map<std::size_t, TwnSizeInfo> &twn, SizeBoundMap &sb) {
    const TransitionSet entries = entry_transitions(p, scc);
    for (auto t : scc) {
        for (const auto &v : p.vars()) {
            sb.set(t, v, Bound::omega());
        }
    }
    SizeBoundMap known; // entries determined in this pass, plus everything outside the SCC
    for (const auto &[key, b] : sb.entries()) {
        if (!scc.contains(key.first)) {
            known.set(key.first, key.second, b);
        }
    }

    auto entry_sum = [&](const Var &v) {
        std::vector<Bound> parts;
        for (auto r : entries) {
            parts.push_back(known.get(r, v));
        }
        return Bound::sum(std::move(parts));
    };

    std::map<Var, Bound> uniform;
    for (const auto &v : p.vars()) {
        bool additive = true;
        bool invariant = true;
        std::vector<Bound> extra;
        for (auto t : scc) {
            Rat c;
            switch (shape_of(p.transition(t).update.at(v), v, c)) {
            case Shape::Identity:
                break;
            case Shape::Increment: {
                invariant = false;
                auto it = rb.find(t);
                Bound times = it == rb.end() ? Bound::omega() : it->second;
                extra.push_back(Bound::constant(ceil_abs(c)) * times);
                break;
            }
            case Shape::Reset:
                invariant = false;
                extra.push_back(Bound::constant(ceil_abs(c)));
                break;
            case Shape::Other:
                invariant = additive = false;
                break;
            }
        }
        if (!additive) {
            continue;
        }
        Bound b = invariant ? simplify(entry_sum(v)) : simplify(entry_sum(v) + Bound::sum(std::move(extra)));
        for (auto t : scc) {
            known.set(t, v, b);
        }
        uniform[v] = b; // bounds v at every location of the SCC
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (auto t : scc) {
            const auto &tr = p.transition(t);
            for (const auto &v : p.vars()) {
                if (known.has(t, v)) {
                    continue;
                }
                Bound local = local_size_bound(tr, v);
                if (auto m = sum_over(p.incoming(tr.src), local.vars(), known, uniform)) {
                    known.set(t, v, simplify(bound_subst(local, *m)));
                    changed = true;
                    continue;
                }
                auto it = twn.find(t);
                if (it == twn.end()) {
                    continue;
                }
                const auto &info = it->second;
                Bound inner = twn_size_bound(info.loop, info.closed_form, v, info.local_bound);
                TransitionSet loop_entries = entry_transitions(p, {t});
                if (auto m = sum_over(loop_entries, inner.vars(), known)) {
                    known.set(t, v, simplify(bound_subst(inner, *m)));
                    changed = true;
                }
            }
        }
    }

    for (auto t : scc) {
        for (const auto &v : p.vars()) {
            if (known.has(t, v)) {
                sb.set(t, v, known.get(t, v));
            }
        }
    }
}

} // namespace polybound
