#include "polybound/graph.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>

#include <algorithm>
#include <deque>

namespace polybound {

SccDecomposition::SccDecomposition(const Program &p) {
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
    const auto &locs = p.locs();
    std::map<Loc, std::size_t> index;
    for (std::size_t i = 0; i < locs.size(); ++i) {
        index[locs[i]] = i;
    }
    Graph g(locs.size());
    for (const auto &t : p.transitions()) {
        boost::add_edge(index.at(t.src), index.at(t.tgt), g);
    }
    std::vector<int> comp(locs.size());
    const int ncomp = boost::strong_components(g, boost::make_iterator_property_map(
                                                      comp.begin(), boost::get(boost::vertex_index, g)));

    // Order the condensation with Kahn's algorithm, preferring the component that holds the
    // earliest-declared location so the result is deterministic.
    std::vector<std::set<int>> succ(ncomp);
    std::vector<int> indeg(ncomp, 0);
    for (const auto &t : p.transitions()) {
        int a = comp[index.at(t.src)];
        int b = comp[index.at(t.tgt)];
        if (a != b && succ[a].insert(b).second) {
            ++indeg[b];
        }
    }
    std::vector<std::size_t> first_loc(ncomp, locs.size());
    for (std::size_t i = 0; i < locs.size(); ++i) {
        first_loc[comp[i]] = std::min(first_loc[comp[i]], i);
    }
    auto by_decl = [&](int a, int b) { return first_loc[a] > first_loc[b]; };
    std::vector<int> ready;
    for (int c = 0; c < ncomp; ++c) {
        if (indeg[c] == 0) {
            ready.push_back(c);
        }
    }
    std::vector<int> order;
    while (!ready.empty()) {
        std::sort(ready.begin(), ready.end(), by_decl);
        int c = ready.back();
        ready.pop_back();
        order.push_back(c);
        for (int d : succ[c]) {
            if (--indeg[d] == 0) {
                ready.push_back(d);
            }
        }
    }

    std::vector<std::size_t> rank(ncomp);
    for (std::size_t i = 0; i < order.size(); ++i) {
        rank[order[i]] = i;
    }
    components_.resize(ncomp);
    for (std::size_t i = 0; i < locs.size(); ++i) {
        components_[rank[comp[i]]].push_back(locs[i]);
        comp_of_[locs[i]] = rank[comp[i]];
    }
    std::vector<TransitionSet> inner(ncomp);
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto &t = p.transition(i);
        if (comp_of_[t.src] == comp_of_[t.tgt]) {
            inner[comp_of_[t.src]].insert(i);
            cyclic_.insert(i);
        }
    }
    for (auto &s : inner) {
        if (!s.empty()) {
            sccs_.push_back(std::move(s));
        }
    }
}

TransitionSet entry_transitions(const Program &p, const TransitionSet &scope) {
    std::set<Loc> sources;
    for (auto i : scope) {
        sources.insert(p.transition(i).src);
    }
    TransitionSet out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!scope.contains(i) && sources.contains(p.transition(i).tgt)) {
            out.insert(i);
        }
    }
    return out;
}

namespace {

std::vector<Polynomial> top_level_conjuncts(const Formula &f) {
    if (f.kind() == Formula::Kind::Atom) {
        return f.is_true() ? std::vector<Polynomial>{} : std::vector<Polynomial>{f.poly()};
    }
    if (f.kind() == Formula::Kind::And) {
        std::vector<Polynomial> out;
        for (const auto &c : f.children()) {
            if (c.kind() == Formula::Kind::Atom && !c.is_true()) {
                out.push_back(c.poly());
            }
        }
        return out;
    }
    return {};
}

bool unchanged_by(const Transition &t, const Polynomial &atom) {
    for (const auto &v : atom.vars()) {
        if (t.update.at(v) != Polynomial(v)) {
            return false;
        }
    }
    return true;
}

} // namespace

std::map<Loc, std::vector<Polynomial>> propagate_guard_invariants(const Program &p) {
    std::map<Loc, std::vector<Polynomial>> inv;
    for (const auto &l : p.locs()) {
        if (l == p.init()) {
            inv[l] = {};
            continue;
        }
        std::vector<Polynomial> cand;
        for (auto i : p.incoming(l)) {
            for (auto &a : top_level_conjuncts(p.transition(i).guard)) {
                if (std::find(cand.begin(), cand.end(), a) == cand.end()) {
                    cand.push_back(std::move(a));
                }
            }
        }
        inv[l] = std::move(cand);
    }
    // An atom survives at l if every incoming transition establishes it: the atom's variables are
    // untouched and the atom is a guard conjunct or already invariant at the source.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto &l : p.locs()) {
            auto &atoms = inv[l];
            std::vector<Polynomial> keep;
            for (const auto &a : atoms) {
                bool ok = true;
                for (auto i : p.incoming(l)) {
                    const auto &t = p.transition(i);
                    auto conj = top_level_conjuncts(t.guard);
                    const auto &src_inv = inv[t.src];
                    bool established = std::find(conj.begin(), conj.end(), a) != conj.end() ||
                                       std::find(src_inv.begin(), src_inv.end(), a) != src_inv.end();
                    if (!established || !unchanged_by(t, a)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    keep.push_back(a);
                }
            }
            if (keep.size() != atoms.size()) {
                atoms = std::move(keep);
                changed = true;
            }
        }
    }
    return inv;
}

Formula strengthened_guard(const Program &p, std::size_t t,
                           const std::map<Loc, std::vector<Polynomial>> &invariants) {
    const auto &tr = p.transition(t);
    std::vector<Formula> parts{tr.guard};
    auto it = invariants.find(tr.src);
    if (it != invariants.end()) {
        for (const auto &a : it->second) {
            parts.push_back(Formula::atom(a));
        }
    }
    return Formula::conj(std::move(parts));
}

} // namespace polybound
