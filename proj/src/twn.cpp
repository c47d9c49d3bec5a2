#include "polybound/twn.hpp"

#include <algorithm>
#include <cassert>

namespace polybound {

std::string TwnFailure::message() const {
    switch (kind) {
    case Kind::NotSelfLoop:
        return "not a self-loop";
    case Kind::CyclicDependency: {
        std::string s = "cyclic dependency between variables:";
        for (const auto &v : cycle) {
            s += " " + v.name;
        }
        return s;
    }
    case Kind::NonLinearSelfOccurrence:
        return "variable " + var.name + " occurs non-linearly in its own update";
    }
    return {};
}

Loop chain(const Loop &loop) {
    return Loop{loop.guard && loop.guard.substitute(loop.update), compose(loop.update, loop.update)};
}

Polynomial iterate_update(const Update &u, const Var &x, unsigned k) {
    Polynomial p(x);
    for (unsigned i = 0; i < k; ++i) {
        p = p.substitute(u);
    }
    return p;
}

namespace {

std::vector<Var> find_cycle(const std::vector<Var> &vars, const std::map<Var, std::set<Var>> &deps,
                            const std::set<Var> &remaining) {
    // Every remaining variable is depended upon by another remaining one; walk those edges
    // backwards until a variable repeats.
    std::vector<Var> path;
    Var cur = *remaining.begin();
    std::map<Var, std::size_t> pos;
    while (!pos.contains(cur)) {
        pos[cur] = path.size();
        path.push_back(cur);
        for (const auto &w : vars) {
            if (w != cur && remaining.contains(w) && deps.at(w).contains(cur)) {
                cur = w;
                break;
            }
        }
    }
    std::vector<Var> cycle(path.begin() + static_cast<std::ptrdiff_t>(pos[cur]), path.end());
    std::reverse(cycle.begin(), cycle.end());
    return cycle;
}

std::variant<TwnLoop, TwnFailure> check_shape(const Loop &loop, const std::vector<Var> &vars) {
    std::map<Var, std::set<Var>> deps;
    std::map<Var, Int> coeffs;
    for (const auto &x : vars) {
        const Polynomial &up = loop.update.at(x);
        for (const auto &[mono, coeff] : up.terms()) {
            if (mono.degree_in(x) > 0 && !(mono == Monomial(x))) {
                return TwnFailure{TwnFailure::Kind::NonLinearSelfOccurrence, {}, x};
            }
        }
        Rat c = up.linear_coeff(x);
        assert(is_integral(c));
        coeffs[x] = c.get_num();
        for (const auto &y : up.vars()) {
            if (y != x) {
                deps[x].insert(y);
            }
        }
        deps.try_emplace(x);
    }
    // Kahn's algorithm: a variable may be placed once no unplaced variable depends on it.
    std::set<Var> remaining(vars.begin(), vars.end());
    std::vector<Var> order;
    while (!remaining.empty()) {
        bool placed = false;
        for (const auto &v : vars) {
            if (!remaining.contains(v)) {
                continue;
            }
            bool needed = std::any_of(remaining.begin(), remaining.end(),
                                      [&](const Var &w) { return w != v && deps.at(w).contains(v); });
            if (!needed) {
                order.push_back(v);
                remaining.erase(v);
                placed = true;
                break;
            }
        }
        if (!placed) {
            return TwnFailure{TwnFailure::Kind::CyclicDependency, find_cycle(vars, deps, remaining), {}};
        }
    }
    return TwnLoop{loop.guard, loop.update, std::move(order), std::move(coeffs), false, loop};
}

} // namespace

std::variant<TwnLoop, TwnFailure> twn_check(const Loop &loop, const std::vector<Var> &vars) {
    auto res = check_shape(loop, vars);
    auto *twn = std::get_if<TwnLoop>(&res);
    if (twn == nullptr) {
        return res;
    }
    bool negative = std::any_of(twn->coeffs.begin(), twn->coeffs.end(), [](const auto &kv) { return kv.second < 0; });
    if (!negative) {
        return res;
    }
    auto chained = check_shape(chain(loop), vars);
    auto *ct = std::get_if<TwnLoop>(&chained);
    assert(ct != nullptr);
    assert(std::all_of(ct->coeffs.begin(), ct->coeffs.end(), [](const auto &kv) { return kv.second >= 0; }));
    ct->chained = true;
    ct->original = loop;
    return chained;
}

std::variant<TwnLoop, TwnFailure> twn_check(const Transition &t, const std::vector<Var> &vars) {
    if (!t.is_self_loop()) {
        return TwnFailure{TwnFailure::Kind::NotSelfLoop, {}, {}};
    }
    return twn_check(Loop{t.guard, t.update}, vars);
}

namespace {

Int binomial(unsigned n, unsigned k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// sum_{k=0}^{n-1} c^{n-1-k} * g(k) for c >= 1, as a poly-exponential expression in n.
PolyExp weighted_sum(const Int &c, const PolyExp &g) {
    std::vector<Addend> out;
    for (const auto &ad : g.addends()) {
        if (ad.b == c) {
            UniPoly f = faulhaber(ad.a);
            for (unsigned i = 0; i < f.coeffs.size(); ++i) {
                out.push_back({ad.q * Polynomial(f.coeffs[i] / Rat(c)), i, c});
            }
        } else {
            auto [pol, k] = sum_geo_poly(ad.a, make_rat(ad.b, c));
            for (unsigned i = 0; i < pol.coeffs.size(); ++i) {
                out.push_back({ad.q * Polynomial(pol.coeffs[i] / Rat(c)), i, ad.b});
            }
            out.push_back({ad.q * Polynomial(k / Rat(c)), 0, c});
        }
    }
    return PolyExp(std::move(out));
}

// g(n - 1) expanded, valid for n >= 1.
PolyExp shift_back(const PolyExp &g) {
    std::vector<Addend> out;
    for (const auto &ad : g.addends()) {
        for (unsigned i = 0; i <= ad.a; ++i) {
            Rat coeff = Rat(binomial(ad.a, i)) / Rat(ad.b);
            if ((ad.a - i) % 2 == 1) {
                coeff = -coeff;
            }
            out.push_back({ad.q * Polynomial(coeff), i, ad.b});
        }
    }
    return PolyExp(std::move(out));
}

} // namespace

ClosedForm closed_form(const TwnLoop &loop) {
    ClosedForm cf;
    unsigned start = 0; // every form computed so far is valid for n >= start
    for (auto it = loop.order.rbegin(); it != loop.order.rend(); ++it) {
        const Var &x = *it;
        const Int &c = loop.coeffs.at(x);
        Polynomial rest = loop.update.at(x) - Polynomial(Rat(c)) * Polynomial(x);
        PolyExp g = pe_substitute(rest, cf.forms);
        if (c == 0) {
            cf.forms[x] = shift_back(g);
            ++start;
            continue;
        }
        // x(n) = c^(n-m) x(m) + sum_{k=m}^{n-1} c^(n-1-k) g(k) with m = start.
        const unsigned m = start;
        Int cm = ipow(c, m);
        Polynomial head = iterate_update(loop.update, x, m) * Polynomial(make_rat(1, cm));
        for (unsigned k = 0; k < m; ++k) {
            head -= g.at(k) * Polynomial(make_rat(1, ipow(c, k + 1)));
        }
        cf.forms[x] = PolyExp::addend(head, 0, c) + weighted_sum(c, g);
    }
    cf.n0 = start;
    return cf;
}

} // namespace polybound
