#include "polybound/twnbounds.hpp"

#include "polybound/sim.hpp"

#include <algorithm>

namespace polybound {

std::string TerminationVerdict::to_string() const {
    switch (kind) {
    case Kind::Terminating:
        return "terminating";
    case Kind::NonTerminating: {
        std::string s = "nonterminating from";
        for (const auto &[v, x] : witness) {
            s += " " + v.name + "=" + x.get_str();
        }
        return s;
    }
    case Kind::Unknown:
        return "unknown (" + reason + ")";
    }
    return {};
}

Formula eventual_atom(const PolyExp &p) {
    const auto &ads = p.addends();
    std::vector<Formula> cases;
    for (std::size_t k = 0; k < ads.size(); ++k) {
        std::vector<Formula> parts{Formula::atom(ads[k].q)};
        for (std::size_t j = k + 1; j < ads.size(); ++j) {
            parts.push_back(equals_zero(ads[j].q));
        }
        cases.push_back(Formula::conj(std::move(parts)));
    }
    return Formula::disj(std::move(cases));
}

Formula nontermination_formula(const TwnLoop &loop, const ClosedForm &cf) {
    return loop.guard.map_atoms([&](const Polynomial &p) { return eventual_atom(pe_substitute(p, cf.forms)); });
}

namespace {

// Value of each addend of `image` at the given state and counter.
std::vector<Rat> addend_values(const PolyExp &image, const State &s, const Int &n) {
    std::vector<Rat> out;
    for (const auto &ad : image.addends()) {
        out.push_back(ad.q.evaluate(s) * Rat(ipow(n, ad.a)) * Rat(ipow(ad.b, n.get_ui())));
    }
    return out;
}

// True once the highest nonzero addend dominates the sum of the absolute values below it.
bool dominated_at(const PolyExp &image, const State &s, const Int &n) {
    auto vals = addend_values(image, s, n);
    std::size_t k = vals.size();
    while (k > 0 && vals[k - 1] == 0) {
        --k;
    }
    if (k <= 1) {
        return true;
    }
    Rat rest = 0;
    for (std::size_t j = 0; j + 1 < k; ++j) {
        rest += abs(vals[j]);
    }
    return abs(vals[k - 1]) > rest;
}

bool survives(const TwnLoop &loop, State s, unsigned steps) {
    for (unsigned i = 0; i < steps; ++i) {
        if (!loop.guard.holds(s)) {
            return false;
        }
        s = apply_update(loop.update, s);
    }
    return true;
}

State evaluate_closed_form(const ClosedForm &cf, const State &x, const Int &n) {
    State out;
    for (const auto &[v, pe] : cf.forms) {
        out[v] = pe.eval(x, n).get_num();
    }
    return out;
}

} // namespace

TerminationVerdict prove_termination(const TwnLoop &loop, const ClosedForm &cf, const SmtOptions &opts) {
    TerminationVerdict verdict;
    Formula nt = nontermination_formula(loop, cf);
    SmtResult r = check_sat_int(nt, opts);
    if (r.unsat()) {
        verdict.kind = TerminationVerdict::Kind::Terminating;
        return verdict;
    }
    if (!r.sat()) {
        verdict.reason = r.reason;
        return verdict;
    }
    State x;
    for (const auto &[v, pe] : cf.forms) {
        auto it = r.model.find(v.name);
        x[v] = it == r.model.end() ? Int(0) : Int(it->second.get_num());
    }
    std::vector<PolyExp> images;
    for (const auto &atom : loop.guard.atoms()) {
        images.push_back(pe_substitute(atom, cf.forms));
    }
    constexpr unsigned kSearchCap = 10000;
    Int m = cf.n0;
    for (; m <= kSearchCap; ++m) {
        bool all = std::all_of(images.begin(), images.end(),
                               [&](const PolyExp &img) { return dominated_at(img, x, m); });
        if (all) {
            break;
        }
    }
    State witness = evaluate_closed_form(cf, x, m);
    if (!survives(loop, witness, 100)) {
        // Fall back to the symbolic stabilization threshold, which is sound by construction.
        ExtNat th = bound_eval(stabilization_bound(loop, cf), abs_state(x));
        if (th.is_omega() || *th.value > kSearchCap) {
            verdict.reason = "witness did not survive simulation";
            return verdict;
        }
        witness = evaluate_closed_form(cf, x, std::max(*th.value, Int(cf.n0)));
        if (!survives(loop, witness, 100)) {
            verdict.reason = "witness did not survive simulation";
            return verdict;
        }
    }
    verdict.kind = TerminationVerdict::Kind::NonTerminating;
    verdict.witness = std::move(witness);
    return verdict;
}

namespace {

// n^a_low+1 * b_low^n <= n^a_high * b_high^n
bool dominates(unsigned long n, unsigned a_low, const Int &b_low, unsigned a_high, const Int &b_high) {
    Int nn(static_cast<unsigned long>(n));
    return ipow(nn, a_low + 1) * ipow(b_low, n) <= ipow(nn, a_high) * ipow(b_high, n);
}

} // namespace

unsigned long dominance_threshold(unsigned a_low, const Int &b_low, unsigned a_high, const Int &b_high,
                                  unsigned long cap) {
    if (b_low == b_high) {
        if (a_low >= a_high) {
            throw std::invalid_argument("dominance_threshold needs ascending addends");
        }
        return 1;
    }
    if (b_low > b_high) {
        throw std::invalid_argument("dominance_threshold needs ascending addends");
    }
    // From n_dec on, the ratio n^(a_low+1-a_high) * (b_low/b_high)^n is non-increasing.
    const long e_signed = static_cast<long>(a_low) + 1 - static_cast<long>(a_high);
    const unsigned long e = e_signed > 0 ? static_cast<unsigned long>(e_signed) : 0;
    unsigned long n_dec = 1;
    while (ipow(Int(n_dec + 1), e) * b_low > ipow(Int(n_dec), e) * b_high) {
        if (++n_dec > cap) {
            throw CapExceeded();
        }
    }
    unsigned long hold = n_dec;
    while (!dominates(hold, a_low, b_low, a_high, b_high)) {
        if (++hold > cap) {
            throw CapExceeded();
        }
    }
    unsigned long d = hold;
    while (d > 1 && dominates(d - 1, a_low, b_low, a_high, b_high)) {
        --d;
    }
    return d;
}

Bound atom_stabilization_bound(const PolyExp &image) {
    auto [lambda, scaled] = pe_normalize_integer(image);
    (void)lambda;
    const auto &ads = scaled.addends();
    unsigned long d_max = 0;
    std::vector<Bound> parts;
    for (std::size_t j = 0; j + 1 < ads.size(); ++j) {
        d_max = std::max(d_max, dominance_threshold(ads[j].a, ads[j].b, ads[j + 1].a, ads[j + 1].b));
        parts.push_back(bound_of_poly(ads[j].q));
    }
    parts.push_back(Bound::constant(Int(d_max) + 1));
    return Bound::sum(std::move(parts));
}

Bound stabilization_bound(const TwnLoop &loop, const ClosedForm &cf) {
    std::vector<Bound> parts{Bound::constant(cf.n0)};
    for (const auto &atom : loop.guard.atoms()) {
        parts.push_back(atom_stabilization_bound(pe_substitute(atom, cf.forms)));
    }
    return simplify(Bound::sum(std::move(parts)));
}

TwnAnalysis twn_local_runtime_bound(const Transition &t, const Program &p, const SmtOptions &opts) {
    TwnAnalysis out;
    auto checked = twn_check(t, p.vars());
    if (auto *fail = std::get_if<TwnFailure>(&checked)) {
        out.reason = fail->message();
        out.verdict.reason = out.reason;
        return out;
    }
    out.loop = std::get<TwnLoop>(std::move(checked));
    out.closed_form = closed_form(*out.loop);
    out.verdict = prove_termination(*out.loop, *out.closed_form, opts);
    if (out.verdict.kind != TerminationVerdict::Kind::Terminating) {
        out.reason = out.verdict.kind == TerminationVerdict::Kind::NonTerminating
                         ? "loop does not terminate"
                         : "termination unknown: " + out.verdict.reason;
        return out;
    }
    try {
        Bound b = stabilization_bound(*out.loop, *out.closed_form);
        if (out.loop->chained) {
            b = simplify(Bound::sum({Bound::prod({Bound(2), b}), Bound(1)}));
        }
        out.local_bound = b;
    } catch (const CapExceeded &e) {
        out.verdict = TerminationVerdict{TerminationVerdict::Kind::Unknown, {}, e.what()};
        out.reason = e.what();
    }
    return out;
}

namespace {

Bound pe_magnitude(const PolyExp &pe, const Bound &n) {
    std::vector<Bound> parts;
    for (const auto &ad : pe.addends()) {
        std::vector<Bound> factors{bound_of_poly(ad.q)};
        for (unsigned i = 0; i < ad.a; ++i) {
            factors.push_back(n);
        }
        factors.push_back(Bound::exp(ad.b, n));
        parts.push_back(Bound::prod(std::move(factors)));
    }
    return Bound::sum(std::move(parts));
}

} // namespace

Bound twn_size_bound(const TwnLoop &loop, const ClosedForm &cf, const Var &v, const Bound &iterations) {
    Bound n = Bound::sum({iterations, Bound::constant(cf.n0)});
    std::vector<Bound> parts{pe_magnitude(cf.forms.at(v), n)};
    // Counter values below n0 are not covered by the closed form.
    for (unsigned i = 0; i < cf.n0; ++i) {
        parts.push_back(bound_of_poly(iterate_update(loop.update, v, i)));
    }
    if (loop.chained) {
        // Odd iterations of the original loop: one more original step after a chained state.
        const Polynomial &step = loop.original.update.at(v);
        parts.push_back(pe_magnitude(pe_substitute(step, cf.forms), n));
        for (unsigned i = 0; i < cf.n0; ++i) {
            std::map<Var, Polynomial> prefix;
            for (const auto &[w, up] : loop.update) {
                prefix[w] = iterate_update(loop.update, w, i);
            }
            parts.push_back(bound_of_poly(step.substitute(prefix)));
        }
    }
    return simplify(Bound::sum(std::move(parts)));
}

} // namespace polybound
