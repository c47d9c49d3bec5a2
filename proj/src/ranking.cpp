#include "polybound/ranking.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace polybound {

std::string RankingFunction::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto &[l, poly] : f) {
        os << (first ? "" : ", ") << "f(" << l.name << ") = " << poly.to_string();
        first = false;
    }
    return os.str();
}

namespace {

// Affine form over program variables whose coefficients are linear in the template unknowns.
struct AffineTemplate {
    std::map<Var, Polynomial> coeff; ///< per program variable
    Polynomial constant;

    AffineTemplate &operator+=(const AffineTemplate &o) {
        for (const auto &[v, c] : o.coeff) {
            coeff[v] += c;
        }
        constant += o.constant;
        return *this;
    }
    AffineTemplate scaled(const Polynomial &s) const {
        AffineTemplate r;
        for (const auto &[v, c] : coeff) {
            r.coeff[v] = c * s;
        }
        r.constant = constant * s;
        return r;
    }
};

class TemplateBuilder {
public:
    TemplateBuilder(const Program &p, const std::set<Loc> &locs) : p_(p) {
        std::size_t li = 0;
        for (const auto &l : locs) {
            for (std::size_t vi = 0; vi < p.vars().size(); ++vi) {
                coeff_[{l, p.vars()[vi]}] = Var("c" + std::to_string(li) + "_" + std::to_string(vi + 1));
            }
            const_[l] = Var("c" + std::to_string(li) + "_0");
            ++li;
        }
    }

    AffineTemplate at(const Loc &l) const {
        AffineTemplate t;
        for (const auto &v : p_.vars()) {
            t.coeff[v] = Polynomial(coeff_.at({l, v}));
        }
        t.constant = Polynomial(const_.at(l));
        return t;
    }

    /// f_l'(eta(x)); variables with non-linear updates are skipped (their coefficient is forced to 0).
    AffineTemplate after_update(const Loc &l, const Update &u) const {
        AffineTemplate t;
        for (const auto &v : p_.vars()) {
            t.coeff[v] = Polynomial();
        }
        t.constant = Polynomial(const_.at(l));
        for (const auto &v : p_.vars()) {
            const Polynomial &up = u.at(v);
            if (!up.is_linear()) {
                continue;
            }
            Polynomial c(coeff_.at({l, v}));
            for (const auto &w : p_.vars()) {
                Rat k = up.linear_coeff(w);
                if (k != 0) {
                    t.coeff[w] += c * Polynomial(k);
                }
            }
            t.constant += c * Polynomial(up.constant_term());
        }
        return t;
    }

    const Var &unknown(const Loc &l, const Var &v) const { return coeff_.at({l, v}); }
    const Var &constant_unknown(const Loc &l) const { return const_.at(l); }

private:
    const Program &p_;
    std::map<std::pair<Loc, Var>, Var> coeff_;
    std::map<Loc, Var> const_;
};

// Farkas: sum_k lambda_k * a_k(x) + mu = e(x) with lambda, mu >= 0, where a_k(x) >= 0 are the
// clause's linear atoms. Sufficient for "clause implies e(x) >= 0".
void add_farkas(const std::vector<Polynomial> &atoms, const AffineTemplate &e, const std::vector<Var> &vars,
                std::size_t &fresh, std::vector<RealConstraint> &out) {
    AffineTemplate combo;
    for (const auto &v : vars) {
        combo.coeff[v] = Polynomial();
    }
    for (const auto &a : atoms) {
        Var lambda("lam" + std::to_string(fresh++));
        out.push_back({Polynomial(lambda), RealConstraint::Rel::Ge});
        for (const auto &v : vars) {
            Rat k = a.linear_coeff(v);
            if (k != 0) {
                combo.coeff[v] += Polynomial(lambda) * Polynomial(k);
            }
        }
        // p > 0 over the integers is p - 1 >= 0.
        combo.constant += Polynomial(lambda) * Polynomial(a.constant_term() - 1);
    }
    for (const auto &v : vars) {
        out.push_back({e.coeff.at(v) - combo.coeff.at(v), RealConstraint::Rel::Eq});
    }
    out.push_back({e.constant - combo.constant, RealConstraint::Rel::Ge});
}

} // namespace

RankingAttempt synthesize_lrf(const Program &p, const TransitionSet &scope, const TransitionSet &strict,
                              const Invariants &invariants, const RankingOptions &opts) {
    RankingAttempt out;
    if (strict.empty()) {
        out.reason = "empty decreasing set";
        return out;
    }
    std::set<Loc> locs;
    for (auto i : scope) {
        locs.insert(p.transition(i).src);
        locs.insert(p.transition(i).tgt);
    }
    TemplateBuilder tmpl(p, locs);
    std::vector<RealConstraint> constraints;
    std::size_t fresh = 0;

    for (auto i : scope) {
        const auto &t = p.transition(i);
        for (const auto &v : p.vars()) {
            if (!t.update.at(v).is_linear()) {
                constraints.push_back({Polynomial(tmpl.unknown(t.tgt, v)), RealConstraint::Rel::Eq});
            }
        }
        std::vector<Clause> clauses;
        try {
            clauses = dnf(strengthened_guard(p, i, invariants), opts.dnf_cap);
        } catch (const DnfCapExceeded &e) {
            out.reason = e.what();
            return out;
        }
        const bool is_strict = strict.contains(i);
        AffineTemplate decrease = tmpl.at(t.src);
        decrease += tmpl.after_update(t.tgt, t.update).scaled(Polynomial(-1));
        if (is_strict) {
            decrease.constant -= Polynomial(1);
        }
        AffineTemplate bounded = tmpl.at(t.src);
        bounded.constant -= Polynomial(1);

        for (const auto &clause : clauses) {
            std::vector<Formula> conj;
            for (const auto &a : clause) {
                conj.push_back(Formula::atom(a));
            }
            if (check_sat_int(Formula::conj(std::move(conj)), opts.smt).unsat()) {
                continue; // infeasible clause: nothing to prove
            }
            std::vector<Polynomial> linear;
            for (const auto &a : clause) {
                if (a.is_linear()) {
                    linear.push_back(a);
                }
            }
            add_farkas(linear, decrease, p.vars(), fresh, constraints);
            if (is_strict) {
                add_farkas(linear, bounded, p.vars(), fresh, constraints);
            }
        }
    }

    SmtResult r = check_sat_real(constraints, opts.smt);
    if (!r.sat()) {
        out.reason = r.unsat() ? "no linear ranking function exists for this decreasing set" : r.reason;
        return out;
    }
    auto value = [&](const Var &u) {
        auto it = r.model.find(u.name);
        return it == r.model.end() ? Rat(0) : it->second;
    };
    RankingFunction rf;
    rf.scope = scope;
    rf.strict = strict;
    for (const auto &l : locs) {
        Polynomial f(value(tmpl.constant_unknown(l)));
        for (const auto &v : p.vars()) {
            f += Polynomial(value(tmpl.unknown(l, v))) * Polynomial(v);
        }
        rf.f[l] = std::move(f);
    }
    std::string violation = validate_ranking_function(p, rf, invariants, opts.validation_samples, opts.seed);
    if (!violation.empty()) {
        throw std::logic_error("synthesized ranking function is unsound: " + violation);
    }
    out.rf = std::move(rf);
    return out;
}

Bound rf_local_bound(const RankingFunction &rf, const TransitionSet &entries, const Program &p) {
    std::set<Loc> entry_locs;
    for (auto r : entries) {
        entry_locs.insert(p.transition(r).tgt);
    }
    std::vector<Bound> parts;
    for (const auto &l : entry_locs) {
        auto it = rf.f.find(l);
        if (it != rf.f.end()) {
            parts.push_back(bound_of_poly(it->second));
        }
    }
    return simplify(Bound::sum(std::move(parts)));
}

std::string validate_ranking_function(const Program &p, const RankingFunction &rf, const Invariants &invariants,
                                      std::size_t samples, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-20, 20);
    for (auto i : rf.scope) {
        const auto &t = p.transition(i);
        Formula guard = strengthened_guard(p, i, invariants);
        std::size_t checked = 0;
        for (std::size_t attempt = 0; attempt < samples * 50 && checked < samples; ++attempt) {
            State s;
            for (const auto &v : p.vars()) {
                s[v] = dist(rng);
            }
            if (!guard.holds(s)) {
                continue;
            }
            ++checked;
            Rat before = rf.f.at(t.src).evaluate(s);
            Rat after = rf.f.at(t.tgt).evaluate(apply_update(t.update, s));
            Rat need = rf.strict.contains(i) ? 1 : 0;
            std::ostringstream where;
            where << "transition " << t.id << " at";
            for (const auto &[v, x] : s) {
                where << " " << v.name << "=" << x.get_str();
            }
            if (before - after < need) {
                return "no decrease on " + where.str();
            }
            if (rf.strict.contains(i) && before < 1) {
                return "not bounded on " + where.str();
            }
        }
    }
    return {};
}

} // namespace polybound
