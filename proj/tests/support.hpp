#pragma once

#include "polybound/parser.hpp"
#include "polybound/twn.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <string>

namespace polybound {
inline void PrintTo(const Formula &f, std::ostream *os) { *os << f.to_string(); }
inline void PrintTo(const Polynomial &p, std::ostream *os) { *os << p.to_string(); }
} // namespace polybound

namespace testing_support {

using namespace polybound;

inline std::string fixture(const std::string &name) { return std::string(POLYBOUND_FIXTURES) + "/" + name; }

inline Program load(const std::string &name) { return parse_program_file(fixture(name)); }

inline const std::vector<std::string> &fixture_names() {
    static const std::vector<std::string> names = {
        "countdown.koat", "fig1.koat",    "loop1.koat",  "negative.koat", "nested.koat", "nonlinear_twn.koat",
        "nonterm.koat",   "square.koat",  "straight.koat", "two_phase.koat",
    };
    return names;
}

inline Var v(const std::string &name) { return Var(name); }
inline Polynomial P(const std::string &name) { return Polynomial(Var(name)); }

/// Polynomial from text over the given variables.
inline Polynomial poly(const std::string &text, const std::vector<Var> &vars) { return parse_polynomial(text, vars); }

struct Gen {
    std::mt19937_64 rng;

    explicit Gen(unsigned seed) : rng(seed) {}

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

    Monomial monomial(const std::vector<Var> &vars, unsigned max_degree) {
        Monomial m;
        unsigned d = uniform(0, max_degree);
        for (unsigned i = 0; i < d && !vars.empty(); ++i) {
            m = m * Monomial(vars[uniform(0, vars.size() - 1)]);
        }
        return m;
    }

    Polynomial polynomial(const std::vector<Var> &vars, unsigned max_degree, long max_coeff, unsigned max_terms) {
        Polynomial p;
        unsigned terms = uniform(0, max_terms);
        for (unsigned i = 0; i < terms; ++i) {
            long c = uniform(-max_coeff, max_coeff);
            p += Polynomial::term(Rat(c), monomial(vars, max_degree));
        }
        return p;
    }

    State state(const std::vector<Var> &vars, long bound) {
        State s;
        for (const auto &x : vars) {
            s[x] = Int(uniform(-bound, bound));
        }
        return s;
    }

    /// Random twn update over `vars` (shuffled dependency order): x = c*x + p(later variables).
    Update twn_update(const std::vector<Var> &vars, unsigned max_degree, long max_coeff, bool allow_negative) {
        std::vector<Var> order = vars;
        std::shuffle(order.begin(), order.end(), rng);
        Update u;
        for (std::size_t i = 0; i < order.size(); ++i) {
            std::vector<Var> later(order.begin() + i + 1, order.end());
            long c = uniform(allow_negative ? -max_coeff : 0, max_coeff);
            u[order[i]] = Polynomial(Rat(c)) * Polynomial(order[i]) + polynomial(later, max_degree, max_coeff, 3);
        }
        return u;
    }
};

inline std::vector<Var> vars_x(unsigned n) {
    std::vector<Var> out;
    for (unsigned i = 1; i <= n; ++i) {
        out.emplace_back("x" + std::to_string(i));
    }
    return out;
}

} // namespace testing_support
