#pragma once

#include "polybound/polynomial.hpp"

#include <string>
#include <utility>
#include <vector>

namespace polybound {

/// Univariate polynomial in the iteration counter n; coeffs[i] multiplies n^i.
struct UniPoly {
    std::vector<Rat> coeffs;

    Rat eval(const Rat &n) const;
    unsigned degree() const;
    bool operator==(const UniPoly &) const = default;
};

/// q * n^a * b^n
struct Addend {
    Polynomial q;
    unsigned a = 0;
    Int b = 1;

    bool operator==(const Addend &) const = default;
};

/// Poly-exponential expression: a sum of addends q_j * n^a_j * b_j^n with b_j >= 1.
///
/// Canonical form: at most one addend per (b, a), none with q = 0, sorted ascending by b and
/// then by a, which is the order of asymptotic growth in n.
class PolyExp {
public:
    PolyExp() = default;
    PolyExp(const Polynomial &p);
    PolyExp(std::vector<Addend> addends);

    static PolyExp addend(Polynomial q, unsigned a, Int b);

    const std::vector<Addend> &addends() const { return addends_; }
    bool is_zero() const { return addends_.empty(); }

    PolyExp operator+(const PolyExp &o) const;
    PolyExp operator-(const PolyExp &o) const;
    PolyExp operator*(const PolyExp &o) const;
    PolyExp operator-() const;
    PolyExp pow(unsigned e) const;

    bool operator==(const PolyExp &o) const = default;

    template <typename Lookup>
        requires std::invocable<Lookup &, const Var &>
    Rat eval(Lookup &&value_of, const Int &n) const {
        Rat sum = 0;
        for (const auto &ad : addends_) {
            Rat term = ad.q.evaluate(value_of);
            if (term == 0) {
                continue;
            }
            term *= Rat(ipow(n, ad.a)) * Rat(ipow(ad.b, n.get_ui()));
            sum += term;
        }
        return sum;
    }

    Rat eval(const std::map<Var, Int> &state, const Int &n) const;

    /// The polynomial obtained by fixing n to a concrete value.
    Polynomial at(const Int &n) const;

    /// Printed dominant addend first: `q * n^a * b^n + ...`.
    std::string to_string() const;

private:
    void canonicalize();

    std::vector<Addend> addends_;
};

inline PolyExp pe_of_poly(const Polynomial &p) { return PolyExp(p); }
inline PolyExp pe_add(const PolyExp &x, const PolyExp &y) { return x + y; }
inline PolyExp pe_mul(const PolyExp &x, const PolyExp &y) { return x * y; }

/// p with every variable replaced by its poly-exponential image.
PolyExp pe_substitute(const Polynomial &p, const std::map<Var, PolyExp> &assignment);

/// Evaluates x at state sigma and counter n.
inline Rat pe_eval(const PolyExp &x, const std::map<Var, Int> &state, const Int &n) { return x.eval(state, n); }

/// (lambda, lambda * x) with lambda the lcm of all coefficient denominators.
std::pair<Int, PolyExp> pe_normalize_integer(const PolyExp &x);

/// F with F(n) = sum_{k=0}^{n-1} k^a.
UniPoly faulhaber(unsigned a);

/// (P, K) with sum_{k=0}^{n-1} k^a rho^k = P(n) * rho^n + K, for rho != 1.
std::pair<UniPoly, Rat> sum_geo_poly(unsigned a, const Rat &rho);

/// Solves the square system m * x = rhs exactly; throws std::domain_error if singular.
std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> m, std::vector<Rat> rhs);

} // namespace polybound
