#pragma once

#include "polybound/number.hpp"

#include <compare>
#include <concepts>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace polybound {

/// A program variable. Names are unique within a program.
struct Var {
    std::string name;

    Var() = default;
    Var(std::string n) : name(std::move(n)) {}
    Var(const char *n) : name(n) {}

    auto operator<=>(const Var &) const = default;
    bool operator==(const Var &) const = default;
};

inline std::ostream &operator<<(std::ostream &os, const Var &v) { return os << v.name; }

/// Product of variables with positive exponents, kept sorted by variable.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(const Var &v, unsigned exp = 1);

    const std::vector<std::pair<Var, unsigned>> &factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }
    unsigned degree() const;
    unsigned degree_in(const Var &v) const;

    Monomial operator*(const Monomial &other) const;

    // Printing order: lexicographic on (variable, exponent) with the unit monomial last.
    bool operator<(const Monomial &other) const;
    bool operator==(const Monomial &other) const = default;

    std::string to_string() const;

private:
    std::vector<std::pair<Var, unsigned>> factors_;
};

/// Multivariate polynomial with exact rational coefficients. Zero coefficients are never stored.
class Polynomial {
public:
    using Terms = std::map<Monomial, Rat>;

    Polynomial() = default;
    Polynomial(const Rat &c);
    Polynomial(int c) : Polynomial(Rat(c)) {}
    Polynomial(const Int &c) : Polynomial(Rat(c)) {}
    Polynomial(const Var &v);

    static Polynomial term(const Rat &coeff, const Monomial &m);

    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_term() const;
    unsigned degree() const;
    unsigned degree_in(const Var &v) const;
    bool is_linear() const { return degree() <= 1; }
    bool has_integer_coefficients() const;
    std::set<Var> vars() const;

    /// Coefficient of the degree-1 monomial `v`.
    Rat linear_coeff(const Var &v) const;

    Polynomial operator+(const Polynomial &o) const;
    Polynomial operator-(const Polynomial &o) const;
    Polynomial operator*(const Polynomial &o) const;
    Polynomial operator-() const;
    Polynomial &operator+=(const Polynomial &o);
    Polynomial &operator-=(const Polynomial &o);
    Polynomial &operator*=(const Polynomial &o);
    Polynomial pow(unsigned e) const;

    bool operator==(const Polynomial &o) const = default;

    /// Simultaneous substitution; variables missing from `m` are left in place.
    Polynomial substitute(const std::map<Var, Polynomial> &m) const;

    /// lcm of all coefficient denominators (1 for the zero polynomial).
    Int denominator_lcm() const;

    template <typename Lookup>
        requires std::invocable<Lookup &, const Var &>
    Rat evaluate(Lookup &&value_of) const {
        Rat sum = 0;
        for (const auto &[mono, coeff] : terms_) {
            Rat prod = coeff;
            for (const auto &[v, e] : mono.factors()) {
                prod *= rpow(Rat(value_of(v)), e);
            }
            sum += prod;
        }
        return sum;
    }

    Rat evaluate(const std::map<Var, Int> &state) const;

    std::string to_string() const;

private:
    void add_term(const Monomial &m, const Rat &c);

    Terms terms_;
};

std::ostream &operator<<(std::ostream &os, const Polynomial &p);

/// Replaces every coefficient by its absolute value.
Polynomial poly_abs(const Polynomial &p);

} // namespace polybound
