#pragma once

#include "polybound/polynomial.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polybound {

enum class Relation { Lt, Gt, Le, Ge, Eq, Ne };

/// Negation-free propositional formula over atoms `p > 0` (interpreted over the integers).
///
/// Atoms always carry integer coefficients; rational inputs are scaled by the lcm of their
/// denominators. `true` is the atom `1 > 0`, `false` is the atom `0 > 0`.
class Formula {
public:
    enum class Kind { Atom, And, Or };

    Formula() : poly_(1) {}

    static Formula atom(Polynomial p);
    static Formula conj(std::vector<Formula> parts);
    static Formula disj(std::vector<Formula> parts);
    static Formula truth();
    static Formula falsity();

    Kind kind() const { return kind_; }
    const Polynomial &poly() const { return poly_; }
    const std::vector<Formula> &children() const { return children_; }

    bool is_true() const;
    bool is_false() const;

    /// All atom polynomials, left to right.
    std::vector<Polynomial> atoms() const;
    std::set<Var> vars() const;

    bool holds(const std::map<Var, Int> &state) const;
    Formula substitute(const std::map<Var, Polynomial> &m) const;
    /// Rebuilds the formula with every atom replaced by `f(atom)`.
    Formula map_atoms(const std::function<Formula(const Polynomial &)> &f) const;

    bool operator==(const Formula &o) const = default;

    std::string to_string() const;

private:
    Formula(Kind k, Polynomial p, std::vector<Formula> children)
        : kind_(k), poly_(std::move(p)), children_(std::move(children)) {}

    Kind kind_ = Kind::Atom;
    Polynomial poly_;
    std::vector<Formula> children_;
};

Formula operator&&(const Formula &a, const Formula &b);
Formula operator||(const Formula &a, const Formula &b);

/// Integer-exact negation: !(p > 0) becomes (-p + 1 > 0), pushed through And/Or.
Formula negate(const Formula &f);

/// `lhs rel rhs` as a negation-free formula over `p > 0` atoms.
Formula normalize_atom(const Polynomial &lhs, Relation rel, const Polynomial &rhs);

/// `p = 0` over the integers, i.e. (p + 1 > 0) && (-p + 1 > 0) after clearing denominators.
Formula equals_zero(const Polynomial &p);

class DnfCapExceeded : public std::runtime_error {
public:
    explicit DnfCapExceeded(size_t cap)
        : std::runtime_error("DNF clause cap of " + std::to_string(cap) + " exceeded") {}
};

using Clause = std::vector<Polynomial>;

/// Disjunctive normal form; each clause is a conjunction of atoms `p > 0`.
std::vector<Clause> dnf(const Formula &f, size_t clause_cap = 64);

} // namespace polybound
