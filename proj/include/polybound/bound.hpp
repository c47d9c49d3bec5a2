#pragma once

#include "polybound/polynomial.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace polybound {

/// A natural number or omega.
struct ExtNat {
    std::optional<Int> value; ///< nullopt is omega

    static ExtNat omega() { return ExtNat{}; }
    static ExtNat of(Int v) { return ExtNat{std::move(v)}; }
    bool is_omega() const { return !value.has_value(); }

    bool operator<=(const ExtNat &o) const;
    bool operator==(const ExtNat &o) const { return value == o.value; }
    std::string to_string() const { return value ? value->get_str() : "ω"; }
};

struct Complexity {
    enum class Kind { Const, Poly, Exp, Inf };
    Kind kind = Kind::Const;
    unsigned degree = 0; ///< meaningful for Poly only

    static Complexity constant() { return {Kind::Const, 0}; }
    static Complexity poly(unsigned d) { return d == 0 ? constant() : Complexity{Kind::Poly, d}; }
    static Complexity exp() { return {Kind::Exp, 0}; }
    static Complexity inf() { return {Kind::Inf, 0}; }

    bool operator==(const Complexity &) const = default;
    /// O(1), O(n^k), O(EXP), or ω.
    std::string to_string() const;
};

/// Weakly monotonic upper bound built from naturals, omega, variables, +, *, and k^b.
///
/// Bounds are immutable and share structure. Variables stand for absolute values of the
/// program variables, so every bound is non-negative and monotonic in each variable.
class Bound {
public:
    enum class Kind { Const, Omega, Var, Sum, Prod, Exp };

    Bound() : Bound(constant(0)) {}
    Bound(int c) : Bound(constant(Int(c))) {}

    static Bound constant(const Int &c);
    static Bound omega();
    static Bound var(const Var &v);
    static Bound sum(std::vector<Bound> parts);
    static Bound prod(std::vector<Bound> parts);
    /// base^exponent; base 0 is treated as 1 (an upper bound on 0^b).
    static Bound exp(const Int &base, const Bound &exponent);

    Kind kind() const;
    const Int &value() const;         ///< Const
    const Var &variable() const;      ///< Var
    const std::vector<Bound> &children() const; ///< Sum, Prod; Exp has {exponent}
    const Int &base() const;          ///< Exp

    bool is_zero() const { return kind() == Kind::Const && value() == 0; }
    bool is_omega() const { return kind() == Kind::Omega; }
    bool is_finite() const;
    std::set<Var> vars() const;

    Bound operator+(const Bound &o) const { return sum({*this, o}); }
    Bound operator*(const Bound &o) const { return prod({*this, o}); }

    /// Structural equality of the trees (not semantic equivalence).
    bool same_as(const Bound &o) const;

    std::string to_string() const;

private:
    struct Node;
    explicit Bound(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Sum of ceil(|c|) * m over the terms c*m of p; dominates |sigma(p)| at |sigma|.
Bound bound_of_poly(const Polynomial &p);

/// Exponents above this size evaluate to omega rather than materializing huge powers.
inline constexpr unsigned long kMaxExponent = 1UL << 20;

ExtNat bound_eval(const Bound &b, const std::map<Var, Int> &abs_state);
Bound bound_subst(const Bound &b, const std::map<Var, Bound> &m);
Bound simplify(const Bound &b);
Complexity asymptotic_class(const Bound &b);

/// The polynomial a finite, exponential-free bound denotes; nullopt otherwise.
std::optional<Polynomial> as_polynomial(const Bound &b);

/// |sigma| restricted to the given state.
std::map<Var, Int> abs_state(const std::map<Var, Int> &state);

} // namespace polybound
