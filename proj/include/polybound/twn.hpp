#pragma once

#include "polybound/polyexp.hpp"
#include "polybound/program.hpp"

#include <string>
#include <variant>
#include <vector>

namespace polybound {

/// Guard and update of a single-transition loop.
struct Loop {
    Formula guard;
    Update update;
};

/// A triangular weakly non-linear loop. In `order`, the update of each variable is
/// coeffs[x] * x + p with p over variables later in the order only, and coeffs[x] >= 0.
struct TwnLoop {
    Formula guard;
    Update update;
    std::vector<Var> order;
    std::map<Var, Int> coeffs;
    /// True if this is the self-composition of `original` (used to remove negative coefficients).
    bool chained = false;
    Loop original;
};

struct TwnFailure {
    enum class Kind { NotSelfLoop, CyclicDependency, NonLinearSelfOccurrence };
    Kind kind;
    std::vector<Var> cycle; ///< CyclicDependency
    Var var;                ///< NonLinearSelfOccurrence
    std::string message() const;
};

/// Closed form: forms[x] evaluated at (sigma, n) equals sigma(eta^n(x)) for all n >= n0.
struct ClosedForm {
    std::map<Var, PolyExp> forms;
    unsigned n0 = 0;
};

std::variant<TwnLoop, TwnFailure> twn_check(const Loop &loop, const std::vector<Var> &vars);
std::variant<TwnLoop, TwnFailure> twn_check(const Transition &t, const std::vector<Var> &vars);

/// (guard && guard[x / eta(x)], eta o eta): one step of the result is two steps of the input.
Loop chain(const Loop &loop);

ClosedForm closed_form(const TwnLoop &loop);

/// eta^k(x) as a polynomial.
Polynomial iterate_update(const Update &u, const Var &x, unsigned k);

} // namespace polybound
