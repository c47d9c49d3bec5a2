#pragma once

#include "polybound/formula.hpp"

#include <map>
#include <string>
#include <vector>

namespace polybound {

struct SmtOptions {
    std::string solver = "z3";
    unsigned timeout_ms = 5000;

    /// Defaults, with the solver path taken from $POLYBOUND_SMT when set.
    static SmtOptions from_env();
};

struct SmtResult {
    enum class Kind { Sat, Unsat, Unknown };
    Kind kind = Kind::Unknown;
    std::map<std::string, Rat> model; ///< Sat: a value for every declared symbol
    std::string reason;               ///< Unknown
    std::string transcript;           ///< script and raw reply, for debugging

    bool sat() const { return kind == Kind::Sat; }
    bool unsat() const { return kind == Kind::Unsat; }
};

/// Satisfiability of a formula whose variables range over the integers (QF_NIA).
SmtResult check_sat_int(const Formula &f, const SmtOptions &opts);

/// `poly rel 0` over real-valued unknowns.
struct RealConstraint {
    enum class Rel { Ge, Gt, Eq };
    Polynomial poly;
    Rel rel;
};

/// Satisfiability of a conjunction of polynomial constraints over the reals (QF_LRA / QF_NRA).
SmtResult check_sat_real(const std::vector<RealConstraint> &constraints, const SmtOptions &opts);

/// Runs an SMT-LIB2 script; exposed for golden-script tests.
SmtResult run_script(const std::string &script, const std::vector<std::string> &symbols, const SmtOptions &opts);

/// SMT-LIB2 text of a polynomial; `real` selects decimal constants.
std::string smt_term(const Polynomial &p, bool real);
std::string smt_formula(const Formula &f);
std::string smt_symbol(const std::string &name);

/// Parses a value printed by a solver: 7, (- 7), 2.5, (/ 1 2), (- (/ 1.0 2.0)).
Rat parse_smt_value(const std::string &text);

/// True if the configured solver can be executed.
bool solver_available(const SmtOptions &opts);

} // namespace polybound
