#pragma once

#include "polybound/formula.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace polybound {

struct Loc {
    std::string name;

    auto operator<=>(const Loc &) const = default;
    bool operator==(const Loc &) const = default;
};

using Update = std::map<Var, Polynomial>;
using State = std::map<Var, Int>;

struct Transition {
    std::string id;
    Loc src;
    Formula guard;
    Update update; ///< total over the program variables
    Loc tgt;

    bool is_self_loop() const { return src == tgt; }
};

/// Transitions are referred to by their index in `Program::transitions()`.
using TransitionSet = std::set<std::size_t>;

/// An integer transition system (V, L, l0, T).
class Program {
public:
    /// Throws std::invalid_argument if a structural invariant is violated.
    Program(std::vector<Var> vars, Loc init, std::vector<Transition> transitions);

    const std::vector<Var> &vars() const { return vars_; }
    const std::vector<Loc> &locs() const { return locs_; }
    const Loc &init() const { return init_; }
    const std::vector<Transition> &transitions() const { return transitions_; }
    const Transition &transition(std::size_t i) const { return transitions_.at(i); }
    std::size_t size() const { return transitions_.size(); }

    /// Index of the transition with the given id; throws std::out_of_range if absent.
    std::size_t index_of(const std::string &id) const;

    TransitionSet all_transitions() const;
    TransitionSet outgoing(const Loc &l) const;
    TransitionSet incoming(const Loc &l) const;

    /// Rule-format text accepted by parse_program.
    std::string to_koat() const;

private:
    std::vector<Var> vars_;
    std::vector<Loc> locs_;
    Loc init_;
    std::vector<Transition> transitions_;
};

/// Applies an update to a state: sigma'(v) = sigma(eta(v)).
State apply_update(const Update &u, const State &s);

/// eta1 followed by eta2, i.e. v |-> eta2(v)[w / eta1(w)].
Update compose(const Update &first, const Update &second);

} // namespace polybound
