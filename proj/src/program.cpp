#include "polybound/program.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace polybound {

Program::Program(std::vector<Var> vars, Loc init, std::vector<Transition> transitions)
    : vars_(std::move(vars)), init_(std::move(init)), transitions_(std::move(transitions)) {
    std::set<Var> seen_vars;
    for (const auto &v : vars_) {
        if (v.name.empty() || !seen_vars.insert(v).second) {
            throw std::invalid_argument("variable names must be nonempty and unique: '" + v.name + "'");
        }
    }
    if (init_.name.empty()) {
        throw std::invalid_argument("initial location must be named");
    }
    locs_.push_back(init_);
    auto note_loc = [&](const Loc &l) {
        if (l.name.empty()) {
            throw std::invalid_argument("location names must be nonempty");
        }
        if (std::find(locs_.begin(), locs_.end(), l) == locs_.end()) {
            locs_.push_back(l);
        }
    };
    std::set<std::string> ids;
    for (auto &t : transitions_) {
        if (!ids.insert(t.id).second) {
            throw std::invalid_argument("duplicate transition id " + t.id);
        }
        if (t.tgt == init_) {
            throw std::invalid_argument("transition " + t.id + " targets the initial location " + init_.name);
        }
        note_loc(t.src);
        note_loc(t.tgt);
        for (const auto &v : vars_) {
            t.update.try_emplace(v, Polynomial(v));
        }
        for (const auto &[v, p] : t.update) {
            if (!seen_vars.contains(v)) {
                throw std::invalid_argument("transition " + t.id + " updates unknown variable " + v.name);
            }
            if (!p.has_integer_coefficients()) {
                throw std::invalid_argument("transition " + t.id + " has a non-integer update coefficient");
            }
            for (const auto &w : p.vars()) {
                if (!seen_vars.contains(w)) {
                    throw std::invalid_argument("transition " + t.id + " uses unknown variable " + w.name);
                }
            }
        }
        for (const auto &w : t.guard.vars()) {
            if (!seen_vars.contains(w)) {
                throw std::invalid_argument("transition " + t.id + " guard uses unknown variable " + w.name);
            }
        }
    }
}

std::size_t Program::index_of(const std::string &id) const {
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        if (transitions_[i].id == id) {
            return i;
        }
    }
    throw std::out_of_range("no transition with id " + id);
}

TransitionSet Program::all_transitions() const {
    TransitionSet s;
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        s.insert(i);
    }
    return s;
}

TransitionSet Program::outgoing(const Loc &l) const {
    TransitionSet s;
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        if (transitions_[i].src == l) {
            s.insert(i);
        }
    }
    return s;
}

TransitionSet Program::incoming(const Loc &l) const {
    TransitionSet s;
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        if (transitions_[i].tgt == l) {
            s.insert(i);
        }
    }
    return s;
}

namespace {

std::string guard_text(const Formula &f) {
    switch (f.kind()) {
    case Formula::Kind::Atom:
        return f.poly().to_string() + " > 0";
    case Formula::Kind::And:
    case Formula::Kind::Or: {
        std::string out;
        for (const auto &c : f.children()) {
            if (!out.empty()) {
                out += f.kind() == Formula::Kind::And ? " && " : " || ";
            }
            bool paren = c.kind() != Formula::Kind::Atom;
            out += paren ? "(" + guard_text(c) + ")" : guard_text(c);
        }
        return out;
    }
    }
    return {};
}

} // namespace

std::string Program::to_koat() const {
    std::ostringstream os;
    os << "(GOAL COMPLEXITY)\n(STARTTERM (FUNCTIONSYMBOLS " << init_.name << "))\n(VAR";
    for (const auto &v : vars_) {
        os << " " << v.name;
    }
    os << ")\n(RULES\n";
    std::string args;
    for (const auto &v : vars_) {
        args += (args.empty() ? "" : ",") + v.name;
    }
    for (const auto &t : transitions_) {
        os << "  " << t.src.name << "(" << args << ") -> " << t.tgt.name << "(";
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            os << (i ? ", " : "") << t.update.at(vars_[i]).to_string();
        }
        os << ")";
        if (!t.guard.is_true()) {
            os << " :|: " << guard_text(t.guard);
        }
        os << "\n";
    }
    os << ")\n";
    return os.str();
}

State apply_update(const Update &u, const State &s) {
    State out;
    for (const auto &[v, p] : u) {
        Rat val = p.evaluate(s);
        out[v] = val.get_num();
    }
    return out;
}

Update compose(const Update &first, const Update &second) {
    Update out;
    for (const auto &[v, p] : second) {
        out[v] = p.substitute(first);
    }
    return out;
}

} // namespace polybound
