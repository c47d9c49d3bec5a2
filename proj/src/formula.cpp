#include "polybound/formula.hpp"

#include <sstream>

namespace polybound {

namespace {

Polynomial clear_denominators(Polynomial p) {
    Int l = p.denominator_lcm();
    if (l != 1) {
        p *= Polynomial(Rat(l));
    }
    return p;
}

} // namespace

Formula Formula::atom(Polynomial p) {
    p = clear_denominators(std::move(p));
    if (p.is_constant()) {
        p = Polynomial(p.constant_term() > 0 ? 1 : 0);
    }
    return Formula(Kind::Atom, std::move(p), {});
}

Formula Formula::truth() { return Formula(Kind::Atom, Polynomial(1), {}); }

Formula Formula::falsity() { return Formula(Kind::Atom, Polynomial(), {}); }

bool Formula::is_true() const { return kind_ == Kind::Atom && poly_ == Polynomial(1); }
bool Formula::is_false() const { return kind_ == Kind::Atom && poly_.is_zero(); }

Formula Formula::conj(std::vector<Formula> parts) {
    std::vector<Formula> flat;
    for (auto &p : parts) {
        if (p.is_false()) {
            return falsity();
        }
        if (p.is_true()) {
            continue;
        }
        if (p.kind_ == Kind::And) {
            for (auto &c : p.children_) {
                flat.push_back(std::move(c));
            }
        } else {
            flat.push_back(std::move(p));
        }
    }
    if (flat.empty()) {
        return truth();
    }
    if (flat.size() == 1) {
        return std::move(flat.front());
    }
    return Formula(Kind::And, Polynomial(), std::move(flat));
}

Formula Formula::disj(std::vector<Formula> parts) {
    std::vector<Formula> flat;
    for (auto &p : parts) {
        if (p.is_true()) {
            return truth();
        }
        if (p.is_false()) {
            continue;
        }
        if (p.kind_ == Kind::Or) {
            for (auto &c : p.children_) {
                flat.push_back(std::move(c));
            }
        } else {
            flat.push_back(std::move(p));
        }
    }
    if (flat.empty()) {
        return falsity();
    }
    if (flat.size() == 1) {
        return std::move(flat.front());
    }
    return Formula(Kind::Or, Polynomial(), std::move(flat));
}

std::vector<Polynomial> Formula::atoms() const {
    if (kind_ == Kind::Atom) {
        return {poly_};
    }
    std::vector<Polynomial> out;
    for (const auto &c : children_) {
        auto sub = c.atoms();
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

std::set<Var> Formula::vars() const {
    std::set<Var> out;
    for (const auto &a : atoms()) {
        auto vs = a.vars();
        out.insert(vs.begin(), vs.end());
    }
    return out;
}

bool Formula::holds(const std::map<Var, Int> &state) const {
    switch (kind_) {
    case Kind::Atom:
        return poly_.evaluate(state) > 0;
    case Kind::And:
        for (const auto &c : children_) {
            if (!c.holds(state)) {
                return false;
            }
        }
        return true;
    case Kind::Or:
        for (const auto &c : children_) {
            if (c.holds(state)) {
                return true;
            }
        }
        return false;
    }
    return false;
}

Formula Formula::map_atoms(const std::function<Formula(const Polynomial &)> &f) const {
    if (kind_ == Kind::Atom) {
        return f(poly_);
    }
    std::vector<Formula> parts;
    parts.reserve(children_.size());
    for (const auto &c : children_) {
        parts.push_back(c.map_atoms(f));
    }
    return kind_ == Kind::And ? conj(std::move(parts)) : disj(std::move(parts));
}

Formula Formula::substitute(const std::map<Var, Polynomial> &m) const {
    return map_atoms([&](const Polynomial &p) { return atom(p.substitute(m)); });
}

std::string Formula::to_string() const {
    switch (kind_) {
    case Kind::Atom:
        if (is_true()) {
            return "true";
        }
        if (is_false()) {
            return "false";
        }
        return poly_.to_string() + " > 0";
    case Kind::And:
    case Kind::Or: {
        std::ostringstream os;
        const char *sep = kind_ == Kind::And ? " && " : " || ";
        for (size_t i = 0; i < children_.size(); ++i) {
            if (i > 0) {
                os << sep;
            }
            bool paren = children_[i].kind_ != Kind::Atom;
            os << (paren ? "(" : "") << children_[i].to_string() << (paren ? ")" : "");
        }
        return os.str();
    }
    }
    return {};
}

Formula operator&&(const Formula &a, const Formula &b) { return Formula::conj({a, b}); }
Formula operator||(const Formula &a, const Formula &b) { return Formula::disj({a, b}); }

Formula negate(const Formula &f) {
    switch (f.kind()) {
    case Formula::Kind::Atom:
        return Formula::atom(Polynomial(1) - f.poly());
    case Formula::Kind::And: {
        std::vector<Formula> parts;
        for (const auto &c : f.children()) {
            parts.push_back(negate(c));
        }
        return Formula::disj(std::move(parts));
    }
    case Formula::Kind::Or: {
        std::vector<Formula> parts;
        for (const auto &c : f.children()) {
            parts.push_back(negate(c));
        }
        return Formula::conj(std::move(parts));
    }
    }
    return f;
}

Formula normalize_atom(const Polynomial &lhs, Relation rel, const Polynomial &rhs) {
    // Scale both sides so that the non-strict translation p >= 0 <=> p + 1 > 0 stays exact.
    Polynomial scale(Rat(lcm(lhs.denominator_lcm(), rhs.denominator_lcm())));
    Polynomial l = lhs * scale;
    Polynomial r = rhs * scale;
    auto lt = [](const Polynomial &a, const Polynomial &b) { return Formula::atom(b - a); };
    auto le = [](const Polynomial &a, const Polynomial &b) { return Formula::atom(b - a + Polynomial(1)); };
    switch (rel) {
    case Relation::Lt:
        return lt(l, r);
    case Relation::Gt:
        return lt(r, l);
    case Relation::Le:
        return le(l, r);
    case Relation::Ge:
        return le(r, l);
    case Relation::Eq:
        return le(l, r) && le(r, l);
    case Relation::Ne:
        return lt(r, l) || lt(l, r);
    }
    return Formula::truth();
}

Formula equals_zero(const Polynomial &p) { return normalize_atom(p, Relation::Eq, Polynomial()); }

std::vector<Clause> dnf(const Formula &f, size_t clause_cap) {
    switch (f.kind()) {
    case Formula::Kind::Atom:
        if (f.is_false()) {
            return {};
        }
        if (f.is_true()) {
            return {Clause{}};
        }
        return {Clause{f.poly()}};
    case Formula::Kind::Or: {
        std::vector<Clause> out;
        for (const auto &c : f.children()) {
            for (auto &cl : dnf(c, clause_cap)) {
                out.push_back(std::move(cl));
                if (out.size() > clause_cap) {
                    throw DnfCapExceeded(clause_cap);
                }
            }
        }
        return out;
    }
    case Formula::Kind::And: {
        std::vector<Clause> acc{Clause{}};
        for (const auto &c : f.children()) {
            auto rhs = dnf(c, clause_cap);
            std::vector<Clause> next;
            for (const auto &a : acc) {
                for (const auto &b : rhs) {
                    Clause merged = a;
                    merged.insert(merged.end(), b.begin(), b.end());
                    next.push_back(std::move(merged));
                    if (next.size() > clause_cap) {
                        throw DnfCapExceeded(clause_cap);
                    }
                }
            }
            acc = std::move(next);
        }
        return acc;
    }
    }
    return {};
}

} // namespace polybound
