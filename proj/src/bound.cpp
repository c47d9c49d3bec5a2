#include "polybound/bound.hpp"

#include <algorithm>
#include <stdexcept>

namespace polybound {

struct Bound::Node {
    Kind kind;
    Int value;
    Var var;
    std::vector<Bound> kids;
};

bool ExtNat::operator<=(const ExtNat &o) const {
    if (o.is_omega()) {
        return true;
    }
    if (is_omega()) {
        return false;
    }
    return *value <= *o.value;
}

std::string Complexity::to_string() const {
    switch (kind) {
    case Kind::Const:
        return "O(1)";
    case Kind::Poly:
        return degree == 1 ? "O(n)" : "O(n^" + std::to_string(degree) + ")";
    case Kind::Exp:
        return "O(EXP)";
    case Kind::Inf:
        return "ω";
    }
    return {};
}

Bound Bound::constant(const Int &c) {
    if (c < 0) {
        throw std::invalid_argument("bounds cannot hold negative constants");
    }
    return Bound(std::make_shared<const Node>(Node{Kind::Const, c, {}, {}}));
}

Bound Bound::omega() { return Bound(std::make_shared<const Node>(Node{Kind::Omega, 0, {}, {}})); }

Bound Bound::var(const Var &v) { return Bound(std::make_shared<const Node>(Node{Kind::Var, 0, v, {}})); }

Bound Bound::sum(std::vector<Bound> parts) {
    std::vector<Bound> flat;
    Int c = 0;
    for (auto &p : parts) {
        if (p.is_omega()) {
            return omega();
        }
        if (p.kind() == Kind::Const) {
            c += p.value();
        } else if (p.kind() == Kind::Sum) {
            for (const auto &k : p.children()) {
                if (k.kind() == Kind::Const) {
                    c += k.value();
                } else {
                    flat.push_back(k);
                }
            }
        } else {
            flat.push_back(std::move(p));
        }
    }
    if (c != 0 || flat.empty()) {
        flat.push_back(constant(c));
    }
    if (flat.size() == 1) {
        return flat.front();
    }
    return Bound(std::make_shared<const Node>(Node{Kind::Sum, 0, {}, std::move(flat)}));
}

Bound Bound::prod(std::vector<Bound> parts) {
    std::vector<Bound> flat;
    Int c = 1;
    bool has_omega = false;
    for (auto &p : parts) {
        if (p.is_omega()) {
            has_omega = true;
        } else if (p.kind() == Kind::Const) {
            c *= p.value();
        } else if (p.kind() == Kind::Prod) {
            for (const auto &k : p.children()) {
                if (k.kind() == Kind::Const) {
                    c *= k.value();
                } else {
                    flat.push_back(k);
                }
            }
        } else {
            flat.push_back(std::move(p));
        }
    }
    if (c == 0) {
        return constant(0); // 0 * omega = 0
    }
    if (has_omega) {
        return omega();
    }
    if (c != 1 || flat.empty()) {
        flat.insert(flat.begin(), constant(c));
    }
    if (flat.size() == 1) {
        return flat.front();
    }
    return Bound(std::make_shared<const Node>(Node{Kind::Prod, 0, {}, std::move(flat)}));
}

Bound Bound::exp(const Int &base, const Bound &exponent) {
    if (base < 0) {
        throw std::invalid_argument("exponential bounds need a natural base");
    }
    if (base <= 1) {
        return constant(1);
    }
    if (exponent.is_omega()) {
        return omega();
    }
    if (exponent.kind() == Kind::Const && exponent.value() <= 64) {
        return constant(ipow(base, exponent.value().get_ui()));
    }
    return Bound(std::make_shared<const Node>(Node{Kind::Exp, base, {}, {exponent}}));
}

Bound::Kind Bound::kind() const { return node_->kind; }
const Int &Bound::value() const { return node_->value; }
const Var &Bound::variable() const { return node_->var; }
const std::vector<Bound> &Bound::children() const { return node_->kids; }
const Int &Bound::base() const { return node_->value; }

bool Bound::is_finite() const {
    if (is_omega()) {
        return false;
    }
    return std::all_of(children().begin(), children().end(), [](const Bound &b) { return b.is_finite(); });
}

std::set<Var> Bound::vars() const {
    if (kind() == Kind::Var) {
        return {variable()};
    }
    std::set<Var> out;
    for (const auto &k : children()) {
        auto s = k.vars();
        out.insert(s.begin(), s.end());
    }
    return out;
}

bool Bound::same_as(const Bound &o) const {
    if (kind() != o.kind()) {
        return false;
    }
    switch (kind()) {
    case Kind::Const:
    case Kind::Exp:
        if (value() != o.value()) {
            return false;
        }
        break;
    case Kind::Var:
        return variable() == o.variable();
    default:
        break;
    }
    if (children().size() != o.children().size()) {
        return false;
    }
    for (std::size_t i = 0; i < children().size(); ++i) {
        if (!children()[i].same_as(o.children()[i])) {
            return false;
        }
    }
    return true;
}

std::string Bound::to_string() const {
    switch (kind()) {
    case Kind::Const:
        return value().get_str();
    case Kind::Omega:
        return "ω";
    case Kind::Var:
        return variable().name;
    case Kind::Sum: {
        std::string s;
        for (const auto &k : children()) {
            s += (s.empty() ? "" : "+") + k.to_string();
        }
        return s;
    }
    case Kind::Prod: {
        std::string s;
        for (const auto &k : children()) {
            std::string ks = k.to_string();
            if (k.kind() == Kind::Sum) {
                ks = "(" + ks + ")";
            }
            s += (s.empty() ? "" : "*") + ks;
        }
        return s;
    }
    case Kind::Exp:
        return base().get_str() + "^(" + children().front().to_string() + ")";
    }
    return {};
}

Bound bound_of_poly(const Polynomial &p) {
    std::vector<Bound> parts;
    for (const auto &[mono, coeff] : p.terms()) {
        std::vector<Bound> factors{Bound::constant(ceil_abs(coeff))};
        for (const auto &[v, e] : mono.factors()) {
            for (unsigned i = 0; i < e; ++i) {
                factors.push_back(Bound::var(v));
            }
        }
        parts.push_back(Bound::prod(std::move(factors)));
    }
    return Bound::sum(std::move(parts));
}

ExtNat bound_eval(const Bound &b, const std::map<Var, Int> &s) {
    switch (b.kind()) {
    case Bound::Kind::Const:
        return ExtNat::of(b.value());
    case Bound::Kind::Omega:
        return ExtNat::omega();
    case Bound::Kind::Var: {
        auto it = s.find(b.variable());
        if (it == s.end()) {
            throw std::out_of_range("no value for variable " + b.variable().name);
        }
        return ExtNat::of(abs(it->second));
    }
    case Bound::Kind::Sum: {
        Int acc = 0;
        for (const auto &k : b.children()) {
            auto v = bound_eval(k, s);
            if (v.is_omega()) {
                return v;
            }
            acc += *v.value;
        }
        return ExtNat::of(acc);
    }
    case Bound::Kind::Prod: {
        Int acc = 1;
        bool omega = false;
        for (const auto &k : b.children()) {
            auto v = bound_eval(k, s);
            if (v.is_omega()) {
                omega = true;
            } else if (*v.value == 0) {
                return ExtNat::of(0);
            } else {
                acc *= *v.value;
            }
        }
        return omega ? ExtNat::omega() : ExtNat::of(acc);
    }
    case Bound::Kind::Exp: {
        auto e = bound_eval(b.children().front(), s);
        if (e.is_omega() || *e.value > kMaxExponent) {
            return ExtNat::omega();
        }
        return ExtNat::of(ipow(b.base(), e.value->get_ui()));
    }
    }
    return ExtNat::omega();
}

Bound bound_subst(const Bound &b, const std::map<Var, Bound> &m) {
    switch (b.kind()) {
    case Bound::Kind::Const:
    case Bound::Kind::Omega:
        return b;
    case Bound::Kind::Var: {
        auto it = m.find(b.variable());
        return it == m.end() ? b : it->second;
    }
    case Bound::Kind::Sum:
    case Bound::Kind::Prod: {
        std::vector<Bound> kids;
        for (const auto &k : b.children()) {
            kids.push_back(bound_subst(k, m));
        }
        return b.kind() == Bound::Kind::Sum ? Bound::sum(std::move(kids)) : Bound::prod(std::move(kids));
    }
    case Bound::Kind::Exp:
        return Bound::exp(b.base(), bound_subst(b.children().front(), m));
    }
    return b;
}

std::optional<Polynomial> as_polynomial(const Bound &b) {
    switch (b.kind()) {
    case Bound::Kind::Const:
        return Polynomial(b.value());
    case Bound::Kind::Omega:
    case Bound::Kind::Exp:
        return std::nullopt;
    case Bound::Kind::Var:
        return Polynomial(b.variable());
    case Bound::Kind::Sum:
    case Bound::Kind::Prod: {
        Polynomial acc(b.kind() == Bound::Kind::Sum ? 0 : 1);
        for (const auto &k : b.children()) {
            auto p = as_polynomial(k);
            if (!p) {
                return std::nullopt;
            }
            if (b.kind() == Bound::Kind::Sum) {
                acc += *p;
            } else {
                acc *= *p;
            }
        }
        return acc;
    }
    }
    return std::nullopt;
}

namespace {

// Rebuilds a polynomial with natural coefficients as a bound, highest-degree monomials first.
Bound bound_from_natural_poly(const Polynomial &p) {
    std::vector<std::pair<Monomial, Rat>> terms(p.terms().begin(), p.terms().end());
    std::stable_sort(terms.begin(), terms.end(),
                     [](const auto &x, const auto &y) { return x.first.degree() > y.first.degree(); });
    std::vector<Bound> parts;
    for (const auto &[mono, coeff] : terms) {
        std::vector<Bound> factors{Bound::constant(coeff.get_num())};
        for (const auto &[v, e] : mono.factors()) {
            for (unsigned i = 0; i < e; ++i) {
                factors.push_back(Bound::var(v));
            }
        }
        parts.push_back(Bound::prod(std::move(factors)));
    }
    return Bound::sum(std::move(parts));
}

} // namespace

Bound simplify(const Bound &b) {
    if (auto p = as_polynomial(b)) {
        return bound_from_natural_poly(*p);
    }
    switch (b.kind()) {
    case Bound::Kind::Sum:
    case Bound::Kind::Prod: {
        // Collect the polynomial children into one polynomial and keep the rest structurally.
        std::vector<Bound> rest;
        Polynomial poly_part(b.kind() == Bound::Kind::Sum ? 0 : 1);
        for (const auto &k : b.children()) {
            Bound s = simplify(k);
            if (auto p = as_polynomial(s)) {
                if (b.kind() == Bound::Kind::Sum) {
                    poly_part += *p;
                } else {
                    poly_part *= *p;
                }
            } else {
                rest.push_back(s);
            }
        }
        Bound head = bound_from_natural_poly(poly_part);
        if (b.kind() == Bound::Kind::Sum) {
            rest.insert(rest.begin(), head);
            return Bound::sum(std::move(rest));
        }
        rest.insert(rest.begin(), head);
        return Bound::prod(std::move(rest));
    }
    case Bound::Kind::Exp:
        return Bound::exp(b.base(), simplify(b.children().front()));
    default:
        return b;
    }
}

Complexity asymptotic_class(const Bound &input) {
    Bound b = simplify(input);
    switch (b.kind()) {
    case Bound::Kind::Const:
        return Complexity::constant();
    case Bound::Kind::Omega:
        return Complexity::inf();
    case Bound::Kind::Var:
        return Complexity::poly(1);
    case Bound::Kind::Exp:
        return b.children().front().vars().empty() ? Complexity::constant() : Complexity::exp();
    case Bound::Kind::Sum:
    case Bound::Kind::Prod: {
        unsigned deg = 0;
        bool exp = false;
        for (const auto &k : b.children()) {
            Complexity c = asymptotic_class(k);
            if (c.kind == Complexity::Kind::Inf) {
                return c;
            }
            exp = exp || c.kind == Complexity::Kind::Exp;
            deg = b.kind() == Bound::Kind::Sum ? std::max(deg, c.degree) : deg + c.degree;
        }
        return exp ? Complexity::exp() : Complexity::poly(deg);
    }
    }
    return Complexity::inf();
}

std::map<Var, Int> abs_state(const std::map<Var, Int> &state) {
    std::map<Var, Int> out;
    for (const auto &[v, x] : state) {
        out[v] = abs(x);
    }
    return out;
}

} // namespace polybound
