#include "polybound/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace polybound {

Monomial::Monomial(const Var &v, unsigned exp) {
    if (exp > 0) {
        factors_.emplace_back(v, exp);
    }
}

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (const auto &f : factors_) {
        d += f.second;
    }
    return d;
}

unsigned Monomial::degree_in(const Var &v) const {
    for (const auto &[w, e] : factors_) {
        if (w == v) {
            return e;
        }
    }
    return 0;
}

Monomial Monomial::operator*(const Monomial &other) const {
    Monomial r;
    auto a = factors_.begin();
    auto b = other.factors_.begin();
    while (a != factors_.end() || b != other.factors_.end()) {
        if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
            r.factors_.push_back(*a++);
        } else if (a == factors_.end() || b->first < a->first) {
            r.factors_.push_back(*b++);
        } else {
            r.factors_.emplace_back(a->first, a->second + b->second);
            ++a;
            ++b;
        }
    }
    return r;
}

bool Monomial::operator<(const Monomial &other) const {
    if (is_one() || other.is_one()) {
        return !is_one() && other.is_one();
    }
    size_t n = std::min(factors_.size(), other.factors_.size());
    for (size_t i = 0; i < n; ++i) {
        const auto &[v, e] = factors_[i];
        const auto &[w, f] = other.factors_[i];
        if (v != w) {
            return v < w;
        }
        if (e != f) {
            return e < f;
        }
    }
    return factors_.size() < other.factors_.size();
}

std::string Monomial::to_string() const {
    if (is_one()) {
        return "1";
    }
    std::string s;
    for (const auto &[v, e] : factors_) {
        if (!s.empty()) {
            s += "*";
        }
        s += v.name;
        if (e > 1) {
            s += "^" + std::to_string(e);
        }
    }
    return s;
}

Polynomial::Polynomial(const Rat &c) {
    if (c != 0) {
        terms_.emplace(Monomial(), c);
    }
}

Polynomial::Polynomial(const Var &v) { terms_.emplace(Monomial(v), Rat(1)); }

Polynomial Polynomial::term(const Rat &coeff, const Monomial &m) {
    Polynomial p;
    p.add_term(m, coeff);
    return p;
}

void Polynomial::add_term(const Monomial &m, const Rat &c) {
    if (c == 0) {
        return;
    }
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rat Polynomial::constant_term() const {
    auto it = terms_.find(Monomial());
    return it == terms_.end() ? Rat(0) : it->second;
}

unsigned Polynomial::degree() const {
    unsigned d = 0;
    for (const auto &t : terms_) {
        d = std::max(d, t.first.degree());
    }
    return d;
}

unsigned Polynomial::degree_in(const Var &v) const {
    unsigned d = 0;
    for (const auto &t : terms_) {
        d = std::max(d, t.first.degree_in(v));
    }
    return d;
}

bool Polynomial::has_integer_coefficients() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto &t) { return is_integral(t.second); });
}

std::set<Var> Polynomial::vars() const {
    std::set<Var> out;
    for (const auto &t : terms_) {
        for (const auto &f : t.first.factors()) {
            out.insert(f.first);
        }
    }
    return out;
}

Rat Polynomial::linear_coeff(const Var &v) const {
    auto it = terms_.find(Monomial(v));
    return it == terms_.end() ? Rat(0) : it->second;
}

Polynomial Polynomial::operator+(const Polynomial &o) const {
    Polynomial r = *this;
    r += o;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial &o) const {
    Polynomial r = *this;
    r -= o;
    return r;
}

Polynomial Polynomial::operator*(const Polynomial &o) const {
    Polynomial r;
    for (const auto &[m1, c1] : terms_) {
        for (const auto &[m2, c2] : o.terms_) {
            r.add_term(m1 * m2, c1 * c2);
        }
    }
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto &t : r.terms_) {
        t.second = -t.second;
    }
    return r;
}

Polynomial &Polynomial::operator+=(const Polynomial &o) {
    for (const auto &[m, c] : o.terms_) {
        add_term(m, c);
    }
    return *this;
}

Polynomial &Polynomial::operator-=(const Polynomial &o) {
    for (const auto &[m, c] : o.terms_) {
        add_term(m, -c);
    }
    return *this;
}

Polynomial &Polynomial::operator*=(const Polynomial &o) {
    *this = *this * o;
    return *this;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result(1);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1U) {
            result *= base;
        }
        e >>= 1U;
        if (e > 0) {
            base *= base;
        }
    }
    return result;
}

Polynomial Polynomial::substitute(const std::map<Var, Polynomial> &m) const {
    Polynomial r;
    for (const auto &[mono, coeff] : terms_) {
        Polynomial prod(coeff);
        for (const auto &[v, e] : mono.factors()) {
            auto it = m.find(v);
            prod *= (it == m.end() ? Polynomial(v) : it->second).pow(e);
        }
        r += prod;
    }
    return r;
}

Int Polynomial::denominator_lcm() const {
    Int l = 1;
    for (const auto &t : terms_) {
        l = lcm(l, t.second.get_den());
    }
    return l;
}

Rat Polynomial::evaluate(const std::map<Var, Int> &state) const {
    return evaluate([&](const Var &v) -> const Int & {
        auto it = state.find(v);
        if (it == state.end()) {
            throw std::out_of_range("no value for variable " + v.name);
        }
        return it->second;
    });
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[mono, coeff] : terms_) {
        Rat mag = abs(coeff);
        if (first) {
            if (coeff < 0) {
                os << "-";
            }
        } else {
            os << (coeff < 0 ? " - " : " + ");
        }
        first = false;
        if (mono.is_one()) {
            os << mag.get_str();
        } else {
            if (mag != 1) {
                os << mag.get_str() << "*";
            }
            os << mono.to_string();
        }
    }
    return os.str();
}

std::ostream &operator<<(std::ostream &os, const Polynomial &p) { return os << p.to_string(); }

Polynomial poly_abs(const Polynomial &p) {
    Polynomial r;
    for (const auto &[m, c] : p.terms()) {
        r += Polynomial::term(abs(c), m);
    }
    return r;
}

} // namespace polybound
