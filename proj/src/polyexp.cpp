#include "polybound/polyexp.hpp"

#include <algorithm>
#include <stdexcept>

namespace polybound {

Rat UniPoly::eval(const Rat &n) const {
    Rat acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * n + *it;
    }
    return acc;
}

unsigned UniPoly::degree() const {
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] != 0) {
            return static_cast<unsigned>(i);
        }
    }
    return 0;
}

PolyExp::PolyExp(const Polynomial &p) {
    if (!p.is_zero()) {
        addends_.push_back({p, 0, 1});
    }
}

PolyExp::PolyExp(std::vector<Addend> addends) : addends_(std::move(addends)) { canonicalize(); }

PolyExp PolyExp::addend(Polynomial q, unsigned a, Int b) {
    return PolyExp(std::vector<Addend>{Addend{std::move(q), a, std::move(b)}});
}

void PolyExp::canonicalize() {
    for (const auto &ad : addends_) {
        if (ad.b < 1) {
            throw std::invalid_argument("poly-exponential bases must be at least 1");
        }
    }
    std::sort(addends_.begin(), addends_.end(), [](const Addend &x, const Addend &y) {
        return x.b != y.b ? x.b < y.b : x.a < y.a;
    });
    std::vector<Addend> merged;
    for (auto &ad : addends_) {
        if (!merged.empty() && merged.back().b == ad.b && merged.back().a == ad.a) {
            merged.back().q += ad.q;
        } else {
            merged.push_back(std::move(ad));
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Addend &ad) { return ad.q.is_zero(); }),
                 merged.end());
    addends_ = std::move(merged);
}

PolyExp PolyExp::operator+(const PolyExp &o) const {
    std::vector<Addend> all = addends_;
    all.insert(all.end(), o.addends_.begin(), o.addends_.end());
    return PolyExp(std::move(all));
}

PolyExp PolyExp::operator-() const {
    std::vector<Addend> all = addends_;
    for (auto &ad : all) {
        ad.q = -ad.q;
    }
    return PolyExp(std::move(all));
}

PolyExp PolyExp::operator-(const PolyExp &o) const { return *this + (-o); }

PolyExp PolyExp::operator*(const PolyExp &o) const {
    std::vector<Addend> all;
    all.reserve(addends_.size() * o.addends_.size());
    for (const auto &x : addends_) {
        for (const auto &y : o.addends_) {
            all.push_back({x.q * y.q, x.a + y.a, x.b * y.b});
        }
    }
    return PolyExp(std::move(all));
}

PolyExp PolyExp::pow(unsigned e) const {
    PolyExp result(Polynomial(1));
    PolyExp base = *this;
    while (e > 0) {
        if (e & 1U) {
            result = result * base;
        }
        e >>= 1U;
        if (e > 0) {
            base = base * base;
        }
    }
    return result;
}

Rat PolyExp::eval(const std::map<Var, Int> &state, const Int &n) const {
    return eval(
        [&](const Var &v) -> const Int & {
            auto it = state.find(v);
            if (it == state.end()) {
                throw std::out_of_range("no value for variable " + v.name);
            }
            return it->second;
        },
        n);
}

Polynomial PolyExp::at(const Int &n) const {
    Polynomial p;
    for (const auto &ad : addends_) {
        p += ad.q * Polynomial(Rat(ipow(n, ad.a) * ipow(ad.b, n.get_ui())));
    }
    return p;
}

std::string PolyExp::to_string() const {
    if (addends_.empty()) {
        return "0";
    }
    std::string out;
    for (auto it = addends_.rbegin(); it != addends_.rend(); ++it) {
        const Addend &ad = *it;
        Polynomial q = ad.q;
        bool negative = q.terms().size() == 1 && q.terms().begin()->second < 0;
        if (!out.empty()) {
            out += negative ? " - " : " + ";
            if (negative) {
                q = -q;
            }
        }
        std::vector<std::string> factors;
        bool has_n = ad.a > 0 || ad.b != 1;
        if (!(has_n && q == Polynomial(1))) {
            std::string qs = q.to_string();
            if (has_n && q.terms().size() > 1) {
                qs = "(" + qs + ")";
            }
            factors.push_back(qs);
        } else if (out.empty() && negative) {
            factors.push_back("-1");
        }
        if (ad.a == 1) {
            factors.emplace_back("n");
        } else if (ad.a > 1) {
            factors.push_back("n^" + std::to_string(ad.a));
        }
        if (ad.b != 1) {
            factors.push_back(ad.b.get_str() + "^n");
        }
        for (std::size_t i = 0; i < factors.size(); ++i) {
            out += (i ? " * " : "") + factors[i];
        }
    }
    return out;
}

PolyExp pe_substitute(const Polynomial &p, const std::map<Var, PolyExp> &assignment) {
    PolyExp result;
    for (const auto &[mono, coeff] : p.terms()) {
        PolyExp prod{Polynomial(coeff)};
        for (const auto &[v, e] : mono.factors()) {
            auto it = assignment.find(v);
            prod = prod * (it == assignment.end() ? PolyExp(Polynomial(v)) : it->second).pow(e);
        }
        result = result + prod;
    }
    return result;
}

std::pair<Int, PolyExp> pe_normalize_integer(const PolyExp &x) {
    Int l = 1;
    for (const auto &ad : x.addends()) {
        l = lcm(l, ad.q.denominator_lcm());
    }
    if (l == 1) {
        return {l, x};
    }
    return {l, x * PolyExp(Polynomial(Rat(l)))};
}

std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> m, std::vector<Rat> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) {
            ++piv;
        }
        if (piv == n) {
            throw std::domain_error("singular linear system");
        }
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) {
                continue;
            }
            Rat f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) {
                m[r][c] -= f * m[col][c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = rhs[i] / m[i][i];
    }
    return x;
}

namespace {

Rat power(const Rat &base, unsigned e) {
    return e == 0 ? Rat(1) : rpow(base, static_cast<long>(e));
}

} // namespace

UniPoly faulhaber(unsigned a) {
    const unsigned unknowns = a + 2;
    std::vector<std::vector<Rat>> m(unknowns, std::vector<Rat>(unknowns));
    std::vector<Rat> rhs(unknowns);
    Rat partial = 0;
    for (unsigned n = 0; n < unknowns; ++n) {
        for (unsigned i = 0; i < unknowns; ++i) {
            m[n][i] = power(Rat(n), i);
        }
        rhs[n] = partial;
        partial += power(Rat(n), a);
    }
    return UniPoly{solve_linear(std::move(m), std::move(rhs))};
}

std::pair<UniPoly, Rat> sum_geo_poly(unsigned a, const Rat &rho) {
    if (rho == 1) {
        throw std::invalid_argument("sum_geo_poly requires rho != 1");
    }
    const unsigned unknowns = a + 2; // P_0..P_a and K
    std::vector<std::vector<Rat>> m(unknowns, std::vector<Rat>(unknowns));
    std::vector<Rat> rhs(unknowns);
    Rat partial = 0;
    for (unsigned n = 0; n < unknowns; ++n) {
        Rat rn = power(rho, n);
        for (unsigned i = 0; i <= a; ++i) {
            m[n][i] = power(Rat(n), i) * rn;
        }
        m[n][a + 1] = 1;
        rhs[n] = partial;
        partial += power(Rat(n), a) * rn;
    }
    auto sol = solve_linear(std::move(m), std::move(rhs));
    Rat k = sol.back();
    sol.pop_back();
    return {UniPoly{std::move(sol)}, k};
}

} // namespace polybound
