#pragma once

#include <gmpxx.h>

#include <string>

namespace polybound {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int &num, const Int &den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integral(const Rat &r) { return r.get_den() == 1; }

inline Int ceil_abs(const Rat &r) {
    Int q;
    Int n = abs(r.get_num());
    mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Int lcm(const Int &a, const Int &b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int ipow(const Int &base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat rpow(const Rat &base, long e) {
    if (e < 0) {
        Rat inv = 1 / base;
        return make_rat(ipow(inv.get_num(), -e), ipow(inv.get_den(), -e));
    }
    return make_rat(ipow(base.get_num(), e), ipow(base.get_den(), e));
}

inline std::string to_string(const Rat &r) { return r.get_str(); }
inline std::string to_string(const Int &i) { return i.get_str(); }

} // namespace polybound
