#pragma once

#include <gmpxx.h>

#include <string>

namespace tcm {

// Exact arithmetic backing every theorem-bearing value: arbitrary-precision
// integers and normalized rationals. No floating point is used anywhere in
// bound, identity, sigma or averaging code.
using Int = mpz_class;
using Rat = mpq_class;

// mpz_class has no long long constructor; long is 64-bit on this platform
inline Int int_of(long long v) { return Int(static_cast<long>(v)); }

inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Exact ceiling of a rational (denominator is kept positive by mpq).
inline Int ceil_rat(const Rat& q) {
    Int c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return c;
}

// Serialized as "p/q" with q > 0 and gcd(p,q)=1, or a bare integer when q=1.
inline std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace tcm
