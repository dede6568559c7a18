#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace siegelkit {

// All arithmetic in this library is exact. Int/Rat are arbitrary precision;
// Rat is always stored canonicalized (lowest terms, positive denominator).
using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e >= 0) {
        Rat r;
        mpz_pow_ui(mpq_numref(r.get_mpq_t()), base.get_num().get_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(mpq_denref(r.get_mpq_t()), base.get_den().get_mpz_t(), static_cast<unsigned long>(e));
        r.canonicalize();
        return r;
    }
    if (base == 0) throw std::domain_error("rat_pow: negative power of zero");
    return 1 / rat_pow(base, -e);
}

inline Rat make_rat(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// p-adic valuation of a nonzero integer.
inline long ord_p(const Int& x, const Int& p) {
    if (x == 0) throw std::domain_error("ord_p: valuation of zero is infinite");
    Int t = abs(x);
    long v = 0;
    Int q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
        if (r != 0) break;
        t = q;
        ++v;
    }
    return v;
}

// Valuation and residue of an exact rational, the ord_and_reduce contract:
// infinite == true        <=> x == 0 (residue reported as 0)
// residue engaged         <=> ord >= 0, value (num mod p) * (den mod p)^{-1}
struct OrdResidue {
    bool infinite = false;
    long ord = 0;
    std::optional<Int> residue;
};

OrdResidue ord_and_reduce(const Rat& x, const Int& p);

inline long ord_q(const Rat& x, const Int& p) {
    OrdResidue o = ord_and_reduce(x, p);
    if (o.infinite) throw std::domain_error("ord_q: valuation of zero is infinite");
    return o.ord;
}

inline std::string rat_to_string(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat rat_from_string(const std::string& s);

}  // namespace siegelkit
