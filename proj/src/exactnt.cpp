#include "siegelkit/exactnt.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace siegelkit {

OrdResidue ord_and_reduce(const Rat& x, const Int& p) {
    if (p < 2 || !exactnt::is_prime(p)) throw std::domain_error("ord_and_reduce: p must be prime");
    OrdResidue out;
    if (x == 0) {
        out.infinite = true;
        out.residue = Int(0);
        return out;
    }
    long vnum = (x.get_num() == 0) ? 0 : ord_p(x.get_num(), p);
    long vden = ord_p(x.get_den(), p);
    out.ord = vnum - vden;
    if (out.ord >= 0) {
        // (num/p^v mod p) * (den mod p)^{-1}, all units mod p after stripping.
        Int num = x.get_num() / int_pow(p, static_cast<unsigned long>(vnum));
        Int den = x.get_den() / int_pow(p, static_cast<unsigned long>(vden));
        if (out.ord > 0) num *= int_pow(p, static_cast<unsigned long>(out.ord));
        Int deninv;
        if (mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
            throw std::logic_error("ord_and_reduce: denominator not invertible");
        Int r = (num * deninv) % p;
        if (r < 0) r += p;
        out.residue = r;
    }
    return out;
}

Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::domain_error("rat_from_string: bad rational '" + s + "'");
    r.canonicalize();
    return r;
}

namespace exactnt {

int kronecker(const Int& d, const Int& n) {
    return mpz_kronecker(d.get_mpz_t(), n.get_mpz_t());
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    // mpz_probab_prime_p is deterministic (BPSW + Miller-Rabin) far beyond
    // 2^64; 40 rounds keeps it exact over the artifact's range.
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::vector<Int> prime_divisors(const Int& n) {
    if (n == 0) throw std::domain_error("prime_divisors: zero");
    Int m = abs(n);
    std::vector<Int> out;
    for (Int p = 2; p * p <= m; p = (p == 2) ? Int(3) : p + 2) {
        if (m % p == 0) {
            out.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

Int squarefree_part(const Int& n) {
    if (n == 0) throw std::domain_error("squarefree_part: zero");
    Int m = abs(n);
    Int s = (n < 0) ? Int(-1) : Int(1);
    for (Int p = 2; p * p <= m; p = (p == 2) ? Int(3) : p + 2) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            if (e % 2 == 1) s *= p;
        }
    }
    s *= m;  // leftover is prime (or 1), exponent 1
    return s;
}

Int squarefree_part(const Rat& x) {
    if (x == 0) throw std::domain_error("squarefree_part: zero");
    return squarefree_part(Int(x.get_num() * x.get_den()));
}

std::optional<Int> sqrt_mod(const Int& a, const Int& q) {
    if (q < 3 || q % 2 == 0 || !is_prime(q)) throw std::domain_error("sqrt_mod: q must be an odd prime");
    Int a0 = a % q;
    if (a0 < 0) a0 += q;
    if (a0 == 0) return Int(0);
    if (mpz_legendre(a0.get_mpz_t(), q.get_mpz_t()) != 1) return std::nullopt;

    // Tonelli-Shanks.
    Int s = q - 1;
    unsigned long e = 0;
    while (s % 2 == 0) {
        s /= 2;
        ++e;
    }
    Int z = 2;
    while (mpz_legendre(z.get_mpz_t(), q.get_mpz_t()) != -1) ++z;
    Int c, x, t, b;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), s.get_mpz_t(), q.get_mpz_t());
    Int s1 = (s + 1) / 2;
    mpz_powm(x.get_mpz_t(), a0.get_mpz_t(), s1.get_mpz_t(), q.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a0.get_mpz_t(), s.get_mpz_t(), q.get_mpz_t());
    unsigned long m = e;
    while (t != 1) {
        Int tt = t;
        unsigned long i = 0;
        while (tt != 1) {
            tt = (tt * tt) % q;
            ++i;
        }
        b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) b = (b * b) % q;
        x = (x * b) % q;
        c = (b * b) % q;
        t = (t * c) % q;
        m = i;
    }
    return x;
}

bool is_fundamental_discriminant(const Int& d) {
    if (d == 1) return true;
    if (d == 0) return false;
    Int mod4 = d % 4;
    if (mod4 < 0) mod4 += 4;
    if (mod4 == 1) return squarefree_part(d) == d;
    if (mod4 == 0) {
        Int m = d / 4;
        Int m4 = m % 4;
        if (m4 < 0) m4 += 4;
        return (m4 == 2 || m4 == 3) && squarefree_part(m) == m;
    }
    return false;
}

QuadCharacter::QuadCharacter(const Int& d) : d_(d) {
    if (!is_fundamental_discriminant(d))
        throw std::domain_error("QuadCharacter: " + d.get_str() + " is not a fundamental discriminant");
}

QuadCharacter QuadCharacter::from_radicand(const Int& radicand) {
    Int s = squarefree_part(radicand);
    if (s == 1) return trivial();
    Int mod4 = s % 4;
    if (mod4 < 0) mod4 += 4;
    return QuadCharacter(mod4 == 1 ? s : 4 * s);
}

int QuadCharacter::eval(const Int& n) const {
    return kronecker(d_, n);
}

namespace {

std::vector<Rat> g_bernoulli;  // guarded by g_bernoulli_mutex
std::mutex g_bernoulli_mutex;

// Akiyama-Tanigawa triangle: exact, and independent of the binomial
// recurrence used as the test oracle. Produces B_1 = +1/2; the classical
// sign convention B_1 = -1/2 is applied on top.
void extend_bernoulli(unsigned long k) {
    if (g_bernoulli.size() > k) return;
    std::vector<Rat> b(k + 1);
    std::vector<Rat> row(k + 2);
    for (unsigned long m = 0; m <= k; ++m) row[m] = Rat(1, static_cast<long>(m) + 1);
    b[0] = row[0];
    for (unsigned long n = 1; n <= k; ++n) {
        for (unsigned long m = 0; m + n <= k; ++m) row[m] = Rat(static_cast<long>(m) + 1) * (row[m] - row[m + 1]);
        b[n] = row[0];
    }
    if (k >= 1) b[1] = Rat(-1, 2);
    g_bernoulli = std::move(b);
}

}  // namespace

Rat bernoulli(unsigned long k) {
    std::lock_guard<std::mutex> lock(g_bernoulli_mutex);
    if (g_bernoulli.size() <= k) extend_bernoulli(std::max<unsigned long>(k, 32));
    return g_bernoulli[k];
}

Rat bernoulli_poly(unsigned long m, const Rat& x) {
    // B_m(x) = sum_j C(m,j) B_j x^{m-j}
    Rat acc = 0;
    Int binom = 1;
    for (unsigned long j = 0; j <= m; ++j) {
        if (j > 0) binom = binom * Int(m - j + 1) / Int(j);
        acc += Rat(binom) * bernoulli(j) * rat_pow(x, static_cast<long>(m - j));
    }
    return acc;
}

Rat zeta_neg(unsigned long k) {
    if (k < 2 || k % 2 != 0) throw std::domain_error("zeta_neg: k must be even and >= 2");
    return -bernoulli(k) / Rat(Int(k));
}

Rat gen_bernoulli(const QuadCharacter& chi, unsigned long m) {
    if (m < 1) throw std::domain_error("gen_bernoulli: m must be positive");
    Int f = chi.conductor();
    Rat acc = 0;
    for (Int a = 1; a <= f; ++a) {
        int c = chi.eval(a);
        if (c == 0) continue;
        Rat v = bernoulli_poly(m, Rat(a) / Rat(f));
        acc += (c > 0) ? v : -v;
    }
    return acc * Rat(int_pow(f, m - 1));
}

Rat dirichlet_L_neg(const QuadCharacter& chi, unsigned long m) {
    return -gen_bernoulli(chi, m) / Rat(Int(m));
}

bool carlitz_exceptional(const QuadCharacter& chi, unsigned long m, const Int& p) {
    if (p < 3 || !is_prime(p)) return false;
    if (chi.conductor() != p) return false;
    Int half = (p - 1) / 2;
    Int mm(static_cast<unsigned long>(m));
    if (mm % half != 0) return false;
    Int mult = mm / half;
    return mult % 2 == 1;
}

}  // namespace exactnt
}  // namespace siegelkit
