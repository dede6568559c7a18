#pragma once

#include "siegelkit/rational.hpp"

#include <optional>
#include <vector>

namespace siegelkit::exactnt {

/// Primitive quadratic Dirichlet character, identified by a fundamental
/// discriminant d (d = 1 is the trivial character). chi(n) = kronecker(d, n),
/// conductor |d|.
class QuadCharacter {
public:
    explicit QuadCharacter(const Int& d);

    static QuadCharacter trivial() { return QuadCharacter(Int(1)); }

    // Character attached to Q(sqrt(radicand)); radicand need not be
    // squarefree. A square radicand yields the trivial character.
    static QuadCharacter from_radicand(const Int& radicand);

    const Int& discriminant() const { return d_; }
    Int conductor() const { return abs(d_); }
    bool is_trivial() const { return d_ == 1; }
    int eval(const Int& n) const;

private:
    Int d_;
};

bool is_fundamental_discriminant(const Int& d);

/// Kronecker symbol (d/n), defined for all integers.
int kronecker(const Int& d, const Int& n);

/// Deterministic primality test, exact for |n| <= 2^64.
bool is_prime(const Int& n);

/// Square root of a mod an odd prime q, in [0, q); nullopt for non-residues.
std::optional<Int> sqrt_mod(const Int& a, const Int& q);

/// Bernoulli number B_k, convention B_1 = -1/2. Memoized; safe for
/// concurrent use.
Rat bernoulli(unsigned long k);

/// Bernoulli polynomial value B_m(x), exact.
Rat bernoulli_poly(unsigned long m, const Rat& x);

/// zeta(1-k) = -B_k/k for even k >= 2.
Rat zeta_neg(unsigned long k);

/// Generalized Bernoulli number B_{m,chi} via the conductor-f finite sum
/// f^{m-1} sum_{a=1..f} chi(a) B_m(a/f). For the trivial character this is
/// B_m except that B_{1,triv} = +1/2.
Rat gen_bernoulli(const QuadCharacter& chi, unsigned long m);

/// L(1-m; chi) = -B_{m,chi}/m.
Rat dirichlet_L_neg(const QuadCharacter& chi, unsigned long m);

/// The exceptional case of Carlitz' integrality theorem for L(1-m; chi):
/// conductor(chi) equal to the odd prime p and m an odd multiple of (p-1)/2.
bool carlitz_exceptional(const QuadCharacter& chi, unsigned long m, const Int& p);

/// Squarefree part of a nonzero integer (same sign, squarefree).
Int squarefree_part(const Int& n);

/// Squarefree part of a nonzero rational: squarefree integer representing
/// its square class (num*den up to squares).
Int squarefree_part(const Rat& x);

/// Factorization helper used across the library; returns prime divisors of
/// |n| in ascending order (n != 0).
std::vector<Int> prime_divisors(const Int& n);

}  // namespace siegelkit::exactnt
