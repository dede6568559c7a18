#pragma once

#include "siegelkit/exactnt.hpp"
#include "siegelkit/rational.hpp"

#include <string>
#include <vector>

namespace siegelkit::quadform {

/// A place of Q: a finite prime or the archimedean place.
class PlaceTag {
public:
    static PlaceTag infinity() { return PlaceTag(true, 0); }
    static PlaceTag at(const Int& q);

    bool is_infinite() const { return infinite_; }
    const Int& prime() const;

private:
    PlaceTag(bool inf, Int q) : infinite_(inf), q_(std::move(q)) {}
    bool infinite_;
    Int q_;
};

/// Element of Lambda_n stored in doubled representation: the integer
/// symmetric matrix G = 2T with even diagonal (t_jj in Z, 2t_jl in Z).
class HalfIntegralForm {
public:
    HalfIntegralForm() : n_(0) {}  // the empty (degree 0) form
    HalfIntegralForm(int n, std::vector<Int> doubled);

    static HalfIntegralForm zero(int n);
    static HalfIntegralForm scalar(const Int& t);  // degree 1, T = (t)

    int degree() const { return n_; }
    const Int& g(int i, int j) const { return g_[static_cast<size_t>(i) * n_ + j]; }
    const std::vector<Int>& doubled() const { return g_; }

    Rat det_t() const;        // det(T) = det(G) / 2^n
    Int det_doubled() const;  // det(G)

    bool operator==(const HalfIntegralForm& o) const { return n_ == o.n_ && g_ == o.g_; }
    bool operator<(const HalfIntegralForm& o) const;

    std::string to_text() const;
    static HalfIntegralForm from_text(const std::string& line);

private:
    int n_;
    std::vector<Int> g_;
};

/// D(T) = 2^{2[n/2]} det(T); integral and nonzero for nondegenerate T.
Int D_of(const HalfIntegralForm& T);

/// C(T) = D(T)/d_T for even n (d_T = |disc K_T|), D(T) for odd n.
Int C_of(const HalfIntegralForm& T);

/// chi_T for even degree: the primitive quadratic character of
/// K_T = Q(sqrt((-1)^{n/2} det 2T)); trivial when the radicand is square.
exactnt::QuadCharacter chi_T(const HalfIntegralForm& T);

bool is_positive_definite(const HalfIntegralForm& T);
bool is_positive_semidefinite(const HalfIntegralForm& T);

/// Squarefree integers a_1..a_n with T rationally equivalent to
/// sum a_i x_i^2. Rejects degenerate T.
std::vector<Int> rational_diagonalization(const HalfIntegralForm& T);

/// Hilbert symbol (a, b)_v for nonzero integers.
int hilbert_symbol(const Int& a, const Int& b, const PlaceTag& v);

/// Hasse invariant h_v(T) = prod_{i<=j} (a_i, a_j)_v over a rational
/// diagonalization; independent of the diagonalization chosen.
int hasse_invariant(const HalfIntegralForm& T, const PlaceTag& v);

/// eta_v(T) = h_v(T) (det T, (-1)^{(n-1)/2} det T)_v (-1,-1)_v^{(n^2-1)/8}
/// for odd n; Hilbert arguments use squarefree parts.
int eta(const HalfIntegralForm& T, const PlaceTag& v);

/// All positive-definite reduced forms of degree n in {2,3} with
/// D(T) <= Dbound. Every class is represented at least once; the list is
/// sorted lexicographically on the doubled entries; duplicates by class
/// may occur.
std::vector<HalfIntegralForm> enumerate_reduced(int n, const Int& Dbound);

struct SplitResult {
    HalfIntegralForm t1;     // positive definite of degree rank (degree 0 if rank 0)
    int rank = 0;
    std::vector<Int> U;      // n x n unimodular, row-major: G[U] = G1 (+) 0
};

/// Split a positive-semidefinite T as T[U] = T1 (+) 0_{n-r} with T1 > 0.
SplitResult split_degenerate(const HalfIntegralForm& T);

HalfIntegralForm direct_sum(const HalfIntegralForm& a, const HalfIntegralForm& b);

/// (1/2)U for a rank-8 even unimodular positive-definite U: the doubled
/// matrix is an E8 Gram matrix (even diagonal, det 1).
HalfIntegralForm gram_E8();

}  // namespace siegelkit::quadform
