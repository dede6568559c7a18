#pragma once

#include "siegelkit/exactnt.hpp"
#include "siegelkit/quadform.hpp"
#include "siegelkit/rational.hpp"

#include <vector>

namespace siegelkit::hermitian {

/// Imaginary quadratic field Q(sqrt(-D_K)), -D_K a fundamental discriminant.
class ImagQuadField {
public:
    explicit ImagQuadField(const Int& DK);
    const Int& DK() const { return dk_; }
    exactnt::QuadCharacter character() const { return exactnt::QuadCharacter(-dk_); }

private:
    Int dk_;
};

/// x + y sqrt(-D_K) with exact rational coordinates.
struct FieldElement {
    Rat x, y;

    FieldElement() : x(0), y(0) {}
    FieldElement(Rat xx, Rat yy) : x(std::move(xx)), y(std::move(yy)) {}
    static FieldElement integer(long v) { return FieldElement(Rat(v), Rat(0)); }

    FieldElement conj() const { return FieldElement(x, -y); }
    bool is_zero() const { return x == 0 && y == 0; }
};

FieldElement fe_add(const FieldElement& a, const FieldElement& b);
FieldElement fe_sub(const FieldElement& a, const FieldElement& b);
FieldElement fe_mul(const FieldElement& a, const FieldElement& b, const ImagQuadField& K);
FieldElement fe_div(const FieldElement& a, const FieldElement& b, const ImagQuadField& K);

/// O_K membership in sqrt(-D_K) coordinates: z = (u + v sqrt(-D_K))/2 with
/// u, v integers and u = v (-D_K) mod 2.
bool ok_membership(const FieldElement& z, const ImagQuadField& K);

/// Element of Lambda_m(O_K): H* = H, integral diagonal,
/// sqrt(-D_K) h_jl in O_K.
class HermitianForm {
public:
    HermitianForm(int m, ImagQuadField K, std::vector<FieldElement> entries);

    int size() const { return m_; }
    const ImagQuadField& field() const { return K_; }
    const FieldElement& at(int i, int j) const { return e_[static_cast<size_t>(i) * m_ + j]; }

private:
    int m_;
    ImagQuadField K_;
    std::vector<FieldElement> e_;
};

/// Exact determinant; Hermitian symmetry forces a real value, enforced.
Rat det_hermitian(const HermitianForm& H);

/// gamma(H) = (-D_K)^{[m/2]} det(H), asserted integral.
Int gamma_H(const HermitianForm& H);

/// Local component of the idele class character of K at v, evaluated as the
/// Hilbert symbol (x, -D_K)_v.
int chi_K_local(const ImagQuadField& K, const Rat& x, const quadform::PlaceTag& v);

/// B_{r,k} = prod_{i=1..r} L(i-k, chi_K^{i-1})^{-1} (zeta for odd i).
Rat B_factor_hermitian(int r, long k, const ImagQuadField& K);

/// beta_p(m,k) = ord_p of the full product; asserted <= 0 under the
/// theorem's hypotheses (p > m+1, p not dividing D_K, k = m + (p-1)t).
long beta_p(int m, long k, const Int& p, const ImagQuadField& K);

/// Smallest prime q with chi_{K,q}(gamma) = -1 for gamma < 0; exists by the
/// product formula since the infinite component is -1.
Int key_lemma_H_witness(const Int& gamma, const ImagQuadField& K);

/// Local polynomial on the Hermitian side, as a stated contract for
/// externally supplied coefficients. No computation path is provided here
/// (Hermitian local densities are out of scope); only the functional
/// equation can be checked against the contract.
struct HermitianLocalPolynomial {
    Int q;
    std::vector<Int> coeffs;  // ascending degree, constant term 1
    int size_m = 0;           // the m of Lambda_m
    Int subject_gamma;        // gamma(H) of the subject form

    Rat eval(const Rat& x) const;
};

/// F(q^{-2m} X^{-1}) = chi_{K,q}(gamma)^{m-1} (q^m X)^{-ord_q(gamma)} F(X),
/// verified exactly at ord_q(gamma) + 2 sample points.
bool check_functional_equation_hermitian(const HermitianLocalPolynomial& F, const ImagQuadField& K);

}  // namespace siegelkit::hermitian
