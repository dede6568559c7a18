#include "siegelkit/hermitian.hpp"

#include <stdexcept>

namespace siegelkit::hermitian {

ImagQuadField::ImagQuadField(const Int& DK) : dk_(DK) {
    if (DK <= 0 || !exactnt::is_fundamental_discriminant(-DK))
        throw std::domain_error("ImagQuadField: -D_K must be a negative fundamental discriminant");
}

FieldElement fe_add(const FieldElement& a, const FieldElement& b) { return {a.x + b.x, a.y + b.y}; }
FieldElement fe_sub(const FieldElement& a, const FieldElement& b) { return {a.x - b.x, a.y - b.y}; }

FieldElement fe_mul(const FieldElement& a, const FieldElement& b, const ImagQuadField& K) {
    // (x1 + y1 s)(x2 + y2 s) with s^2 = -D_K
    Rat d(K.DK());
    return {a.x * b.x - d * a.y * b.y, a.x * b.y + a.y * b.x};
}

FieldElement fe_div(const FieldElement& a, const FieldElement& b, const ImagQuadField& K) {
    Rat d(K.DK());
    Rat norm = b.x * b.x + d * b.y * b.y;
    if (norm == 0) throw std::domain_error("fe_div: division by zero");
    FieldElement num = fe_mul(a, b.conj(), K);
    return {num.x / norm, num.y / norm};
}

bool ok_membership(const FieldElement& z, const ImagQuadField& K) {
    Rat u = 2 * z.x, v = 2 * z.y;
    if (u.get_den() != 1 || v.get_den() != 1) return false;
    Int ui = u.get_num(), vi = v.get_num();
    Int rhs = vi * (-K.DK());
    return (ui - rhs) % 2 == 0;
}

HermitianForm::HermitianForm(int m, ImagQuadField K, std::vector<FieldElement> entries)
    : m_(m), K_(std::move(K)), e_(std::move(entries)) {
    if (m < 1 || e_.size() != static_cast<size_t>(m) * static_cast<size_t>(m))
        throw std::domain_error("HermitianForm: wrong entry count");
    for (int i = 0; i < m; ++i) {
        const FieldElement& d = at(i, i);
        if (d.y != 0 || d.x.get_den() != 1) throw std::domain_error("HermitianForm: diagonal must be rational integers");
        for (int j = 0; j < m; ++j) {
            const FieldElement& a = at(i, j);
            const FieldElement& b = at(j, i);
            if (a.x != b.x || a.y != -b.y) throw std::domain_error("HermitianForm: H* != H");
            // sqrt(-D_K) h_ij = -D_K y + x sqrt(-D_K)
            FieldElement w(Rat(-K_.DK()) * a.y, a.x);
            if (!ok_membership(w, K_)) throw std::domain_error("HermitianForm: sqrt(-D_K) h_jl not in O_K");
        }
    }
}

Rat det_hermitian(const HermitianForm& H) {
    int m = H.size();
    std::vector<FieldElement> a(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a[static_cast<size_t>(i) * m + j] = H.at(i, j);
    auto at = [&](int i, int j) -> FieldElement& { return a[static_cast<size_t>(i) * m + j]; };

    FieldElement det = FieldElement::integer(1);
    int sign = 1;
    for (int k = 0; k < m; ++k) {
        int piv = -1;
        for (int i = k; i < m; ++i)
            if (!at(i, k).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) return Rat(0);
        if (piv != k) {
            for (int j = 0; j < m; ++j) std::swap(a[static_cast<size_t>(k) * m + j], a[static_cast<size_t>(piv) * m + j]);
            sign = -sign;
        }
        det = fe_mul(det, at(k, k), H.field());
        for (int i = k + 1; i < m; ++i) {
            FieldElement f = fe_div(at(i, k), at(k, k), H.field());
            for (int j = k; j < m; ++j) at(i, j) = fe_sub(at(i, j), fe_mul(f, at(k, j), H.field()));
        }
    }
    if (det.y != 0) throw std::logic_error("det_hermitian: non-real determinant of a Hermitian matrix");
    return sign < 0 ? Rat(-det.x) : det.x;
}

Int gamma_H(const HermitianForm& H) {
    Rat det = det_hermitian(H);
    if (det == 0) throw std::domain_error("gamma_H: degenerate form");
    int m = H.size();
    Rat g = det * rat_pow(Rat(-H.field().DK()), m / 2);
    if (g.get_den() != 1) throw std::logic_error("gamma_H: non-integral gamma(H)");
    return g.get_num();
}

int chi_K_local(const ImagQuadField& K, const Rat& x, const quadform::PlaceTag& v) {
    if (x == 0) throw std::domain_error("chi_K_local: x must be nonzero");
    Int xs = exactnt::squarefree_part(x);
    return quadform::hilbert_symbol(xs, -K.DK(), v);
}

Rat B_factor_hermitian(int r, long k, const ImagQuadField& K) {
    if (r < 0) throw std::domain_error("B_factor_hermitian: negative rank");
    if (r == 0) return Rat(1);
    if (k % 2 != 0 || k <= r) throw std::domain_error("B_factor_hermitian: need even k > r");
    Rat acc = 1;
    exactnt::QuadCharacter chi = K.character();
    for (int i = 1; i <= r; ++i) {
        unsigned long m = static_cast<unsigned long>(k - i + 1);  // L(i-k, .) = L(1-m, .)
        Rat L = (i % 2 == 1) ? exactnt::dirichlet_L_neg(exactnt::QuadCharacter::trivial(), m)
                             : exactnt::dirichlet_L_neg(chi, m);
        if (L == 0) throw std::logic_error("B_factor_hermitian: vanishing L-value in the product");
        acc /= L;
    }
    return acc;
}

long beta_p(int m, long k, const Int& p, const ImagQuadField& K) {
    if (!exactnt::is_prime(p) || p <= m + 1) throw std::domain_error("beta_p: need prime p > m+1");
    if (K.DK() % p == 0) throw std::domain_error("beta_p: D_K must be prime to p");
    Int diff = Int(k) - m;
    if (diff <= 0 || diff % (p - 1) != 0) throw std::domain_error("beta_p: k must be m + (p-1)t, t >= 1");
    long b = ord_q(B_factor_hermitian(m, k, K), p);
    if (b > 0) throw std::logic_error("beta_p: positive valuation contradicts the theorem's hypotheses");
    return b;
}

Int key_lemma_H_witness(const Int& gamma, const ImagQuadField& K) {
    if (gamma >= 0) throw std::domain_error("key_lemma_H_witness: gamma must be negative");
    std::vector<Int> cands = exactnt::prime_divisors(2 * gamma * K.DK());
    for (const Int& q : cands)
        if (chi_K_local(K, Rat(gamma), quadform::PlaceTag::at(q)) == -1) return q;
    throw std::logic_error("key_lemma_H_witness: no finite place with local value -1 (consistency failure)");
}

Rat HermitianLocalPolynomial::eval(const Rat& x) const {
    Rat acc = 0;
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + Rat(coeffs[i]);
    return acc;
}

bool check_functional_equation_hermitian(const HermitianLocalPolynomial& F, const ImagQuadField& K) {
    if (F.size_m < 1 || F.subject_gamma == 0) throw std::domain_error("check_functional_equation_hermitian: bad contract data");
    long e = ord_p(F.subject_gamma, F.q);
    int chi = chi_K_local(K, Rat(F.subject_gamma), quadform::PlaceTag::at(F.q));
    int sign = (F.size_m - 1) % 2 == 0 ? 1 : chi;
    Rat q2m = Rat(int_pow(F.q, static_cast<unsigned long>(2 * F.size_m)));
    Rat qm = Rat(int_pow(F.q, static_cast<unsigned long>(F.size_m)));
    for (long s = 1; s <= e + 2; ++s) {
        Rat X(s);
        Rat lhs = F.eval(1 / (q2m * X));
        Rat rhs = Rat(sign) * rat_pow(qm * X, -e) * F.eval(X);
        if (lhs != rhs) return false;
    }
    return true;
}

}  // namespace siegelkit::hermitian
