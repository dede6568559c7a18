#pragma once

#include "siegelkit/exactnt.hpp"
#include "siegelkit/quadform.hpp"
#include "siegelkit/rational.hpp"
#include "siegelkit/witness.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace siegelkit::eisenstein {

/// Truncated formal Fourier expansion: reduced forms T >= 0 with
/// D(T) <= bound mapped to exact rationals. Deterministic term order.
struct QExpansion {
    int degree = 0;
    long weight = 0;
    Int bound;
    bool theta_applied = false;  // weight label is formal after theta
    std::map<quadform::HalfIntegralForm, Rat> terms;
};

/// Zeta-L factor A_{r,k}(T) of Eq.-style coefficients: for r = 0 the
/// constant-term normalization 1; chi required iff r even and r >= 2.
Rat A_factor(int r, long k, const std::optional<exactnt::QuadCharacter>& chi);

/// Fourier coefficient a(T; E_k^{(n)}) for T >= 0 of rank <= 3, exact.
/// Singular T reduce through the Phi operator: a(T1 (+) 0) = a(T1) at the
/// same weight.
Rat a_coeff(const quadform::HalfIntegralForm& T, int n, long k);

/// alpha_p(n,k) = ord_p(zeta(1-k)^{-1} prod zeta(1+2i-2k)^{-1}); requires
/// n odd, p > n, k = (n+1)/2 + (p-1)t. Asserted <= 0.
long alpha_p(int n, long k, const Int& p);

/// p^{-alpha_p(n,k)} a(T; E_k^{(n)}); p-integrality is asserted.
Rat normalized_coeff(const quadform::HalfIntegralForm& T, int n, long k, const Int& p);

QExpansion theta_op(const QExpansion& e);

/// F|A(p): coefficient at T becomes (1 - det(T)^{p-1}) a(T) mod p.
QExpansion a_p_operator(const QExpansion& e, const Int& p);

struct Evidence {
    quadform::HalfIntegralForm form;
    Rat coefficient;
    Int residue;        // coefficient mod p (defined when ord_p >= 0)
    bool p_integral = false;
    bool expected_zero = false;  // p does not divide D(T)
    bool singular = false;
};

struct VerificationReport {
    std::string theorem;
    int n = 0;
    Int p;
    long t = 0;
    long k = 0;
    Int bound;
    long alpha = 0;  // normalization exponent (0 for the even theorem)
    std::vector<Evidence> evidence;
    std::optional<witness::WitnessRecord> witness_used;
    std::optional<quadform::HalfIntegralForm> essential_form;
    bool integrality_pass = false;
    bool theta_kernel_pass = false;
    bool essential_pass = false;
    bool pass() const { return integrality_pass && theta_kernel_pass && essential_pass; }
};

/// Theorem verification at desk scale, n = 3: clauses (i) p-integrality,
/// (ii) theta kernel (residue 0 whenever p does not divide D(T)),
/// (iii) essentiality at a D(T) = p form.
VerificationReport verify_theorem_main1(const Int& p, long t, const Int& bound);

/// Even-degree verification, n = 2, on E_k itself (no normalization):
/// residue 0 whenever p does not divide D(T); essentiality at p | D(T).
VerificationReport verify_theorem_even(const Int& p, long t, const Int& bound);

/// Expansion builder used by the drivers and the CLI: all reduced
/// positive-definite forms with D <= bound, plus the zero form and a few
/// singular paddings when include_singular is set.
QExpansion build_eisenstein(int n, long k, const Int& bound, bool include_singular, const Int& p, bool normalized);

}  // namespace siegelkit::eisenstein
