#pragma once

#include "siegelkit/quadform.hpp"
#include "siegelkit/rational.hpp"

#include <filesystem>
#include <stdexcept>
#include <vector>

namespace siegelkit::siegelseries {

/// Siegel-series polynomial F_q(T,X) for one prime q: integer coefficients
/// in ascending degree, constant term 1, degree ord_q(C(T)).
struct LocalPolynomial {
    Int q;
    std::vector<Int> coeffs;
    int subject_rank = 0;
    Int subject_D;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    Rat eval(const Rat& x) const;
};

/// Raised when the density/interpolation post-checks fail (normalization
/// mismatch between the density evaluation and the series contract).
struct calibration_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Normalized representation density of T by k hyperbolic planes mod q^nu:
/// q^{-nu(2kn - n(n+1)/2)} #{X in M_{2k,n}(Z/q^nu) : S[X] = T in
/// Lambda_n tensor Z/q^nu}. Production path; exact.
Rat local_density_hyperbolic(const quadform::HalfIntegralForm& T, const Int& q, int k, int nu);

/// Oracle path (a): literal enumeration over X. Throws domain_error when the
/// enumeration volume (q^nu)^{2kn} exceeds the feasibility cap.
Rat local_density_direct(const quadform::HalfIntegralForm& T, const Int& q, int k, int nu);

/// Path (b) evaluated literally: the character sum over Sym_n(Z/q^nu).
/// Throws domain_error beyond its own (larger) cap.
Rat local_density_sigma(const quadform::HalfIntegralForm& T, const Int& q, int k, int nu);

/// F_q(T,X) by stabilized density interpolation. Post-conditions enforced:
/// integral coefficients, constant term 1, degree exactly ord_q(C(T)), and
/// an extra interpolation point reproduced; otherwise calibration_error.
LocalPolynomial siegel_series_polynomial(const quadform::HalfIntegralForm& T, const Int& q);

/// prod_{q | C(T)} F_q(T,X) as an integer coefficient sequence.
std::vector<Int> product_polynomial(const quadform::HalfIntegralForm& T);

/// prod_{q | C(T)} F_q(T, q^{k-n-1}) for weight k, degree n = deg T.
Rat local_factor_value(const quadform::HalfIntegralForm& T, long k);

/// Katsurada's functional equation, verified exactly as rational functions
/// at ord_q(D(T)) + 2 sample points. n odd.
bool check_functional_equation(const LocalPolynomial& F, const quadform::HalfIntegralForm& T, const Int& q);

/// Smallest prime q | D(T) with F_q(T, q^{-(n+1)/2}) = 0; exists for
/// n = +-3 mod 8 and T > 0. Absence is a fatal consistency failure.
Int key_lemma_prime(const quadform::HalfIntegralForm& T);

/// Process-wide memo for F_q keyed by (G, q), with an optional
/// content-addressed on-disk layer (JSON records).
void cache_set_directory(const std::filesystem::path& dir);
void cache_clear_memory();
std::string cache_record_json(const LocalPolynomial& F);

}  // namespace siegelkit::siegelseries
