#include "siegelkit/witness.hpp"

#include "siegelkit/exactnt.hpp"

#include <stdexcept>

namespace siegelkit::witness {

using quadform::HalfIntegralForm;

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::kTwo: return "p=2";
        case Branch::kThreeMod4: return "p=3 mod 4";
        case Branch::kFiveMod8: return "p=5 mod 8";
        case Branch::kOneMod8: return "p=1 mod 8 (Schulze-Pillot)";
    }
    return "?";
}

WitnessRecord ternary_witness(const Int& p) {
    if (!exactnt::is_prime(p)) throw std::domain_error("ternary_witness: p must be prime");

    auto finish = [&](Branch br, std::optional<Int> q, std::optional<Int> a, HalfIntegralForm f) {
        if (!quadform::is_positive_definite(f)) throw std::logic_error("ternary_witness: form not positive definite");
        if (quadform::D_of(f) != p) throw std::logic_error("ternary_witness: D(T1) != p");
        return WitnessRecord{p, br, std::move(q), std::move(a), std::move(f)};
    };

    if (p == 2)
        return finish(Branch::kTwo, std::nullopt, std::nullopt,
                      HalfIntegralForm(3, {Int(2), Int(1), Int(1), Int(1), Int(2), Int(0), Int(1), Int(0), Int(2)}));

    if (p % 4 == 3) {
        Int h = (p + 1) / 2;  // even since p = 3 mod 4
        return finish(Branch::kThreeMod4, std::nullopt, std::nullopt,
                      HalfIntegralForm(3, {Int(2), Int(0), Int(0), Int(0), Int(2), Int(1), Int(0), Int(1), h}));
    }

    if (p % 8 == 5) {
        Int h = (p + 3) / 4;  // even since p = 5 mod 8
        return finish(Branch::kFiveMod8, std::nullopt, std::nullopt,
                      HalfIntegralForm(3, {Int(2), Int(0), Int(1), Int(0), Int(4), Int(1), Int(1), Int(1), h}));
    }

    // p = 1 mod 8: search the smallest q = 3 mod 4 with (p/q) = (q/p) = -1,
    // then a with a^2 = -p mod q.
    for (Int q = 3; q <= 10000; q += 4) {
        if (!exactnt::is_prime(q)) continue;
        if (exactnt::kronecker(p, q) != -1) continue;
        if (exactnt::kronecker(q, p) != -1) continue;
        std::optional<Int> a = exactnt::sqrt_mod(-p, q);
        if (!a) continue;  // cannot happen given the symbols; kept as a guard
        Int aa = *a;
        Int g11 = 2 * (aa * aa * q + aa * aa + p) / q;
        Int qp1 = q + 1;
        // q(q+1)/2 is even exactly because q = 3 mod 4
        HalfIntegralForm f(3, {g11, -2 * aa, -aa * qp1,
                               -2 * aa, Int(2), q,
                               -aa * qp1, q, q * qp1 / 2});
        return finish(Branch::kOneMod8, q, aa, std::move(f));
    }
    throw std::logic_error("ternary_witness: no auxiliary prime q below cap (consistency failure)");
}

HalfIntegralForm pad_witness(const HalfIntegralForm& t1, int n) {
    if (t1.degree() != 3) throw std::domain_error("pad_witness: base form must be ternary");
    if (n % 8 != 3 || n < 3) throw std::domain_error("pad_witness: need n = 8s + 3");
    int s = (n - 3) / 8;
    HalfIntegralForm out = t1;
    for (int i = 0; i < s; ++i) out = quadform::direct_sum(out, quadform::gram_E8());
    return out;
}

}  // namespace siegelkit::witness
