#include "siegelkit/eisenstein.hpp"

#include "siegelkit/runtime.hpp"
#include "siegelkit/siegelseries.hpp"

#include <algorithm>
#include <stdexcept>

namespace siegelkit::eisenstein {

using exactnt::QuadCharacter;
using quadform::HalfIntegralForm;

Rat A_factor(int r, long k, const std::optional<QuadCharacter>& chi) {
    if (r < 0) throw std::domain_error("A_factor: negative rank");
    if (r == 0) return Rat(1);
    if (k % 2 != 0 || k <= r + 1) throw std::domain_error("A_factor: weight too small (need even k > r+1)");
    Rat acc = 1 / exactnt::zeta_neg(static_cast<unsigned long>(k));
    for (int i = 1; i <= r / 2; ++i) acc /= exactnt::zeta_neg(static_cast<unsigned long>(2 * k - 2 * i));
    if (r % 2 == 0) {
        if (!chi) throw std::domain_error("A_factor: chi required for even rank");
        acc *= Rat(int_pow(Int(2), static_cast<unsigned long>(r / 2)));
        acc *= exactnt::dirichlet_L_neg(*chi, static_cast<unsigned long>(k - r / 2));
    } else {
        acc *= Rat(int_pow(Int(2), static_cast<unsigned long>((r + 1) / 2)));
    }
    return acc;
}

Rat a_coeff(const HalfIntegralForm& T, int n, long k) {
    if (T.degree() != n) throw std::domain_error("a_coeff: degree mismatch");
    if (k % 2 != 0 || k <= n + 1) throw std::domain_error("a_coeff: weight too small (need even k > n+1)");

    quadform::SplitResult split = quadform::split_degenerate(T);
    int r = split.rank;
    if (r == 0) return Rat(1);
    if (r > 3) throw std::domain_error("a_coeff: rank > 3 unsupported");
    if (k <= r + 1) throw std::domain_error("a_coeff: weight too small for the nondegenerate part");

    std::optional<QuadCharacter> chi;
    if (r % 2 == 0) chi = quadform::chi_T(split.t1);
    Rat a = A_factor(r, k, chi);
    a *= siegelseries::local_factor_value(split.t1, k);
    return a;
}

long alpha_p(int n, long k, const Int& p) {
    if (n % 2 == 0 || n < 1) throw std::domain_error("alpha_p: n must be odd");
    if (!exactnt::is_prime(p) || p <= n) throw std::domain_error("alpha_p: need prime p > n");
    long base = (n + 1) / 2;
    Int pm1 = p - 1;
    Int num = Int(k) - base;
    if (num <= 0 || num % pm1 != 0) throw std::domain_error("alpha_p: k must be (n+1)/2 + (p-1)t, t >= 1");

    Rat inv = 1 / exactnt::zeta_neg(static_cast<unsigned long>(k));
    for (int i = 1; i <= (n - 1) / 2; ++i) inv /= exactnt::zeta_neg(static_cast<unsigned long>(2 * k - 2 * i));
    long a = ord_q(inv, p);
    if (a > 0) throw std::logic_error("alpha_p: positive valuation contradicts von Staudt-Clausen");
    return a;
}

Rat normalized_coeff(const HalfIntegralForm& T, int n, long k, const Int& p) {
    long a = alpha_p(n, k, p);
    Rat c = a_coeff(T, n, k) * Rat(int_pow(p, static_cast<unsigned long>(-a)));
    OrdResidue orr = ord_and_reduce(c, p);
    if (!orr.infinite && orr.ord < 0)
        throw std::logic_error("normalized_coeff: coefficient not p-integral (consistency failure)");
    return c;
}

QExpansion theta_op(const QExpansion& e) {
    QExpansion out = e;
    out.theta_applied = true;
    for (auto& [form, coeff] : out.terms) coeff *= form.det_t();
    return out;
}

QExpansion a_p_operator(const QExpansion& e, const Int& p) {
    QExpansion out = e;
    for (auto& [form, coeff] : out.terms) {
        OrdResidue oc = ord_and_reduce(coeff, p);
        if (!oc.infinite && oc.ord < 0) throw std::domain_error("a_p_operator: coefficient not p-integral");
        OrdResidue od = ord_and_reduce(form.det_t(), p);
        if (!od.infinite && !od.residue) throw std::domain_error("a_p_operator: det(T) not p-integral");
        // (1 - det^{p-1}) a(T) mod p; Fermat collapses the first factor to
        // 0 exactly when det is a p-adic unit.
        Int factor = (od.infinite || *od.residue == 0) ? Int(1) : Int(0);
        Int res = oc.infinite ? Int(0) : *oc.residue;
        coeff = Rat((factor * res) % p);
    }
    return out;
}

QExpansion build_eisenstein(int n, long k, const Int& bound, bool include_singular, const Int& p, bool normalized) {
    QExpansion e;
    e.degree = n;
    e.weight = k;
    e.bound = bound;
    Rat scale = 1;
    if (normalized) scale = Rat(int_pow(p, static_cast<unsigned long>(-alpha_p(n, k, p))));

    std::vector<HalfIntegralForm> forms;
    auto put = [&](const HalfIntegralForm& f) {
        HalfIntegralForm padded = f;
        if (f.degree() < n) {
            padded = quadform::direct_sum(f, HalfIntegralForm::zero(n - f.degree()));
        }
        forms.push_back(std::move(padded));
    };

    put(HalfIntegralForm::zero(n));
    if (include_singular && n > 1) {
        for (Int t = 1; t <= 8 && t <= bound; ++t) put(HalfIntegralForm::scalar(t));
        if (n > 2) {
            Int b2 = std::min(bound, Int(12));
            for (const auto& f : quadform::enumerate_reduced(2, b2)) put(f);
        }
    }
    for (const auto& f : quadform::enumerate_reduced(n, bound)) put(f);

    std::vector<Rat> values(forms.size());
    parallel_for(forms.size(), [&](std::size_t i) { values[i] = a_coeff(forms[i], n, k) * scale; });
    for (std::size_t i = 0; i < forms.size(); ++i) e.terms.emplace(forms[i], values[i]);
    return e;
}

namespace {

Evidence make_evidence(const HalfIntegralForm& f, const Rat& c, const Int& p) {
    Evidence ev;
    ev.form = f;
    ev.coefficient = c;
    OrdResidue o = ord_and_reduce(c, p);
    ev.p_integral = o.infinite || o.ord >= 0;
    ev.residue = (o.residue ? *o.residue : Int(0));
    ev.singular = (f.det_doubled() == 0);
    if (!ev.singular) ev.expected_zero = (quadform::D_of(f) % p != 0);
    return ev;
}

}  // namespace

VerificationReport verify_theorem_main1(const Int& p, long t, const Int& bound) {
    if (!exactnt::is_prime(p) || p <= 3) throw std::domain_error("verify_theorem_main1: need prime p > 3");
    if (t < 1) throw std::domain_error("verify_theorem_main1: need t >= 1");
    if (bound < p) throw std::domain_error("verify_theorem_main1: need bound >= p");

    VerificationReport rep;
    rep.theorem = "main1";
    rep.n = 3;
    rep.p = p;
    rep.t = t;
    rep.bound = bound;
    rep.k = 2 + (p.get_si() - 1) * t;
    rep.alpha = alpha_p(3, rep.k, p);

    QExpansion F = build_eisenstein(3, rep.k, bound, /*include_singular=*/true, p, /*normalized=*/true);
    rep.integrality_pass = true;
    rep.theta_kernel_pass = true;
    rep.essential_pass = false;
    for (const auto& [form, coeff] : F.terms) {
        Evidence ev = make_evidence(form, coeff, p);
        if (!ev.p_integral) rep.integrality_pass = false;
        if (ev.expected_zero && ev.residue != 0) rep.theta_kernel_pass = false;
        if (!ev.singular && !rep.essential_pass && quadform::D_of(form) == p && ev.residue != 0) {
            rep.essential_pass = true;
            rep.essential_form = form;
        }
        rep.evidence.push_back(std::move(ev));
    }
    // the explicit witness form is always included alongside the enumeration
    witness::WitnessRecord w = witness::ternary_witness(p);
    Rat c = normalized_coeff(w.form, 3, rep.k, p);
    Evidence ev = make_evidence(w.form, c, p);
    if (!ev.p_integral) rep.integrality_pass = false;
    if (ev.residue != 0 && !rep.essential_pass) {
        rep.essential_pass = true;
        rep.essential_form = w.form;
    }
    rep.witness_used = std::move(w);
    rep.evidence.push_back(std::move(ev));
    return rep;
}

VerificationReport verify_theorem_even(const Int& p, long t, const Int& bound) {
    if (!exactnt::is_prime(p) || p <= 5) throw std::domain_error("verify_theorem_even: need prime p > 5");
    Int pm4 = p % 4;
    if (pm4 != 3) throw std::domain_error("verify_theorem_even: need p = -1 mod 4");
    if (t < 1 || t % 2 == 0) throw std::domain_error("verify_theorem_even: need odd t >= 1");

    VerificationReport rep;
    rep.theorem = "even";
    rep.n = 2;
    rep.p = p;
    rep.t = t;
    rep.bound = bound;
    rep.k = 1 + t * (p.get_si() - 1) / 2;
    rep.alpha = 0;
    if (rep.k % 2 != 0 || rep.k <= 3) throw std::domain_error("verify_theorem_even: weight must be even and > n+1");

    QExpansion F = build_eisenstein(2, rep.k, bound, /*include_singular=*/true, p, /*normalized=*/false);
    rep.integrality_pass = true;
    rep.theta_kernel_pass = true;
    rep.essential_pass = false;
    for (const auto& [form, coeff] : F.terms) {
        Evidence ev = make_evidence(form, coeff, p);
        if (!ev.p_integral) rep.integrality_pass = false;
        if (ev.expected_zero && ev.residue != 0) rep.theta_kernel_pass = false;
        if (!ev.singular && !rep.essential_pass && quadform::D_of(form) % p == 0 && ev.residue != 0) {
            rep.essential_pass = true;
            rep.essential_form = form;
        }
        rep.evidence.push_back(std::move(ev));
    }
    if (!rep.essential_pass && bound < p) {
        // explicit D = p witness, valid for p = 3 mod 4
        HalfIntegralForm w(2, {Int(2), Int(1), Int(1), (p + 1) / 2});
        Evidence ev = make_evidence(w, a_coeff(w, 2, rep.k), p);
        if (!ev.p_integral) rep.integrality_pass = false;
        if (ev.residue != 0) {
            rep.essential_pass = true;
            rep.essential_form = w;
        }
        rep.evidence.push_back(std::move(ev));
    }
    return rep;
}

}  // namespace siegelkit::eisenstein
