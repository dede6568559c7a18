#include "siegelkit/eisenstein.hpp"
#include "siegelkit/runtime.hpp"

#include <doctest.h>

using namespace siegelkit;
using namespace siegelkit::eisenstein;
using quadform::HalfIntegralForm;
using exactnt::QuadCharacter;

namespace {

HalfIntegralForm form3(long a, long b, long c, long d, long e, long f) {
    return HalfIntegralForm(3, {Int(a), Int(b), Int(c), Int(b), Int(d), Int(e), Int(c), Int(e), Int(f)});
}

HalfIntegralForm form2(long a, long b, long d) {
    return HalfIntegralForm(2, {Int(a), Int(b), Int(b), Int(d)});
}

Int sigma_power(long k, long t) {
    Int s = 0;
    for (long d = 1; d <= t; ++d)
        if (t % d == 0) s += int_pow(Int(d), static_cast<unsigned long>(k));
    return s;
}

}  // namespace

TEST_CASE("A_factor examples") {
    CHECK(A_factor(0, 4, std::nullopt) == 1);
    CHECK(A_factor(3, 6, std::nullopt) == 133056);
    CHECK(A_factor(1, 12, std::nullopt) == rat_from_string("65520/691"));
    CHECK_THROWS_AS(A_factor(3, 4, std::nullopt), std::domain_error);
    CHECK_THROWS_AS(A_factor(2, 6, std::nullopt), std::domain_error);  // chi required
}

TEST_CASE("degree-1 anchor: classical Eisenstein coefficients") {
    for (long k : {4L, 6L, 8L, 10L, 12L}) {
        Rat factor = 2 / exactnt::zeta_neg(static_cast<unsigned long>(k));
        for (long t = 1; t <= 20; ++t) {
            Rat got = a_coeff(HalfIntegralForm::scalar(Int(t)), 1, k);
            CHECK(got == factor * Rat(sigma_power(k - 1, t)));
        }
    }
}

TEST_CASE("degree-2 classical values") {
    // classical table values for E_4 of degree 2
    CHECK(a_coeff(form2(2, 0, 2), 2, 4) == 30240);
    CHECK(a_coeff(form2(2, 1, 2), 2, 4) == 13440);
    CHECK(a_coeff(HalfIntegralForm::zero(2), 2, 4) == 1);
    // rank-1 singular inside degree 2 reduces to the elliptic coefficient
    HalfIntegralForm rank1 = quadform::direct_sum(HalfIntegralForm::scalar(Int(3)), HalfIntegralForm::zero(1));
    CHECK(a_coeff(rank1, 2, 4) == a_coeff(HalfIntegralForm::scalar(Int(3)), 1, 4));
}

TEST_CASE("ternary value composing the table entry") {
    CHECK(a_coeff(form3(2, 1, 1, 2, 0, 2), 3, 6) == -1995840);
}

TEST_CASE("alpha_p") {
    CHECK(alpha_p(3, 6, Int(5)) == 0);
    long a7 = alpha_p(3, 8, Int(7));
    CHECK(a7 <= 0);
    {
        Rat v = (1 / exactnt::zeta_neg(8)) / exactnt::zeta_neg(14);
        CHECK(a7 == ord_q(v, Int(7)));
    }
    for (long p : {5L, 7L, 11L, 13L})
        for (long t = 1; t <= 2; ++t) CHECK(alpha_p(3, 2 + (p - 1) * t, Int(p)) <= 0);
    CHECK_THROWS_AS(alpha_p(3, 7, Int(5)), std::domain_error);
    CHECK_THROWS_AS(alpha_p(2, 6, Int(5)), std::domain_error);
}

TEST_CASE("normalized_coeff spec examples") {
    CHECK(normalized_coeff(HalfIntegralForm::zero(3), 3, 6, Int(5)) == 1);
    Rat c = normalized_coeff(form3(2, 1, 1, 2, 0, 2), 3, 6, Int(5));
    CHECK(c == -1995840);
    auto o = ord_and_reduce(c, Int(5));
    CHECK(o.ord == 1);
    CHECK(*o.residue == 0);
}

TEST_CASE("theta operator and A(p)") {
    QExpansion e = build_eisenstein(3, 6, Int(6), /*include_singular=*/true, Int(5), /*normalized=*/true);
    QExpansion th = theta_op(e);
    CHECK(th.theta_applied);
    CHECK(th.terms.at(HalfIntegralForm::zero(3)) == 0);
    for (const auto& [form, coeff] : th.terms) CHECK(coeff == e.terms.at(form) * form.det_t());

    // if Theta(E) = 0 mod p then E|A(p) = E mod p coefficientwise
    QExpansion ap = a_p_operator(e, Int(5));
    for (const auto& [form, coeff] : ap.terms) {
        auto oc = ord_and_reduce(e.terms.at(form), Int(5));
        CHECK(coeff == Rat(*oc.residue));
    }
}

TEST_CASE("Phi consistency: singular forms assembled both ways") {
    for (long k : {6L, 8L}) {
        for (const auto& core : quadform::enumerate_reduced(2, Int(8))) {
            HalfIntegralForm padded = quadform::direct_sum(core, HalfIntegralForm::zero(1));
            CHECK(a_coeff(padded, 3, k) == a_coeff(core, 2, k));
        }
        for (long t = 1; t <= 5; ++t) {
            HalfIntegralForm padded = quadform::direct_sum(HalfIntegralForm::scalar(Int(t)), HalfIntegralForm::zero(2));
            CHECK(a_coeff(padded, 3, k) == a_coeff(HalfIntegralForm::scalar(Int(t)), 1, k));
        }
    }
}

TEST_CASE("verify_theorem_main1 quick run (p=5)") {
    VerificationReport rep = verify_theorem_main1(Int(5), 1, Int(10));
    CHECK(rep.k == 6);
    CHECK(rep.alpha == 0);
    CHECK(rep.integrality_pass);
    CHECK(rep.theta_kernel_pass);
    CHECK(rep.essential_pass);
    REQUIRE(rep.essential_form.has_value());
    CHECK(quadform::D_of(*rep.essential_form) == 5);
    CHECK(rep.pass());
    CHECK_THROWS_AS(verify_theorem_main1(Int(5), 1, Int(3)), std::domain_error);
    CHECK_THROWS_AS(verify_theorem_main1(Int(4), 1, Int(10)), std::domain_error);
}

TEST_CASE("verify_theorem_even quick run (p=7, k=4)") {
    VerificationReport rep = verify_theorem_even(Int(7), 1, Int(15));
    CHECK(rep.k == 4);
    CHECK(rep.integrality_pass);
    CHECK(rep.theta_kernel_pass);
    CHECK(rep.essential_pass);
    CHECK(rep.pass());
    CHECK_THROWS_AS(verify_theorem_even(Int(5), 1, Int(15)), std::domain_error);   // p > 5 required
    CHECK_THROWS_AS(verify_theorem_even(Int(13), 1, Int(15)), std::domain_error);  // p = 1 mod 4
    CHECK_THROWS_AS(verify_theorem_even(Int(7), 2, Int(15)), std::domain_error);   // t odd
}

TEST_CASE("expansion is independent of the worker count") {
    set_thread_hint(1);
    QExpansion a = build_eisenstein(3, 6, Int(8), true, Int(5), true);
    set_thread_hint(3);
    QExpansion b = build_eisenstein(3, 6, Int(8), true, Int(5), true);
    set_thread_hint(1);
    REQUIRE(a.terms.size() == b.terms.size());
    for (const auto& [form, coeff] : a.terms) CHECK(b.terms.at(form) == coeff);
}

TEST_CASE("verdicts are functions of the evidence alone") {
    auto recheck = [](const VerificationReport& rep, bool essential_at_multiple) {
        bool integ = true, kernel = true, essential = false;
        for (const auto& ev : rep.evidence) {
            if (!ev.p_integral) integ = false;
            if (ev.expected_zero && ev.residue != 0) kernel = false;
            if (!ev.singular && ev.residue != 0) {
                Int D = quadform::D_of(ev.form);
                if (essential_at_multiple ? (D % rep.p == 0) : (D == rep.p)) essential = true;
            }
        }
        CHECK(integ == rep.integrality_pass);
        CHECK(kernel == rep.theta_kernel_pass);
        CHECK(essential == rep.essential_pass);
    };
    recheck(verify_theorem_main1(Int(5), 1, Int(8)), false);
    recheck(verify_theorem_even(Int(7), 1, Int(15)), true);
}

TEST_CASE("second theorem parameter t") {
    VerificationReport rep = verify_theorem_main1(Int(5), 2, Int(8));
    CHECK(rep.k == 10);
    CHECK(rep.pass());
}
