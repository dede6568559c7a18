#include "siegelkit/quadform.hpp"

#include <doctest.h>

#include <random>

using namespace siegelkit;
using namespace siegelkit::quadform;
using exactnt::prime_divisors;

namespace {

HalfIntegralForm form3(long a, long b, long c, long d, long e, long f) {
    // doubled entries: [[a,b,c],[b,d,e],[c,e,f]]
    return HalfIntegralForm(3, {Int(a), Int(b), Int(c), Int(b), Int(d), Int(e), Int(c), Int(e), Int(f)});
}

HalfIntegralForm form2(long a, long b, long d) {
    return HalfIntegralForm(2, {Int(a), Int(b), Int(b), Int(d)});
}

// 2-adic solvability oracle for (a,b)_2: a primitive solution of
// z^2 = a x^2 + b y^2 mod 2^6 exists iff the symbol is +1.
int hilbert2_oracle(long a, long b) {
    const long M = 64;
    for (long x = 0; x < M; ++x)
        for (long y = 0; y < M; ++y)
            for (long z = 0; z < M; ++z) {
                if (x % 2 == 0 && y % 2 == 0 && z % 2 == 0) continue;
                long v = ((a * x * x + b * y * y - z * z) % M + M) % M;
                if (v == 0) return 1;
            }
    return -1;
}

std::vector<Int> random_unimodular(int n, std::mt19937_64& rng) {
    // product of a few elementary transvections
    std::vector<Int> u(static_cast<size_t>(n) * n, Int(0));
    for (int i = 0; i < n; ++i) u[static_cast<size_t>(i) * n + i] = 1;
    auto mulstep = [&](int i, int j, long c) {  // col_j += c * col_i
        for (int r = 0; r < n; ++r) u[static_cast<size_t>(r) * n + j] += Int(c) * u[static_cast<size_t>(r) * n + i];
    };
    for (int s = 0; s < 6; ++s) {
        int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
        if (i == j) continue;
        mulstep(i, j, static_cast<long>(rng() % 5) - 2);
    }
    return u;
}

HalfIntegralForm transform(const HalfIntegralForm& T, const std::vector<Int>& u) {
    int n = T.degree();
    std::vector<Int> gu(static_cast<size_t>(n) * n, Int(0)), out(static_cast<size_t>(n) * n, Int(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Int s = 0;
            for (int k = 0; k < n; ++k) s += T.g(i, k) * u[static_cast<size_t>(k) * n + j];
            gu[static_cast<size_t>(i) * n + j] = s;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Int s = 0;
            for (int k = 0; k < n; ++k) s += u[static_cast<size_t>(k) * n + i] * gu[static_cast<size_t>(k) * n + j];
            out[static_cast<size_t>(i) * n + j] = s;
        }
    return HalfIntegralForm(n, std::move(out));
}

}  // namespace

TEST_CASE("determinants, D and C") {
    HalfIntegralForm id3(3, {Int(2), Int(0), Int(0), Int(0), Int(2), Int(0), Int(0), Int(0), Int(2)});
    CHECK(id3.det_t() == 1);

    HalfIntegralForm w2 = form3(2, 1, 1, 2, 0, 2);
    CHECK(w2.det_t() == Rat(1, 2));
    CHECK(D_of(w2) == 2);
    CHECK(C_of(w2) == 2);

    HalfIntegralForm b = form2(2, 1, 12);
    CHECK(b.det_t() == Rat(23, 4));
    CHECK(D_of(b) == 23);
    CHECK(chi_T(b).discriminant() == -23);

    HalfIntegralForm id2 = form2(2, 0, 2);
    CHECK(D_of(id2) == 4);
    CHECK(chi_T(id2).discriminant() == -4);
    CHECK(C_of(id2) == 1);

    CHECK(D_of(HalfIntegralForm::scalar(Int(7))) == 7);

    HalfIntegralForm split_case = form2(2, 0, -2);
    CHECK(chi_T(split_case).is_trivial());
}

TEST_CASE("positive definiteness") {
    CHECK(is_positive_definite(form3(2, 0, 0, 2, 0, 2)));
    CHECK_FALSE(is_positive_definite(form2(2, 1, 0)));
    CHECK(is_positive_definite(form3(14, -2, -4, 2, 3, 6)));

    // agreement with an exhaustive minimum-vector search on enumerated forms
    for (const auto& f : enumerate_reduced(3, Int(15))) {
        bool pd = true;
        for (long x = -3; x <= 3 && pd; ++x)
            for (long y = -3; y <= 3 && pd; ++y)
                for (long z = -3; z <= 3 && pd; ++z) {
                    if (x == 0 && y == 0 && z == 0) continue;
                    Int v = f.g(0, 0) * x * x + f.g(1, 1) * y * y + f.g(2, 2) * z * z +
                            2 * (f.g(0, 1) * x * y + f.g(0, 2) * x * z + f.g(1, 2) * y * z);
                    if (v <= 0) pd = false;
                }
        CHECK(pd == is_positive_definite(f));
    }
}

TEST_CASE("rational diagonalization") {
    auto d1 = rational_diagonalization(form3(2, 0, 0, 2, 0, 2));
    CHECK(d1 == std::vector<Int>{Int(1), Int(1), Int(1)});

    auto d2 = rational_diagonalization(form2(0, 1, 0));  // hyperbolic plane
    REQUIRE(d2.size() == 2);
    CHECK(exactnt::squarefree_part(Int(d2[0] * d2[1])) == -1);

    auto d3 = rational_diagonalization(form2(2, 1, 2));
    CHECK(d3 == std::vector<Int>{Int(1), Int(3)});
}

TEST_CASE("hilbert symbol spec examples and 2-adic oracle") {
    CHECK(hilbert_symbol(Int(-1), Int(-1), PlaceTag::infinity()) == -1);
    CHECK(hilbert_symbol(Int(-1), Int(-1), PlaceTag::at(Int(2))) == -1);
    CHECK(hilbert_symbol(Int(-5), Int(-4), PlaceTag::at(Int(2))) == -1);

    for (long a : {-6, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 6, 7, 10})
        for (long b : {-6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7}) {
            INFO("a=", a, " b=", b);
            CHECK(hilbert_symbol(Int(a), Int(b), PlaceTag::at(Int(2))) == hilbert2_oracle(a, b));
        }
}

TEST_CASE("hilbert product formula on random pairs") {
    std::mt19937_64 rng(2024);
    int done = 0;
    while (done < 200) {
        long a = static_cast<long>(rng() % 101) - 50;
        long b = static_cast<long>(rng() % 101) - 50;
        if (a == 0 || b == 0) continue;
        int prod = hilbert_symbol(Int(a), Int(b), PlaceTag::infinity());
        for (const Int& q : prime_divisors(Int(2 * a * b))) prod *= hilbert_symbol(Int(a), Int(b), PlaceTag::at(q));
        CHECK(prod == 1);
        ++done;
    }
}

TEST_CASE("hasse invariant independent of diagonalization") {
    std::mt19937_64 rng(7);
    std::vector<HalfIntegralForm> pool = enumerate_reduced(3, Int(12));
    auto pool2 = enumerate_reduced(2, Int(12));
    pool.insert(pool.end(), pool2.begin(), pool2.end());
    pool.push_back(form2(0, 1, 0));  // indefinite
    pool.push_back(direct_sum(form2(2, 1, 4), form2(2, 0, 6)));  // degree 4
    int trials = 0;
    while (trials < 100) {
        const HalfIntegralForm& T = pool[rng() % pool.size()];
        HalfIntegralForm T2 = transform(T, random_unimodular(T.degree(), rng));
        for (long q : {2, 3, 5, 7, 23})
            CHECK(hasse_invariant(T, PlaceTag::at(Int(q))) == hasse_invariant(T2, PlaceTag::at(Int(q))));
        CHECK(hasse_invariant(T, PlaceTag::infinity()) == hasse_invariant(T2, PlaceTag::infinity()));
        ++trials;
    }

    // golden values freezing the i <= j convention
    CHECK(hasse_invariant(form3(2, 0, 0, 2, 0, 2), PlaceTag::at(Int(5))) == 1);
    CHECK(hasse_invariant(form2(0, 1, 0), PlaceTag::at(Int(2))) == -1);  // (1,-1)(1,1)(-1,-1)
    HalfIntegralForm mixed(3, {Int(2), Int(0), Int(0), Int(0), Int(2), Int(0), Int(0), Int(0), Int(-2)});
    CHECK(hasse_invariant(mixed, PlaceTag::infinity()) == -1);  // lone (-1,-1) factor
}

TEST_CASE("eta values and product formula") {
    HalfIntegralForm w2 = form3(2, 1, 1, 2, 0, 2);
    CHECK(eta(w2, PlaceTag::infinity()) == -1);
    CHECK(eta(w2, PlaceTag::at(Int(2))) == -1);
    CHECK(eta(w2, PlaceTag::at(Int(5))) == 1);
    CHECK_THROWS_AS(eta(form2(2, 0, 2), PlaceTag::infinity()), std::domain_error);

    for (const auto& T : enumerate_reduced(3, Int(20))) {
        CHECK(eta(T, PlaceTag::infinity()) == -1);  // n=3, T>0
        int prod = -1;
        for (const Int& q : prime_divisors(2 * D_of(T))) prod *= eta(T, PlaceTag::at(q));
        CHECK(prod == 1);
        for (long q : {29, 31})
            if (D_of(T) % q != 0) CHECK(eta(T, PlaceTag::at(Int(q))) == 1);
    }
}

TEST_CASE("enumeration") {
    auto e1 = enumerate_reduced(3, Int(2));
    bool has_d2 = false;
    for (const auto& f : e1) has_d2 = has_d2 || D_of(f) == 2;
    CHECK(has_d2);

    CHECK(enumerate_reduced(3, Int(1)).empty());

    auto e2 = enumerate_reduced(2, Int(3));
    bool has_d3 = false;
    for (const auto& f : e2) {
        CHECK(D_of(f) <= 3);
        has_d3 = has_d3 || f == form2(2, 1, 2);
    }
    CHECK(has_d3);

    CHECK_THROWS_AS(enumerate_reduced(4, Int(5)), std::domain_error);

    auto e3 = enumerate_reduced(3, Int(13));
    auto e4 = enumerate_reduced(3, Int(13));
    REQUIRE(e3.size() == e4.size());
    for (size_t i = 0; i < e3.size(); ++i) CHECK(e3[i] == e4[i]);
}

TEST_CASE("split_degenerate") {
    HalfIntegralForm t1 = form2(2, 1, 4);
    HalfIntegralForm padded = direct_sum(t1, HalfIntegralForm::zero(1));
    auto s1 = split_degenerate(padded);
    CHECK(s1.rank == 2);
    CHECK(D_of(s1.t1) == D_of(t1));

    auto s2 = split_degenerate(HalfIntegralForm(2, {Int(2), Int(2), Int(2), Int(2)}));
    CHECK(s2.rank == 1);
    CHECK(s2.t1 == HalfIntegralForm::scalar(Int(1)));

    auto s3 = split_degenerate(HalfIntegralForm::zero(3));
    CHECK(s3.rank == 0);

    CHECK_THROWS_AS(split_degenerate(form2(2, 0, -2)), std::domain_error);

    // round trip: G[U] equals G1 (+) 0 exactly
    std::mt19937_64 rng(11);
    auto base = enumerate_reduced(2, Int(10));
    for (int trial = 0; trial < 40; ++trial) {
        const auto& core = base[rng() % base.size()];
        HalfIntegralForm T = transform(direct_sum(core, HalfIntegralForm::zero(2)), random_unimodular(4, rng));
        auto s = split_degenerate(T);
        CHECK(s.rank == 2);
        HalfIntegralForm expect = direct_sum(s.t1, HalfIntegralForm::zero(2));
        CHECK(transform(T, s.U) == expect);
        CHECK(D_of(s.t1) == D_of(core));
    }
}

TEST_CASE("direct sum and E8 block") {
    HalfIntegralForm e8 = gram_E8();
    CHECK(e8.det_doubled() == 1);
    CHECK(is_positive_definite(e8));
    for (int i = 0; i < 8; ++i) CHECK(e8.g(i, i) == 2);

    HalfIntegralForm t1 = form3(2, 1, 1, 2, 0, 2);
    HalfIntegralForm padded = direct_sum(t1, e8);
    CHECK(padded.degree() == 11);
    CHECK(D_of(padded) == D_of(t1));
    CHECK(direct_sum(t1, HalfIntegralForm::zero(0)) == t1);
}

TEST_CASE("text round trip") {
    HalfIntegralForm w = form3(14, -2, -4, 2, 3, 6);
    CHECK(w.to_text() == "3 14 -2 -4 2 3 6");
    CHECK(HalfIntegralForm::from_text(w.to_text()) == w);
    CHECK(HalfIntegralForm::from_text("1 14") == HalfIntegralForm::scalar(Int(7)));
    CHECK_THROWS_AS(HalfIntegralForm::from_text("2 2 1"), std::domain_error);
    CHECK_THROWS_AS(HalfIntegralForm(2, {Int(1), Int(0), Int(0), Int(2)}), std::domain_error);
}
