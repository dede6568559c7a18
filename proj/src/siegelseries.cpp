#include "siegelkit/siegelseries.hpp"

#include "siegelkit/exactnt.hpp"

#include <json.hpp>

#include <unistd.h>

#include <atomic>

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>

namespace siegelkit::siegelseries {

using quadform::HalfIntegralForm;

Rat LocalPolynomial::eval(const Rat& x) const {
    Rat acc = 0;
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + Rat(coeffs[i]);
    return acc;
}

namespace {

long long pow_ll(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

int ord_ll(long long x, long long q) {
    // valuation of x != 0
    int v = 0;
    while (x % q == 0) {
        x /= q;
        ++v;
    }
    return v;
}

// ---------------------------------------------------------------------------
// Grouped evaluation of the character sum.
//
// The sigma-sum  #X * q^{nu n(n+1)/2} = sum_sigma e(-<sigma,T>/q^nu)
// (q^{nu n} N_nu(sigma))^k  is regrouped by the kernel of sigma: writing
// N^k as the number of k-tuples of kernel vectors and collecting tuples by
// the submodule L they generate,
//
//   alpha(k) = q^{-nu n k} * sum_L c_k(L) * U(L),
//
// where c_k(L) = |L|^k prod_{i<rank L}(1 - q^{i-k}) counts generating
// k-tuples and U(L) = |{sigma : sigma L = 0}| when the character
// sigma -> e(<sigma,T>/q^nu) is trivial on that subgroup, else 0.
// Both factors depend only on the elementary-divisor exponents f_i of the
// lattice q^nu Z^n <= Lambda <= Z^n attached to L, so submodules are
// enumerated once per nu and bucketed by sorted exponent profile.
// Triviality test: with Lambda = U diag(q^{f_i}) Z^n and G' = U^{-1} G U^{-t},
// U(L) != 0  iff  ord_q(G'_ii / 2) >= f_i and ord_q(G'_ij) >= min(f_i, f_j).
// ---------------------------------------------------------------------------

struct i64_overflow : std::exception {};

inline long long checked_mul(long long a, long long b) {
    __int128 p = static_cast<__int128>(a) * b;
    if (p > static_cast<__int128>(INT64_MAX) || p < static_cast<__int128>(INT64_MIN)) throw i64_overflow{};
    return static_cast<long long>(p);
}

// Diagonalize W by unimodular row/column operations, tracking only the row
// transform R (W := R * W_in * C). Column transforms never enter the
// lattice description Lambda = R^{-1} diag Z^n.
template <class ZZ>
void diagonalize_rows_tracked(ZZ W[3][3], ZZ R[3][3], int n) {
    constexpr bool kSmall = std::is_same_v<ZZ, long long>;
    auto zabs = [](const ZZ& x) { return x < 0 ? ZZ(-x) : x; };
    for (int t = 0; t < n; ++t) {
        for (;;) {
            int pi = -1, pj = -1;
            for (int i = t; i < n; ++i)
                for (int j = t; j < n; ++j)
                    if (W[i][j] != 0 && (pi < 0 || zabs(W[i][j]) < zabs(W[pi][pj]))) pi = i, pj = j;
            if (pi < 0) throw std::logic_error("diagonalize: singular lattice basis");
            if (pi != t)
                for (int c = 0; c < 3; ++c) std::swap(W[t][c], W[pi][c]), std::swap(R[t][c], R[pi][c]);
            if (pj != t)
                for (int r = 0; r < 3; ++r) std::swap(W[r][t], W[r][pj]);
            bool clean = true;
            for (int i = t + 1; i < n; ++i) {
                if (W[i][t] == 0) continue;
                ZZ q;
                if constexpr (kSmall) {
                    q = W[i][t] / W[t][t];
                } else {
                    mpz_tdiv_q(q.get_mpz_t(), W[i][t].get_mpz_t(), W[t][t].get_mpz_t());
                }
                if (q != 0)
                    for (int c = 0; c < 3; ++c) {
                        if constexpr (kSmall) {
                            W[i][c] -= checked_mul(q, W[t][c]);
                            R[i][c] -= checked_mul(q, R[t][c]);
                        } else {
                            W[i][c] -= q * W[t][c];
                            R[i][c] -= q * R[t][c];
                        }
                    }
                if (W[i][t] != 0) clean = false;
            }
            for (int j = t + 1; j < n; ++j) {
                if (W[t][j] == 0) continue;
                ZZ q;
                if constexpr (kSmall) {
                    q = W[t][j] / W[t][t];
                } else {
                    mpz_tdiv_q(q.get_mpz_t(), W[t][j].get_mpz_t(), W[t][t].get_mpz_t());
                }
                if (q != 0)
                    for (int r = 0; r < n; ++r) {
                        if constexpr (kSmall)
                            W[r][j] -= checked_mul(q, W[r][t]);
                        else
                            W[r][j] -= q * W[r][t];
                    }
                if (W[t][j] != 0) clean = false;
            }
            if (clean) break;
        }
    }
}

// Sorted elementary-divisor exponents of the valid lattice, or nullopt when
// the character is nontrivial on H_L.
template <class ZZ>
std::optional<std::array<int, 3>> lattice_profile(const ZZ H[3][3], int n, long long q, const ZZ G[3][3]) {
    ZZ W[3][3], R[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) W[i][j] = H[i][j], R[i][j] = ZZ(i == j ? 1 : 0);
    diagonalize_rows_tracked(W, R, n);

    int f[3] = {0, 0, 0};
    for (int i = 0; i < n; ++i) {
        ZZ d = W[i][i] < 0 ? ZZ(-W[i][i]) : W[i][i];
        long long dv;
        if constexpr (std::is_same_v<ZZ, long long>)
            dv = d;
        else {
            if (!d.fits_slong_p()) throw std::logic_error("lattice_profile: diagonal too large");
            dv = d.get_si();
        }
        f[i] = ord_ll(dv, q);
        if (pow_ll(q, f[i]) != dv) throw std::logic_error("lattice_profile: diagonal not a q-power");
    }

    // G' = R G R^t, checked entrywise against the triviality conditions.
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            int need = std::min(f[i], f[j]);
            if (need == 0) continue;
            // row_i * G * row_j
            if constexpr (std::is_same_v<ZZ, long long>) {
                __int128 acc = 0;
                for (int a = 0; a < n; ++a) {
                    __int128 s = 0;
                    for (int b = 0; b < n; ++b) s += static_cast<__int128>(G[a][b]) * R[j][b];
                    acc += static_cast<__int128>(R[i][a]) * s;
                }
                __int128 val = (i == j) ? acc / 2 : acc;  // diagonal of G' is even
                if (i == j && acc % 2 != 0) throw std::logic_error("lattice_profile: odd diagonal");
                if (val != 0) {
                    long long qq = q;
                    int v = 0;
                    __int128 t = val < 0 ? -val : val;
                    while (v < need && t % qq == 0) t /= qq, ++v;
                    if (v < need) return std::nullopt;
                } // val == 0 passes every condition
            } else {
                ZZ acc = 0;
                for (int a = 0; a < n; ++a) {
                    ZZ s = 0;
                    for (int b = 0; b < n; ++b) s += G[a][b] * R[j][b];
                    acc += R[i][a] * s;
                }
                ZZ val = (i == j) ? ZZ(acc / 2) : acc;
                if (i == j && acc % 2 != 0) throw std::logic_error("lattice_profile: odd diagonal");
                if (val != 0 && ord_p(Int(val), Int(static_cast<long>(q))) < need) return std::nullopt;
            }
        }
    std::array<int, 3> prof{-1, -1, -1};
    for (int i = 0; i < n; ++i) prof[static_cast<size_t>(i)] = f[i];
    std::sort(prof.begin(), prof.begin() + n);
    return prof;
}

using ProfileCounts = std::map<std::array<int, 3>, Int>;

void tally(ProfileCounts& pc, const std::optional<std::array<int, 3>>& prof, long mult = 1) {
    if (prof) pc[*prof] += mult;
}

// Enumerate the column-Hermite bases of all lattices q^nu Z^n <= Lambda <= Z^n
// and bucket the ones passing the character-triviality test by exponent
// profile. The divisibility constraints on the off-diagonal entries encode
// q^nu H^{-1} integral, so each lattice appears exactly once.
ProfileCounts profile_counts(const HalfIntegralForm& T, long long q, int nu) {
    int n = T.degree();
    long long G64[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    Int Gbig[3][3];
    bool small_ok = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Gbig[i][j] = T.g(i, j);
            if (!Gbig[i][j].fits_slong_p() || abs(Gbig[i][j]) > (Int(1) << 40)) small_ok = false;
            else G64[i][j] = Gbig[i][j].get_si();
        }

    auto profile_of = [&](const long long H[3][3]) -> std::optional<std::array<int, 3>> {
        if (small_ok) {
            try {
                return lattice_profile<long long>(H, n, q, G64);
            } catch (const i64_overflow&) {
                // fall through to exact arithmetic
            }
        }
        Int Hbig[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) Hbig[i][j] = static_cast<long>(H[i][j]);
        return lattice_profile<Int>(Hbig, n, q, Gbig);
    };

    ProfileCounts pc;
    if (n == 1) {
        for (int f = 0; f <= nu; ++f) {
            long long H[3][3] = {{pow_ll(q, f), 0, 0}, {0, 1, 0}, {0, 0, 1}};
            tally(pc, profile_of(H));
        }
        return pc;
    }
    if (n == 2) {
        for (int f1 = 0; f1 <= nu; ++f1)
            for (int f2 = 0; f2 <= nu; ++f2) {
                long long a = pow_ll(q, f1), d = pow_ll(q, f2);
                long long bstep = pow_ll(q, std::max(0, f1 + f2 - nu));
                for (long long b = 0; b < a; b += bstep) {
                    long long H[3][3] = {{a, b, 0}, {0, d, 0}, {0, 0, 1}};
                    tally(pc, profile_of(H));
                }
            }
        return pc;
    }
    // n == 3
    for (int f1 = 0; f1 <= nu; ++f1)
        for (int f2 = 0; f2 <= nu; ++f2)
            for (int f3 = 0; f3 <= nu; ++f3) {
                long long a = pow_ll(q, f1), d = pow_ll(q, f2), g = pow_ll(q, f3);
                long long bstep = pow_ll(q, std::max(0, f1 + f2 - nu));
                long long estep = pow_ll(q, std::max(0, f2 + f3 - nu));
                int m = std::max(0, f1 + f2 + f3 - nu);
                long long qm = pow_ll(q, m);
                for (long long b = 0; b < a; b += bstep)
                    for (long long e = 0; e < d; e += estep) {
                        __int128 be = static_cast<__int128>(b) * e;
                        if (m <= f2) {
                            // c * q^{f2} = 0 mod q^m always; need q^m | b e
                            if (qm != 1 && be % qm != 0) continue;
                            for (long long c = 0; c < a; ++c) {
                                long long H[3][3] = {{a, b, c}, {0, d, e}, {0, 0, g}};
                                tally(pc, profile_of(H));
                            }
                        } else {
                            long long qf2 = d;
                            if (be % qf2 != 0) continue;
                            long long rhs = static_cast<long long>(be / qf2);
                            long long mod = pow_ll(q, m - f2);  // m - f2 <= f1
                            long long c0 = rhs % mod;
                            if (c0 < 0) c0 += mod;
                            for (long long c = c0; c < a; c += mod) {
                                long long H[3][3] = {{a, b, c}, {0, d, e}, {0, 0, g}};
                                tally(pc, profile_of(H));
                            }
                        }
                    }
            }
    return pc;
}

Rat alpha_from_profiles(const ProfileCounts& pc, int n, const Int& q, int k, int nu) {
    Int total = 0;
    for (const auto& [prof, cnt] : pc) {
        int h = 0, sum_g = 0, rank = 0;
        for (int i = 0; i < n; ++i) {
            int g = nu - prof[static_cast<size_t>(i)];
            sum_g += g;
            if (g > 0) ++rank;
            for (int j = i; j < n; ++j) h += std::min(prof[static_cast<size_t>(i)], prof[static_cast<size_t>(j)]);
        }
        // c_k(L) = q^{k(sum g_i - r)} prod_{i<r} (q^k - q^i)
        Int term = int_pow(q, static_cast<unsigned long>(k) * static_cast<unsigned long>(sum_g - rank));
        Int qk = int_pow(q, static_cast<unsigned long>(k));
        for (int i = 0; i < rank; ++i) term *= qk - int_pow(q, static_cast<unsigned long>(i));
        term *= int_pow(q, static_cast<unsigned long>(h));
        total += cnt * term;
    }
    Rat alpha(total);
    alpha /= Rat(int_pow(q, static_cast<unsigned long>(nu) * static_cast<unsigned long>(n) * static_cast<unsigned long>(k)));
    return alpha;
}

void check_density_args(const HalfIntegralForm& T, const Int& q, int k, int nu) {
    int n = T.degree();
    if (n < 1 || n > 3) throw std::domain_error("local density: rank must be 1..3");
    if (k <= n) throw std::domain_error("local density: need k > n");
    if (nu < 1) throw std::domain_error("local density: need nu >= 1");
    if (!exactnt::is_prime(q)) throw std::domain_error("local density: q must be prime");
    if (T.det_doubled() == 0) throw std::domain_error("local density: degenerate form");
}

}  // namespace

Rat local_density_hyperbolic(const HalfIntegralForm& T, const Int& q, int k, int nu) {
    check_density_args(T, q, k, nu);
    if (!q.fits_slong_p()) throw std::domain_error("local density: prime too large");
    ProfileCounts pc = profile_counts(T, q.get_si(), nu);
    return alpha_from_profiles(pc, T.degree(), q, k, nu);
}

// ---------------------------------------------------------------------------
// Literal paths, kept as oracles.

Rat local_density_direct(const HalfIntegralForm& T, const Int& q, int k, int nu) {
    check_density_args(T, q, k, nu);
    int n = T.degree();
    long long Q = int_pow(q, static_cast<unsigned long>(nu)).get_si();
    double volume = std::pow(static_cast<double>(Q), 2.0 * k * n);
    if (volume > 6e7) throw std::domain_error("local_density_direct: enumeration too large");

    int rows = 2 * k;
    std::vector<long long> G(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G[static_cast<size_t>(i) * n + j] = T.g(i, j).get_si();

    // Columns chosen one at a time; the Lambda_n congruence is checked on
    // every pair involving the newest column.
    std::vector<std::vector<long long>> cols(static_cast<size_t>(n), std::vector<long long>(static_cast<size_t>(rows), 0));
    long long count = 0;
    auto spairing = [&](const std::vector<long long>& u, const std::vector<long long>& v) {
        long long s = 0;
        for (int a = 0; a < k; ++a) s += u[static_cast<size_t>(2 * a)] * v[static_cast<size_t>(2 * a + 1)] + u[static_cast<size_t>(2 * a + 1)] * v[static_cast<size_t>(2 * a)];
        return s;
    };
    std::function<void(int)> rec = [&](int j) {
        if (j == n) {
            ++count;
            return;
        }
        auto& x = cols[static_cast<size_t>(j)];
        std::fill(x.begin(), x.end(), 0LL);
        for (;;) {
            // diagonal condition: S[x]/2 = t_jj mod Q
            long long half = 0;
            for (int a = 0; a < k; ++a) half += x[static_cast<size_t>(2 * a)] * x[static_cast<size_t>(2 * a + 1)];
            if (((half - G[static_cast<size_t>(j) * n + j] / 2) % Q + Q) % Q == 0) {
                bool ok = true;
                for (int i = 0; i < j && ok; ++i)
                    if (((spairing(cols[static_cast<size_t>(i)], x) - G[static_cast<size_t>(i) * n + j]) % Q + Q) % Q != 0) ok = false;
                if (ok) rec(j + 1);
            }
            int pos = 0;
            while (pos < rows) {
                x[static_cast<size_t>(pos)] += 1;
                if (x[static_cast<size_t>(pos)] < Q) break;
                x[static_cast<size_t>(pos)] = 0;
                ++pos;
            }
            if (pos == rows) break;
        }
    };
    rec(0);

    Rat alpha{Int(static_cast<long>(count))};
    unsigned long normexp = static_cast<unsigned long>(nu) * (2ul * k * n - static_cast<unsigned long>(n) * (n + 1) / 2);
    alpha /= Rat(int_pow(q, normexp));
    return alpha;
}

Rat local_density_sigma(const HalfIntegralForm& T, const Int& q, int k, int nu) {
    check_density_args(T, q, k, nu);
    int n = T.degree();
    long long Q = int_pow(q, static_cast<unsigned long>(nu)).get_si();
    int m = n * (n + 1) / 2;
    double sigma_count = std::pow(static_cast<double>(Q), m);
    double kernel_count = std::pow(static_cast<double>(Q), n);
    if (sigma_count * kernel_count > 6e8) throw std::domain_error("local_density_sigma: enumeration too large");

    std::vector<long long> G(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G[static_cast<size_t>(i) * n + j] = T.g(i, j).get_si();

    // c_a = sum over sigma with <sigma,T> = a of (q^{nu n} N(sigma))^k;
    // the rational value of sum c_a zeta^a is recovered from Ramanujan sums.
    std::vector<Int> c(static_cast<size_t>(Q), Int(0));
    std::vector<long long> entries(static_cast<size_t>(m), 0);
    std::vector<long long> sig(static_cast<size_t>(n) * n);
    std::vector<long long> v(static_cast<size_t>(n));
    Int qnun = int_pow(q, static_cast<unsigned long>(nu) * static_cast<unsigned long>(n));
    for (;;) {
        int pos2 = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                sig[static_cast<size_t>(i) * n + j] = entries[static_cast<size_t>(pos2)];
                sig[static_cast<size_t>(j) * n + i] = entries[static_cast<size_t>(pos2)];
                ++pos2;
            }
        // kernel count
        long long ker = 0;
        std::fill(v.begin(), v.end(), 0LL);
        for (;;) {
            bool zero = true;
            for (int i = 0; i < n && zero; ++i) {
                long long s = 0;
                for (int j = 0; j < n; ++j) s += sig[static_cast<size_t>(i) * n + j] * v[static_cast<size_t>(j)];
                if (s % Q != 0) zero = false;
            }
            if (zero) ++ker;
            int p2 = 0;
            while (p2 < n) {
                v[static_cast<size_t>(p2)] += 1;
                if (v[static_cast<size_t>(p2)] < Q) break;
                v[static_cast<size_t>(p2)] = 0;
                ++p2;
            }
            if (p2 == n) break;
        }
        // pairing <sigma,T> = sum sigma_ii t_ii + sum_{i<j} sigma_ij (2 t_ij)
        long long pair = 0;
        for (int i = 0; i < n; ++i) pair += sig[static_cast<size_t>(i) * n + i] * (G[static_cast<size_t>(i) * n + i] / 2);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pair += sig[static_cast<size_t>(i) * n + j] * G[static_cast<size_t>(i) * n + j];
        long long a = ((-pair) % Q + Q) % Q;
        Int term;
        Int base = qnun * Int(static_cast<long>(ker));
        mpz_pow_ui(term.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k));
        c[static_cast<size_t>(a)] += term;

        int p3 = 0;
        while (p3 < m) {
            entries[static_cast<size_t>(p3)] += 1;
            if (entries[static_cast<size_t>(p3)] < Q) break;
            entries[static_cast<size_t>(p3)] = 0;
            ++p3;
        }
        if (p3 == m) break;
    }

    // sum_a c_a zeta_Q^a with rational total: average over Galois conjugates
    // turns zeta^a into the Ramanujan sum c_Q(a)/phi(Q).
    long long qv = q.get_si();
    long long Qprev = Q / qv;
    Int main_part = 0, sub_part = 0;
    for (long long a = 0; a < Q; ++a) {
        if (a % Q == 0)
            main_part += c[static_cast<size_t>(a)];
        else if (a % Qprev == 0)
            sub_part += c[static_cast<size_t>(a)];
    }
    Rat total(main_part);
    total -= Rat(sub_part) / Rat(Int(static_cast<long>(qv - 1)));
    unsigned long normexp = static_cast<unsigned long>(nu) * (2ul * k * n);
    Rat alpha = total / Rat(int_pow(q, normexp));
    return alpha;
}

// ---------------------------------------------------------------------------
// Interpolation and the series contract.

namespace {

struct CacheState {
    std::mutex mu;
    std::map<std::pair<std::string, std::string>, LocalPolynomial> memo;
    std::filesystem::path dir;
    bool has_dir = false;
};

CacheState& cache_state() {
    static CacheState s;
    return s;
}

std::string cache_key_hash(const std::string& key) {
    // FNV-1a, stable across runs; collisions are harmless (payload carries
    // enough data to validate) but practically absent at this scale.
    uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : key) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

Rat gamma_factor(int n, const Int& q, int k, int chi_q) {
    // gamma_q(X) at X = q^{-k}: (1-X) prod (1 - q^{2i} X^2), with the
    // (1 - chi_T(q) q^{n/2} X)^{-1} correction for even n.
    Rat X = Rat(1) / Rat(int_pow(q, static_cast<unsigned long>(k)));
    Rat g = 1 - X;
    for (int i = 1; i <= n / 2; ++i) g *= 1 - Rat(int_pow(q, static_cast<unsigned long>(2 * i))) * X * X;
    if (n % 2 == 0 && chi_q != 0) {
        Rat corr = 1 - Rat(chi_q) * Rat(int_pow(q, static_cast<unsigned long>(n / 2))) * X;
        g /= corr;
    }
    return g;
}

// Exact Lagrange interpolation; returns ascending coefficients.
std::vector<Rat> interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    size_t m = xs.size();
    std::vector<Rat> acc(m, Rat(0));
    for (size_t j = 0; j < m; ++j) {
        std::vector<Rat> basis{Rat(1)};
        Rat denom = 1;
        for (size_t l = 0; l < m; ++l) {
            if (l == j) continue;
            basis.push_back(0);
            for (size_t t = basis.size() - 1; t > 0; --t) basis[t] = basis[t - 1] - xs[l] * basis[t];
            basis[0] = -xs[l] * basis[0];
            denom *= xs[j] - xs[l];
        }
        for (size_t t = 0; t < basis.size(); ++t) acc[t] += ys[j] * basis[t] / denom;
    }
    return acc;
}

LocalPolynomial fit_series(const HalfIntegralForm& T, const Int& q) {
    int n = T.degree();
    Int D = quadform::D_of(T);
    int d = (ord_p(quadform::C_of(T), q));
    int chi_q = 0;
    if (n % 2 == 0) chi_q = quadform::chi_T(T).eval(q);

    int nu = std::max<long>(1, ord_p(D, q) + 1 + (q == 2 ? 2 : 0));
    std::vector<int> ks;
    for (int j = 0; j <= d + 1; ++j) ks.push_back(n + 1 + j);

    long long qs = q.get_si();
    auto alphas_at = [&](int level) {
        ProfileCounts pc = profile_counts(T, qs, level);
        std::vector<Rat> out;
        for (int k : ks) out.push_back(alpha_from_profiles(pc, n, q, k, level));
        return out;
    };

    std::vector<Rat> cur = alphas_at(nu);
    std::vector<Rat> nxt;
    bool stable = false;
    for (int step = 0; step < 9; ++step) {
        nxt = alphas_at(nu + 1);
        if (cur == nxt) {
            stable = true;
            break;
        }
        cur = std::move(nxt);
        ++nu;
    }
    if (!stable) throw calibration_error("siegel_series_polynomial: densities did not stabilize");

    std::vector<Rat> xs, ys;
    for (size_t j = 0; j < ks.size(); ++j) {
        Rat X = Rat(1) / Rat(int_pow(q, static_cast<unsigned long>(ks[j])));
        xs.push_back(X);
        ys.push_back(cur[j] / gamma_factor(n, q, ks[j], chi_q));
    }

    std::vector<Rat> fit_x(xs.begin(), xs.begin() + d + 1);
    std::vector<Rat> fit_y(ys.begin(), ys.begin() + d + 1);
    std::vector<Rat> coeff = interpolate(fit_x, fit_y);

    // extra-point reproduction
    Rat check = 0;
    for (size_t i = coeff.size(); i-- > 0;) check = check * xs.back() + coeff[i];
    if (check != ys.back()) throw calibration_error("siegel_series_polynomial: extra interpolation point not reproduced");

    LocalPolynomial F;
    F.q = q;
    F.subject_rank = n;
    F.subject_D = D;
    for (const Rat& c : coeff) {
        if (c.get_den() != 1) throw calibration_error("siegel_series_polynomial: non-integral coefficient");
        F.coeffs.push_back(c.get_num());
    }
    while (F.coeffs.size() > 1 && F.coeffs.back() == 0) F.coeffs.pop_back();
    if (F.coeffs.empty() || F.coeffs.front() != 1) throw calibration_error("siegel_series_polynomial: constant term is not 1");
    if (F.degree() != d) throw calibration_error("siegel_series_polynomial: degree != ord_q(C(T))");
    return F;
}

}  // namespace

void cache_set_directory(const std::filesystem::path& dir) {
    CacheState& s = cache_state();
    std::lock_guard<std::mutex> lock(s.mu);
    std::filesystem::create_directories(dir);
    s.dir = dir;
    s.has_dir = true;
}

void cache_clear_memory() {
    CacheState& s = cache_state();
    std::lock_guard<std::mutex> lock(s.mu);
    s.memo.clear();
    s.has_dir = false;
}

std::string cache_record_json(const LocalPolynomial& F) {
    nlohmann::ordered_json j;
    j["q"] = F.q.get_si();
    std::vector<long> cs;
    for (const Int& c : F.coeffs) {
        if (!c.fits_slong_p()) throw std::logic_error("cache_record_json: coefficient out of range");
        cs.push_back(c.get_si());
    }
    j["coeffs"] = cs;
    j["D"] = F.subject_D.get_si();
    j["ord"] = F.degree();
    return j.dump();
}

LocalPolynomial siegel_series_polynomial(const HalfIntegralForm& T, const Int& q) {
    if (T.degree() < 1 || T.degree() > 3) throw std::domain_error("siegel_series_polynomial: rank must be 1..3");
    if (T.det_doubled() == 0) throw std::domain_error("siegel_series_polynomial: degenerate form");
    if (!exactnt::is_prime(q)) throw std::domain_error("siegel_series_polynomial: q must be prime");

    CacheState& s = cache_state();
    std::pair<std::string, std::string> key{T.to_text(), q.get_str()};
    {
        std::lock_guard<std::mutex> lock(s.mu);
        auto it = s.memo.find(key);
        if (it != s.memo.end()) return it->second;
    }
    std::filesystem::path record_path;
    bool use_disk = false;
    {
        std::lock_guard<std::mutex> lock(s.mu);
        if (s.has_dir) {
            use_disk = true;
            record_path = s.dir / (cache_key_hash(key.first + "|" + key.second) + ".json");
        }
    }
    if (use_disk && std::filesystem::exists(record_path)) {
        std::ifstream in(record_path);
        nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
        if (!j.is_discarded() && j.contains("coeffs") && j["q"].get<long>() == q.get_si()) {
            LocalPolynomial F;
            F.q = q;
            F.subject_rank = T.degree();
            F.subject_D = Int(j["D"].get<long>());
            for (long c : j["coeffs"].get<std::vector<long>>()) F.coeffs.emplace_back(c);
            if (F.subject_D == quadform::D_of(T)) {
                std::lock_guard<std::mutex> lock(s.mu);
                s.memo.emplace(key, F);
                return F;
            }
        }
    }

    LocalPolynomial F = fit_series(T, q);
    {
        std::lock_guard<std::mutex> lock(s.mu);
        s.memo.emplace(key, F);
    }
    if (use_disk) {
        // visible at-most-once: write aside, then rename into place
        static std::atomic<unsigned long> counter{0};
        std::filesystem::path tmp = record_path;
        tmp += ".tmp" + std::to_string(static_cast<unsigned long>(::getpid())) + "." +
               std::to_string(counter.fetch_add(1));
        {
            std::ofstream out(tmp);
            out << cache_record_json(F) << '\n';
        }
        std::error_code ec;
        std::filesystem::rename(tmp, record_path, ec);
        if (ec) std::filesystem::remove(tmp, ec);
    }
    return F;
}

std::vector<Int> product_polynomial(const HalfIntegralForm& T) {
    std::vector<Int> prod{Int(1)};
    for (const Int& q : exactnt::prime_divisors(quadform::C_of(T))) {
        LocalPolynomial F = siegel_series_polynomial(T, q);
        std::vector<Int> next(prod.size() + F.coeffs.size() - 1, Int(0));
        for (size_t i = 0; i < prod.size(); ++i)
            for (size_t j = 0; j < F.coeffs.size(); ++j) next[i + j] += prod[i] * F.coeffs[j];
        prod = std::move(next);
    }
    return prod;
}

Rat local_factor_value(const HalfIntegralForm& T, long k) {
    int n = T.degree();
    Rat acc = 1;
    Int C = quadform::C_of(T);
    if (C < 0) C = -C;
    if (C == 1) return acc;
    for (const Int& q : exactnt::prime_divisors(C)) {
        LocalPolynomial F = siegel_series_polynomial(T, q);
        acc *= F.eval(rat_pow(Rat(q), k - n - 1));
    }
    return acc;
}

bool check_functional_equation(const LocalPolynomial& F, const HalfIntegralForm& T, const Int& q) {
    int n = T.degree();
    if (n % 2 == 0) throw std::domain_error("check_functional_equation: degree must be odd");
    long e = ord_p(quadform::D_of(T), q);
    int eta_q = quadform::eta(T, quadform::PlaceTag::at(q));
    Rat qpow_n1 = Rat(int_pow(q, static_cast<unsigned long>(n + 1)));
    Rat qpow_half = Rat(int_pow(q, static_cast<unsigned long>((n + 1) / 2)));
    for (long s = 1; s <= e + 2; ++s) {
        Rat X(s);
        Rat lhs = F.eval(1 / (qpow_n1 * X));
        Rat rhs = Rat(eta_q) * rat_pow(qpow_half * X, -e) * F.eval(X);
        if (lhs != rhs) return false;
    }
    return true;
}

Int key_lemma_prime(const HalfIntegralForm& T) {
    int n = T.degree();
    int n8 = n % 8;
    if (n8 != 3 && n8 != 5) throw std::domain_error("key_lemma_prime: need degree +-3 mod 8");
    if (!quadform::is_positive_definite(T)) throw std::domain_error("key_lemma_prime: form must be positive definite");
    Int D = quadform::D_of(T);
    for (const Int& q : exactnt::prime_divisors(D)) {
        LocalPolynomial F = siegel_series_polynomial(T, q);
        Rat x0 = Rat(1) / Rat(int_pow(q, static_cast<unsigned long>((n + 1) / 2)));
        if (F.eval(x0) == 0) return q;
    }
    throw std::logic_error("key_lemma_prime: no prime divisor of D(T) vanishes (consistency failure)");
}

}  // namespace siegelkit::siegelseries
