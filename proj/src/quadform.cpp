#include "siegelkit/quadform.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace siegelkit::quadform {

using exactnt::squarefree_part;

PlaceTag PlaceTag::at(const Int& q) {
    if (!exactnt::is_prime(q)) throw std::domain_error("PlaceTag: finite place must be prime");
    return PlaceTag(false, q);
}

const Int& PlaceTag::prime() const {
    if (infinite_) throw std::domain_error("PlaceTag: archimedean place has no prime");
    return q_;
}

HalfIntegralForm::HalfIntegralForm(int n, std::vector<Int> doubled) : n_(n), g_(std::move(doubled)) {
    if (n < 0) throw std::domain_error("HalfIntegralForm: negative degree");
    if (g_.size() != static_cast<size_t>(n) * static_cast<size_t>(n))
        throw std::domain_error("HalfIntegralForm: wrong entry count");
    for (int i = 0; i < n; ++i) {
        if (g(i, i) % 2 != 0) throw std::domain_error("HalfIntegralForm: diagonal of G must be even");
        for (int j = 0; j < i; ++j)
            if (g(i, j) != g(j, i)) throw std::domain_error("HalfIntegralForm: G must be symmetric");
    }
}

HalfIntegralForm HalfIntegralForm::zero(int n) {
    return HalfIntegralForm(n, std::vector<Int>(static_cast<size_t>(n) * n, Int(0)));
}

HalfIntegralForm HalfIntegralForm::scalar(const Int& t) {
    return HalfIntegralForm(1, {2 * t});
}

bool HalfIntegralForm::operator<(const HalfIntegralForm& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    for (size_t i = 0; i < g_.size(); ++i)
        if (g_[i] != o.g_[i]) return g_[i] < o.g_[i];
    return false;
}

namespace {

// Bareiss fraction-free determinant of an integer matrix.
Int int_det(std::vector<Int> a, int n) {
    if (n == 0) return Int(1);
    Int prev = 1;
    int sign = 1;
    auto at = [&](int i, int j) -> Int& { return a[static_cast<size_t>(i) * n + j]; };
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (at(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return Int(0);
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
        prev = at(k, k);
    }
    Int d = at(n - 1, n - 1);
    return sign < 0 ? Int(-d) : d;
}

Int leading_minor(const HalfIntegralForm& T, int k) {
    std::vector<Int> a(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) a[static_cast<size_t>(i) * k + j] = T.g(i, j);
    return int_det(std::move(a), k);
}

}  // namespace

Int HalfIntegralForm::det_doubled() const {
    std::vector<Int> a = g_;
    return int_det(std::move(a), n_);
}

Rat HalfIntegralForm::det_t() const {
    Rat r(det_doubled());
    r /= Rat(int_pow(Int(2), static_cast<unsigned long>(n_)));
    return r;
}

std::string HalfIntegralForm::to_text() const {
    // n followed by the upper triangle of G, row by row, diagonal first.
    std::ostringstream os;
    os << n_;
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) os << ' ' << g(i, j).get_str();
    return os.str();
}

HalfIntegralForm HalfIntegralForm::from_text(const std::string& line) {
    std::istringstream is(line);
    int n;
    if (!(is >> n) || n < 0) throw std::domain_error("HalfIntegralForm: bad text form");
    std::vector<Int> g(static_cast<size_t>(n) * n, Int(0));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            std::string tok;
            if (!(is >> tok)) throw std::domain_error("HalfIntegralForm: truncated text form");
            Int v(tok);
            g[static_cast<size_t>(i) * n + j] = v;
            g[static_cast<size_t>(j) * n + i] = v;
        }
    return HalfIntegralForm(n, std::move(g));
}

Int D_of(const HalfIntegralForm& T) {
    int n = T.degree();
    Rat d = T.det_t();
    if (d == 0) throw std::domain_error("D_of: degenerate form");
    Rat D = d * Rat(int_pow(Int(2), 2 * static_cast<unsigned long>(n / 2)));
    if (D.get_den() != 1) throw std::logic_error("D_of: non-integral D(T)");
    return D.get_num();
}

exactnt::QuadCharacter chi_T(const HalfIntegralForm& T) {
    int n = T.degree();
    if (n % 2 != 0) throw std::domain_error("chi_T: degree must be even");
    Int det2T = T.det_doubled();
    if (det2T == 0) throw std::domain_error("chi_T: degenerate form");
    Int radicand = ((n / 2) % 2 == 0) ? det2T : Int(-det2T);
    return exactnt::QuadCharacter::from_radicand(radicand);
}

Int C_of(const HalfIntegralForm& T) {
    Int D = D_of(T);
    if (T.degree() % 2 != 0) return D;
    Int dT = chi_T(T).conductor();
    if (D % dT != 0) throw std::logic_error("C_of: D(T) not divisible by the field discriminant");
    return D / dT;
}

bool is_positive_definite(const HalfIntegralForm& T) {
    for (int k = 1; k <= T.degree(); ++k)
        if (leading_minor(T, k) <= 0) return false;
    return true;
}

bool is_positive_semidefinite(const HalfIntegralForm& T) {
    // Exact pivoted symmetric elimination; PSD iff all pivots are positive
    // and any remaining block with zero diagonal vanishes entirely.
    int n = T.degree();
    std::vector<Rat> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[static_cast<size_t>(i) * n + j] = Rat(T.g(i, j));
    auto at = [&](int i, int j) -> Rat& { return a[static_cast<size_t>(i) * n + j]; };
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    int k = 0;
    while (k < n) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (at(idx[i], idx[i]) > 0) {
                piv = i;
                break;
            }
        if (piv < 0) {
            for (int i = k; i < n; ++i) {
                if (at(idx[i], idx[i]) != 0) return false;  // negative diagonal
                for (int j = k; j < n; ++j)
                    if (at(idx[i], idx[j]) != 0) return false;
            }
            return true;
        }
        std::swap(idx[k], idx[piv]);
        Rat d = at(idx[k], idx[k]);
        for (int i = k + 1; i < n; ++i) {
            Rat f = at(idx[i], idx[k]) / d;
            for (int j = k + 1; j < n; ++j) at(idx[i], idx[j]) -= f * at(idx[k], idx[j]);
        }
        ++k;
    }
    return true;
}

std::vector<Int> rational_diagonalization(const HalfIntegralForm& T) {
    int n = T.degree();
    if (n == 0) return {};
    if (T.det_doubled() == 0) throw std::domain_error("rational_diagonalization: degenerate form");
    std::vector<Rat> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[static_cast<size_t>(i) * n + j] = Rat(T.g(i, j)) / 2;
    auto at = [&](int i, int j) -> Rat& { return a[static_cast<size_t>(i) * n + j]; };

    std::vector<Int> diag;
    for (int k = 0; k < n; ++k) {
        if (at(k, k) == 0) {
            int sw = -1, add = -1;
            for (int i = k + 1; i < n && sw < 0; ++i)
                if (at(i, i) != 0) sw = i;
            if (sw >= 0) {
                for (int j = 0; j < n; ++j) std::swap(at(k, j), at(sw, j));
                for (int j = 0; j < n; ++j) std::swap(at(j, k), at(j, sw));
            } else {
                for (int j = k + 1; j < n && add < 0; ++j)
                    if (at(k, j) != 0) add = j;
                if (add < 0) throw std::domain_error("rational_diagonalization: degenerate form");
                // zero diagonal block: add row/col `add` into k, pivot 2*a_kj
                for (int j = 0; j < n; ++j) at(k, j) += at(add, j);
                for (int j = 0; j < n; ++j) at(j, k) += at(j, add);
            }
        }
        Rat d = at(k, k);
        // Congruence step: the trailing block a_ij - a_ik a_kj / d stays
        // symmetric, so plain row elimination suffices.
        for (int i = k + 1; i < n; ++i) {
            Rat f = at(i, k) / d;
            for (int j = k; j < n; ++j) at(i, j) -= f * at(k, j);
        }
        for (int i = k + 1; i < n; ++i) at(k, i) = 0;
        diag.push_back(squarefree_part(d));
    }
    return diag;
}

int hilbert_symbol(const Int& a, const Int& b, const PlaceTag& v) {
    if (a == 0 || b == 0) throw std::domain_error("hilbert_symbol: arguments must be nonzero");
    if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
    const Int& q = v.prime();
    long alpha = ord_p(a, q), beta = ord_p(b, q);
    Int u = a / int_pow(q, static_cast<unsigned long>(alpha));
    Int w = b / int_pow(q, static_cast<unsigned long>(beta));
    if (q == 2) {
        auto eps = [](const Int& x) { return (((x - 1) / 2) % 2 != 0) ? 1 : 0; };
        auto omega = [](const Int& x) { return (((x * x - 1) / 8) % 2 != 0) ? 1 : 0; };
        long e = static_cast<long>(eps(u)) * eps(w) + alpha * omega(w) + beta * omega(u);
        return (e % 2 == 0) ? 1 : -1;
    }
    // odd q: (-1)^{alpha beta (q-1)/2} (u/q)^beta (w/q)^alpha
    long e = 0;
    if (alpha % 2 != 0 && beta % 2 != 0 && ((q - 1) / 2) % 2 != 0) e += 1;
    if (beta % 2 != 0 && mpz_legendre(u.get_mpz_t(), q.get_mpz_t()) == -1) e += 1;
    if (alpha % 2 != 0 && mpz_legendre(w.get_mpz_t(), q.get_mpz_t()) == -1) e += 1;
    return (e % 2 == 0) ? 1 : -1;
}

int hasse_invariant(const HalfIntegralForm& T, const PlaceTag& v) {
    // Convention: product over i <= j. The i < j variant fails the sign
    // linkage between eta_q and the vanishing of F_q(T, q^{-(n+1)/2})
    // uniformly; i <= j is frozen by the acceptance suite.
    std::vector<Int> d = rational_diagonalization(T);
    int h = 1;
    for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = i; j < d.size(); ++j) h *= hilbert_symbol(d[i], d[j], v);
    return h;
}

int eta(const HalfIntegralForm& T, const PlaceTag& v) {
    int n = T.degree();
    if (n % 2 == 0) throw std::domain_error("eta: degree must be odd");
    Rat det = T.det_t();
    if (det == 0) throw std::domain_error("eta: degenerate form");
    Int ds = squarefree_part(det);
    Int ds_signed = (((n - 1) / 2) % 2 != 0) ? Int(-ds) : ds;
    int r = hasse_invariant(T, v) * hilbert_symbol(ds, ds_signed, v);
    long e = (static_cast<long>(n) * n - 1) / 8;
    if (e % 2 != 0) r *= hilbert_symbol(Int(-1), Int(-1), v);
    return r;
}

namespace {

void enumerate_binary(const Int& Dbound, std::vector<HalfIntegralForm>& out) {
    // Reduced domain 0 <= 2 g12 <= g11 <= g22 covers every class.
    for (Int g11 = 2; g11 * g11 * 3 <= 4 * Dbound; g11 += 2)
        for (Int g22 = g11; g11 * g22 - (g11 * g11) / 4 <= Dbound; g22 += 2)
            for (Int g12 = 0; 2 * g12 <= g11; ++g12) {
                Int det = g11 * g22 - g12 * g12;
                if (det <= 0 || det > Dbound) continue;
                out.emplace_back(2, std::vector<Int>{g11, g12, g12, g22});
            }
}

void enumerate_ternary(const Int& Dbound, std::vector<HalfIntegralForm>& out) {
    // Scan the Minkowski-style box g11 <= g22 <= g33, |2 g_ij| <= g_ii; the
    // ranges come from prod g_ii <= 2 det(G) = 4 D(T) for reduced forms.
    Int P = 4 * Dbound;
    for (Int g11 = 2; g11 * g11 * g11 <= P; g11 += 2)
        for (Int g22 = g11; g11 * g22 * g22 <= P; g22 += 2)
            for (Int g33 = g22; g11 * g22 * g33 <= P; g33 += 2)
                for (Int g12 = 0; 2 * g12 <= g11; ++g12)
                    for (Int g13 = 0; 2 * g13 <= g11; ++g13)
                        for (Int g23 = -g22 / 2; 2 * g23 <= g22; ++g23) {
                            HalfIntegralForm f(3, {g11, g12, g13, g12, g22, g23, g13, g23, g33});
                            Int det = f.det_doubled();
                            if (det <= 0 || det > 2 * Dbound) continue;
                            if (!is_positive_definite(f)) continue;
                            out.push_back(std::move(f));
                        }
}

}  // namespace

std::vector<HalfIntegralForm> enumerate_reduced(int n, const Int& Dbound) {
    std::vector<HalfIntegralForm> out;
    if (n == 2)
        enumerate_binary(Dbound, out);
    else if (n == 3)
        enumerate_ternary(Dbound, out);
    else
        throw std::domain_error("enumerate_reduced: only degrees 2 and 3 are supported");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// Unimodular row reduction: R in GL_rows(Z) with R*A in staircase form,
// nonzero rows on top. Returns R and the rank.
struct RowReduceResult {
    std::vector<Int> R;
    int rank = 0;
};

RowReduceResult row_reduce(std::vector<Int> a, int rows, int cols) {
    RowReduceResult res;
    res.R.assign(static_cast<size_t>(rows) * rows, Int(0));
    for (int i = 0; i < rows; ++i) res.R[static_cast<size_t>(i) * rows + i] = 1;
    auto A = [&](int i, int j) -> Int& { return a[static_cast<size_t>(i) * cols + j]; };
    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < cols; ++c) std::swap(A(i, c), A(j, c));
        for (int c = 0; c < rows; ++c)
            std::swap(res.R[static_cast<size_t>(i) * rows + c], res.R[static_cast<size_t>(j) * rows + c]);
    };
    auto sub_row = [&](int i, int j, const Int& q) {  // row_i -= q * row_j
        for (int c = 0; c < cols; ++c) A(i, c) -= q * A(j, c);
        for (int c = 0; c < rows; ++c)
            res.R[static_cast<size_t>(i) * rows + c] -= q * res.R[static_cast<size_t>(j) * rows + c];
    };

    int t = 0;
    for (int col = 0; col < cols && t < rows; ++col) {
        for (;;) {
            int best = -1;
            for (int i = t; i < rows; ++i)
                if (A(i, col) != 0 && (best < 0 || abs(A(i, col)) < abs(A(best, col)))) best = i;
            if (best < 0) break;
            swap_rows(t, best);
            bool all_zero_below = true;
            for (int i = t + 1; i < rows; ++i) {
                if (A(i, col) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), A(i, col).get_mpz_t(), A(t, col).get_mpz_t());
                sub_row(i, t, q);
                if (A(i, col) != 0) all_zero_below = false;
            }
            if (all_zero_below) {
                ++t;
                break;
            }
        }
    }
    res.rank = t;
    return res;
}

}  // namespace

SplitResult split_degenerate(const HalfIntegralForm& T) {
    int n = T.degree();
    if (!is_positive_semidefinite(T)) throw std::domain_error("split_degenerate: form is not positive semidefinite");

    // Rational kernel of G, cleared to integral vectors.
    std::vector<Rat> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[static_cast<size_t>(i) * n + j] = Rat(T.g(i, j));
    auto at = [&](int i, int j) -> Rat& { return a[static_cast<size_t>(i) * n + j]; };
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int piv = -1;
        for (int i = row; i < n; ++i)
            if (at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        for (int j = 0; j < n; ++j) std::swap(at(row, j), at(piv, j));
        Rat d = at(row, col);
        for (int i = 0; i < n; ++i) {
            if (i == row || at(i, col) == 0) continue;
            Rat f = at(i, col) / d;
            for (int j = 0; j < n; ++j) at(i, j) -= f * at(row, j);
        }
        pivot_col.push_back(col);
        ++row;
    }
    int r = row;  // rank
    SplitResult out{HalfIntegralForm::zero(0), r, {}};

    std::vector<Int> U(static_cast<size_t>(n) * n, Int(0));
    if (r == n) {
        for (int i = 0; i < n; ++i) U[static_cast<size_t>(i) * n + i] = 1;
        out.t1 = T;
        out.U = std::move(U);
        return out;
    }

    // Kernel basis: free columns, back-substituted, denominators cleared.
    std::vector<int> is_pivot(n, 0);
    for (size_t i = 0; i < pivot_col.size(); ++i) is_pivot[static_cast<size_t>(pivot_col[i])] = 1;
    std::vector<Int> K;  // n x (n-r), column major
    int nk = n - r;
    K.assign(static_cast<size_t>(n) * nk, Int(0));
    int kcol = 0;
    for (int col = 0; col < n; ++col) {
        if (is_pivot[static_cast<size_t>(col)]) continue;
        std::vector<Rat> v(static_cast<size_t>(n), Rat(0));
        v[static_cast<size_t>(col)] = 1;
        for (int i = r - 1; i >= 0; --i) {
            int pc = pivot_col[static_cast<size_t>(i)];
            Rat s = 0;
            for (int j = pc + 1; j < n; ++j) s += at(i, j) * v[static_cast<size_t>(j)];
            v[static_cast<size_t>(pc)] = -s / at(i, pc);
        }
        Int den = 1;
        for (int i = 0; i < n; ++i) den = lcm(den, v[static_cast<size_t>(i)].get_den());
        Int content = 0;
        std::vector<Int> vi(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            vi[static_cast<size_t>(i)] = Int(v[static_cast<size_t>(i)] * Rat(den));
            content = gcd(content, vi[static_cast<size_t>(i)]);
        }
        for (int i = 0; i < n; ++i) K[static_cast<size_t>(i) * nk + kcol] = vi[static_cast<size_t>(i)] / content;
        ++kcol;
    }

    // Saturate and complete: with R*K in staircase form, the first nk
    // columns of R^{-1} span the saturated kernel and the rest complete
    // them to a basis of Z^n. Invert R by Gauss-Jordan over Q (det +-1).
    RowReduceResult rr = row_reduce(K, n, nk);
    if (rr.rank != nk) throw std::logic_error("split_degenerate: kernel basis not independent");
    std::vector<Rat> inv(static_cast<size_t>(n) * n, Rat(0));
    {
        std::vector<Rat> m(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m[static_cast<size_t>(i) * n + j] = Rat(rr.R[static_cast<size_t>(i) * n + j]);
        for (int i = 0; i < n; ++i) inv[static_cast<size_t>(i) * n + i] = 1;
        auto M = [&](int i, int j) -> Rat& { return m[static_cast<size_t>(i) * n + j]; };
        auto V = [&](int i, int j) -> Rat& { return inv[static_cast<size_t>(i) * n + j]; };
        for (int cpos = 0; cpos < n; ++cpos) {
            int piv = -1;
            for (int i = cpos; i < n; ++i)
                if (M(i, cpos) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) throw std::logic_error("split_degenerate: transform not invertible");
            for (int j = 0; j < n; ++j) std::swap(M(cpos, j), M(piv, j)), std::swap(V(cpos, j), V(piv, j));
            Rat d = M(cpos, cpos);
            for (int j = 0; j < n; ++j) M(cpos, j) /= d, V(cpos, j) /= d;
            for (int i = 0; i < n; ++i) {
                if (i == cpos || M(i, cpos) == 0) continue;
                Rat f = M(i, cpos);
                for (int j = 0; j < n; ++j) M(i, j) -= f * M(cpos, j), V(i, j) -= f * V(cpos, j);
            }
        }
    }
    // Columns of R^{-1}: first n-r columns span the saturated kernel
    // (R K = [S;0]C^{-1}-shaped, S unit up to saturation). Order U's columns
    // as (complement | kernel).
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < nk; ++j) {
            Rat e = inv[static_cast<size_t>(i) * n + j];
            if (e.get_den() != 1) throw std::logic_error("split_degenerate: non-integral completion");
            U[static_cast<size_t>(i) * n + (r + j)] = e.get_num();
        }
        for (int j = nk; j < n; ++j) {
            Rat e = inv[static_cast<size_t>(i) * n + j];
            if (e.get_den() != 1) throw std::logic_error("split_degenerate: non-integral completion");
            U[static_cast<size_t>(i) * n + (j - nk)] = e.get_num();
        }
    }

    // G1 = (U^T G U) upper-left block; the kernel block vanishes identically.
    std::vector<Int> GU(static_cast<size_t>(n) * n, Int(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Int s = 0;
            for (int k2 = 0; k2 < n; ++k2) s += T.g(i, k2) * U[static_cast<size_t>(k2) * n + j];
            GU[static_cast<size_t>(i) * n + j] = s;
        }
    std::vector<Int> B(static_cast<size_t>(n) * n, Int(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Int s = 0;
            for (int k2 = 0; k2 < n; ++k2) s += U[static_cast<size_t>(k2) * n + i] * GU[static_cast<size_t>(k2) * n + j];
            B[static_cast<size_t>(i) * n + j] = s;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((i >= r || j >= r) && B[static_cast<size_t>(i) * n + j] != 0)
                throw std::logic_error("split_degenerate: kernel block did not vanish");
    std::vector<Int> G1(static_cast<size_t>(r) * r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) G1[static_cast<size_t>(i) * r + j] = B[static_cast<size_t>(i) * n + j];
    out.t1 = HalfIntegralForm(r, std::move(G1));
    if (r > 0 && !is_positive_definite(out.t1)) throw std::logic_error("split_degenerate: split block not positive definite");
    out.U = std::move(U);
    return out;
}

HalfIntegralForm direct_sum(const HalfIntegralForm& a, const HalfIntegralForm& b) {
    int n = a.degree() + b.degree();
    std::vector<Int> g(static_cast<size_t>(n) * n, Int(0));
    for (int i = 0; i < a.degree(); ++i)
        for (int j = 0; j < a.degree(); ++j) g[static_cast<size_t>(i) * n + j] = a.g(i, j);
    for (int i = 0; i < b.degree(); ++i)
        for (int j = 0; j < b.degree(); ++j)
            g[static_cast<size_t>(a.degree() + i) * n + (a.degree() + j)] = b.g(i, j);
    return HalfIntegralForm(n, std::move(g));
}

HalfIntegralForm gram_E8() {
    // Cartan matrix of E8: chain 1-2-3-4-5-6-7 with node 8 attached to node 5.
    std::vector<Int> g(64, Int(0));
    auto set = [&](int i, int j, long v) {
        g[static_cast<size_t>(i) * 8 + j] = v;
        g[static_cast<size_t>(j) * 8 + i] = v;
    };
    for (int i = 0; i < 8; ++i) set(i, i, 2);
    for (int i = 0; i + 1 < 7; ++i) set(i, i + 1, -1);
    set(4, 7, -1);
    return HalfIntegralForm(8, std::move(g));
}

}  // namespace siegelkit::quadform
