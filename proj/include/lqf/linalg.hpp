#pragma once

#include <optional>
#include <vector>

#include "lqf/localfield.hpp"

namespace lqf {

using FVec = std::vector<FieldElem>;
using FMat = std::vector<FVec>;
using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;
using IVec = std::vector<long long>;
using IMat = std::vector<IVec>;

// ------------------------------------------------------------ generic helpers

template <class T>
std::vector<std::vector<T>> mat_mul(const std::vector<std::vector<T>>& A, const std::vector<std::vector<T>>& B) {
    size_t n = A.size(), m = B.empty() ? 0 : B[0].size(), k = B.size();
    std::vector<std::vector<T>> C(n, std::vector<T>(m, T(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (A[i][l] == T(0)) continue;
            for (size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
        }
    return C;
}

template <class T>
std::vector<T> mat_vec(const std::vector<std::vector<T>>& A, const std::vector<T>& v) {
    std::vector<T> r(A.size(), T(0));
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r[i] += A[i][j] * v[j];
    return r;
}

template <class T>
std::vector<std::vector<T>> transpose(const std::vector<std::vector<T>>& A) {
    if (A.empty()) return {};
    std::vector<std::vector<T>> R(A[0].size(), std::vector<T>(A.size()));
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < A[0].size(); ++j) R[j][i] = A[i][j];
    return R;
}

template <class T>
std::vector<std::vector<T>> identity_mat(size_t n) {
    std::vector<std::vector<T>> I(n, std::vector<T>(n, T(0)));
    for (size_t i = 0; i < n; ++i) I[i][i] = T(1);
    return I;
}

inline QMat to_qmat(const IMat& A) {
    QMat Q(A.size());
    for (size_t i = 0; i < A.size(); ++i)
        for (auto x : A[i]) Q[i].push_back(Rat(x));
    return Q;
}

inline bool is_integral(const QMat& A) {
    for (auto& r : A)
        for (auto& x : r)
            if (mp::denominator(x) != 1) return false;
    return true;
}

inline IMat to_imat(const QMat& A) {
    IMat R(A.size());
    for (size_t i = 0; i < A.size(); ++i)
        for (auto& x : A[i]) {
            if (mp::denominator(x) != 1) fail(ErrorCode::NotIntegral, "matrix entry not integral");
            R[i].push_back(static_cast<long long>(mp::numerator(x)));
        }
    return R;
}

/// Exact inverse of a rational matrix; throws DegenerateForm if singular.
inline QMat q_inverse(QMat A) {
    size_t n = A.size();
    QMat I = identity_mat<Rat>(n);
    for (size_t c = 0; c < n; ++c) {
        size_t piv = n;
        for (size_t r = c; r < n; ++r)
            if (A[r][c] != 0) { piv = r; break; }
        if (piv == n) fail(ErrorCode::DegenerateForm, "singular rational matrix");
        std::swap(A[c], A[piv]);
        std::swap(I[c], I[piv]);
        Rat inv = 1 / A[c][c];
        for (size_t j = 0; j < n; ++j) { A[c][j] *= inv; I[c][j] *= inv; }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || A[r][c] == 0) continue;
            Rat f = A[r][c];
            for (size_t j = 0; j < n; ++j) { A[r][j] -= f * A[c][j]; I[r][j] -= f * I[c][j]; }
        }
    }
    return I;
}

inline Rat q_det(QMat A) {
    size_t n = A.size();
    Rat d = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = n;
        for (size_t r = c; r < n; ++r)
            if (A[r][c] != 0) { piv = r; break; }
        if (piv == n) return 0;
        if (piv != c) { std::swap(A[c], A[piv]); d = -d; }
        d *= A[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (A[r][c] == 0) continue;
            Rat f = A[r][c] / A[c][c];
            for (size_t j = c; j < n; ++j) A[r][j] -= f * A[c][j];
        }
    }
    return d;
}

/// Smith normal form: returns (U, D, V) with U*A*V = D diagonal, U and V unimodular.
struct Smith {
    IMat U, D, V;
};

inline Smith smith_normal_form(const IMat& A) {
    size_t m = A.size(), n = A.empty() ? 0 : A[0].size();
    IMat D = A, U = identity_mat<long long>(m), V = identity_mat<long long>(n);
    auto swap_rows = [&](size_t a, size_t b) { std::swap(D[a], D[b]); std::swap(U[a], U[b]); };
    auto swap_cols = [&](size_t a, size_t b) {
        for (auto& r : D) std::swap(r[a], r[b]);
        for (auto& r : V) std::swap(r[a], r[b]);
    };
    auto add_row = [&](size_t dst, size_t src, long long f) {
        for (size_t j = 0; j < n; ++j) D[dst][j] += f * D[src][j];
        for (size_t j = 0; j < m; ++j) U[dst][j] += f * U[src][j];
    };
    auto add_col = [&](size_t dst, size_t src, long long f) {
        for (size_t i = 0; i < m; ++i) D[i][dst] += f * D[i][src];
        for (size_t i = 0; i < n; ++i) V[i][dst] += f * V[i][src];
    };
    for (size_t t = 0; t < std::min(m, n); ++t) {
        while (true) {
            // smallest nonzero entry in the remaining block
            long long best = 0;
            size_t bi = m, bj = n;
            for (size_t i = t; i < m; ++i)
                for (size_t j = t; j < n; ++j)
                    if (D[i][j] != 0 && (best == 0 || std::llabs(D[i][j]) < best)) {
                        best = std::llabs(D[i][j]);
                        bi = i;
                        bj = j;
                    }
            if (best == 0) return {U, D, V};
            swap_rows(t, bi);
            swap_cols(t, bj);
            bool clean = true;
            for (size_t i = t + 1; i < m; ++i) {
                long long f = D[i][t] / D[t][t];
                if (f) add_row(i, t, -f);
                if (D[i][t]) clean = false;
            }
            for (size_t j = t + 1; j < n; ++j) {
                long long f = D[t][j] / D[t][t];
                if (f) add_col(j, t, -f);
                if (D[t][j]) clean = false;
            }
            if (!clean) continue;
            // divisibility condition
            bool divides = true;
            for (size_t i = t + 1; i < m && divides; ++i)
                for (size_t j = t + 1; j < n; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (D[t][t] < 0) {
            for (size_t j = 0; j < n; ++j) D[t][j] = -D[t][j];
            for (size_t j = 0; j < m; ++j) U[t][j] = -U[t][j];
        }
    }
    return {U, D, V};
}

/// Inverse of a unimodular integer matrix.
inline IMat unimodular_inverse(const IMat& A) { return to_imat(q_inverse(to_qmat(A))); }

// ------------------------------------------------------------ field-element matrices

inline FMat fmat_from_rat(const GroundField& F, const QMat& A) {
    FMat R(A.size());
    for (size_t i = 0; i < A.size(); ++i)
        for (auto& x : A[i]) R[i].push_back(felem(F, x));
    return R;
}

inline FMat fmat_zero(const GroundField& F, size_t n, size_t m) {
    return FMat(n, FVec(m, FieldElem::make_zero(F)));
}

inline FMat fmat_identity(const GroundField& F, size_t n) {
    FMat I = fmat_zero(F, n, n);
    for (size_t i = 0; i < n; ++i) I[i][i] = felem(F, 1);
    return I;
}

inline FMat fmat_mul(const FMat& A, const FMat& B) {
    size_t n = A.size(), k = B.size(), m = B.empty() ? 0 : B[0].size();
    FMat C(n);
    for (size_t i = 0; i < n; ++i) {
        C[i].reserve(m);
        for (size_t j = 0; j < m; ++j) {
            FieldElem s = A[i][0] * B[0][j];
            for (size_t l = 1; l < k; ++l) s += A[i][l] * B[l][j];
            C[i].push_back(s);
        }
    }
    return C;
}

inline FVec fmat_vec(const FMat& A, const FVec& v) {
    FVec r;
    for (size_t i = 0; i < A.size(); ++i) {
        FieldElem s = A[i][0] * v[0];
        for (size_t j = 1; j < v.size(); ++j) s += A[i][j] * v[j];
        r.push_back(s);
    }
    return r;
}

/// Pivot preference: smaller is better. Zero entries are never pivots.
inline long long pivot_score(const FieldElem& x) {
    if (x.is_zero()) return LLONG_MAX;
    if (x.kind == FieldKind::Real || x.kind == FieldKind::Complex) return 0;
    return x.val;
}

/// Row-reduces the given vectors (as rows) and returns indices of a maximal independent subset,
/// in the order they were chosen. Pivots are chosen by minimal valuation.
inline std::vector<size_t> independent_rows(FMat rows, size_t want) {
    std::vector<size_t> chosen;
    if (rows.empty()) return chosen;
    size_t ncols = rows[0].size();
    std::vector<bool> used(rows.size(), false), colused(ncols, false);
    while (chosen.size() < want) {
        long long best = LLONG_MAX;
        size_t bi = 0, bj = 0;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (used[i]) continue;
            for (size_t j = 0; j < ncols; ++j) {
                if (colused[j]) continue;
                long long s = pivot_score(rows[i][j]);
                if (s < best) { best = s; bi = i; bj = j; }
            }
        }
        if (best == LLONG_MAX) break;
        used[bi] = true;
        colused[bj] = true;
        chosen.push_back(bi);
        FieldElem pinv = rows[bi][bj].inv();
        for (size_t i = 0; i < rows.size(); ++i) {
            if (used[i] || rows[i][bj].is_zero()) continue;
            FieldElem f = rows[i][bj] * pinv;
            for (size_t j = 0; j < ncols; ++j) rows[i][j] -= f * rows[bi][j];
        }
    }
    return chosen;
}

/// Solves A x = b for square nonsingular A with min-valuation pivoting.
inline FVec fsolve(FMat A, FVec b) {
    size_t n = A.size();
    std::vector<size_t> perm(n);
    for (size_t c = 0; c < n; ++c) {
        long long best = LLONG_MAX;
        size_t bi = n;
        for (size_t r = c; r < n; ++r) {
            long long s = pivot_score(A[r][c]);
            if (s < best) { best = s; bi = r; }
        }
        if (bi == n) fail(ErrorCode::PrecisionLoss, "singular system at current precision");
        std::swap(A[c], A[bi]);
        std::swap(b[c], b[bi]);
        FieldElem inv = A[c][c].inv();
        for (size_t r = c + 1; r < n; ++r) {
            if (A[r][c].is_zero()) continue;
            FieldElem f = A[r][c] * inv;
            for (size_t j = c; j < n; ++j) A[r][j] -= f * A[c][j];
            b[r] -= f * b[c];
        }
    }
    FVec x(n, b[0]);
    for (size_t i = n; i-- > 0;) {
        FieldElem s = b[i];
        for (size_t j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
        x[i] = s / A[i][i];
    }
    return x;
}

inline FieldElem fdet(FMat A) {
    size_t n = A.size();
    const FieldElem& any = A[0][0];
    GroundField F{any.kind, any.p, any.prec};
    FieldElem d = felem(F, 1);
    for (size_t c = 0; c < n; ++c) {
        long long best = LLONG_MAX;
        size_t bi = n;
        for (size_t r = c; r < n; ++r) {
            long long s = pivot_score(A[r][c]);
            if (s < best) { best = s; bi = r; }
        }
        if (bi == n) return FieldElem::make_zero(F, A[c][c].absprec);
        if (bi != c) { std::swap(A[c], A[bi]); d = -d; }
        d *= A[c][c];
        FieldElem inv = A[c][c].inv();
        for (size_t r = c + 1; r < n; ++r) {
            if (A[r][c].is_zero()) continue;
            FieldElem f = A[r][c] * inv;
            for (size_t j = c; j < n; ++j) A[r][j] -= f * A[c][j];
        }
    }
    return d;
}

} // namespace lqf
