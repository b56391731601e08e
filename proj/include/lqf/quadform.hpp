#pragma once

#include <string>
#include <vector>

#include "lqf/br2s.hpp"
#include "lqf/linalg.hpp"

namespace lqf {

/// Nondegenerate quadratic space; gram[i][j] = B(e_i, e_j) and Q(e_i) = gram[i][i] / 2.
struct QuadSpace {
    GroundField field;
    FMat gram;

    size_t dim() const { return gram.size(); }

    static QuadSpace from_rational(const GroundField& F, const QMat& g) { return {F, fmat_from_rat(F, g)}; }

    /// Diagonal form sum a_i x_i^2.
    static QuadSpace diagonal(const GroundField& F, const FVec& a) {
        QuadSpace Q{F, fmat_zero(F, a.size(), a.size())};
        FieldElem two = felem(F, 2);
        for (size_t i = 0; i < a.size(); ++i) Q.gram[i][i] = two * a[i];
        return Q;
    }

    static QuadSpace from_classes(const GroundField& F, const std::vector<SquareClass>& cs) {
        FVec a;
        for (auto c : cs) a.push_back(class_rep(F, c));
        return diagonal(F, a);
    }

    FieldElem value(const FVec& x) const {
        FieldElem s = FieldElem::make_zero(field);
        for (size_t i = 0; i < dim(); ++i)
            for (size_t j = 0; j < dim(); ++j) s += x[i] * gram[i][j] * x[j];
        return s / felem(field, 2);
    }

    FieldElem bilinear(const FVec& x, const FVec& y) const {
        FieldElem s = FieldElem::make_zero(field);
        for (size_t i = 0; i < dim(); ++i)
            for (size_t j = 0; j < dim(); ++j) s += x[i] * gram[i][j] * y[j];
        return s;
    }
};

struct DiagForm {
    std::vector<SquareClass> coeffs;
    size_t dim() const { return coeffs.size(); }
};

/// Result of Gram-Schmidt: Q(v_i) = a[i] for the columns v_i of basis (in old coordinates).
struct Diagonalization {
    FVec a;
    FMat basis;  // basis[k] is the k-th new vector, in old coordinates
};

inline Diagonalization diagonalize_full(const QuadSpace& Q) {
    const GroundField& F = Q.field;
    size_t n = Q.dim();
    FMat B = Q.gram;
    FMat P = fmat_identity(F, n);  // P[k] = current vector k in old coordinates
    std::vector<bool> done(n, false);
    FVec a_by_slot(n, FieldElem::make_zero(F));
    FieldElem two = felem(F, 2);
    for (size_t step = 0; step < n; ++step) {
        long long bd = LLONG_MAX, bo = LLONG_MAX;
        size_t di = n, oi = n, oj = n;
        for (size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            long long s = pivot_score(B[i][i]);
            if (s < bd) { bd = s; di = i; }
            for (size_t j = i + 1; j < n; ++j) {
                if (done[j]) continue;
                long long t = pivot_score(B[i][j]);
                if (t < bo) { bo = t; oi = i; oj = j; }
            }
        }
        if (di == n && oi == n) fail(ErrorCode::DegenerateForm, "form is degenerate at current precision");
        // For odd residue characteristic a strictly smaller off-diagonal entry forces a combination;
        // at p = 2 the factor 2 in B(e_i+e_j) makes that pointless unless no diagonal pivot exists.
        bool combine = (di == n) || (bo < bd && F.nonarch() && !F.is_dyadic());
        if (combine) {
            size_t i = oi, j = oj;
            FieldElem plus = B[i][i] + two * B[i][j] + B[j][j];
            FieldElem minus = B[i][i] - two * B[i][j] + B[j][j];
            bool use_plus = pivot_score(plus) <= pivot_score(minus);
            FieldElem sign = felem(F, use_plus ? 1 : -1);
            for (size_t k = 0; k < n; ++k) B[i][k] += sign * B[j][k];
            for (size_t k = 0; k < n; ++k) B[k][i] = B[i][k];
            B[i][i] = use_plus ? plus : minus;
            for (size_t k = 0; k < n; ++k) P[i][k] += sign * P[j][k];
            di = i;
        }
        size_t i = di;
        if (B[i][i].is_zero()) fail(ErrorCode::DegenerateForm, "zero pivot");
        FieldElem inv = B[i][i].inv();
        for (size_t k = 0; k < n; ++k) {
            if (done[k] || k == i || B[k][i].is_zero()) continue;
            FieldElem f = B[k][i] * inv;
            for (size_t l = 0; l < n; ++l) B[k][l] -= f * B[i][l];
            for (size_t l = 0; l < n; ++l) B[l][k] = B[k][l];
            for (size_t l = 0; l < n; ++l) P[k][l] -= f * P[i][l];
        }
        done[i] = true;
        a_by_slot[i] = B[i][i] / two;
    }
    // Report in slot order so that already-diagonal input comes back unchanged.
    return {a_by_slot, P};
}

inline DiagForm diagonalize(const QuadSpace& Q) {
    DiagForm D;
    for (auto& a : diagonalize_full(Q).a) D.coeffs.push_back(square_class(Q.field, a));
    return D;
}

inline SquareClass disc(const DiagForm& D) {
    SquareClass d;
    for (auto c : D.coeffs) d *= c;
    return d;
}

inline int hw(const GroundField& F, const DiagForm& D) {
    int s = 0;
    for (size_t i = 0; i < D.dim(); ++i)
        for (size_t j = i + 1; j < D.dim(); ++j) s ^= cup(F, D.coeffs[i], D.coeffs[j]);
    return s;
}

inline Br2sElem sw(const GroundField& F, const DiagForm& D) { return {disc(D), hw(F, D)}; }

/// Wall invariant via Wall(Q) = n z - SW(Q), dim Q = 2n.
inline Br2sElem wall_of_diag(const GroundField& F, const DiagForm& D) {
    if (D.dim() % 2) fail(ErrorCode::OddRank, "Wall invariant needs even rank");
    Br2sElem nz = br2s_mul(F, static_cast<long long>(D.dim() / 2), br2s_z(F));
    return br2s_sub(F, nz, sw(F, D));
}

inline Br2sElem wall(const QuadSpace& Q) {
    if (Q.dim() % 2) fail(ErrorCode::OddRank, "Wall invariant needs even rank");
    return wall_of_diag(Q.field, diagonalize(Q));
}

/// Relative Hasse-Witt invariant HW(Q', Q) = SW(Q') - SW(Q).
inline Br2sElem hw_rel(const QuadSpace& Qp, const QuadSpace& Q) {
    require_same(Qp.field, Q.field);
    if (Qp.dim() != Q.dim()) fail(ErrorCode::DimMismatch, "hw_rel needs equal dimensions");
    if (Q.dim() % 2) fail(ErrorCode::OddRank, "hw_rel needs even rank");
    const GroundField& F = Q.field;
    return br2s_sub(F, sw(F, diagonalize(Qp)), sw(F, diagonalize(Q)));
}

inline QuadSpace scale(const FieldElem& a, const QuadSpace& Q) {
    if (a.is_zero()) fail(ErrorCode::ZeroElement, "scaling by zero");
    QuadSpace R = Q;
    for (auto& row : R.gram)
        for (auto& x : row) x = a * x;
    return R;
}

inline QuadSpace dsum(const QuadSpace& A, const QuadSpace& B) {
    require_same(A.field, B.field);
    size_t n = A.dim(), m = B.dim();
    QuadSpace R{A.field, fmat_zero(A.field, n + m, n + m)};
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) R.gram[i][j] = A.gram[i][j];
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) R.gram[n + i][n + j] = B.gram[i][j];
    return R;
}

inline QuadSpace hyperbolic_plane(const GroundField& F) {
    return QuadSpace::from_rational(F, {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
}

/// Norm form x^2 - d y^2 of F(sqrt d) (hyperbolic when d is a square).
inline QuadSpace norm_form(const GroundField& F, SquareClass d) {
    return QuadSpace::diagonal(F, {felem(F, 1), -class_rep(F, d)});
}

inline Rat parse_rational(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    }
    fail(ErrorCode::ParseError, "expected integer or rational string, got " + j.dump());
}

/// {"gram": [[...]]} or {"diag": [...]}.
inline QuadSpace quadspace_from_json(const GroundField& F, const nlohmann::json& j) {
    if (j.contains("gram")) {
        QMat g;
        for (auto& row : j.at("gram")) {
            QVec r;
            for (auto& x : row) r.push_back(parse_rational(x));
            g.push_back(r);
        }
        for (size_t i = 0; i < g.size(); ++i) {
            if (g[i].size() != g.size()) fail(ErrorCode::ParseError, "gram matrix not square");
            for (size_t k = 0; k < i; ++k)
                if (g[i][k] != g[k][i]) fail(ErrorCode::ParseError, "gram matrix not symmetric");
        }
        return QuadSpace::from_rational(F, g);
    }
    if (j.contains("diag")) {
        FVec a;
        for (auto& x : j.at("diag")) a.push_back(felem(F, parse_rational(x)));
        return QuadSpace::diagonal(F, a);
    }
    fail(ErrorCode::ParseError, "quadratic space literal needs 'gram' or 'diag'");
}

} // namespace lqf
