#pragma once

#include <bit>
#include <vector>

#include "lqf/quadform.hpp"

namespace lqf {

/// Z/2-graded algebra with basis indexed by subsets of {0..n-1}, given by structure constants:
/// e_S e_T = table[S][T].coef * e_{table[S][T].index}.
struct GradedAlgebra {
    struct Entry {
        FieldElem coef;
        unsigned index = 0;
    };
    using Elem = FVec;

    GroundField field;
    int n = 0;
    std::vector<std::vector<Entry>> table;

    size_t dim() const { return size_t{1} << n; }
    static int grade(unsigned S) { return std::popcount(S); }

    Elem zero() const { return Elem(dim(), FieldElem::make_zero(field)); }

    Elem scalar(const FieldElem& c) const {
        Elem x = zero();
        x[0] = c;
        return x;
    }

    Elem basis(unsigned S) const {
        Elem x = zero();
        x[S] = felem(field, 1);
        return x;
    }

    Elem generator(int i) const { return basis(1u << i); }

    /// Degree-one element sum v_i e_i.
    Elem vector(const FVec& v) const {
        Elem x = zero();
        for (int i = 0; i < n; ++i) x[1u << i] = v[i];
        return x;
    }

    Elem mul(const Elem& x, const Elem& y) const {
        Elem r = zero();
        for (unsigned S = 0; S < dim(); ++S) {
            if (x[S].is_zero()) continue;
            for (unsigned T = 0; T < dim(); ++T) {
                if (y[T].is_zero()) continue;
                const Entry& e = table[S][T];
                r[e.index] += x[S] * y[T] * e.coef;
            }
        }
        return r;
    }

    Elem add(const Elem& x, const Elem& y) const {
        Elem r = x;
        for (size_t i = 0; i < dim(); ++i) r[i] += y[i];
        return r;
    }

    Elem sub(const Elem& x, const Elem& y) const {
        Elem r = x;
        for (size_t i = 0; i < dim(); ++i) r[i] -= y[i];
        return r;
    }

    Elem neg(const Elem& x) const {
        Elem r = x;
        for (auto& c : r) c = -c;
        return r;
    }

    /// Transpose anti-involution: reverses products of generators.
    Elem transpose(const Elem& x) const {
        Elem r = x;
        for (unsigned S = 0; S < dim(); ++S) {
            int k = grade(S);
            if ((k * (k - 1) / 2) % 2) r[S] = -r[S];
        }
        return r;
    }

    /// Main automorphism: (-1)^degree.
    Elem parity(const Elem& x) const {
        Elem r = x;
        for (unsigned S = 0; S < dim(); ++S)
            if (grade(S) % 2) r[S] = -r[S];
        return r;
    }

    bool is_scalar(const Elem& x) const {
        for (size_t i = 1; i < dim(); ++i)
            if (!x[i].is_zero()) return false;
        return true;
    }

    bool is_zero(const Elem& x) const {
        for (auto& c : x)
            if (!c.is_zero()) return false;
        return true;
    }

    bool equal(const Elem& x, const Elem& y) const { return is_zero(sub(x, y)); }
};

/// Clifford algebra of sum a_i x_i^2: e_i^2 = a_i, e_i e_j = -e_j e_i.
inline GradedAlgebra clifford_algebra(const GroundField& F, const FVec& a) {
    if (a.size() > 4) fail(ErrorCode::RankTooLarge, "Clifford oracle limited to rank 4");
    for (auto& x : a)
        if (x.is_zero()) fail(ErrorCode::ZeroElement, "zero diagonal coefficient");
    GradedAlgebra A;
    A.field = F;
    A.n = static_cast<int>(a.size());
    size_t d = A.dim();
    A.table.assign(d, std::vector<GradedAlgebra::Entry>(d));
    for (unsigned S = 0; S < d; ++S)
        for (unsigned T = 0; T < d; ++T) {
            int swaps = 0;
            for (int i = 0; i < A.n; ++i)
                if (S >> i & 1) swaps += std::popcount(T & ((1u << i) - 1));
            FieldElem c = felem(F, swaps % 2 ? -1 : 1);
            for (int i = 0; i < A.n; ++i)
                if ((S & T) >> i & 1) c = c * a[i];
            A.table[S][T] = {c, S ^ T};
        }
    return A;
}

inline GradedAlgebra clifford_algebra(const GroundField& F, const DiagForm& D) {
    if (D.dim() > 4) fail(ErrorCode::RankTooLarge, "Clifford oracle limited to rank 4");
    FVec a;
    for (auto c : D.coeffs) a.push_back(class_rep(F, c));
    return clifford_algebra(F, a);
}

/// Graded tensor product: (x (x) y)(x' (x) y') = (-1)^{|y||x'|} x x' (x) y y'.
/// Basis index of e_S (x) e_T is S | (T << A.n).
inline GradedAlgebra graded_tensor(const GradedAlgebra& A, const GradedAlgebra& B) {
    require_same(A.field, B.field);
    GradedAlgebra C;
    C.field = A.field;
    C.n = A.n + B.n;
    size_t d = C.dim();
    unsigned maskA = (1u << A.n) - 1;
    C.table.assign(d, std::vector<GradedAlgebra::Entry>(d));
    for (unsigned X = 0; X < d; ++X)
        for (unsigned Y = 0; Y < d; ++Y) {
            unsigned s1 = X & maskA, t1 = X >> A.n, s2 = Y & maskA, t2 = Y >> A.n;
            const auto& ea = A.table[s1][s2];
            const auto& eb = B.table[t1][t2];
            int sign = (GradedAlgebra::grade(t1) * GradedAlgebra::grade(s2)) % 2 ? -1 : 1;
            C.table[X][Y] = {felem(C.field, sign) * ea.coef * eb.coef, ea.index | (eb.index << A.n)};
        }
    return C;
}

/// Exhaustive associativity check of the structure constants.
inline bool is_associative(const GradedAlgebra& A) {
    for (unsigned S = 0; S < A.dim(); ++S)
        for (unsigned T = 0; T < A.dim(); ++T)
            for (unsigned U = 0; U < A.dim(); ++U) {
                auto x = A.basis(S), y = A.basis(T), z = A.basis(U);
                if (!A.equal(A.mul(A.mul(x, y), z), A.mul(x, A.mul(y, z)))) return false;
            }
    return true;
}

/// Product e_0 e_1 ... e_{n-1}, computed in the algebra.
inline GradedAlgebra::Elem top_element(const GradedAlgebra& A) {
    auto w = A.scalar(felem(A.field, 1));
    for (int i = 0; i < A.n; ++i) w = A.mul(w, A.generator(i));
    return w;
}

/// E(A) = F(sqrt d) where the center of the even part is F[w], w = e_1...e_n, w^2 = d.
inline SquareClass even_center_class(const GradedAlgebra& A) {
    if (A.n > 4) fail(ErrorCode::RankTooLarge, "Clifford oracle limited to rank 4");
    if (A.n % 2) fail(ErrorCode::OddRank, "even center class needs even rank");
    if (A.n == 0) return {};
    auto w = top_element(A);
    for (unsigned S = 0; S < A.dim(); ++S) {
        if (GradedAlgebra::grade(S) % 2) continue;
        auto b = A.basis(S);
        if (!A.equal(A.mul(w, b), A.mul(b, w))) fail(ErrorCode::InvalidArgument, "w not central in even part");
    }
    auto w2 = A.mul(w, w);
    if (!A.is_scalar(w2)) fail(ErrorCode::InvalidArgument, "w^2 not scalar");
    return square_class(A.field, w2[0]);
}

/// Quaternion algebra (alpha, beta): split iff beta is a norm from F(sqrt alpha).
inline bool quaternion_is_split(const GroundField& F, const FieldElem& alpha, const FieldElem& beta) {
    return hilbert(F, square_class(F, alpha), square_class(F, beta)) == 1;
}

/// Given x, y in A with x^2, y^2 scalar and xy = -yx, returns the Brauer bit of the quaternion
/// subalgebra they generate.
inline int quaternion_subalgebra_bit(const GradedAlgebra& A, const GradedAlgebra::Elem& x,
                                     const GradedAlgebra::Elem& y) {
    auto x2 = A.mul(x, x), y2 = A.mul(y, y);
    if (!A.is_scalar(x2) || !A.is_scalar(y2)) fail(ErrorCode::InvalidArgument, "generators must square to scalars");
    if (!A.equal(A.mul(x, y), A.neg(A.mul(y, x)))) fail(ErrorCode::InvalidArgument, "generators must anticommute");
    return quaternion_is_split(A.field, x2[0], y2[0]) ? 0 : 1;
}

/// Wall invariant read off the algebra: (class of the center of C_0, Brauer class of C).
/// Rank 4 uses the decomposition C = <e1, e2> (x) <e1e2e3, e1e2e4> into commuting quaternion algebras.
inline Br2sElem wall_via_clifford(const GradedAlgebra& A) {
    if (A.n != 2 && A.n != 4) fail(ErrorCode::RankTooLarge, "wall_via_clifford handles ranks 2 and 4");
    SquareClass center = even_center_class(A);
    auto e = [&](int i) { return A.generator(i); };
    int bit = quaternion_subalgebra_bit(A, e(0), e(1));
    if (A.n == 4) {
        auto e12 = A.mul(e(0), e(1));
        auto u = A.mul(e12, e(2)), v = A.mul(e12, e(3));
        for (int i = 0; i < 2; ++i)
            for (auto* g : {&u, &v})
                if (!A.equal(A.mul(*g, e(i)), A.mul(e(i), *g)))
                    fail(ErrorCode::InvalidArgument, "quaternion factors do not commute");
        bit ^= quaternion_subalgebra_bit(A, u, v);
    }
    return {center, bit};
}

inline Br2sElem wall_via_clifford(const GroundField& F, const DiagForm& D) {
    return wall_via_clifford(clifford_algebra(F, D));
}

/// Coordinates of the vectors in a diagonalizing basis, plus the diagonal coefficients.
struct OrthogonalFrame {
    FVec a;
    FMat coords;  // coords[i] = coordinates of input vector i
};

inline OrthogonalFrame orthogonal_coordinates(const QuadSpace& Q, const FMat& vectors) {
    auto Dg = diagonalize_full(Q);
    FMat Pt = transpose(Dg.basis);
    OrthogonalFrame out{Dg.a, {}};
    for (auto& v : vectors) out.coords.push_back(fsolve(Pt, v));
    return out;
}

/// Spinor norm of r_{v_1} ... r_{v_k}, computed as N(x) = x_t x for x = v_1 ... v_k in C(Q).
inline SquareClass spinor_norm_oracle(const QuadSpace& Q, const FMat& vectors) {
    const GroundField& F = Q.field;
    for (auto& v : vectors)
        if (Q.value(v).is_zero()) fail(ErrorCode::IsotropicVector, "reflection in an isotropic vector");
    if (vectors.empty()) return {};
    auto fr = orthogonal_coordinates(Q, vectors);
    auto A = clifford_algebra(F, fr.a);
    auto x = A.scalar(felem(F, 1));
    for (auto& c : fr.coords) x = A.mul(x, A.vector(c));
    auto N = A.mul(A.transpose(x), x);
    if (!A.is_scalar(N)) fail(ErrorCode::InvalidArgument, "norm is not scalar");
    return square_class(F, N[0]);
}

/// Twisted conjugation w -> -v w v^{-1} restricted to degree one; equals r_v(w).
inline GradedAlgebra::Elem twisted_conjugation(const GradedAlgebra& A, const GradedAlgebra::Elem& v,
                                               const GradedAlgebra::Elem& w) {
    auto v2 = A.mul(v, v);
    if (!A.is_scalar(v2) || v2[0].is_zero()) fail(ErrorCode::IsotropicVector, "v not invertible");
    auto vinv = v;
    for (auto& c : vinv) c = c / v2[0];
    return A.neg(A.mul(A.mul(v, w), vinv));
}

} // namespace lqf
