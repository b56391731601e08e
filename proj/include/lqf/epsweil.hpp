#pragma once

#include <complex>
#include <numbers>
#include <string>

#include "lqf/quadform.hpp"

namespace lqf {

/// Exact fourth root of unity i^k.
struct FourthRoot {
    int k = 0;

    static FourthRoot one() { return {0}; }
    static FourthRoot minus_one() { return {2}; }

    std::complex<double> value() const {
        switch (k & 3) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
        }
    }

    std::string to_string() const {
        static const char* names[] = {"1", "i", "-1", "-i"};
        return names[k & 3];
    }

    friend FourthRoot operator*(FourthRoot a, FourthRoot b) { return {(a.k + b.k) & 3}; }
    FourthRoot inv() const { return {(4 - (k & 3)) & 3}; }
    friend bool operator==(FourthRoot a, FourthRoot b) { return ((a.k - b.k) & 3) == 0; }
    friend bool operator!=(FourthRoot a, FourthRoot b) { return !(a == b); }
};

inline constexpr double kSnapTolerance = 1e-6;

/// Nearest fourth root to a unit complex number; SnapFailure when none is within tolerance.
inline FourthRoot snap_fourth_root(std::complex<double> z, double tol = kSnapTolerance) {
    for (int k = 0; k < 4; ++k) {
        FourthRoot r{k};
        if (std::abs(z - r.value()) < tol) return r;
    }
    fail(ErrorCode::SnapFailure, "value " + std::to_string(z.real()) + "+" + std::to_string(z.imag()) +
                                     "i is not a fourth root of unity");
}

inline std::complex<double> phase(std::complex<double> z) {
    double r = std::abs(z);
    if (r < 1e-12) fail(ErrorCode::SnapFailure, "phase of a vanishing sum");
    return z / r;
}

/// Additive character psi_level; see psi_eval for the normalization.
struct AdditiveCharacter {
    GroundField field;
    int level = 0;
};

/// Conductor exponent a(chi_d).
inline int conductor(const GroundField& F, SquareClass d) {
    if (!F.nonarch() || d.is_one()) return 0;
    if (!F.is_dyadic()) return (d.bits & 1) ? 1 : 0;
    if (d.bits & 1) return 3;
    if (d.bits & 2) return 2;
    return 0;  // d = 5: unramified
}

/// Units of O modulo pi^a, as field elements.
inline std::vector<FieldElem> unit_residues(const GroundField& F, int a) {
    std::vector<FieldElem> out;
    if (a == 0) {
        out.push_back(felem(F, 1));
        return out;
    }
    if (F.kind == FieldKind::Padic) {
        long long m = 1;
        for (int i = 0; i < a; ++i) m *= F.p;
        for (long long u = 1; u < m; ++u)
            if (u % F.p) out.push_back(felem(F, u));
        return out;
    }
    long long total = 1;
    for (int i = 0; i < a; ++i) total *= F.p;
    for (long long idx = 0; idx < total; ++idx) {
        std::vector<int> c(a);
        long long r = idx;
        for (int i = 0; i < a; ++i) { c[i] = static_cast<int>(r % F.p); r /= F.p; }
        if (c[0] == 0) continue;
        out.push_back(FieldElem::laurent_poly(F, c));
    }
    return out;
}

/// Normalized Gauss sum chi(c) sum_{u in (O/pi^a)^x} chi(u) psi(u/c) / |.|, with v(c) = a(chi) - level.
inline std::complex<double> eps_quadratic_raw(SquareClass chi, const AdditiveCharacter& psi) {
    const GroundField& F = psi.field;
    switch (F.kind) {
    case FieldKind::Complex: return 1.0;
    case FieldKind::Real:
        if (chi.is_one()) return 1.0;
        return std::complex<double>(0, psi.level % 2 == 0 ? 1.0 : -1.0);
    default: break;
    }
    int a = conductor(F, chi);
    FieldElem c = FieldElem::pi(F).pow(a - psi.level);
    FieldElem cinv = c.inv();
    std::complex<double> s = 0;
    for (auto& u : unit_residues(F, a)) s += static_cast<double>(chi_eval(F, chi, u)) * psi_eval(F, psi.level, u * cinv);
    double expect = std::pow(static_cast<double>(F.p), a / 2.0);
    if (std::abs(std::abs(s) - expect) > kSnapTolerance * expect)
        fail(ErrorCode::SnapFailure, "Gauss sum has unexpected magnitude");
    return static_cast<double>(chi_eval(F, chi, c)) * s / std::abs(s);
}

inline FourthRoot eps_quadratic(SquareClass chi, const AdditiveCharacter& psi) {
    return snap_fourth_root(eps_quadratic_raw(chi, psi));
}

/// Epsilon factor of a degree-0 virtual orthogonal representation from its class (w1, w2bar).
inline FourthRoot eps_virtual(const Br2sElem& swdiff, const AdditiveCharacter& psi) {
    FourthRoot e = eps_quadratic(swdiff.chi, psi);
    return swdiff.x ? e * FourthRoot::minus_one() : e;
}

/// gamma(Q, psi) = eps(chi_Q, psi) zeta_Q, read off the Wall invariant.
inline FourthRoot weil_index_of_wall(const Br2sElem& w, const AdditiveCharacter& psi) {
    return eps_virtual(w, psi);
}

inline FourthRoot weil_index(const QuadSpace& Q, const AdditiveCharacter& psi) {
    require_same(Q.field, psi.field);
    return weil_index_of_wall(wall(Q), psi);
}

/// Real Weil index from the signature: exp(pi i sig / 4) for psi(x) = e(x), conjugated for the opposite sign.
inline std::complex<double> real_weil_signature_phase(const QuadSpace& Q, int level) {
    if (Q.field.kind != FieldKind::Real) fail(ErrorCode::InvalidArgument, "signature rule is for R");
    int sig = 0;
    for (auto c : diagonalize(Q).coeffs) sig += (c.bits & 1) ? -1 : 1;
    double s = level % 2 == 0 ? 1.0 : -1.0;
    return std::polar(1.0, s * std::numbers::pi * sig / 4.0);
}

namespace detail {

/// sum_{x mod pi^j} psi_std(u x^2 / pi^j) for a unit u.
inline std::complex<double> block_gauss_sum(const GroundField& F, const FieldElem& u, int j) {
    constexpr double tau = 2.0 * std::numbers::pi;
    if (j <= 0) return 1.0;
    long long m = 1;
    for (int i = 0; i < j; ++i) m *= F.p;
    std::complex<double> s = 0;
    if (F.kind == FieldKind::Padic) {
        long long ur = static_cast<long long>(u.residue_int(j));
        std::vector<std::complex<double>> table(m);
        for (long long r = 0; r < m; ++r) table[r] = std::polar(1.0, tau * static_cast<double>(r) / static_cast<double>(m));
        for (long long x = 0; x < m; ++x) {
            long long r = static_cast<long long>((__int128)ur * ((__int128)x * x % m) % m);
            s += table[r];
        }
        return s;
    }
    // Laurent: coefficient of t^(j-1) in u x^2, over all x of degree < j.
    auto uc = u.residue_poly(j);
    int p = F.p;
    std::vector<std::complex<double>> table(p);
    for (int r = 0; r < p; ++r) table[r] = std::polar(1.0, tau * r / p);
    std::vector<int> x(j, 0);
    for (long long idx = 0; idx < m; ++idx) {
        long long r = idx;
        for (int i = 0; i < j; ++i) { x[i] = static_cast<int>(r % p); r /= p; }
        // (x^2)_k for k <= j-1, then the t^(j-1) coefficient of u x^2
        long long top = 0;
        for (int k = 0; k < j; ++k) {
            long long sq = 0;
            for (int i = 0; i <= k; ++i) sq += static_cast<long long>(x[i]) * x[k - i];
            top += static_cast<long long>(uc[j - 1 - k]) * (sq % p);
        }
        s += table[top % p];
    }
    return s;
}

} // namespace detail

struct GaussOracleResult {
    std::complex<double> phase;      // stabilized phase
    std::complex<double> phase_next; // phase at the next truncation
    double magnitude = 0;            // |I(m)|
    double magnitude_next = 0;
    int m = 0;
};

/// Weil index oracle: phase of I(m) = integral over pi^-m O^n of psi(Q(y)) dy, evaluated blockwise
/// after diagonalizing and removing even powers of pi from each coefficient, compared at m and m+1.
inline GaussOracleResult weil_gauss_oracle(const QuadSpace& Q, const AdditiveCharacter& psi) {
    const GroundField& F = Q.field;
    require_same(F, psi.field);
    if (!F.nonarch()) fail(ErrorCode::InvalidArgument, "Gauss-sum oracle needs a nonarchimedean field");
    auto dg = diagonalize_full(Q);
    struct Block {
        FieldElem unit;
        int k;
    };
    std::vector<Block> blocks;
    FieldElem pi = FieldElem::pi(F);
    for (auto& a : dg.a) {
        if (a.is_zero()) fail(ErrorCode::DegenerateForm, "zero diagonal entry");
        int k = ((a.val % 2) + 2) % 2;
        FieldElem u = a * pi.pow(-a.val);
        blocks.push_back({u, k});
    }
    int j0 = F.is_dyadic() ? 3 : 1;
    // smallest m with 2m + level - k >= j0 for every block
    int m = 0;
    for (auto& b : blocks) m = std::max(m, (j0 + b.k - psi.level + 1) / 2);
    auto integral = [&](int mm) {
        std::complex<double> total = 1.0;
        for (auto& b : blocks) {
            int j = 2 * mm + psi.level - b.k;
            auto g = detail::block_gauss_sum(F, b.unit, j);
            // I = q^m q^-j G(j)
            total *= g * std::pow(static_cast<double>(F.p), mm - j);
        }
        return total;
    };
    auto I0 = integral(m), I1 = integral(m + 1);
    GaussOracleResult r{phase(I0), phase(I1), std::abs(I0), std::abs(I1), m};
    if (std::abs(r.phase - r.phase_next) > kSnapTolerance ||
        std::abs(r.magnitude - r.magnitude_next) > kSnapTolerance * r.magnitude)
        fail(ErrorCode::NotStabilized, "Gauss integral did not stabilize between m=" + std::to_string(m) + " and m=" +
                                           std::to_string(m + 1));
    return r;
}

/// Direct, unfactored sum over (O/pi^N)^n, N = 2m + level, of psi_std(pi^-N Q(x)) for an integral form
/// given by integer coefficients: Q(x) = sum_i q[i][i] x_i^2 + sum_{i<j} q[i][j] x_i x_j.
inline std::complex<double> weil_gauss_direct(const GroundField& F, const IMat& q, int level, int m) {
    constexpr double tau = 2.0 * std::numbers::pi;
    int N = 2 * m + level;
    if (N <= 0) return 1.0;
    size_t n = q.size();
    long long M = 1;
    for (int i = 0; i < N; ++i) M *= F.p;
    long long total = 1;
    for (size_t i = 0; i < n; ++i) total *= M;
    std::complex<double> s = 0;
    std::vector<long long> x(n);
    if (F.kind == FieldKind::Padic) {
        for (long long idx = 0; idx < total; ++idx) {
            long long r = idx;
            for (size_t i = 0; i < n; ++i) { x[i] = r % M; r /= M; }
            __int128 v = 0;
            for (size_t i = 0; i < n; ++i)
                for (size_t j = i; j < n; ++j) v += (__int128)(((q[i][j] % M) + M) % M) * (x[i] * x[j] % M);
            long long res = static_cast<long long>(v % M);
            s += std::polar(1.0, tau * static_cast<double>(res) / static_cast<double>(M));
        }
        return s;
    }
    if (F.kind != FieldKind::Laurent) fail(ErrorCode::InvalidArgument, "direct Gauss sum needs a nonarchimedean field");
    int p = F.p;
    // x_i ranges over polynomials of degree < N, encoded base p.
    std::vector<std::vector<int>> xs(n, std::vector<int>(N));
    for (long long idx = 0; idx < total; ++idx) {
        long long r = idx;
        for (size_t i = 0; i < n; ++i) {
            long long c = r % M;
            r /= M;
            for (int d = 0; d < N; ++d) { xs[i][d] = static_cast<int>(c % p); c /= p; }
        }
        long long top = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j) {
                long long coef = ((q[i][j] % p) + p) % p;
                if (!coef) continue;
                long long prod = 0;
                for (int a = 0; a < N; ++a) prod += static_cast<long long>(xs[i][a]) * xs[j][N - 1 - a];
                top += coef * (prod % p);
            }
        s += std::polar(1.0, tau * static_cast<double>(top % p) / p);
    }
    return s;
}

inline nlohmann::json to_json(const FourthRoot& r) { return r.to_string(); }

} // namespace lqf
