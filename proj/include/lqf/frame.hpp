#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lqf/br2s.hpp"
#include "lqf/linalg.hpp"
#include "lqf/rootdata.hpp"

namespace lqf {

/// Element of a frame field K, as coordinates on the F-basis x^a y^b (index b*f + a).
using KElem = FVec;

namespace detail {

/// Polynomials over F_p, low degree first.
using ModPoly = std::vector<long long>;

inline void trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ModPoly poly_mod(ModPoly a, const ModPoly& m, long long p) {
    trim(a);
    long long lead_inv = modl::inv(m.back(), p);
    while (a.size() >= m.size()) {
        long long c = a.back() * lead_inv % p;
        size_t shift = a.size() - m.size();
        for (size_t k = 0; k < m.size(); ++k) a[shift + k] = modl::md(a[shift + k] - c * m[k], p);
        trim(a);
    }
    return a;
}

inline ModPoly poly_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, long long p) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_mod(r, m, p);
}

inline ModPoly poly_powmod(ModPoly a, long long e, const ModPoly& m, long long p) {
    ModPoly r{1};
    a = poly_mod(a, m, p);
    while (e > 0) {
        if (e & 1) r = poly_mulmod(r, a, m, p);
        a = poly_mulmod(a, a, m, p);
        e >>= 1;
    }
    return r;
}

/// Irreducibility by trial division by every monic polynomial of degree <= deg/2.
inline bool poly_irreducible(const ModPoly& g, long long p) {
    int f = static_cast<int>(g.size()) - 1;
    for (int d = 1; 2 * d <= f; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long idx = 0; idx < count; ++idx) {
            ModPoly h(d + 1, 0);
            long long r = idx;
            for (int i = 0; i < d; ++i) { h[i] = r % p; r /= p; }
            h[d] = 1;
            if (poly_mod(g, h, p).empty()) return false;
        }
    }
    return true;
}

/// Lexicographically first monic irreducible polynomial of degree f over F_p.
inline ModPoly first_irreducible(int f, long long p) {
    if (f == 1) return {0, 1};
    long long count = 1;
    for (int i = 0; i < f; ++i) count *= p;
    for (long long idx = 0; idx < count; ++idx) {
        ModPoly g(f + 1, 0);
        long long r = idx;
        for (int i = 0; i < f; ++i) { g[i] = r % p; r /= p; }
        g[f] = 1;
        if (g[0] != 0 && poly_irreducible(g, p)) return g;
    }
    fail(ErrorCode::InvalidArgument, "no irreducible polynomial found");
}

inline std::vector<long long> prime_factors(long long n) {
    std::vector<long long> out;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back(n);
    return out;
}

inline long long ipow(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace detail

/// K = F[x, y] / (g(x), y^e - varpi) with g monic of degree f.
struct FrameField {
    GroundField F;
    int f = 1, e = 1;
    FVec g;  // g[0..f], g[f] = 1
    FieldElem varpi;

    int dim() const { return e * f; }

    KElem zero() const { return KElem(dim(), FieldElem::make_zero(F)); }

    KElem scalar(const FieldElem& c) const {
        KElem r = zero();
        r[0] = c;
        return r;
    }

    KElem one() const { return scalar(felem(F, 1)); }

    KElem basis(int k) const {
        KElem r = zero();
        r[k] = felem(F, 1);
        return r;
    }

    KElem add(const KElem& a, const KElem& b) const {
        KElem r = a;
        for (int k = 0; k < dim(); ++k) r[k] += b[k];
        return r;
    }

    KElem sub(const KElem& a, const KElem& b) const {
        KElem r = a;
        for (int k = 0; k < dim(); ++k) r[k] -= b[k];
        return r;
    }

    KElem scale(const FieldElem& c, const KElem& a) const {
        KElem r = a;
        for (auto& x : r) x = c * x;
        return r;
    }

    KElem mul(const KElem& a, const KElem& b) const {
        int A = 2 * f - 1, B = 2 * e - 1;
        std::vector<FVec> acc(B, FVec(A, FieldElem::make_zero(F)));
        for (int i = 0; i < dim(); ++i) {
            if (a[i].is_zero()) continue;
            for (int j = 0; j < dim(); ++j) {
                if (b[j].is_zero()) continue;
                acc[i / f + j / f][i % f + j % f] += a[i] * b[j];
            }
        }
        for (int bb = B - 1; bb >= e; --bb)
            for (int aa = 0; aa < A; ++aa)
                if (!acc[bb][aa].is_zero()) acc[bb - e][aa] += varpi * acc[bb][aa];
        KElem r = zero();
        for (int bb = 0; bb < e; ++bb) {
            FVec& row = acc[bb];
            for (int aa = A - 1; aa >= f; --aa) {
                if (row[aa].is_zero()) continue;
                FieldElem c = row[aa];
                for (int k = 0; k < f; ++k) row[aa - f + k] -= c * g[k];
            }
            for (int aa = 0; aa < f; ++aa) r[bb * f + aa] = row[aa];
        }
        return r;
    }

    KElem pow(KElem a, long long n) const {
        KElem r = one();
        while (n > 0) {
            if (n & 1) r = mul(r, a);
            a = mul(a, a);
            n >>= 1;
        }
        return r;
    }

    /// Column j holds the coordinates of a * b_j.
    FMat mult_matrix(const KElem& a) const {
        FMat M = fmat_zero(F, dim(), dim());
        for (int j = 0; j < dim(); ++j) {
            KElem c = mul(a, basis(j));
            for (int i = 0; i < dim(); ++i) M[i][j] = c[i];
        }
        return M;
    }

    KElem inv(const KElem& a) const { return fsolve(mult_matrix(a), one()); }

    FieldElem norm(const KElem& a) const { return fdet(mult_matrix(a)); }

    bool is_zero(const KElem& a) const {
        for (auto& c : a)
            if (!c.is_zero()) return false;
        return true;
    }

    /// The F-coordinate of an element known to lie in F; PrecisionLoss if the other
    /// coordinates are not negligible.
    FieldElem to_base(const KElem& a) const {
        if (!F.nonarch()) {
            for (int k = 1; k < dim(); ++k)
                if (!a[k].is_zero()) fail(ErrorCode::PrecisionLoss, "element is not in the base field");
            return a[0];
        }
        int scale = FieldElem::kExact;
        for (auto& c : a)
            if (!c.is_zero()) scale = std::min(scale, c.val);
        for (int k = 1; k < dim(); ++k)
            if (!a[k].is_zero() && a[k].val < scale + F.precision / 2)
                fail(ErrorCode::PrecisionLoss, "element is not in the base field at current precision");
        return a[0];
    }
};

/// A tame Galois frame K/F with group G = <tau, phi | tau^e, phi^f, phi tau phi^-1 = tau^q>.
/// Element tau^i phi^j has index i + e*j; tau fixes x and sends y to zeta*y, phi is Frobenius on x and fixes y.
/// Over R the only nontrivial frame is C = R[x]/(x^2+1) with f = 2.
struct GaloisFrame {
    FrameField K;
    long long q = 0;
    long long c = 1;  // varpi = pi * c
    std::vector<std::vector<int>> table;
    std::vector<int> inverse;
    std::vector<FMat> act;  // act[s] column j = coordinates of s(b_j)
    std::vector<int> gens;
    std::vector<std::vector<int>> characters;  // nontrivial homomorphisms G -> F_2
    std::vector<SquareClass> classes;          // class of the quadratic subfield cut out by each character

    const GroundField& field() const { return K.F; }
    int order() const { return static_cast<int>(table.size()); }
    int elem(int i, int j) const { return i + K.e * j; }
    int mul(int s, int t) const { return table[s][t]; }

    std::string name() const {
        if (order() == 1) return "trivial";
        std::string s = "f" + std::to_string(K.f) + "e" + std::to_string(K.e);
        if (K.e > 1) s += "c" + std::to_string(c);
        return s;
    }

    KElem apply(int s, const KElem& a) const {
        KElem r = K.zero();
        for (int j = 0; j < K.dim(); ++j) {
            if (a[j].is_zero()) continue;
            for (int i = 0; i < K.dim(); ++i) r[i] += act[s][i][j] * a[j];
        }
        return r;
    }

    /// Class of the quadratic etale algebra attached to a homomorphism G -> F_2.
    SquareClass class_of_character(const std::vector<int>& chi) const {
        bool trivial = true;
        for (int v : chi) trivial = trivial && (v & 1) == 0;
        if (trivial) return {};
        for (size_t k = 0; k < characters.size(); ++k)
            if (characters[k] == chi) return classes[k];
        fail(ErrorCode::InvalidArgument, "not a character of the frame group");
    }

    /// Extends images of the generators to a homomorphism into a finite group with the given law,
    /// or returns nullopt when the relations fail.
    std::optional<std::vector<int>> extend(const std::vector<int>& gen_images,
                                           const std::function<int(int, int)>& law, int identity) const {
        if (gen_images.size() != gens.size()) fail(ErrorCode::InvalidArgument, "wrong number of generator images");
        int gt = identity, gp = identity;
        size_t k = 0;
        if (K.e > 1) gt = gen_images[k++];
        if (K.f > 1) gp = gen_images[k++];
        std::vector<int> h(order());
        for (int j = 0; j < K.f; ++j) {
            int pj = identity;
            for (int m = 0; m < j; ++m) pj = law(pj, gp);
            int ti = identity;
            for (int i = 0; i < K.e; ++i) {
                h[elem(i, j)] = law(ti, pj);
                ti = law(ti, gt);
            }
        }
        for (int s = 0; s < order(); ++s)
            for (int t = 0; t < order(); ++t)
                if (law(h[s], h[t]) != h[mul(s, t)]) return std::nullopt;
        return h;
    }
};

namespace detail {

/// Coordinates of a residue-field element (poly in x mod g) as a K element with exact coefficients.
inline KElem lift_residue(const FrameField& K, const ModPoly& a) {
    KElem r = K.zero();
    for (size_t k = 0; k < a.size() && static_cast<int>(k) < K.f; ++k)
        if (a[k]) r[k] = felem(K.F, a[k]);
    return r;
}

/// Newton iteration for a root of P (coefficients in F) in the unramified part, starting from r.
inline KElem newton_root(const FrameField& K, const FVec& P, KElem r) {
    auto eval = [&](const KElem& z, const FVec& coeffs) {
        KElem acc = K.zero();
        for (size_t k = coeffs.size(); k-- > 0;) acc = K.add(K.mul(acc, z), K.scalar(coeffs[k]));
        return acc;
    };
    FVec dP;
    for (size_t k = 1; k < P.size(); ++k) dP.push_back(felem(K.F, static_cast<long long>(k)) * P[k]);
    for (int it = 0; it < 64; ++it) {
        KElem v = eval(r, P);
        if (K.is_zero(v)) return r;
        KElem step = K.mul(v, K.inv(eval(r, dP)));
        bool done = true;
        for (auto& x : step)
            if (!x.is_zero()) done = false;
        r = K.sub(r, step);
        if (done) return r;
    }
    return r;
}

} // namespace detail

inline GaloisFrame make_frame(const GroundField& F, int f, int e, long long c = 1) {
    GaloisFrame G;
    FrameField& K = G.K;
    K.F = F;
    K.f = f;
    K.e = e;
    G.c = c;
    if (F.kind == FieldKind::Complex) fail(ErrorCode::InvalidArgument, "C has no nontrivial frames");
    if (!F.nonarch()) {
        if (e != 1 || (f != 1 && f != 2)) fail(ErrorCode::InvalidArgument, "frames over R are R and C");
        K.varpi = felem(F, 1);
        K.g = f == 1 ? FVec{felem(F, 0), felem(F, 1)} : FVec{felem(F, 1), felem(F, 0), felem(F, 1)};
    } else {
        G.q = F.p;
        if (std::gcd(static_cast<long long>(e), G.q) != 1) fail(ErrorCode::InvalidArgument, "frame must be tame");
        long long qf = detail::ipow(G.q, f);
        if ((qf - 1) % e != 0) fail(ErrorCode::InvalidArgument, "e must divide q^f - 1 for a Galois frame");
        if (c % F.p == 0) fail(ErrorCode::InvalidArgument, "c must be a unit");
        auto gp = detail::first_irreducible(f, F.p);
        for (auto x : gp) K.g.push_back(felem(F, x));
        K.varpi = FieldElem::pi(F) * felem(F, c);
    }
    int n = K.dim();
    // Frobenius image of x and zeta_e, both in the unramified part.
    std::vector<KElem> frob_x;
    KElem zeta = K.one();
    if (f == 1) {
        frob_x.push_back(K.zero());
    } else if (!F.nonarch()) {
        frob_x.push_back(K.basis(1));
        frob_x.push_back(K.scale(felem(F, -1), K.basis(1)));
    }
    if (F.nonarch()) {
        auto gp = detail::first_irreducible(f, F.p);
        detail::ModPoly xp = detail::poly_powmod({0, 1}, F.p, gp, F.p);
        if (f > 1) {
            KElem r = detail::lift_residue(K, xp);
            if (F.kind == FieldKind::Padic) r = detail::newton_root(K, K.g, r);
            frob_x.assign(f, K.zero());
            // phi^{j+1}(x) is phi^j(x) evaluated at phi(x)
            KElem cur = K.basis(1);
            for (int j = 0; j < f; ++j) {
                frob_x[j] = cur;
                KElem nx = K.zero(), pw = K.one();
                for (int a = 0; a < f; ++a) {
                    nx = K.add(nx, K.scale(cur[a], pw));
                    pw = K.mul(pw, r);
                }
                cur = nx;
            }
        }
        if (e > 1) {
            long long qf = detail::ipow(G.q, f);
            auto primes = detail::prime_factors(e);
            bool found = false;
            long long count = detail::ipow(F.p, f);
            for (long long idx = 1; idx < count && !found; ++idx) {
                detail::ModPoly a(f, 0);
                long long r = idx;
                for (int i = 0; i < f; ++i) { a[i] = r % F.p; r /= F.p; }
                detail::trim(a);
                detail::ModPoly z = f == 1 ? detail::ModPoly{mod_pow(a[0], (qf - 1) / e, F.p)}
                                           : detail::poly_powmod(a, (qf - 1) / e, gp, F.p);
                bool primitive = true;
                for (auto r2 : primes) {
                    detail::ModPoly zz = f == 1 ? detail::ModPoly{mod_pow(z[0], e / r2, F.p)}
                                                : detail::poly_powmod(z, e / r2, gp, F.p);
                    detail::trim(zz);
                    if (zz == detail::ModPoly{1}) primitive = false;
                }
                if (!primitive) continue;
                found = true;
                zeta = detail::lift_residue(K, z);
                if (F.kind == FieldKind::Padic) {
                    FVec P(e + 1, FieldElem::make_zero(F));
                    P[0] = felem(F, -1);
                    P[e] = felem(F, 1);
                    zeta = detail::newton_root(K, P, zeta);
                }
            }
            if (!found) fail(ErrorCode::InvalidArgument, "no primitive e-th root of unity");
        }
    }
    int order = e * f;
    G.table.assign(order, std::vector<int>(order));
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < f; ++j)
            for (int k = 0; k < e; ++k)
                for (int l = 0; l < f; ++l) {
                    long long qj = 1;
                    for (int m = 0; m < j; ++m) qj = qj * G.q % e;
                    int ii = static_cast<int>((i + k * qj) % e);
                    G.table[G.elem(i, j)][G.elem(k, l)] = G.elem(ii, (j + l) % f);
                }
    G.inverse.assign(order, 0);
    for (int s = 0; s < order; ++s)
        for (int t = 0; t < order; ++t)
            if (G.table[s][t] == 0) G.inverse[s] = t;
    if (e > 1) G.gens.push_back(G.elem(1, 0));
    if (f > 1) G.gens.push_back(G.elem(0, 1));
    // Action matrices: s = tau^i phi^j sends x^a y^b to phi^j(x)^a zeta^{ib} y^b.
    std::vector<KElem> zeta_pow{K.one()};
    for (int k = 1; k < e; ++k) zeta_pow.push_back(K.mul(zeta_pow.back(), zeta));
    G.act.assign(order, fmat_zero(F, n, n));
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < f; ++j) {
            int s = G.elem(i, j);
            for (int b = 0; b < e; ++b) {
                KElem yb = K.basis(b * f);
                KElem base = K.mul(zeta_pow[(i * b) % e], yb);
                KElem xa = K.one();
                for (int a = 0; a < f; ++a) {
                    KElem img = K.mul(xa, base);
                    for (int r = 0; r < n; ++r) G.act[s][r][b * f + a] = img[r];
                    if (f > 1) xa = K.mul(xa, frob_x[j]);
                }
            }
        }
    // Characters G -> F_2 are determined by their values on tau and phi.
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            if (a == 0 && b == 0) continue;
            if ((a && e == 1) || (b && f == 1)) continue;
            std::vector<int> chi(order);
            for (int i = 0; i < e; ++i)
                for (int j = 0; j < f; ++j) chi[G.elem(i, j)] = (a * i + b * j) & 1;
            bool hom = true;
            for (int s = 0; s < order && hom; ++s)
                for (int t = 0; t < order && hom; ++t)
                    hom = chi[G.table[s][t]] == ((chi[s] + chi[t]) & 1);
            if (!hom) continue;
            // theta = sum chi(s) s(beta) spans the -1 eigenline; theta^2 lies in F.
            bool done = false;
            for (int k = 0; k < n && !done; ++k) {
                KElem theta = K.zero();
                for (int s = 0; s < order; ++s) {
                    KElem im = G.apply(s, K.basis(k));
                    theta = chi[s] ? K.sub(theta, im) : K.add(theta, im);
                }
                if (K.is_zero(theta)) continue;
                FieldElem t2 = K.to_base(K.mul(theta, theta));
                if (t2.is_zero()) continue;
                G.characters.push_back(chi);
                G.classes.push_back(square_class(F, t2));
                done = true;
            }
            if (!done) fail(ErrorCode::PrecisionLoss, "could not find the quadratic subfield");
        }
    return G;
}

inline GaloisFrame trivial_frame(const GroundField& F) { return make_frame(F, 1, 1); }

/// All tame Galois frames of order <= max_order, up to isomorphism of K.
inline std::vector<GaloisFrame> enumerate_frames(const GroundField& F, int max_order = 6) {
    std::vector<GaloisFrame> out;
    if (F.kind == FieldKind::Complex) {
        out.push_back(trivial_frame(F));
        return out;
    }
    if (!F.nonarch()) {
        out.push_back(make_frame(F, 1, 1));
        if (max_order >= 2) out.push_back(make_frame(F, 2, 1));
        return out;
    }
    long long p = F.p;
    for (int order = 1; order <= max_order; ++order)
        for (int f = 1; f <= order; ++f) {
            if (order % f) continue;
            int e = order / f;
            if (std::gcd(static_cast<long long>(e), p) != 1) continue;
            long long qf = detail::ipow(p, f);
            if ((qf - 1) % e) continue;
            if (e == 1) {
                out.push_back(make_frame(F, f, 1));
                continue;
            }
            // c up to e-th powers of F_{q^f}: c1 ~ c2 iff (c1/c2)^((q^f-1)/e) = 1.
            std::vector<long long> reps;
            for (long long cc = 1; cc < p; ++cc) {
                bool fresh = true;
                for (auto r : reps) {
                    long long ratio = cc * modl::inv(r, p) % p;
                    if (mod_pow(ratio, (qf - 1) / e, p) == 1) fresh = false;
                }
                if (fresh) reps.push_back(cc);
            }
            for (auto cc : reps) out.push_back(make_frame(F, f, e, cc));
        }
    return out;
}

/// The frame whose group has order 2 and whose quadratic subfield has the given class.
inline GaloisFrame quadratic_frame(const GroundField& F, SquareClass d) {
    if (d.is_one()) fail(ErrorCode::InvalidArgument, "split algebra has no quadratic frame");
    for (auto& fr : enumerate_frames(F, 2))
        if (fr.order() == 2 && fr.classes.at(0) == d) return fr;
    fail(ErrorCode::InvalidArgument, "no tame frame realizes F(sqrt " + class_name(F, d) + ")");
}

} // namespace lqf
