#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "lqf/linalg.hpp"

namespace lqf {

/// Irreducible pinned root datum over Z. Roots are stored in simple-root coordinates, coroots and
/// cocharacters in simple-coroot coordinates.
struct RootDatum {
    std::string type;
    char family = 'A';
    int rank = 0;
    int ell = 1;
    IMat sym;     // (alpha_i, alpha_j), short roots of squared length 2
    IMat cartan;  // cartan[i][j] = <alpha_i^vee, alpha_j>
    std::vector<IVec> roots;  // positive roots first (by height), then their negatives in the same order
    std::vector<IVec> coroots;
    std::vector<long long> norm;
    std::vector<bool> is_long;  // all false when ell = 1: every reflection counts as short
    int npos = 0;
    std::map<IVec, int> index;
    IMat N;  // [e_a, e_b] = N[a][b] e_{a+b}

    std::vector<IMat> weyl;  // action on simple-coroot coordinates
    std::vector<std::vector<int>> words;  // reduced words, BFS order
    std::map<IMat, int> weyl_index;
    std::vector<std::vector<int>> weyl_table;
    std::vector<std::vector<int>> omega0;  // diagram automorphisms (permutations), identity first

    int nroots() const { return static_cast<int>(roots.size()); }
    int negate(int a) const { return a < npos ? a + npos : a - npos; }
    bool positive(int a) const { return a < npos; }
    int simple(int i) const { return find(unit(i)); }

    IVec unit(int i) const {
        IVec v(rank, 0);
        v[i] = 1;
        return v;
    }

    int find(const IVec& v) const {
        auto it = index.find(v);
        return it == index.end() ? -1 : it->second;
    }

    int sum(int a, int b) const {
        IVec v = roots[a];
        for (int i = 0; i < rank; ++i) v[i] += roots[b][i];
        return find(v);
    }

    long long height(int a) const { return std::accumulate(roots[a].begin(), roots[a].end(), 0LL); }

    /// <alpha_a, x> for x in simple-coroot coordinates.
    long long pairing(int a, const IVec& x) const {
        long long s = 0;
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) s += x[i] * roots[a][j] * cartan[i][j];
        return s;
    }

    Rat pairing(int a, const QVec& x) const {
        Rat s = 0;
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) s += x[i] * Rat(roots[a][j] * cartan[i][j]);
        return s;
    }

    /// ell(alpha^vee) = Q1(alpha^vee) and ell(alpha) = ell / ell(alpha^vee).
    long long ell_coroot(int a) const { return is_long[a] ? 1 : ell; }
    long long ell_root(int a) const { return ell / ell_coroot(a); }

    IMat reflection_matrix(int a) const {
        IMat S = identity_mat<long long>(rank);
        for (int j = 0; j < rank; ++j) {
            long long c = pairing(a, IVec(unit(j)));
            for (int i = 0; i < rank; ++i) S[i][j] -= c * coroots[a][i];
        }
        return S;
    }

    bool has_weyl() const { return !weyl.empty(); }
    int weyl_order() const { return static_cast<int>(weyl.size()); }
    int length(int w) const { return static_cast<int>(words[w].size()); }

    int weyl_of_matrix(const IMat& M) const {
        auto it = weyl_index.find(M);
        if (it == weyl_index.end()) fail(ErrorCode::InvalidArgument, "matrix is not in the Weyl group");
        return it->second;
    }

    int weyl_mul(int a, int b) const {
        if (!weyl_table.empty()) return weyl_table[a][b];
        return weyl_of_matrix(mat_mul(weyl[a], weyl[b]));
    }

    int weyl_inv(int a) const {
        for (int b = 0; b < weyl_order(); ++b)
            if (weyl_mul(a, b) == 0) return b;
        fail(ErrorCode::InvalidArgument, "no inverse");
    }

    int weyl_of_word(const std::vector<int>& word) const {
        IMat M = identity_mat<long long>(rank);
        for (int i : word) M = mat_mul(M, reflection_matrix(simple(i)));
        return weyl_of_matrix(M);
    }

    int reflection(int a) const { return weyl_of_matrix(reflection_matrix(a)); }

    IMat omega_matrix(int o) const {
        IMat P(rank, IVec(rank, 0));
        for (int i = 0; i < rank; ++i) P[omega0[o][i]][i] = 1;
        return P;
    }

    /// omega w omega^{-1}
    int omega_conj(int o, int w) const {
        IMat P = omega_matrix(o);
        return weyl_of_matrix(mat_mul(mat_mul(P, weyl[w]), transpose(P)));
    }

    int omega_mul(int a, int b) const {
        std::vector<int> c(rank);
        for (int i = 0; i < rank; ++i) c[i] = omega0[a][omega0[b][i]];
        for (size_t k = 0; k < omega0.size(); ++k)
            if (omega0[k] == c) return static_cast<int>(k);
        fail(ErrorCode::InvalidArgument, "diagram automorphisms not closed");
    }

    int eps(int w) const { return length(w) % 2 ? -1 : 1; }

    /// eps''(w): -1 on short reflections, +1 on long ones.
    int eps2(int w) const {
        int s = 1;
        for (int i : words[w])
            if (!is_long[simple(i)]) s = -s;
        return s;
    }

    int eps1(int w) const { return eps(w) * eps2(w); }
};

namespace detail {

inline IMat symmetric_cartan(char fam, int n) {
    IMat S(n, IVec(n, 0));
    auto edge = [&](int i, int j, long long v) { S[i][j] = S[j][i] = v; };
    switch (fam) {
    case 'A':
        for (int i = 0; i < n; ++i) S[i][i] = 2;
        for (int i = 0; i + 1 < n; ++i) edge(i, i + 1, -1);
        break;
    case 'B':
        for (int i = 0; i < n; ++i) S[i][i] = i + 1 < n ? 4 : 2;
        for (int i = 0; i + 1 < n; ++i) edge(i, i + 1, -2);
        break;
    case 'C':
        for (int i = 0; i < n; ++i) S[i][i] = i + 1 < n ? 2 : 4;
        for (int i = 0; i + 1 < n; ++i) edge(i, i + 1, i + 2 < n ? -1 : -2);
        break;
    case 'D':
        for (int i = 0; i < n; ++i) S[i][i] = 2;
        for (int i = 0; i + 2 < n; ++i) edge(i, i + 1, -1);
        edge(n - 3, n - 1, -1);
        break;
    case 'E':
        for (int i = 0; i < n; ++i) S[i][i] = 2;
        edge(0, 2, -1);
        edge(1, 3, -1);
        for (int i = 2; i + 1 < n; ++i) edge(i, i + 1, -1);
        break;
    case 'F':
        S[0][0] = S[1][1] = 4;
        S[2][2] = S[3][3] = 2;
        edge(0, 1, -2);
        edge(1, 2, -2);
        edge(2, 3, -1);
        break;
    case 'G':
        S[0][0] = 2;
        S[1][1] = 6;
        edge(0, 1, -3);
        break;
    }
    return S;
}

inline bool valid_type(char fam, int n) {
    switch (fam) {
    case 'A': return n >= 1 && n <= 8;
    case 'B': return n >= 2 && n <= 8;
    case 'C': return n >= 2 && n <= 8;
    case 'D': return n >= 4 && n <= 8;
    case 'E': return n >= 6 && n <= 8;
    case 'F': return n == 4;
    case 'G': return n == 2;
    }
    return false;
}

inline long long exact_div(long long a, long long b) {
    if (b == 0 || a % b != 0) fail(ErrorCode::NotIntegral, "inexact structure-constant division");
    return a / b;
}

/// N for an arbitrary pair, from the table of positive pairs (Carter's relations).
inline long long chevalley_N(const RootDatum& R, const IMat& Npos, int a, int b) {
    int s = R.sum(a, b);
    if (s < 0) return 0;
    bool pa = R.positive(a), pb = R.positive(b);
    if (pa && pb) return Npos[a][b];
    if (!pa && !pb) return -chevalley_N(R, Npos, R.negate(a), R.negate(b));
    if (!pa) return -chevalley_N(R, Npos, b, a);
    if (R.positive(s))
        return exact_div(chevalley_N(R, Npos, s, R.negate(b)) * R.norm[s], R.norm[a]);
    return exact_div(chevalley_N(R, Npos, R.negate(s), a) * R.norm[s], R.norm[b]);
}

} // namespace detail

struct ChevalleyOptions {
    int flip_extraspecial = -1;  // negate N on the extraspecial pair of this positive root (a legal convention change)
    bool corrupt = false;        // negate one N_{alpha,beta} alone (breaks the Lie algebra)
};

inline void compute_structure_constants(RootDatum& R, const ChevalleyOptions& opt = {}) {
    int n = R.nroots();
    IMat Npos(n, IVec(n, 0));
    for (int xi = 0; xi < R.npos; ++xi) {
        if (R.height(xi) == 1) continue;
        std::vector<std::pair<int, int>> special;
        for (int a = 0; a < R.npos; ++a)
            for (int b = a + 1; b < R.npos; ++b)
                if (R.sum(a, b) == xi) special.push_back({a, b});
        auto [g, d] = special.front();
        int p = 0;
        IVec v = R.roots[d];
        while (true) {
            for (int i = 0; i < R.rank; ++i) v[i] -= R.roots[g][i];
            if (R.find(v) < 0) break;
            ++p;
        }
        long long ngd = (p + 1) * (xi == opt.flip_extraspecial ? -1 : 1);
        Npos[g][d] = ngd;
        Npos[d][g] = -ngd;
        auto term = [&](int x, int y, int u, int w) -> Rat {
            // N_{x,y} N_{u,w} / (x+y, x+y)
            int s = R.sum(x, y);
            if (s < 0 || R.sum(u, w) < 0) return 0;
            return Rat(detail::chevalley_N(R, Npos, x, y) * detail::chevalley_N(R, Npos, u, w), R.norm[s]);
        };
        for (size_t k = 1; k < special.size(); ++k) {
            auto [a, b] = special[k];
            Rat t = term(b, R.negate(g), a, R.negate(d)) + term(R.negate(g), a, b, R.negate(d));
            Rat val = t * Rat(R.norm[xi]) / Rat(ngd);
            if (mp::denominator(val) != 1) fail(ErrorCode::NotIntegral, "non-integral structure constant");
            long long nab = static_cast<long long>(mp::numerator(val));
            Npos[a][b] = nab;
            Npos[b][a] = -nab;
        }
    }
    R.N.assign(n, IVec(n, 0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) R.N[a][b] = detail::chevalley_N(R, Npos, a, b);
    if (opt.corrupt && R.npos >= 2) {
        int a = R.simple(0), b = R.simple(1);
        if (R.sum(a, b) < 0 && R.rank > 2) b = R.simple(2);
        if (R.sum(a, b) >= 0) {
            R.N[a][b] = -R.N[a][b];
            R.N[b][a] = -R.N[b][a];
        }
    }
}

/// Builds "A1", "C2", "G2", ... Weyl groups are enumerated for rank <= 4.
inline RootDatum build_root_datum(const std::string& type, const ChevalleyOptions& opt = {}) {
    if (type.size() < 2) fail(ErrorCode::UnsupportedType, "bad Cartan type '" + type + "'");
    char fam = type[0];
    int n = 0;
    try {
        n = std::stoi(type.substr(1));
    } catch (...) {
        fail(ErrorCode::UnsupportedType, "bad Cartan type '" + type + "'");
    }
    if (!detail::valid_type(fam, n) || std::to_string(n) != type.substr(1))
        fail(ErrorCode::UnsupportedType, "unsupported Cartan type '" + type + "'");

    RootDatum R;
    R.type = type;
    R.family = fam;
    R.rank = n;
    R.sym = detail::symmetric_cartan(fam, n);
    R.cartan.assign(n, IVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R.cartan[i][j] = 2 * R.sym[i][j] / R.sym[i][i];

    // positive roots, layer by layer in height
    std::set<IVec> seen;
    std::vector<IVec> pos, layer;
    for (int i = 0; i < n; ++i) layer.push_back(R.unit(i));
    while (!layer.empty()) {
        std::sort(layer.begin(), layer.end());
        for (auto& b : layer) {
            pos.push_back(b);
            seen.insert(b);
        }
        std::set<IVec> next;
        for (auto& b : layer)
            for (int i = 0; i < n; ++i) {
                long long c = 0;
                for (int j = 0; j < n; ++j) c += b[j] * R.cartan[i][j];
                int p = 0;
                IVec m = b;
                while (true) {
                    --m[i];
                    if (!seen.count(m)) break;
                    ++p;
                }
                if (p - c > 0) {
                    IVec up = b;
                    ++up[i];
                    next.insert(up);
                }
            }
        layer.assign(next.begin(), next.end());
    }
    R.npos = static_cast<int>(pos.size());
    R.roots = pos;
    for (auto& b : pos) {
        IVec m = b;
        for (auto& x : m) x = -x;
        R.roots.push_back(m);
    }
    long long lmax = 0;
    for (int a = 0; a < R.nroots(); ++a) {
        R.index[R.roots[a]] = a;
        long long s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s += R.roots[a][i] * R.sym[i][j] * R.roots[a][j];
        R.norm.push_back(s);
        lmax = std::max(lmax, s);
    }
    R.ell = static_cast<int>(lmax / 2);
    for (int a = 0; a < R.nroots(); ++a) {
        R.is_long.push_back(R.ell > 1 && R.norm[a] == lmax);
        IVec c(n);
        for (int j = 0; j < n; ++j) c[j] = detail::exact_div(R.roots[a][j] * R.sym[j][j], R.norm[a]);
        R.coroots.push_back(c);
    }

    compute_structure_constants(R, opt);

    // diagram automorphisms
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j) ok = R.cartan[perm[i]][perm[j]] == R.cartan[i][j];
        if (ok) R.omega0.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    if (n <= 4) {
        std::vector<IMat> gens;
        for (int i = 0; i < n; ++i) gens.push_back(R.reflection_matrix(R.simple(i)));
        R.weyl.push_back(identity_mat<long long>(n));
        R.words.push_back({});
        R.weyl_index[R.weyl[0]] = 0;
        for (size_t k = 0; k < R.weyl.size(); ++k)
            for (int i = 0; i < n; ++i) {
                IMat M = mat_mul(R.weyl[k], gens[i]);
                if (R.weyl_index.count(M)) continue;
                R.weyl_index[M] = static_cast<int>(R.weyl.size());
                R.weyl.push_back(M);
                auto w = R.words[k];
                w.push_back(i);
                R.words.push_back(w);
            }
        if (R.weyl.size() <= 400) {
            size_t m = R.weyl.size();
            R.weyl_table.assign(m, std::vector<int>(m));
            for (size_t a = 0; a < m; ++a)
                for (size_t b = 0; b < m; ++b) R.weyl_table[a][b] = R.weyl_of_matrix(mat_mul(R.weyl[a], R.weyl[b]));
        }
    }
    return R;
}

// ------------------------------------------------------------ Q1 and its lattices

/// Gram matrix of B1 on the simple coroots: W-invariant, Q1 = 1 on short coroots, ell on long ones.
inline QMat b1_gram(const RootDatum& R) {
    long long lmax = 2LL * R.ell;
    QMat B(R.rank, QVec(R.rank));
    for (int i = 0; i < R.rank; ++i)
        for (int j = 0; j < R.rank; ++j)
            B[i][j] = Rat(2 * lmax * R.sym[i][j], R.sym[i][i] * R.sym[j][j]);
    return B;
}

inline Rat b1(const RootDatum& R, const QVec& x, const QVec& y) {
    auto B = b1_gram(R);
    Rat s = 0;
    for (int i = 0; i < R.rank; ++i)
        for (int j = 0; j < R.rank; ++j) s += x[i] * B[i][j] * y[j];
    return s;
}

inline Rat q1(const RootDatum& R, const QVec& x) { return b1(R, x, x) / 2; }

inline QVec to_qvec(const IVec& v) {
    QVec r;
    for (auto x : v) r.push_back(Rat(x));
    return r;
}

/// Fundamental coweights in simple-coroot coordinates: <alpha_i, w_j> = delta_ij.
inline QMat fundamental_coweights(const RootDatum& R) {
    QMat At(R.rank, QVec(R.rank));
    for (int i = 0; i < R.rank; ++i)
        for (int j = 0; j < R.rank; ++j) At[i][j] = Rat(R.cartan[j][i]);
    return transpose(q_inverse(At));  // row j = coordinates of w_j
}

/// The root alpha viewed in the coroot space via B1: B1(x_alpha, y) = <alpha, y>.
inline QVec root_as_coweight(const RootDatum& R, int a) {
    QVec r = to_qvec(R.coroots[a]);
    for (auto& x : r) x /= Rat(R.ell_coroot(a));
    return r;
}

/// Fundamental weights transported via B1.
inline QMat fundamental_weights_as_coweights(const RootDatum& R) {
    auto Binv = q_inverse(b1_gram(R));
    return Binv;  // row i: x with B1(x, alpha_j^vee) = delta_ij
}

// ------------------------------------------------------------ the Vinberg Lie algebra

/// Lie(G) for G = (G_sc x T_sc)/Z over Z. Basis: 2r torus vectors b_k followed by root vectors e_a.
/// b_k = (alpha_k^vee, 0) for k < r and b_{r+j} = (w_j, w_j) for the fundamental coweights w_j.
struct VinbergAlgebra {
    RootDatum R;
    int r = 0, nt = 0, dim = 0;
    QMat x1, x2;               // components of b_k in simple-coroot coordinates
    IMat root_pair;            // root_pair[a][k] = <alpha_a, x1(b_k)>
    std::vector<std::vector<IVec>> br;
    IMat gram_T;               // B_T on the torus block
    IMat gram_G;               // invariant form on all of Lie(G)
    IMat gram_V;               // sum_a x_a x_{-a}, zero on the torus block
    std::vector<IMat> tits_simple, tits_w, omega_mats;

    int slot(int a) const { return nt + a; }
    bool is_torus(int x) const { return x < nt; }
    int root_of(int x) const { return x - nt; }

    IVec zero() const { return IVec(dim, 0); }

    IVec bracket(const IVec& u, const IVec& v) const {
        IVec s = zero();
        for (int x = 0; x < dim; ++x) {
            if (!u[x]) continue;
            for (int y = 0; y < dim; ++y) {
                if (!v[y]) continue;
                const IVec& b = br[x][y];
                for (int z = 0; z < dim; ++z) s[z] += u[x] * v[y] * b[z];
            }
        }
        return s;
    }

    IMat ad(int x) const {
        IMat A(dim, IVec(dim, 0));
        for (int y = 0; y < dim; ++y)
            for (int z = 0; z < dim; ++z) A[z][y] = br[x][y][z];
        return A;
    }

    /// Vinberg coordinates of (y1, y2); throws NotIntegral off the lattice.
    IVec torus_coords(const QVec& y1, const QVec& y2) const {
        IVec c(nt);
        QVec rest = y1;
        for (int j = 0; j < r; ++j) {
            Rat cj = R.pairing(R.simple(j), y2);
            if (mp::denominator(cj) != 1) fail(ErrorCode::NotIntegral, "second component not a coweight");
            c[r + j] = static_cast<long long>(mp::numerator(cj));
            for (int i = 0; i < r; ++i) rest[i] -= cj * x2[r + j][i];
        }
        for (int i = 0; i < r; ++i) {
            if (mp::denominator(rest[i]) != 1) fail(ErrorCode::NotIntegral, "x1 - x2 not in the coroot lattice");
            c[i] = static_cast<long long>(mp::numerator(rest[i]));
        }
        return c;
    }

    std::pair<QVec, QVec> components(const IVec& c) const {
        QVec y1(r, Rat(0)), y2(r, Rat(0));
        for (int k = 0; k < nt; ++k)
            for (int i = 0; i < r; ++i) {
                y1[i] += Rat(c[k]) * x1[k][i];
                y2[i] += Rat(c[k]) * x2[k][i];
            }
        return {y1, y2};
    }

    /// (W x W) x Omega_0 acting on X_*(T): w1 on the first factor, w2 on the second, then omega diagonally.
    IMat torus_action(int w1, int w2 = 0, int omega = 0) const {
        IMat M(nt, IVec(nt));
        IMat P = R.omega_matrix(omega);
        IMat A = mat_mul(P, R.weyl[w1]), B = mat_mul(P, R.weyl[w2]);
        for (int k = 0; k < nt; ++k) {
            QVec y1 = mat_vec(to_qmat(A), x1[k]), y2 = mat_vec(to_qmat(B), x2[k]);
            IVec c = torus_coords(y1, y2);
            for (int l = 0; l < nt; ++l) M[l][k] = c[l];
        }
        return M;
    }

    /// Ad of the 2-torsion element lambda(-1), lambda given mod 2 in Vinberg coordinates.
    IMat torsion_ad(const IVec& t) const {
        IMat D = identity_mat<long long>(dim);
        for (int a = 0; a < R.nroots(); ++a) {
            long long s = 0;
            for (int k = 0; k < nt; ++k) s += t[k] * root_pair[a][k];
            if (s % 2) D[slot(a)][slot(a)] = -1;
        }
        return D;
    }

    /// Ad(eta_alpha(c)) = exp(c ad e_alpha); the divided powers X^k/k! are integral.
    IMat exp_ad(int a, long long c) const {
        IMat X = ad(slot(a));
        for (auto& row : X)
            for (auto& x : row) x *= c;
        IMat E = identity_mat<long long>(dim), P = identity_mat<long long>(dim);
        for (int k = 1; k <= 6; ++k) {
            P = mat_mul(P, X);
            bool z = true;
            for (auto& row : P)
                for (auto& x : row) {
                    x = detail::exact_div(x, k);
                    if (x != 0) z = false;
                }
            if (z) break;
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) E[i][j] += P[i][j];
        }
        return E;
    }

    /// Tits lift n_alpha = eta_alpha(1) eta_{-alpha}(-1) eta_alpha(1).
    IMat tits_ad(int a) const {
        IMat E = exp_ad(a, 1);
        return mat_mul(mat_mul(E, exp_ad(R.negate(a), -1)), E);
    }

    IMat tits_word_ad(const std::vector<int>& word) const {
        IMat M = identity_mat<long long>(dim);
        for (int i : word) M = mat_mul(M, tits_simple.empty() ? tits_ad(R.simple(i)) : tits_simple[i]);
        return M;
    }

    IMat tits_ad_w(int w) const { return tits_w.empty() ? tits_word_ad(R.words[w]) : tits_w[w]; }

    IMat omega_ad(int o) const { return omega_mats.empty() ? compute_omega_ad(o) : omega_mats[o]; }

    /// Pinned automorphism of Lie(G) attached to a diagram automorphism.
    IMat compute_omega_ad(int o) const {
        const auto& pi = R.omega0[o];
        std::vector<IVec> img(dim, zero());
        IVec pk(nt);
        for (int i = 0; i < r; ++i) {
            img[i][pi[i]] = 1;
            img[r + i][r + pi[i]] = 1;
        }
        for (int sgn : {1, -1})
            for (int a = 0; a < R.npos; ++a) {
                int src = sgn > 0 ? a : R.negate(a);
                if (R.height(a) == 1) {
                    int i = std::find(R.roots[a].begin(), R.roots[a].end(), 1) - R.roots[a].begin();
                    int t = R.simple(pi[i]);
                    img[slot(src)][slot(sgn > 0 ? t : R.negate(t))] = 1;
                    continue;
                }
                for (int i = 0; i < r; ++i) {
                    int si = R.simple(i);
                    if (sgn < 0) si = R.negate(si);
                    int b = -1;
                    IVec v = R.roots[src];
                    v[i] -= sgn;
                    b = R.find(v);
                    if (b < 0) continue;
                    long long n = R.N[si][b];
                    IVec im = bracket(img[slot(si)], img[slot(b)]);
                    for (auto& x : im) x = detail::exact_div(x, n);
                    img[slot(src)] = im;
                    break;
                }
            }
        IMat M(dim, IVec(dim));
        for (int x = 0; x < dim; ++x)
            for (int y = 0; y < dim; ++y) M[y][x] = img[x][y];
        return M;
    }

    /// Element of the extended group: n(w) lambda(-1) omega.
    IMat element_ad(int w, const IVec& t, int omega) const {
        return mat_mul(mat_mul(tits_ad_w(w), torsion_ad(t)), omega_ad(omega));
    }

    /// t with n(w) n(w') = n(ww') t, in Vinberg coordinates mod 2.
    IVec tits_defect(int w, int w2) const {
        IVec t(nt, 0);
        int cur = w;
        for (int j : R.words[w2]) {
            int sj = R.reflection(R.simple(j));
            IMat S = torus_action(sj);
            IVec nt_ = mat_vec(S, t);
            for (auto& x : nt_) x = ((x % 2) + 2) % 2;
            t = nt_;
            int nxt = R.weyl_mul(cur, sj);
            if (R.length(nxt) < R.length(cur)) t[j] ^= 1;
            cur = nxt;
        }
        return t;
    }

    long long form(const IMat& G, const IVec& u, const IVec& v) const {
        long long s = 0;
        for (int x = 0; x < dim; ++x)
            if (u[x])
                for (int y = 0; y < dim; ++y) s += u[x] * G[x][y] * v[y];
        return s;
    }

    /// Indices of root vectors in V' (long roots) and V'' (short roots).
    std::vector<int> long_slots() const {
        std::vector<int> s;
        for (int a = 0; a < R.nroots(); ++a)
            if (R.is_long[a]) s.push_back(slot(a));
        return s;
    }

    std::vector<int> short_slots() const {
        std::vector<int> s;
        for (int a = 0; a < R.nroots(); ++a)
            if (!R.is_long[a]) s.push_back(slot(a));
        return s;
    }

    std::vector<int> root_slots() const {
        std::vector<int> s;
        for (int a = 0; a < R.nroots(); ++a) s.push_back(slot(a));
        return s;
    }

    std::vector<int> torus_slots() const {
        std::vector<int> s(nt);
        std::iota(s.begin(), s.end(), 0);
        return s;
    }
};

inline VinbergAlgebra vinberg_algebra(const RootDatum& R) {
    VinbergAlgebra L;
    L.R = R;
    L.r = R.rank;
    L.nt = 2 * R.rank;
    L.dim = L.nt + R.nroots();
    auto W = fundamental_coweights(R);
    for (int k = 0; k < L.r; ++k) {
        L.x1.push_back(to_qvec(R.unit(k)));
        L.x2.push_back(QVec(L.r, Rat(0)));
    }
    for (int j = 0; j < L.r; ++j) {
        L.x1.push_back(W[j]);
        L.x2.push_back(W[j]);
    }
    L.root_pair.assign(R.nroots(), IVec(L.nt));
    for (int a = 0; a < R.nroots(); ++a)
        for (int k = 0; k < L.nt; ++k) {
            Rat v = R.pairing(a, L.x1[k]);
            L.root_pair[a][k] = static_cast<long long>(mp::numerator(v));
        }
    L.br.assign(L.dim, std::vector<IVec>(L.dim, L.zero()));
    for (int k = 0; k < L.nt; ++k)
        for (int a = 0; a < R.nroots(); ++a) {
            L.br[k][L.slot(a)][L.slot(a)] = L.root_pair[a][k];
            L.br[L.slot(a)][k][L.slot(a)] = -L.root_pair[a][k];
        }
    for (int a = 0; a < R.nroots(); ++a)
        for (int b = 0; b < R.nroots(); ++b) {
            IVec& v = L.br[L.slot(a)][L.slot(b)];
            if (b == R.negate(a)) {
                for (int i = 0; i < L.r; ++i) v[i] = R.coroots[a][i];
            } else if (int s = R.sum(a, b); s >= 0) {
                v[L.slot(s)] = R.N[a][b];
            }
        }
    auto B1 = b1_gram(R);
    QMat GT(L.nt, QVec(L.nt));
    for (int k = 0; k < L.nt; ++k)
        for (int l = 0; l < L.nt; ++l) {
            Rat s = 0;
            for (int i = 0; i < L.r; ++i)
                for (int j = 0; j < L.r; ++j) s += L.x1[k][i] * B1[i][j] * L.x1[l][j] - L.x2[k][i] * B1[i][j] * L.x2[l][j];
            GT[k][l] = s;
        }
    L.gram_T = to_imat(GT);
    L.gram_G.assign(L.dim, IVec(L.dim, 0));
    L.gram_V.assign(L.dim, IVec(L.dim, 0));
    for (int k = 0; k < L.nt; ++k)
        for (int l = 0; l < L.nt; ++l) L.gram_G[k][l] = L.gram_T[k][l];
    for (int a = 0; a < R.nroots(); ++a) {
        int x = L.slot(a), y = L.slot(R.negate(a));
        L.gram_V[x][y] = 1;
        L.gram_G[x][y] = R.ell_coroot(a);
    }
    for (int i = 0; i < L.r; ++i) L.tits_simple.push_back(L.tits_ad(R.simple(i)));
    for (int w = 0; w < R.weyl_order() && R.weyl_order() <= 200; ++w) {
        if (w == 0) {
            L.tits_w.push_back(identity_mat<long long>(L.dim));
            continue;
        }
        // words are BFS-built: the prefix of a reduced word is reduced and appears earlier
        auto prefix = R.words[w];
        int last = prefix.back();
        prefix.pop_back();
        int pw = R.weyl_of_word(prefix);
        L.tits_w.push_back(mat_mul(L.tits_w[pw], L.tits_simple[last]));
    }
    for (int o = 0; o < static_cast<int>(R.omega0.size()); ++o) L.omega_mats.push_back(L.compute_omega_ad(o));
    return L;
}

/// Sum of the three Jacobi terms over all basis triples; true iff all vanish.
inline bool jacobi_holds(const VinbergAlgebra& L) {
    for (int x = 0; x < L.dim; ++x)
        for (int y = x + 1; y < L.dim; ++y)
            for (int z = y + 1; z < L.dim; ++z) {
                IVec ex = L.zero(), ey = L.zero(), ez = L.zero();
                ex[x] = ey[y] = ez[z] = 1;
                IVec a = L.bracket(ex, L.br[y][z]), b = L.bracket(ey, L.br[z][x]), c = L.bracket(ez, L.br[x][y]);
                for (int i = 0; i < L.dim; ++i)
                    if (a[i] + b[i] + c[i] != 0) return false;
            }
    return true;
}

/// B([x,y],z) + B(y,[x,z]) = 0 for all basis x, y, z.
inline bool form_is_invariant(const VinbergAlgebra& L, const IMat& G) {
    for (int x = 0; x < L.dim; ++x)
        for (int y = 0; y < L.dim; ++y)
            for (int z = 0; z < L.dim; ++z) {
                IVec ey = L.zero(), ez = L.zero();
                ey[y] = ez[z] = 1;
                if (L.form(G, L.br[x][y], ez) + L.form(G, ey, L.br[x][z]) != 0) return false;
            }
    return true;
}

inline bool preserves_form(const IMat& A, const IMat& G) {
    return mat_mul(mat_mul(transpose(A), G), A) == G;
}

// ------------------------------------------------------------ sign and spinor characters

/// Spinor norm of the image of w in O(Q_T) when ell is invertible: class(ell) iff eps''(w) = -1.
inline SquareClass spinor_character(const RootDatum& R, const GroundField& F, int w) {
    if (F.characteristic() != 0 && R.ell % F.characteristic() == 0)
        fail(ErrorCode::EllZeroInField, "ell vanishes in " + F.descriptor());
    return R.eps2(w) == 1 ? SquareClass{} : class_of(F, R.ell);
}

// ------------------------------------------------------------ lattices mod ell

namespace modl {

inline long long md(long long x, long long p) {
    x %= p;
    return x < 0 ? x + p : x;
}

inline long long inv(long long a, long long p) { return mod_pow(md(a, p), p - 2, p); }

/// Reduced row echelon form mod p; returns pivot columns.
inline std::vector<int> rref(IMat& A, long long p) {
    std::vector<int> piv;
    size_t rows = A.size(), cols = A.empty() ? 0 : A[0].size(), r = 0;
    for (auto& row : A)
        for (auto& x : row) x = md(x, p);
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t k = r;
        while (k < rows && A[k][c] == 0) ++k;
        if (k == rows) continue;
        std::swap(A[r], A[k]);
        long long iv = inv(A[r][c], p);
        for (auto& x : A[r]) x = x * iv % p;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            long long f = A[i][c];
            for (size_t j = 0; j < cols; ++j) A[i][j] = md(A[i][j] - f * A[r][j], p);
        }
        piv.push_back(static_cast<int>(c));
        ++r;
    }
    A.resize(r);
    return piv;
}

inline int rank(IMat A, long long p) { return static_cast<int>(rref(A, p).size()); }

/// Basis (rows) of {x : A x = 0 mod p}.
inline IMat kernel(IMat A, size_t n, long long p) {
    auto piv = rref(A, p);
    std::vector<bool> is_piv(n, false);
    for (int c : piv) is_piv[c] = true;
    IMat K;
    for (size_t f = 0; f < n; ++f) {
        if (is_piv[f]) continue;
        IVec v(n, 0);
        v[f] = 1;
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = md(-A[i][f], p);
        K.push_back(v);
    }
    return K;
}

inline IMat inverse(const IMat& A, long long p) {
    size_t n = A.size();
    IMat M(n, IVec(2 * n, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) M[i][j] = A[i][j];
        M[i][n + i] = 1;
    }
    auto piv = rref(M, p);
    if (piv.size() < n || piv[n - 1] != static_cast<int>(n - 1)) fail(ErrorCode::DegenerateForm, "singular mod p");
    IMat R(n, IVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) R[i][j] = M[i][n + j];
    return R;
}

} // namespace modl

/// Quadratic form over F_ell: Q(x) = sum q_i x_i^2 + sum_{i<j} gram_ij x_i x_j, gram = polar form.
struct FlForm {
    long long ell = 2;
    IMat gram;
    IVec q;

    size_t dim() const { return q.size(); }

    long long value(const IVec& x) const {
        long long s = 0;
        for (size_t i = 0; i < dim(); ++i) {
            s += q[i] * x[i] % ell * x[i];
            for (size_t j = i + 1; j < dim(); ++j) s += gram[i][j] * x[i] % ell * x[j];
            s %= ell;
        }
        return modl::md(s, ell);
    }

    long long bilinear(const IVec& x, const IVec& y) const {
        long long s = 0;
        for (size_t i = 0; i < dim(); ++i)
            for (size_t j = 0; j < dim(); ++j) s = (s + gram[i][j] * x[i] % ell * y[j]) % ell;
        return modl::md(s, ell);
    }

    /// Nondegenerate: the polar form has trivial radical, or (ell = 2) a line on which Q is nonzero.
    bool nondegenerate() const {
        if (dim() == 0) return true;
        IMat K = modl::kernel(gram, dim(), ell);
        if (K.empty()) return true;
        return ell == 2 && K.size() == 1 && value(K[0]) != 0;
    }
};

/// F_ell^n modulo a subspace, with a chosen complement.
struct Quotient {
    long long ell = 2;
    size_t n = 0;
    IMat sub, comp, binv;

    size_t dim() const { return comp.size(); }

    IVec project(const IVec& x) const {
        IVec c(dim(), 0);
        for (size_t i = 0; i < dim(); ++i) {
            long long s = 0;
            for (size_t k = 0; k < n; ++k) s = (s + modl::md(x[k], ell) * binv[k][i]) % ell;
            c[i] = s;
        }
        return c;
    }

    IVec lift(const IVec& c) const {
        IVec x(n, 0);
        for (size_t i = 0; i < dim(); ++i)
            for (size_t k = 0; k < n; ++k) x[k] = (x[k] + c[i] * comp[i][k]) % ell;
        return x;
    }

    /// Matrix of the induced map of A (acting on column vectors of F_ell^n).
    IMat induced(const IMat& A) const {
        IMat M(dim(), IVec(dim()));
        for (size_t i = 0; i < dim(); ++i) {
            IVec img = project(mat_vec(A, comp[i]));
            for (size_t j = 0; j < dim(); ++j) M[j][i] = img[j];
        }
        return M;
    }
};

inline Quotient make_quotient(long long ell, size_t n, IMat sub_rows) {
    Quotient Qt;
    Qt.ell = ell;
    Qt.n = n;
    IMat S = sub_rows;
    modl::rref(S, ell);
    Qt.sub = S;
    IMat basis = S;
    for (size_t k = 0; k < n; ++k) {
        IVec e(n, 0);
        e[k] = 1;
        IMat trial = basis;
        trial.push_back(e);
        if (modl::rank(trial, ell) > static_cast<int>(basis.size())) {
            basis.push_back(e);
            Qt.comp.push_back(e);
        }
    }
    IMat full = Qt.comp;
    for (auto& s : Qt.sub) full.push_back(s);
    Qt.binv = modl::inverse(full, ell);
    return Qt;
}

/// A lattice with basis rows in ambient coordinates and a rational ambient bilinear form B = polar of Q.
struct LatticeTriple {
    QMat basis;
    QMat form;
    long long ell = 1;

    QMat gram() const { return mat_mul(mat_mul(basis, form), transpose(basis)); }
};

struct LatticeChain {
    IMat gram;       // B on the basis of Lambda
    IMat ell_dual;   // ell * gram^{-1}: B-Gram of ell * (dual basis)
    QMat perp;       // basis of Lambda^perp, ambient coordinates
    bool lambda_in_perp = false, ell_perp_in_lambda = false, perp_in_ell_inv_lambda = false;
    long long index = 0;  // |Lambda^perp / Lambda|
};

inline bool even_diagonal(const IMat& G) {
    for (size_t i = 0; i < G.size(); ++i)
        if (G[i][i] % 2) return false;
    return true;
}

inline LatticeChain perp_lattice(const LatticeTriple& L) {
    QMat G = L.gram();
    if (!is_integral(G) || !even_diagonal(to_imat(G))) fail(ErrorCode::NotIntegral, "Q not integral on Lambda");
    QMat Ginv = q_inverse(G);
    QMat H = Ginv;
    for (auto& row : H)
        for (auto& x : row) x *= Rat(L.ell);
    if (!is_integral(H) || !even_diagonal(to_imat(H))) fail(ErrorCode::NotIntegral, "ell Q not integral on Lambda^perp");
    LatticeChain C;
    C.gram = to_imat(G);
    C.ell_dual = to_imat(H);
    C.perp = mat_mul(Ginv, L.basis);
    C.lambda_in_perp = true;  // G integral
    C.ell_perp_in_lambda = true;  // ell G^{-1} integral
    C.perp_in_ell_inv_lambda = true;
    Rat d = q_det(G);
    C.index = static_cast<long long>(mp::numerator(d < 0 ? -d : d));
    return C;
}

struct ReducedForms {
    Quotient tprime, tsecond;  // Lambda/ell Lambda^perp in Lambda-coordinates; Lambda^perp/Lambda in dual coordinates
    FlForm qprime, qsecond;
    IMat gram, ell_dual;

    /// Induced maps of an isometry given by its matrix on Lambda-coordinates.
    IMat on_prime(const IMat& M) const { return tprime.induced(M); }

    IMat on_second(const IMat& M) const {
        // dual coordinates c = G y transform by G M G^{-1}; ell G^{-1} = ell_dual keeps it integral
        QMat Gq = to_qmat(gram);
        QMat T = mat_mul(mat_mul(Gq, to_qmat(M)), q_inverse(Gq));
        return tsecond.induced(to_imat(T));
    }
};

inline FlForm restrict_form(const Quotient& Qt, const IMat& G) {
    FlForm f;
    f.ell = Qt.ell;
    size_t k = Qt.dim();
    f.gram.assign(k, IVec(k));
    f.q.assign(k, 0);
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) {
            long long s = 0;
            for (size_t a = 0; a < Qt.n; ++a)
                for (size_t b = 0; b < Qt.n; ++b) s += Qt.comp[i][a] * G[a][b] * Qt.comp[j][b];
            f.gram[i][j] = modl::md(s, Qt.ell);
        }
        long long s = 0;
        for (size_t a = 0; a < Qt.n; ++a)
            for (size_t b = 0; b < Qt.n; ++b) s += Qt.comp[i][a] * G[a][b] * Qt.comp[i][b];
        f.q[i] = modl::md(s / 2, Qt.ell);
    }
    return f;
}

inline ReducedForms reduced_forms(const LatticeTriple& L) {
    if (!is_prime(L.ell)) fail(ErrorCode::EllNotPrime, "reduced forms need ell prime");
    auto C = perp_lattice(L);
    size_t n = C.gram.size();
    ReducedForms RF;
    RF.gram = C.gram;
    RF.ell_dual = C.ell_dual;
    RF.tprime = make_quotient(L.ell, n, modl::kernel(C.gram, n, L.ell));
    RF.tsecond = make_quotient(L.ell, n, C.gram);
    RF.qprime = restrict_form(RF.tprime, C.gram);
    RF.qsecond = restrict_form(RF.tsecond, C.ell_dual);
    return RF;
}

/// Checks that the subspace being divided out lies in the radical and that Q vanishes on it.
inline bool quotient_well_defined(const Quotient& Qt, const IMat& G) {
    for (auto& s : Qt.sub) {
        long long qv = 0;
        for (size_t a = 0; a < Qt.n; ++a)
            for (size_t b = 0; b < Qt.n; ++b) qv += s[a] * G[a][b] * s[b];
        if (modl::md(qv / 2, Qt.ell) != 0) return false;
        for (size_t k = 0; k < Qt.n; ++k) {
            long long v = 0;
            for (size_t a = 0; a < Qt.n; ++a) v += s[a] * G[a][k];
            if (modl::md(v, Qt.ell) != 0) return false;
        }
    }
    return true;
}

inline LatticeTriple coroot_triple(const RootDatum& R) {
    return {identity_mat<Rat>(R.rank), b1_gram(R), R.ell};
}

inline LatticeTriple vinberg_triple(const VinbergAlgebra& L) {
    return {identity_mat<Rat>(L.nt), to_qmat(L.gram_T), L.R.ell};
}

} // namespace lqf
