#pragma once

#include <memory>
#include <numeric>
#include <optional>
#include <set>

#include <boost/dynamic_bitset.hpp>

#include "lqf/frame.hpp"
#include "lqf/quadform.hpp"
#include "lqf/rootdata.hpp"

namespace lqf {

/// Omega = W x| Omega_0 with (w, o)(w', o') = (w o w' o^-1, o o'); element w + |W| o.
struct OmegaGroup {
    std::shared_ptr<const RootDatum> R;
    int nw = 0, no = 0;
    std::vector<std::vector<int>> table;

    int make(int w, int o) const { return w + nw * o; }
    int weyl_part(int g) const { return g % nw; }
    int omega_part(int g) const { return g / nw; }
    int order() const { return nw * no; }
    int mul(int a, int b) const { return table[a][b]; }
    int inv(int a) const {
        for (int b = 0; b < order(); ++b)
            if (table[a][b] == 0) return b;
        fail(ErrorCode::InvalidArgument, "no inverse");
    }
};

inline OmegaGroup omega_group(std::shared_ptr<const RootDatum> R) {
    OmegaGroup G;
    G.R = R;
    G.nw = R->weyl_order();
    G.no = static_cast<int>(R->omega0.size());
    int n = G.order();
    G.table.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int wa = G.weyl_part(a), oa = G.omega_part(a), wb = G.weyl_part(b), ob = G.omega_part(b);
            G.table[a][b] = G.make(R->weyl_mul(wa, R->omega_conj(oa, wb)), R->omega_mul(oa, ob));
        }
    return G;
}

/// Homomorphisms G -> Omega as lists of Omega elements indexed by sigma, optionally injective only.
inline std::vector<std::vector<int>> omega_homomorphisms(const GaloisFrame& fr, const OmegaGroup& Om, bool faithful) {
    std::vector<std::vector<int>> out;
    std::vector<int> imgs(fr.gens.size(), 0);
    auto law = [&](int a, int b) { return Om.mul(a, b); };
    std::function<void(size_t)> rec = [&](size_t k) {
        if (k < imgs.size()) {
            for (int g = 0; g < Om.order(); ++g) {
                imgs[k] = g;
                rec(k + 1);
            }
            return;
        }
        auto h = fr.extend(imgs, law, 0);
        if (!h) return;
        if (faithful && std::set<int>(h->begin(), h->end()).size() != h->size()) return;
        out.push_back(*h);
    };
    rec(0);
    return out;
}

/// First representative of each Omega-conjugacy class, in input order.
inline std::vector<std::vector<int>> up_to_conjugacy(const OmegaGroup& Om, const std::vector<std::vector<int>>& homs) {
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> out;
    for (auto& h : homs) {
        if (seen.count(h)) continue;
        out.push_back(h);
        for (int g = 0; g < Om.order(); ++g) {
            std::vector<int> c;
            for (int x : h) c.push_back(Om.mul(Om.mul(g, x), Om.inv(g)));
            seen.insert(c);
        }
    }
    return out;
}

inline std::pair<std::vector<int>, std::vector<int>> split_hom(const OmegaGroup& Om, const std::vector<int>& h) {
    std::vector<int> phi0, w;
    for (int x : h) {
        phi0.push_back(Om.omega_part(x));
        w.push_back(Om.weyl_part(x));
    }
    return {phi0, w};
}

/// Linear system over F_2 kept in reduced row echelon form; the last bit of each row is the right side.
class F2System {
public:
    explicit F2System(size_t nvars) : n_(nvars) {}

    size_t nvars() const { return n_; }
    bool consistent() const { return consistent_; }
    size_t rank() const { return rows_.size(); }

    void add(boost::dynamic_bitset<> row) {
        for (size_t k = 0; k < rows_.size(); ++k)
            if (row[pivots_[k]]) row ^= rows_[k];
        size_t p = row.find_first();
        if (p == boost::dynamic_bitset<>::npos) return;
        if (p == n_) {
            consistent_ = false;
            return;
        }
        for (auto& r : rows_)
            if (r[p]) r ^= row;
        rows_.push_back(row);
        pivots_.push_back(p);
    }

    boost::dynamic_bitset<> particular() const {
        boost::dynamic_bitset<> x(n_);
        for (size_t k = 0; k < rows_.size(); ++k) x[pivots_[k]] = rows_[k][n_];
        return x;
    }

    std::vector<boost::dynamic_bitset<>> kernel() const {
        std::vector<bool> is_pivot(n_, false);
        for (auto p : pivots_) is_pivot[p] = true;
        std::vector<boost::dynamic_bitset<>> out;
        for (size_t f = 0; f < n_; ++f) {
            if (is_pivot[f]) continue;
            boost::dynamic_bitset<> x(n_);
            x[f] = 1;
            for (size_t k = 0; k < rows_.size(); ++k) x[pivots_[k]] = rows_[k][f];
            out.push_back(x);
        }
        return out;
    }

private:
    size_t n_;
    bool consistent_ = true;
    std::vector<boost::dynamic_bitset<>> rows_;
    std::vector<size_t> pivots_;
};

inline IMat mod2(IMat A) {
    for (auto& row : A)
        for (auto& x : row) x = ((x % 2) + 2) % 2;
    return A;
}

/// A torus twisted by sigma -> n_sigma phi0(sigma), with n_sigma = n(w_sigma) lambda_sigma(-1).
struct TorusDatum {
    GaloisFrame frame;
    std::shared_ptr<const VinbergAlgebra> L;
    std::vector<int> phi0, w;
    std::vector<IVec> t;
    std::vector<IMat> U;      // Ad(n_sigma phi0(sigma)) on Lie(G) over Z
    std::vector<IMat> torus;  // phi(sigma) on X_*(T), Vinberg coordinates

    const RootDatum& R() const { return L->R; }
    const GroundField& field() const { return frame.field(); }
};

namespace detail {

inline void check_phi(const GaloisFrame& fr, const RootDatum& R, const std::vector<int>& phi0,
                      const std::vector<int>& w) {
    int n = fr.order();
    if (static_cast<int>(phi0.size()) != n || static_cast<int>(w.size()) != n)
        fail(ErrorCode::InvalidArgument, "phi0 and w need one entry per Galois element");
    for (int s = 0; s < n; ++s) {
        if (w[s] < 0 || w[s] >= R.weyl_order()) fail(ErrorCode::InvalidArgument, "Weyl index out of range");
        if (phi0[s] < 0 || phi0[s] >= static_cast<int>(R.omega0.size()))
            fail(ErrorCode::InvalidArgument, "diagram automorphism index out of range");
    }
    for (int s = 0; s < n; ++s)
        for (int u = 0; u < n; ++u) {
            int st = fr.mul(s, u);
            if (R.omega_mul(phi0[s], phi0[u]) != phi0[st])
                fail(ErrorCode::InvalidArgument, "phi0 is not a homomorphism");
            if (R.weyl_mul(w[s], R.omega_conj(phi0[s], w[u])) != w[st])
                fail(ErrorCode::InvalidArgument, "w phi0 is not a homomorphism into W x| Omega_0");
        }
}

inline IMat block_of(const IMat& A, const std::vector<int>& slots) {
    IMat B(slots.size(), IVec(slots.size()));
    for (size_t i = 0; i < slots.size(); ++i)
        for (size_t j = 0; j < slots.size(); ++j) B[i][j] = A[slots[i]][slots[j]];
    return B;
}

} // namespace detail

/// The Weyl-group action phi(sigma) = w_sigma phi0(sigma) on X_*(T).
inline IMat phi_action(const VinbergAlgebra& L, int w, int o) {
    return mat_mul(L.torus_action(w, 0, 0), L.torus_action(0, 0, o));
}

/// Builds the datum for a given 2-torsion correction and checks the cocycle condition exactly.
inline TorusDatum make_torus_datum(const GaloisFrame& fr, std::shared_ptr<const VinbergAlgebra> L,
                                   const std::vector<int>& phi0, const std::vector<int>& w,
                                   const std::vector<IVec>& t) {
    detail::check_phi(fr, L->R, phi0, w);
    TorusDatum td{fr, L, phi0, w, t, {}, {}};
    int n = fr.order();
    auto tslots = L->torus_slots();
    for (int s = 0; s < n; ++s) {
        td.U.push_back(L->element_ad(w[s], t[s], phi0[s]));
        td.torus.push_back(phi_action(*L, w[s], phi0[s]));
        if (detail::block_of(td.U[s], tslots) != td.torus[s])
            fail(ErrorCode::InvalidArgument, "cocycle does not lift phi on the torus");
    }
    for (int s = 0; s < n; ++s)
        for (int u = 0; u < n; ++u)
            if (mat_mul(td.U[s], td.U[u]) != td.U[fr.mul(s, u)])
                fail(ErrorCode::Obstructed, "cocycle condition fails");
    return td;
}

/// Solution space of the F_2 system t_{st} = c(w_s, w'') + w''^-1 t_s + phi0(s) t_u, w'' = phi0(s) w_u phi0(s)^-1.
struct CocycleSolutions {
    F2System system;
    int nt = 0, order = 0;

    std::vector<IVec> unpack(const boost::dynamic_bitset<>& x) const {
        std::vector<IVec> t(order, IVec(nt, 0));
        for (int s = 0; s < order; ++s)
            for (int k = 0; k < nt; ++k) t[s][k] = x[s * nt + k];
        return t;
    }
};

inline CocycleSolutions cocycle_system(const GaloisFrame& fr, const VinbergAlgebra& L, const std::vector<int>& phi0,
                                       const std::vector<int>& w) {
    const RootDatum& R = L.R;
    detail::check_phi(fr, R, phi0, w);
    int n = fr.order(), nt = L.nt;
    CocycleSolutions S{F2System(static_cast<size_t>(n * nt)), nt, n};
    std::vector<IMat> omega_mod2;
    for (int o = 0; o < static_cast<int>(R.omega0.size()); ++o) omega_mod2.push_back(mod2(L.torus_action(0, 0, o)));
    for (int s = 0; s < n; ++s)
        for (int u = 0; u < n; ++u) {
            int st = fr.mul(s, u);
            int w2 = R.omega_conj(phi0[s], w[u]);
            IVec c = L.tits_defect(w[s], w2);
            IMat A = mod2(L.torus_action(R.weyl_inv(w2)));
            const IMat& B = omega_mod2[phi0[s]];
            for (int k = 0; k < nt; ++k) {
                boost::dynamic_bitset<> row(n * nt + 1);
                row.flip(st * nt + k);
                for (int j = 0; j < nt; ++j) {
                    if (A[k][j]) row.flip(s * nt + j);
                    if (B[k][j]) row.flip(u * nt + j);
                }
                if (c[k] & 1) row.set(n * nt);
                S.system.add(row);
            }
        }
    return S;
}

/// Resolves phi = w phi0 to a cocycle using the lexicographically first solution; Obstructed when none exists.
inline TorusDatum resolve_cocycle(const GaloisFrame& fr, std::shared_ptr<const VinbergAlgebra> L,
                                  const std::vector<int>& phi0, const std::vector<int>& w) {
    auto S = cocycle_system(fr, *L, phi0, w);
    if (!S.system.consistent())
        fail(ErrorCode::Obstructed, "Tits defect is not a coboundary for this phi over " + fr.name());
    return make_torus_datum(fr, L, phi0, w, S.unpack(S.system.particular()));
}

/// Up to `limit` solutions: the particular one, then translates by kernel combinations in binary order.
inline std::vector<std::vector<IVec>> cocycle_corrections(const CocycleSolutions& S, size_t limit) {
    std::vector<std::vector<IVec>> out;
    if (!S.system.consistent()) return out;
    auto x0 = S.system.particular();
    auto ker = S.system.kernel();
    size_t bits = std::min<size_t>(ker.size(), 20);
    for (size_t mask = 0; mask < (size_t{1} << bits) && out.size() < limit; ++mask) {
        auto x = x0;
        for (size_t k = 0; k < bits; ++k)
            if (mask >> k & 1) x ^= ker[k];
        out.push_back(S.unpack(x));
    }
    return out;
}

// ------------------------------------------------------------ Galois descent

/// F-form on the fixed points of sigma* = A_sigma (x) sigma acting on F^m (x) K, for a cocycle A with values in GL_m(F).
inline QuadSpace twist_form(const GaloisFrame& fr, const std::vector<FMat>& A, const FMat& gram) {
    const FrameField& K = fr.K;
    const GroundField& F = K.F;
    int m = static_cast<int>(gram.size()), n = K.dim(), order = fr.order();
    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int s = 0; s < order; ++s)
        for (int l = 0; l < m; ++l)
            for (int i = 0; i < m; ++i)
                if (!A[s][l][i].is_zero()) parent[find(l)] = find(i);
    std::vector<std::vector<int>> comps;
    std::vector<int> comp_of(m, -1);
    for (int i = 0; i < m; ++i) {
        int r = find(i);
        if (comp_of[r] < 0) {
            comp_of[r] = static_cast<int>(comps.size());
            comps.emplace_back();
        }
        comps[comp_of[r]].push_back(i);
    }
    std::vector<std::vector<KElem>> basis;  // fixed vectors, m K-coordinates each
    for (auto& C : comps) {
        std::vector<std::vector<KElem>> cand;
        FMat flat;
        for (int i : C)
            for (int j = 0; j < n; ++j) {
                std::vector<KElem> x(m, K.zero());
                for (int s = 0; s < order; ++s)
                    for (int l : C) {
                        const FieldElem& a = A[s][l][i];
                        if (a.is_zero()) continue;
                        for (int k = 0; k < n; ++k)
                            if (!fr.act[s][k][j].is_zero()) x[l][k] += a * fr.act[s][k][j];
                    }
                FVec row;
                for (int l : C)
                    for (int k = 0; k < n; ++k) row.push_back(x[l][k]);
                flat.push_back(row);
                cand.push_back(std::move(x));
            }
        auto chosen = independent_rows(flat, C.size());
        if (chosen.size() < C.size()) fail(ErrorCode::PrecisionLoss, "fixed points do not span the twisted block");
        std::sort(chosen.begin(), chosen.end());
        for (auto c : chosen) basis.push_back(cand[c]);
    }
    std::vector<std::vector<KElem>> gy;
    for (auto& y : basis) {
        std::vector<KElem> v(m, K.zero());
        for (int l = 0; l < m; ++l)
            for (int l2 = 0; l2 < m; ++l2)
                if (!gram[l][l2].is_zero()) v[l] = K.add(v[l], K.scale(gram[l][l2], y[l2]));
        gy.push_back(std::move(v));
    }
    QuadSpace Q{F, fmat_zero(F, m, m)};
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
            KElem s = K.zero();
            for (int l = 0; l < m; ++l)
                if (!K.is_zero(basis[a][l]) && !K.is_zero(gy[b][l])) s = K.add(s, K.mul(basis[a][l], gy[b][l]));
            Q.gram[a][b] = Q.gram[b][a] = K.to_base(s);
        }
    return Q;
}

inline FMat to_fmat(const GroundField& F, const IMat& A) {
    FMat M = fmat_zero(F, A.size(), A.empty() ? 0 : A[0].size());
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < A[i].size(); ++j)
            if (A[i][j]) M[i][j] = felem(F, A[i][j]);
    return M;
}

inline QuadSpace twist_form(const GaloisFrame& fr, const std::vector<IMat>& A, const IMat& gram) {
    const GroundField& F = fr.field();
    std::vector<FMat> AF;
    for (auto& a : A) AF.push_back(to_fmat(F, a));
    return twist_form(fr, AF, to_fmat(F, gram));
}

enum class Block { T, V, VPrime, VSecond, TPrime, TSecond, G, Derived };

inline const char* block_name(Block b) {
    switch (b) {
    case Block::T: return "t";
    case Block::V: return "V";
    case Block::VPrime: return "V'";
    case Block::VSecond: return "V''";
    case Block::TPrime: return "t'";
    case Block::TSecond: return "t''";
    case Block::G: return "g";
    case Block::Derived: return "derived";
    }
    return "?";
}

inline bool ell_is_zero(const RootDatum& R, const GroundField& F) {
    return F.characteristic() != 0 && R.ell % F.characteristic() == 0;
}

/// Matrices and Gram matrix of a block of Lie(G), before twisting.
struct BlockData {
    std::vector<IMat> mats;
    IMat gram;
};

inline BlockData block_data(const TorusDatum& td, Block b) {
    const VinbergAlgebra& L = *td.L;
    const RootDatum& R = L.R;
    const GroundField& F = td.field();
    std::vector<int> slots;
    IMat G = L.gram_G;
    switch (b) {
    case Block::T:
        if (ell_is_zero(R, F)) fail(ErrorCode::WrongCharacteristic, "Q_T needs ell invertible in " + F.descriptor());
        slots = L.torus_slots();
        G = L.gram_T;
        break;
    case Block::V: slots = L.root_slots(); G = L.gram_V; break;
    case Block::VPrime: slots = L.long_slots(); G = L.gram_V; break;
    case Block::VSecond: slots = L.short_slots(); G = L.gram_V; break;
    case Block::G: slots.resize(L.dim); std::iota(slots.begin(), slots.end(), 0); break;
    case Block::Derived:
        for (int k = 0; k < L.r; ++k) slots.push_back(k);
        for (int s : L.root_slots()) slots.push_back(s);
        break;
    case Block::TPrime:
    case Block::TSecond: {
        if (F.characteristic() != R.ell)
            fail(ErrorCode::WrongCharacteristic, "reduced torus forms need char F = ell");
        auto RF = reduced_forms(vinberg_triple(L));
        const FlForm& f = b == Block::TPrime ? RF.qprime : RF.qsecond;
        BlockData d;
        d.gram = f.gram;
        for (size_t i = 0; i < f.dim(); ++i) d.gram[i][i] = modl::md(2 * f.q[i], R.ell);
        for (auto& M : td.torus) d.mats.push_back(b == Block::TPrime ? RF.on_prime(M) : RF.on_second(M));
        return d;
    }
    }
    BlockData d;
    d.gram = b == Block::T ? G : detail::block_of(G, slots);
    std::vector<bool> inside(L.dim, false);
    for (int s : slots) inside[s] = true;
    for (auto& U : td.U) {
        for (int j : slots)
            for (int i = 0; i < L.dim; ++i)
                if (!inside[i] && U[i][j] != 0)
                    fail(ErrorCode::InvalidArgument, std::string("block ") + block_name(b) + " is not stable");
        d.mats.push_back(detail::block_of(U, slots));
    }
    return d;
}

/// The untwisted block form over F.
inline QuadSpace split_quadspace(const TorusDatum& td, Block b) {
    auto d = block_data(td, b);
    return {td.field(), to_fmat(td.field(), d.gram)};
}

inline QuadSpace descend_quadspace(const TorusDatum& td, Block b) {
    auto d = block_data(td, b);
    return twist_form(td.frame, d.mats, d.gram);
}

// ------------------------------------------------------------ characters and spinor norms

/// Class of the quadratic character sigma -> (-1)^{bits[sigma]} of the frame group.
inline SquareClass character_class(const GaloisFrame& fr, const std::vector<int>& bits) {
    std::vector<int> b(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) b[i] = bits[i] & 1;
    return fr.class_of_character(b);
}

inline SquareClass det_character(const TorusDatum& td) {
    std::vector<int> bits;
    for (auto& M : td.torus) bits.push_back(q_det(to_qmat(M)) < 0 ? 1 : 0);
    return character_class(td.frame, bits);
}

/// Classes of eps, eps', eps'' composed with sigma -> w_sigma.
struct EpsilonClasses {
    SquareClass eps, eps1, eps2;
};

inline EpsilonClasses epsilon_classes(const TorusDatum& td) {
    std::vector<int> e, e1, e2;
    for (int w : td.w) {
        e.push_back(td.R().eps(w) < 0);
        e1.push_back(td.R().eps1(w) < 0);
        e2.push_back(td.R().eps2(w) < 0);
    }
    return {character_class(td.frame, e), character_class(td.frame, e1), character_class(td.frame, e2)};
}

/// Spinor norm of an isometry g of (F^n, B) as the discriminant of B(x, y) on the image of 1 - g
/// with x = (1 - g) x'.
inline SquareClass spinor_norm(const GroundField& F, const FMat& gram, const FMat& g) {
    size_t n = gram.size();
    FMat D = fmat_zero(F, n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) D[i][j] = (i == j ? felem(F, 1) : FieldElem::make_zero(F)) - g[i][j];
    FMat cols(n, FVec(n, FieldElem::make_zero(F)));
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) cols[j][i] = D[i][j];
    auto J = independent_rows(cols, n);
    std::sort(J.begin(), J.end());
    if (J.empty()) return {};
    size_t k = J.size();
    FMat M = fmat_zero(F, k, k);
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) {
            FieldElem s = FieldElem::make_zero(F);
            for (size_t i = 0; i < n; ++i)
                if (!cols[J[a]][i].is_zero() && !gram[i][J[b]].is_zero()) s += cols[J[a]][i] * gram[i][J[b]];
            M[a][b] = s;
        }
    return square_class(F, fdet(M));
}

inline SquareClass spinor_norm(const GroundField& F, const IMat& gram, const IMat& g) {
    return spinor_norm(F, to_fmat(F, gram), to_fmat(F, g));
}

/// Local symbol xi(eta) of a homomorphism eta: G -> F^x/F^x2, as sum of {chi_i, b_i} over a basis b_i of the image.
inline int xi(const GaloisFrame& fr, const std::vector<SquareClass>& eta) {
    const GroundField& F = fr.field();
    int n = fr.order();
    for (int s = 0; s < n; ++s)
        for (int u = 0; u < n; ++u)
            if (eta[fr.mul(s, u)] != eta[s] * eta[u]) fail(ErrorCode::InvalidArgument, "eta is not a homomorphism");
    std::vector<SquareClass> basis;
    auto span_has = [&](SquareClass c, const std::vector<SquareClass>& b) -> std::optional<unsigned> {
        for (unsigned mask = 0; mask < (1u << b.size()); ++mask) {
            SquareClass x;
            for (size_t i = 0; i < b.size(); ++i)
                if (mask >> i & 1) x *= b[i];
            if (x == c) return mask;
        }
        return std::nullopt;
    };
    for (auto c : eta)
        if (!span_has(c, basis)) basis.push_back(c);
    int total = 0;
    for (size_t i = 0; i < basis.size(); ++i) {
        std::vector<int> chi(n);
        for (int s = 0; s < n; ++s) chi[s] = (*span_has(eta[s], basis) >> i) & 1;
        total ^= cup(F, fr.class_of_character(chi), basis[i]);
    }
    return total;
}

/// delta o phi on the torus block.
inline std::vector<SquareClass> spinor_character(const TorusDatum& td) {
    std::vector<SquareClass> eta;
    for (auto& M : td.torus) eta.push_back(spinor_norm(td.field(), td.L->gram_T, M));
    return eta;
}

// ------------------------------------------------------------ Stiefel-Whitney classes

/// SW(A) - SW(B) for forms of equal dimension, odd allowed.
inline Br2sElem sw_difference(const QuadSpace& A, const QuadSpace& B) {
    require_same(A.field, B.field);
    if (A.dim() != B.dim()) fail(ErrorCode::DimMismatch, "sw difference needs equal dimensions");
    const GroundField& F = A.field;
    return br2s_sub(F, sw(F, diagonalize(A)), sw(F, diagonalize(B)));
}

inline bool g2_char_three(const TorusDatum& td) {
    return td.R().family == 'G' && td.field().characteristic() == 3;
}

/// SW-bar of the Galois action on X_*(T), from the twisted torus form and the spinor character.
inline Br2sElem sw_bar(const TorusDatum& td) {
    const GroundField& F = td.field();
    if (ell_is_zero(td.R(), F)) {
        if (!g2_char_three(td)) fail(ErrorCode::WrongCharacteristic, "ell vanishes in " + F.descriptor());
        Br2sElem a = sw_difference(descend_quadspace(td, Block::TPrime), split_quadspace(td, Block::TPrime));
        Br2sElem b = sw_difference(descend_quadspace(td, Block::TSecond), split_quadspace(td, Block::TSecond));
        return br2s_add(F, a, b);
    }
    Br2sElem h = hw_rel(descend_quadspace(td, Block::T), split_quadspace(td, Block::T));
    h.x ^= xi(td.frame, spinor_character(td));
    return h;
}

inline Br2sElem sw_virtual(const TorusDatum& td, const TorusDatum& td0) {
    require_same(td.field(), td0.field());
    return br2s_sub(td.field(), sw_bar(td), sw_bar(td0));
}

/// Dihedral formula SW = 1 + eps + eps' u eps'' for the reflection representation of W(G2), pulled back along w.
inline Br2sElem g2_pullback(const TorusDatum& td) {
    if (td.R().family != 'G') fail(ErrorCode::UnsupportedType, "dihedral pullback is specific to G2");
    auto e = epsilon_classes(td);
    return {e.eps, cup(td.field(), e.eps1, e.eps2)};
}

/// SW-bar of a representation of the frame group through a sum of quadratic characters, read off the
/// eigenspaces of a Sylow 2-subgroup P. Applies when P is elementary abelian and every character of P
/// extends to G; ell = 0 for integral matrices, else the reduction mod ell (ell odd).
inline std::optional<Br2sElem> sw_bar_rep(const GaloisFrame& fr, const std::vector<IMat>& mats, long long ell = 0) {
    const GroundField& F = fr.field();
    int n = fr.order();
    int target = 1;
    while (n % (2 * target) == 0) target *= 2;
    std::vector<int> P{0};
    for (int s = 1; s < n && static_cast<int>(P.size()) < target; ++s) {
        if (fr.mul(s, s) != 0) continue;
        if (std::find(P.begin(), P.end(), s) != P.end()) continue;
        bool commutes = true;
        for (int p : P) commutes = commutes && fr.mul(s, p) == fr.mul(p, s);
        if (!commutes) continue;
        std::vector<int> next = P;
        for (int p : P) next.push_back(fr.mul(s, p));
        P = next;
    }
    if (static_cast<int>(P.size()) != target) return std::nullopt;
    if (fr.characters.size() + 1 != P.size()) return std::nullopt;
    size_t dim = mats.at(0).size();
    std::vector<std::vector<int>> chars{std::vector<int>(n, 0)};
    std::vector<SquareClass> classes{SquareClass{}};
    for (size_t k = 0; k < fr.characters.size(); ++k) {
        chars.push_back(fr.characters[k]);
        classes.push_back(fr.classes[k]);
    }
    DiagForm D;
    size_t total = 0;
    for (size_t c = 0; c < chars.size(); ++c) {
        long long mult = 0;
        if (ell == 0) {
            long long tr = 0;
            for (int p : P) {
                long long t = 0;
                for (size_t i = 0; i < dim; ++i) t += mats[p][i][i];
                tr += chars[c][p] ? -t : t;
            }
            if (tr % static_cast<long long>(P.size()) != 0) fail(ErrorCode::InvalidArgument, "non-integral multiplicity");
            mult = tr / static_cast<long long>(P.size());
        } else {
            IMat stacked;
            for (int p : P)
                for (size_t i = 0; i < dim; ++i) {
                    IVec row = mats[p][i];
                    row[i] -= chars[c][p] ? -1 : 1;
                    stacked.push_back(row);
                }
            mult = static_cast<long long>(dim) - modl::rank(stacked, ell);
        }
        for (long long k = 0; k < mult; ++k) D.coeffs.push_back(classes[c]);
        total += static_cast<size_t>(mult);
    }
    if (total != dim) fail(ErrorCode::InvalidArgument, "representation is not a sum of quadratic characters on P");
    return sw(F, D);
}

// ------------------------------------------------------------ binary torus check

struct BinaryCheckResult {
    Br2sElem hw;    // HW(Q_a, Q_1) by descent
    int predicted = 0;  // {chi_E, a}
    bool pass = false;
};

/// Rank-one torus rotating the hyperbolic plane, twisted by the class of a in F^x / N(E^x).
inline BinaryCheckResult hw_torus_binary_check(const GroundField& F, const QuadExt& E, const FieldElem& a) {
    require_same(F, E.base);
    if (a.is_zero()) fail(ErrorCode::ZeroElement, "a must be a unit");
    BinaryCheckResult r;
    r.predicted = symbol(F, E.a, a);
    if (E.split()) {
        r.pass = r.predicted == 0;
        return r;
    }
    auto fr = quadratic_frame(F, E.a);
    FieldElem zero = FieldElem::make_zero(F), one = felem(F, 1);
    FMat H{{zero, one}, {one, zero}};
    FMat I = fmat_identity(F, 2);
    int s = fr.gens.at(0);
    std::vector<FMat> swap(2, I), twisted(2, I);
    swap[s] = {{zero, one}, {one, zero}};
    twisted[s] = {{zero, a}, {a.inv(), zero}};
    r.hw = hw_rel(twist_form(fr, twisted, H), twist_form(fr, swap, H));
    r.pass = r.hw.chi.is_one() && r.hw.x == r.predicted;
    return r;
}

} // namespace lqf
