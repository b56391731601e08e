#include <catch_amalgamated.hpp>

#include "lqf/clifford.hpp"
#include "lqf/torus.hpp"

using namespace lqf;

namespace {

struct TypeCache {
    std::shared_ptr<RootDatum> R;
    std::shared_ptr<VinbergAlgebra> L;
    OmegaGroup Om;
};

const TypeCache& cached(const std::string& type) {
    static std::map<std::string, TypeCache> cache;
    auto it = cache.find(type);
    if (it != cache.end()) return it->second;
    TypeCache c;
    c.R = std::make_shared<RootDatum>(build_root_datum(type));
    c.L = std::make_shared<VinbergAlgebra>(vinberg_algebra(*c.R));
    c.Om = omega_group(c.R);
    return cache.emplace(type, c).first->second;
}

TorusDatum resolve(const GaloisFrame& fr, const std::string& type, const std::vector<int>& hom) {
    auto& c = cached(type);
    auto [phi0, w] = split_hom(c.Om, hom);
    return resolve_cocycle(fr, c.L, phi0, w);
}

TorusDatum split_datum(const GaloisFrame& fr, const std::string& type, const std::vector<int>& phi0) {
    auto& c = cached(type);
    return resolve_cocycle(fr, c.L, phi0, std::vector<int>(fr.order(), 0));
}

/// phi sending the generator of an order-2 frame to the reflection in root a.
std::vector<int> reflection_hom(const std::string& type, int a) {
    return {0, cached(type).R->reflection(a)};
}

int short_simple(const RootDatum& R) {
    for (int i = 0; i < R.rank; ++i)
        if (!R.is_long[R.simple(i)]) return i;
    return 0;
}

std::vector<GaloisFrame> quadratic_frames(const GroundField& F) {
    std::vector<GaloisFrame> out;
    for (auto& fr : enumerate_frames(F, 2))
        if (fr.order() == 2) out.push_back(fr);
    return out;
}

} // namespace

TEST_CASE("identity cocycle") {
    auto F = GroundField::padic(5, 24);
    for (auto& fr : enumerate_frames(F, 2)) {
        auto td = split_datum(fr, "A2", std::vector<int>(fr.order(), 0));
        for (auto& U : td.U) CHECK(U == identity_mat<long long>(td.L->dim));
        auto QV = descend_quadspace(td, Block::V);
        CHECK(wall(QV) == Br2sElem{});
        CHECK(det_character(td).is_one());
        CHECK(sw_bar(td) == Br2sElem{});
    }
}

TEST_CASE("cocycle condition and dimensions for every faithful phi") {
    for (auto F : {GroundField::padic(5, 24), GroundField::real(), GroundField::padic(2, 24)}) {
        for (std::string type : {"A1", "A2", "B2", "G2"}) {
            auto& c = cached(type);
            for (auto& fr : enumerate_frames(F, 4)) {
                for (auto& h : up_to_conjugacy(c.Om, omega_homomorphisms(fr, c.Om, true))) {
                    CAPTURE(F.descriptor(), type, fr.name(), h);
                    TorusDatum td;
                    try {
                        td = resolve(fr, type, h);
                    } catch (const Error& e) {
                        CHECK(e.code() == ErrorCode::Obstructed);
                        continue;
                    }
                    for (int s = 0; s < fr.order(); ++s)
                        for (int u = 0; u < fr.order(); ++u) CHECK(mat_mul(td.U[s], td.U[u]) == td.U[fr.mul(s, u)]);
                    for (Block b : {Block::T, Block::V, Block::VPrime, Block::VSecond, Block::G}) {
                        auto Q = descend_quadspace(td, b);
                        CHECK(Q.dim() == split_quadspace(td, b).dim());
                        CHECK(q_det(to_qmat(block_data(td, b).gram)) != 0);
                        CHECK_NOTHROW(diagonalize(Q));
                    }
                    // the torus block is the twist of Q_T by phi
                    auto QT = twist_form(fr, td.torus, td.L->gram_T);
                    CHECK(sw(F, diagonalize(QT)) == sw(F, diagonalize(descend_quadspace(td, Block::T))));
                }
            }
        }
    }
}

TEST_CASE("A1 norm-one torus") {
    for (auto F : {GroundField::padic(5, 24), GroundField::padic(3, 24), GroundField::real()}) {
        for (auto& fr : quadratic_frames(F)) {
            CAPTURE(F.descriptor(), fr.name());
            SquareClass d = fr.classes.at(0);
            auto td = resolve(fr, "A1", reflection_hom("A1", 0));
            CHECK(det_character(td) == d);
            auto QV = descend_quadspace(td, Block::V);
            CHECK(disc(diagonalize(QV)) == d * class_of(F, -1));
            // Explicit SL2 cocycle n = [[0, c], [-1/c, 0]] with c^2 = d acts on (e, f) by [[0, -d], [-1/d, 0]].
            FieldElem dd = class_rep(F, d), zero = FieldElem::make_zero(F);
            std::vector<FMat> A(2, fmat_identity(F, 2));
            A[fr.gens[0]] = {{zero, -dd}, {-dd.inv(), zero}};
            FMat H{{zero, felem(F, 1)}, {felem(F, 1), zero}};
            auto Qsl2 = twist_form(fr, A, H);
            CHECK(disc(diagonalize(Qsl2)) == disc(diagonalize(QV)));
            auto td0 = split_datum(fr, "A1", {0, 0});
            CHECK(sw_virtual(td, td0).chi == d);
        }
    }
}

TEST_CASE("resolution over F3((t)) for a G2 short reflection") {
    auto F = GroundField::laurent(3, 24);
    auto fr = make_frame(F, 2, 1);
    auto& c = cached("G2");
    int a = c.R->simple(short_simple(*c.R));
    auto td = resolve(fr, "G2", reflection_hom("G2", a));
    CHECK(epsilon_classes(td).eps2 == fr.classes.at(0));
    CHECK_THROWS_AS(descend_quadspace(td, Block::T), Error);
    CHECK(descend_quadspace(td, Block::TPrime).dim() + descend_quadspace(td, Block::TSecond).dim() > 0);
    auto td0 = split_datum(fr, "G2", {0, 0});
    CHECK(sw_virtual(td, td0) == g2_pullback(td));
}

TEST_CASE("spinor norms of Weyl elements") {
    for (auto F : {GroundField::padic(3, 24), GroundField::padic(5, 24), GroundField::padic(7, 24)}) {
        for (std::string type : {"A1", "A2", "C2", "B2", "G2", "A3"}) {
            auto& c = cached(type);
            const RootDatum& R = *c.R;
            const VinbergAlgebra& L = *c.L;
            QuadSpace QT = QuadSpace::from_rational(F, to_qmat(L.gram_T));
            for (int w = 0; w < R.weyl_order(); ++w) {
                CAPTURE(F.descriptor(), type, w);
                SquareClass delta = spinor_norm(F, L.gram_T, L.torus_action(w));
                CHECK(delta == spinor_character(R, F, w));
                if (L.nt > 4) continue;
                FMat vectors;
                for (int i : R.words[w]) {
                    FVec v(L.nt, FieldElem::make_zero(F));
                    v[i] = felem(F, 1);
                    vectors.push_back(v);
                }
                CHECK(delta == spinor_norm_oracle(QT, vectors));
            }
        }
    }
}

TEST_CASE("spinor norm basics") {
    auto F = GroundField::padic(5, 24);
    // hyperbolic plane, g = diag(a, 1/a)
    IMat H{{0, 1}, {1, 0}};
    FMat g{{felem(F, 3), FieldElem::make_zero(F)}, {FieldElem::make_zero(F), felem(F, Rat(1, 3))}};
    CHECK(spinor_norm(F, to_fmat(F, H), g) == class_of(F, 3));
    // reflection in v with Q(v) = 7 on <2, 14> (polar Gram diag(4, 28))
    IMat G{{4, 0}, {0, 28}};
    IMat r{{1, 0}, {0, -1}};
    CHECK(spinor_norm(F, G, r) == class_of(F, 14));
    CHECK(spinor_norm(F, G, identity_mat<long long>(2)).is_one());
}

TEST_CASE("xi is bilinear in characters and classes") {
    auto F = GroundField::padic(5, 24);
    auto fr = make_frame(F, 2, 2, 1);  // Klein four group
    REQUIRE(fr.characters.size() == 3);
    for (auto b : all_classes(F))
        for (size_t i = 0; i < 3; ++i) {
            std::vector<SquareClass> eta(fr.order());
            for (int s = 0; s < fr.order(); ++s) eta[s] = fr.characters[i][s] ? b : SquareClass{};
            CHECK(xi(fr, eta) == cup(F, fr.classes[i], b));
            for (auto b2 : all_classes(F)) {
                std::vector<SquareClass> eta2(fr.order());
                for (int s = 0; s < fr.order(); ++s)
                    eta2[s] = eta[s] * (fr.characters[(i + 1) % 3][s] ? b2 : SquareClass{});
                CHECK(xi(fr, eta2) == (cup(F, fr.classes[i], b) ^ cup(F, fr.classes[(i + 1) % 3], b2)));
            }
        }
    CHECK(xi(fr, std::vector<SquareClass>(fr.order())) == 0);
}

TEST_CASE("sw_bar through a single reflection") {
    for (auto F : {GroundField::padic(3, 24), GroundField::padic(5, 24), GroundField::real()}) {
        for (auto& fr : quadratic_frames(F)) {
            SquareClass d = fr.classes.at(0);
            for (std::string type : {"A1", "A2", "B2", "C2", "G2"}) {
                auto& c = cached(type);
                for (int i = 0; i < c.R->rank; ++i) {
                    CAPTURE(F.descriptor(), fr.name(), type, i);
                    int a = c.R->simple(i);
                    auto td = resolve(fr, type, reflection_hom(type, a));
                    // reflection in v = (alpha_i^vee, 0) with Q_T(v) = b
                    FieldElem b = felem(F, Rat(c.L->gram_T[i][i], 2));
                    CHECK(xi(fr, spinor_character(td)) == symbol(F, d, b));
                    auto hw = hw_rel(descend_quadspace(td, Block::T), split_quadspace(td, Block::T));
                    CHECK(hw == Br2sElem{d, symbol(F, d, b)});
                    CHECK(sw_bar(td) == Br2sElem{d, 0});
                    CHECK(sw_bar(td).chi == det_character(td));
                }
            }
        }
    }
}

TEST_CASE("G2 spinor term is the symbol with 3") {
    auto F = GroundField::padic(7, 24);
    auto& c = cached("G2");
    int a = c.R->simple(short_simple(*c.R));
    for (auto& fr : quadratic_frames(F)) {
        auto td = resolve(fr, "G2", reflection_hom("G2", a));
        CHECK(xi(fr, spinor_character(td)) == symbol(F, fr.classes.at(0), felem(F, 3)));
    }
}

TEST_CASE("sw_bar agrees with the eigenspace oracle") {
    for (auto F : {GroundField::padic(3, 24), GroundField::padic(5, 24), GroundField::real()}) {
        for (std::string type : {"A1", "A2", "B2", "C2", "G2"}) {
            auto& c = cached(type);
            for (auto& fr : enumerate_frames(F, 6)) {
                for (auto& h : up_to_conjugacy(c.Om, omega_homomorphisms(fr, c.Om, false))) {
                    CAPTURE(F.descriptor(), type, fr.name(), h);
                    auto rep = sw_bar_rep(fr, [&] {
                        std::vector<IMat> m;
                        auto [phi0, w] = split_hom(c.Om, h);
                        for (size_t s = 0; s < h.size(); ++s) m.push_back(phi_action(*c.L, w[s], phi0[s]));
                        return m;
                    }());
                    if (!rep) continue;
                    std::optional<TorusDatum> td;
                    try {
                        td = resolve(fr, type, h);
                    } catch (const Error& e) {
                        CHECK(e.code() == ErrorCode::Obstructed);
                        continue;
                    }
                    CHECK(sw_bar(*td) == *rep);
                }
            }
        }
    }
}

TEST_CASE("invariants are conjugation invariant") {
    auto F = GroundField::padic(5, 24);
    for (std::string type : {"A1", "A2"}) {
        auto& c = cached(type);
        for (auto& fr : enumerate_frames(F, 2)) {
            for (auto& h : omega_homomorphisms(fr, c.Om, false)) {
                auto td = resolve(fr, type, h);
                auto wallV = wall(descend_quadspace(td, Block::V));
                for (int g = 0; g < c.Om.order(); ++g) {
                    std::vector<int> hc;
                    for (int x : h) hc.push_back(c.Om.mul(c.Om.mul(g, x), c.Om.inv(g)));
                    auto tdc = resolve(fr, type, hc);
                    CHECK(wall(descend_quadspace(tdc, Block::V)) == wallV);
                    CHECK(sw_bar(tdc) == sw_bar(td));
                }
            }
        }
    }
}

TEST_CASE("different resolutions of the same phi") {
    auto F = GroundField::padic(3, 24);
    auto& c = cached("B2");
    for (auto& fr : quadratic_frames(F)) {
        for (auto& h : omega_homomorphisms(fr, c.Om, true)) {
            auto [phi0, w] = split_hom(c.Om, h);
            auto S = cocycle_system(fr, *c.L, phi0, w);
            auto sols = cocycle_corrections(S, 4);
            REQUIRE(sols.size() >= 2);
            Br2sElem first = sw_bar(make_torus_datum(fr, c.L, phi0, w, sols[0]));
            for (auto& t : sols) CHECK(sw_bar(make_torus_datum(fr, c.L, phi0, w, t)) == first);
        }
    }
}

TEST_CASE("scaling the short-root block by ell") {
    for (auto F : {GroundField::padic(3, 24), GroundField::padic(5, 24), GroundField::padic(7, 24)}) {
        for (std::string type : {"B2", "C2", "G2"}) {
            auto& c = cached(type);
            FieldElem ell = felem(F, c.R->ell);
            for (auto& fr : enumerate_frames(F, 2)) {
                for (auto& h : up_to_conjugacy(c.Om, omega_homomorphisms(fr, c.Om, false))) {
                    auto td = resolve(fr, type, h);
                    auto Q2 = descend_quadspace(td, Block::VSecond);
                    Br2sElem lhs = br2s_sub(F, wall(scale(ell, Q2)), wall(Q2));
                    CHECK(lhs == Br2sElem{{}, symbol(F, wall(Q2).chi, ell)});
                }
            }
        }
    }
}

TEST_CASE("binary torus check") {
    for (auto F : {GroundField::padic(3, 24), GroundField::padic(5, 24), GroundField::real(), GroundField::laurent(5, 24)}) {
        for (auto& E : quadratic_etale_algebras(F))
            for (auto a : all_classes(F)) {
                CAPTURE(F.descriptor(), class_name(F, E.a), class_name(F, a));
                auto r = hw_torus_binary_check(F, E, class_rep(F, a));
                CHECK(r.pass);
            }
    }
    auto Q5 = GroundField::padic(5, 24);
    auto r = hw_torus_binary_check(Q5, quad_ext(Q5, class_of(Q5, 2)), felem(Q5, 5));
    CHECK(r.hw == Br2sElem{{}, 1});
    CHECK(r.predicted == 1);
    auto R = GroundField::real();
    auto rr = hw_torus_binary_check(R, quad_ext(R, class_of(R, -1)), felem(R, -1));
    CHECK(rr.hw == Br2sElem{{}, 1});
    auto norm = hw_torus_binary_check(Q5, quad_ext(Q5, class_of(Q5, 2)), felem(Q5, 4));
    CHECK(norm.hw == Br2sElem{});
}
