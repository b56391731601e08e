#include <catch_amalgamated.hpp>

#include <random>

#include "lqf/quadform.hpp"
#include "oracles.hpp"

using namespace lqf;

namespace {

std::vector<GroundField> test_fields() {
    return {GroundField::real(), GroundField::padic(3), GroundField::padic(5), GroundField::padic(7),
            GroundField::padic(2), GroundField::laurent(3)};
}

QuadSpace random_diag(const GroundField& F, size_t n, std::mt19937& rng) {
    FVec a;
    for (size_t i = 0; i < n; ++i) a.push_back(oracle::random_unit_times_pi(F, rng));
    return QuadSpace::diagonal(F, a);
}

// Random nondiagonal integral Gram matrix with nonzero determinant.
QuadSpace random_gram(const GroundField& F, size_t n, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-30, 30);
    for (;;) {
        QMat g(n, QVec(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j) g[i][j] = g[j][i] = Rat(d(rng));
        auto Q = QuadSpace::from_rational(F, g);
        if (!fdet(Q.gram).is_zero()) return Q;
    }
}

} // namespace

TEST_CASE("br2s group axioms hold exhaustively") {
    for (auto F : {GroundField::real(), GroundField::complex(), GroundField::padic(2), GroundField::padic(3),
                   GroundField::padic(5), GroundField::laurent(3)}) {
        std::vector<Br2sElem> els;
        for (auto c : all_classes(F))
            for (int x : {0, 1}) els.push_back({c, F.kind == FieldKind::Complex ? 0 : x});
        for (auto& a : els) {
            CHECK(br2s_add(F, br2s_zero(), a) == a);
            CHECK(br2s_sub(F, a, a) == br2s_zero());
            for (auto& b : els) {
                CHECK(br2s_add(F, a, b) == br2s_add(F, b, a));
                for (auto& c : els)
                    CHECK(br2s_add(F, br2s_add(F, a, b), c) == br2s_add(F, a, br2s_add(F, b, c)));
            }
        }
    }
}

TEST_CASE("br2s examples") {
    auto R = GroundField::real();
    auto m1 = class_of(R, -1);
    CHECK(br2s_add(R, {m1, 0}, {m1, 0}) == Br2sElem{SquareClass{}, 1});
    CHECK(br2s_neg(R, {m1, 0}) == Br2sElem{m1, 1});
    CHECK(cup(R, m1, m1) == 1);
    auto F5 = GroundField::padic(5);
    auto u = class_of(F5, 2);
    CHECK(cup(F5, u, class_of(F5, 5)) == 1);
    CHECK(symbol(F5, u, felem(F5, 5)) == 1);
    CHECK(symbol(F5, SquareClass{}, felem(F5, 5)) == 0);
    CHECK_THROWS_AS(symbol(F5, u, FieldElem::make_zero(F5)), Error);
    auto F3 = GroundField::padic(3);
    try {
        br2s_add(TaggedBr2s{F5, {}}, TaggedBr2s{F3, {}});
        FAIL("expected FieldMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::FieldMismatch);
    }
}

TEST_CASE("symbol is bimultiplicative and kills squares") {
    std::mt19937 rng(3);
    for (auto F : test_fields()) {
        auto cs = all_classes(F);
        for (int t = 0; t < 50; ++t) {
            auto b = oracle::random_unit_times_pi(F, rng), b2 = oracle::random_unit_times_pi(F, rng);
            for (auto c : cs) {
                CHECK(symbol(F, c, b * b) == 0);
                CHECK(symbol(F, c, b * b2) == (symbol(F, c, b) ^ symbol(F, c, b2)));
                for (auto c2 : cs) CHECK(symbol(F, c * c2, b) == (symbol(F, c, b) ^ symbol(F, c2, b)));
            }
        }
    }
}

TEST_CASE("br2s json round-trip") {
    auto L = GroundField::laurent(3);
    for (auto c : all_classes(L))
        for (int x : {0, 1}) {
            Br2sElem e{c, x};
            CHECK(br2s_from_json(L, to_json(L, e)) == e);
        }
}

TEST_CASE("diagonalize examples") {
    for (auto F : test_fields()) {
        auto D = diagonalize(hyperbolic_plane(F));
        REQUIRE(D.dim() == 2);
        CHECK(disc(D) == class_of(F, -1));
        CHECK(sw(F, D) == br2s_z(F));
        std::mt19937 rng(5);
        auto Q = random_diag(F, 4, rng);
        auto D2 = diagonalize(Q);
        for (size_t i = 0; i < 4; ++i) CHECK(D2.coeffs[i] == square_class(F, Q.gram[i][i] / felem(F, 2)));
    }
    auto R = GroundField::real();
    auto H = diagonalize(QuadSpace::from_classes(R, {{}, {}, {}, {}}));
    for (auto c : H.coeffs) CHECK(c.is_one());
    auto D = DiagForm{{class_of(R, -1), class_of(R, -1)}};
    CHECK(disc(D).is_one());
    CHECK(hw(R, D) == 1);
}

TEST_CASE("diagonalization gives an isometric diagonal basis") {
    std::mt19937 rng(17);
    for (auto F : test_fields())
        for (int t = 0; t < 40; ++t) {
            auto Q = random_gram(F, 2 + t % 4, rng);
            auto Dg = diagonalize_full(Q);
            for (size_t i = 0; i < Q.dim(); ++i)
                for (size_t j = 0; j < Q.dim(); ++j) {
                    auto b = Q.bilinear(Dg.basis[i], Dg.basis[j]);
                    if (i == j) CHECK((b - felem(F, 2) * Dg.a[i]).is_zero());
                    else CHECK(b.is_zero());
                }
            CHECK_FALSE(fdet(Dg.basis).is_zero());
        }
}

TEST_CASE("wall examples") {
    for (auto F : test_fields()) {
        CHECK(wall(hyperbolic_plane(F)) == br2s_zero());
        for (auto d : all_classes(F))
            for (auto a : all_classes(F)) {
                auto Q = scale(class_rep(F, a), norm_form(F, d));
                CHECK(wall(Q) == Br2sElem{d, cup(F, d, a)});
            }
        CHECK_THROWS_AS(wall(QuadSpace::from_classes(F, {{}})), Error);
    }
    auto R = GroundField::real();
    CHECK(wall(QuadSpace::from_classes(R, {{}, {}, {}, {}})) == Br2sElem{SquareClass{}, 1});
}

TEST_CASE("hw_rel examples") {
    auto R = GroundField::real();
    auto Q = QuadSpace::from_classes(R, {{}, class_of(R, -1)});
    auto P = QuadSpace::from_classes(R, {{}, {}});
    CHECK(hw_rel(Q, Q) == br2s_zero());
    CHECK(hw_rel(Q, P) == Br2sElem{class_of(R, -1), 0});
    try {
        hw_rel(Q, QuadSpace::from_classes(R, {{}, {}, {}, {}}));
        FAIL("expected DimMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimMismatch);
    }
    auto F5 = GroundField::padic(5);
    try {
        hw_rel(Q, QuadSpace::from_classes(F5, {{}, {}}));
        FAIL("expected FieldMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::FieldMismatch);
    }
}

TEST_CASE("scaling examples") {
    auto F5 = GroundField::padic(5);
    auto QE = norm_form(F5, class_of(F5, 2));
    auto w0 = wall(QE), w1 = wall(scale(felem(F5, 5), QE));
    CHECK(w0.chi == w1.chi);
    CHECK(w0.x != w1.x);
    CHECK(wall(scale(felem(F5, 9), QE)) == w0);
    CHECK_THROWS_AS(scale(FieldElem::make_zero(F5), QE), Error);
}

TEST_CASE("Wall invariant properties on random forms") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> half(1, 3);
    for (auto F : test_fields()) {
        INFO(F.descriptor());
        for (int t = 0; t < 200; ++t) {
            auto Q1 = random_diag(F, 2 * half(rng), rng);
            auto Q2 = t % 2 ? random_gram(F, 2 * half(rng), rng) : random_diag(F, 2 * half(rng), rng);
            // additivity
            CHECK(wall(dsum(Q1, Q2)) == br2s_add(F, wall(Q1), wall(Q2)));
            // Witt relation
            CHECK(wall(dsum(Q1, scale(felem(F, -1), Q1))) == br2s_zero());
            // scaling
            auto a = oracle::random_unit_times_pi(F, rng);
            auto w = wall(Q1);
            CHECK(br2s_sub(F, wall(scale(a, Q1)), w) == Br2sElem{SquareClass{}, symbol(F, w.chi, a)});
            // relative invariants
            auto Q3 = random_diag(F, Q1.dim(), rng);
            auto Q1b = random_diag(F, Q1.dim(), rng);
            CHECK(hw_rel(Q3, Q1) == br2s_add(F, hw_rel(Q3, Q1b), hw_rel(Q1b, Q1)));
            CHECK(hw_rel(Q3, Q1) == br2s_sub(F, wall(Q1), wall(Q3)));
        }
    }
}

TEST_CASE("quadspace json literals") {
    auto F = GroundField::padic(3);
    auto Q = quadspace_from_json(F, nlohmann::json::parse(R"({"gram": [[0, 1], [1, 0]]})"));
    CHECK(wall(Q) == br2s_zero());
    auto D = quadspace_from_json(F, nlohmann::json::parse(R"({"diag": [1, "1/3"]})"));
    CHECK(diagonalize(D).coeffs[1] == class_of(F, 3));
    CHECK_THROWS_AS(quadspace_from_json(F, nlohmann::json::parse(R"({"gram": [[0, 1], [2, 0]]})")), Error);
}
