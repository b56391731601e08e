#include <catch_amalgamated.hpp>

#include <random>

#include "lqf/clifford.hpp"
#include "oracles.hpp"

using namespace lqf;

namespace {

std::vector<GroundField> oracle_fields() {
    return {GroundField::real(), GroundField::padic(3), GroundField::padic(5), GroundField::padic(2),
            GroundField::laurent(3)};
}

// All tuples of length n over the code group.
std::vector<DiagForm> all_diag(const GroundField& F, size_t n) {
    auto cs = all_classes(F);
    std::vector<DiagForm> out{DiagForm{}};
    for (size_t i = 0; i < n; ++i) {
        std::vector<DiagForm> next;
        for (auto& D : out)
            for (auto c : cs) {
                auto E = D;
                E.coeffs.push_back(c);
                next.push_back(E);
            }
        out = std::move(next);
    }
    return out;
}

} // namespace

TEST_CASE("Clifford tables are associative and vectors square to Q(v)") {
    std::mt19937 rng(1);
    for (auto F : oracle_fields()) {
        for (size_t n = 1; n <= 4; ++n) {
            FVec a;
            for (size_t i = 0; i < n; ++i) a.push_back(oracle::random_unit_times_pi(F, rng));
            auto A = clifford_algebra(F, a);
            CHECK(A.dim() == (size_t{1} << n));
            CHECK(is_associative(A));
            auto Q = QuadSpace::diagonal(F, a);
            for (int t = 0; t < 5; ++t) {
                FVec v;
                for (size_t i = 0; i < n; ++i) v.push_back(oracle::random_unit_times_pi(F, rng));
                auto x = A.vector(v);
                CHECK(A.equal(A.mul(x, x), A.scalar(Q.value(v))));
            }
        }
    }
    auto F = GroundField::padic(5);
    try {
        clifford_algebra(F, DiagForm{std::vector<SquareClass>(5)});
        FAIL("expected RankTooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RankTooLarge);
    }
}

TEST_CASE("even center examples") {
    auto R = GroundField::real();
    CHECK(even_center_class(clifford_algebra(R, DiagForm{{{}, class_of(R, -1)}})).is_one());
    CHECK(even_center_class(clifford_algebra(R, DiagForm{{{}, {}}})) == class_of(R, -1));
    auto F5 = GroundField::padic(5);
    auto u = class_of(F5, 2);
    CHECK(even_center_class(clifford_algebra(F5, DiagForm{{{}, u}})) == u);
}

TEST_CASE("quaternion splitting examples") {
    auto R = GroundField::real();
    CHECK(quaternion_is_split(R, felem(R, 1), felem(R, -7)));
    CHECK_FALSE(quaternion_is_split(R, felem(R, -1), felem(R, -1)));
    auto F5 = GroundField::padic(5);
    CHECK_FALSE(quaternion_is_split(F5, felem(F5, 2), felem(F5, 5)));
    CHECK(quaternion_is_split(F5, felem(F5, 2), felem(F5, 3)));
}

TEST_CASE("wall via Clifford agrees with the SW dictionary") {
    for (auto F : oracle_fields())
        for (size_t n : {2u, 4u})
            for (auto& D : all_diag(F, n)) {
                INFO(F.descriptor() << " n=" << n);
                CHECK(wall_via_clifford(F, D) == wall_of_diag(F, D));
            }
}

TEST_CASE("graded tensor product of Clifford algebras is the Clifford algebra of the sum") {
    std::mt19937 rng(9);
    for (auto F : oracle_fields()) {
        FVec a, b;
        for (int i = 0; i < 2; ++i) {
            a.push_back(oracle::random_unit_times_pi(F, rng));
            b.push_back(oracle::random_unit_times_pi(F, rng));
        }
        auto T = graded_tensor(clifford_algebra(F, a), clifford_algebra(F, b));
        FVec ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        auto C = clifford_algebra(F, ab);
        for (unsigned S = 0; S < C.dim(); ++S)
            for (unsigned U = 0; U < C.dim(); ++U) {
                CHECK(T.table[S][U].index == C.table[S][U].index);
                CHECK((T.table[S][U].coef - C.table[S][U].coef).is_zero());
            }
        CHECK(is_associative(T));
    }
}

TEST_CASE("quaternion norm form splits as Q_E plus -a Q_E") {
    for (auto F : oracle_fields())
        for (auto d : all_classes(F))
            for (auto a : all_classes(F)) {
                // D(E, a) = E + E j with j^2 = a, reduced norm N(x) - a N(y)
                auto QD = dsum(norm_form(F, d), scale(-class_rep(F, a), norm_form(F, d)));
                auto D = diagonalize(QD);
                CHECK(disc(D).is_one());
                CHECK(wall(QD) == Br2sElem{SquareClass{}, cup(F, d, a)});
                CHECK(wall_via_clifford(F, D) == wall(QD));
            }
}

TEST_CASE("twisted conjugation by a vector is the reflection") {
    std::mt19937 rng(4);
    for (auto F : oracle_fields()) {
        FVec a;
        for (int i = 0; i < 3; ++i) a.push_back(oracle::random_unit_times_pi(F, rng));
        auto A = clifford_algebra(F, a);
        auto Q = QuadSpace::diagonal(F, a);
        for (int t = 0; t < 5; ++t) {
            FVec v, w;
            for (int i = 0; i < 3; ++i) {
                v.push_back(oracle::random_unit_times_pi(F, rng));
                w.push_back(oracle::random_unit_times_pi(F, rng));
            }
            FieldElem c = Q.bilinear(v, w) / Q.value(v);
            FVec r;
            for (int i = 0; i < 3; ++i) r.push_back(w[i] - c * v[i]);
            CHECK(A.equal(twisted_conjugation(A, A.vector(v), A.vector(w)), A.vector(r)));
        }
    }
}

TEST_CASE("spinor norm oracle") {
    std::mt19937 rng(8);
    for (auto F : oracle_fields()) {
        auto Q = QuadSpace::from_rational(F, {{Rat(2), Rat(1), Rat(0)}, {Rat(1), Rat(4), Rat(3)}, {Rat(0), Rat(3), Rat(-2)}});
        CHECK(spinor_norm_oracle(Q, {}).is_one());
        for (int t = 0; t < 20; ++t) {
            FMat vs;
            SquareClass expect;
            for (int k = 0; k < 1 + t % 4; ++k) {
                FVec v;
                for (int i = 0; i < 3; ++i) v.push_back(oracle::random_unit_times_pi(F, rng));
                vs.push_back(v);
                expect *= square_class(F, Q.value(v));
            }
            CHECK(spinor_norm_oracle(Q, vs) == expect);
        }
        FVec e0{felem(F, 1), FieldElem::make_zero(F), FieldElem::make_zero(F)};
        CHECK(spinor_norm_oracle(Q, {e0}) == SquareClass{});
        CHECK(spinor_norm_oracle(Q, {e0, e0}).is_one());
        auto H = hyperbolic_plane(F);
        try {
            spinor_norm_oracle(H, {{felem(F, 1), FieldElem::make_zero(F)}});
            FAIL("expected IsotropicVector");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::IsotropicVector);
        }
    }
}
