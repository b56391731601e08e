#include <catch_amalgamated.hpp>

#include <random>

#include "lqf/localfield.hpp"
#include "oracles.hpp"

using namespace lqf;

TEST_CASE("field descriptors round-trip") {
    for (std::string s : {"R", "C", "Qp:2", "Qp:5", "Fq((t)):3"}) CHECK(GroundField::parse(s).descriptor() == s);
    CHECK_THROWS_AS(GroundField::parse("Fq((t)):2"), Error);
    CHECK_THROWS_AS(GroundField::parse("Qp:6"), Error);
    CHECK_THROWS_AS(GroundField::padic(5, 4), Error);
}

TEST_CASE("p-adic arithmetic agrees with rational arithmetic") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-400, 400);
    for (int p : {2, 3, 5, 7}) {
        auto F = GroundField::padic(p, 20);
        for (int t = 0; t < 200; ++t) {
            Rat a(d(rng), 1 + std::abs(d(rng)));
            Rat b(d(rng), 1 + std::abs(d(rng)));
            auto A = felem(F, a), B = felem(F, b);
            CHECK((A + B - felem(F, a + b)).is_zero());
            CHECK((A * B - felem(F, a * b)).is_zero());
            if (b != 0) CHECK((A / B - felem(F, a / b)).is_zero());
        }
    }
}

TEST_CASE("Laurent arithmetic: (1 - t)^-1 is the geometric series") {
    auto F = GroundField::laurent(5, 12);
    auto t = FieldElem::pi(F);
    auto x = (felem(F, 1) - t).inv();
    REQUIRE(x.val == 0);
    for (int k = 0; k < 12; ++k) CHECK(x.digits[k] == 1);
    auto y = x * (felem(F, 1) - t);
    CHECK((y - felem(F, 1)).is_zero());
    CHECK((t * t.inv() - felem(F, 1)).is_zero());
}

TEST_CASE("precision is tracked through cancellation") {
    auto F = GroundField::padic(3, 10);
    auto a = felem(F, 1) + felem(F, Rat(Int(59049)));  // 1 + 3^10 is 1 to 10 digits
    auto b = a - felem(F, 1);
    CHECK(b.is_zero());
    CHECK(b.absprec == 10);
    auto c = felem(F, 82) - felem(F, 1);  // 81 = 3^4
    CHECK(c.val == 4);
    CHECK(c.rel_prec() == 6);
}

TEST_CASE("square_class examples") {
    CHECK(class_code(GroundField::real(), square_class(GroundField::real(), felem(GroundField::real(), -3))) == -1);
    auto F5 = GroundField::padic(5);
    CHECK(class_code(F5, square_class(F5, felem(F5, 7))) == 2);
    auto F3 = GroundField::padic(3);
    CHECK(class_code(F3, square_class(F3, felem(F3, 18))) == 2);
    CHECK_THROWS_AS(square_class(F5, FieldElem::make_zero(F5)), Error);
}

TEST_CASE("square_class decisions need enough digits") {
    auto F = GroundField::padic(2, 10);
    auto x = FieldElem::padic(F, 0, Int(1), 2);
    try {
        square_class(F, x);
        FAIL("expected InsufficientPrecision");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InsufficientPrecision);
    }
}

TEST_CASE("square classes agree with enumeration of squares") {
    for (int p : {2, 3, 5, 7}) {
        auto F = GroundField::padic(p);
        int k = p == 2 ? 3 : 1;
        long long m = 1;
        for (int i = 0; i < k; ++i) m *= p;
        std::set<long long> squares;
        for (long long x = 1; x < m; ++x)
            if (x % p) squares.insert(x * x % m);
        for (long long u = 1; u < 3 * m; ++u) {
            if (u % p == 0) continue;
            bool sq = squares.count(u % m) > 0;
            CHECK(square_class(F, felem(F, u)).is_one() == sq);
            CHECK(square_class(F, felem(F, u * p * p)).is_one() == sq);
            CHECK_FALSE(square_class(F, felem(F, u * p)).is_one());
        }
    }
}

TEST_CASE("square_class is a homomorphism and reduction is idempotent") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(1, 5000);
    for (auto F : {GroundField::real(), GroundField::padic(2), GroundField::padic(3), GroundField::padic(7),
                   GroundField::laurent(3), GroundField::laurent(5)}) {
        for (int t = 0; t < 100; ++t) {
            FieldElem x = oracle::random_unit_times_pi(F, rng), y = oracle::random_unit_times_pi(F, rng);
            CHECK(square_class(F, x * y) == square_class(F, x) * square_class(F, y));
            CHECK(square_class(F, x * y * y) == square_class(F, x));
        }
        for (auto c : all_classes(F)) CHECK(square_class(F, class_rep(F, c)) == c);
    }
}

TEST_CASE("code group orders") {
    CHECK(all_classes(GroundField::complex()).size() == 1);
    CHECK(all_classes(GroundField::real()).size() == 2);
    CHECK(all_classes(GroundField::padic(5)).size() == 4);
    CHECK(all_classes(GroundField::laurent(3)).size() == 4);
    CHECK(all_classes(GroundField::padic(2)).size() == 8);
}

TEST_CASE("hilbert symbol examples") {
    auto R = GroundField::real();
    CHECK(hilbert(R, class_of(R, -1), class_of(R, -1)) == -1);
    auto F5 = GroundField::padic(5);
    CHECK(hilbert(F5, class_of(F5, 2), class_of(F5, 5)) == -1);
    for (auto b : all_classes(F5)) CHECK(hilbert(F5, SquareClass{}, b) == 1);
    CHECK(chi_eval(F5, class_of(F5, 2), felem(F5, 5)) == -1);
    CHECK(chi_eval(F5, class_of(F5, 5), felem(F5, 2)) == -1);
    for (int x : {2, 3, 5, 10}) CHECK(chi_eval(F5, SquareClass{}, felem(F5, x)) == 1);
}

TEST_CASE("hilbert symbol matches brute-force norm-equation solvability") {
    for (auto F : {GroundField::padic(2), GroundField::padic(3), GroundField::padic(5), GroundField::padic(7),
                   GroundField::laurent(3), GroundField::laurent(5)}) {
        for (auto a : all_classes(F))
            for (auto b : all_classes(F)) {
                INFO(F.descriptor() << " a=" << class_name(F, a) << " b=" << class_name(F, b));
                CHECK(hilbert(F, a, b) == oracle::hilbert_bruteforce(F, a, b));
            }
    }
}

TEST_CASE("hilbert symbol is symmetric, bimultiplicative and nondegenerate") {
    for (auto F : {GroundField::real(), GroundField::complex(), GroundField::padic(2), GroundField::padic(3),
                   GroundField::laurent(5)}) {
        auto cs = all_classes(F);
        for (auto a : cs) {
            bool witness = false;
            for (auto b : cs) {
                CHECK(hilbert(F, a, b) == hilbert(F, b, a));
                for (auto c : cs) CHECK(hilbert(F, a, b * c) == hilbert(F, a, b) * hilbert(F, a, c));
                if (hilbert(F, a, b) == -1) witness = true;
            }
            if (!a.is_one()) CHECK(witness);
        }
    }
}

TEST_CASE("psi_eval") {
    auto F5 = GroundField::padic(5);
    CHECK(std::abs(psi_eval(F5, 0, FieldElem::make_zero(F5)) - 1.0) < 1e-12);
    auto z = psi_eval(F5, 0, felem(F5, Rat(1, 5)));
    CHECK(std::abs(z - std::polar(1.0, 2 * std::numbers::pi / 5)) < 1e-12);
    CHECK(std::abs(psi_eval(F5, 0, felem(F5, 123)) - 1.0) < 1e-12);
    // level shifts: psi_1(x) = psi(x / 5)
    CHECK(std::abs(psi_eval(F5, 1, felem(F5, 1)) - z) < 1e-12);
    // additivity on a Laurent field
    auto L = GroundField::laurent(3);
    auto t = FieldElem::pi(L);
    auto x = t.inv() * felem(L, 2) + felem(L, 1), y = t.pow(-2) + t.inv();
    CHECK(std::abs(psi_eval(L, 0, x + y) - psi_eval(L, 0, x) * psi_eval(L, 0, y)) < 1e-12);
    CHECK(std::abs(psi_eval(L, 0, t.inv()) - std::polar(1.0, 2 * std::numbers::pi / 3)) < 1e-12);
}
