#include <catch_amalgamated.hpp>

#include <map>

#include "lqf/frame.hpp"

using namespace lqf;

namespace {

bool near(const FieldElem& a, const FieldElem& b, int slack) {
    FieldElem d = a - b;
    if (d.is_zero()) return true;
    return d.val >= slack;
}

bool kelem_near(const KElem& a, const KElem& b, int slack) {
    for (size_t i = 0; i < a.size(); ++i)
        if (!near(a[i], b[i], slack)) return false;
    return true;
}

KElem sample(const FrameField& K, int seed) {
    KElem z = K.zero();
    for (int k = 0; k < K.dim(); ++k) z[k] = felem(K.F, ((seed * 7 + k * 3) % 5) - 2 + (k == 0 ? 3 : 0));
    return z;
}

std::vector<GroundField> fields() {
    return {GroundField::padic(3, 24), GroundField::padic(5, 24), GroundField::padic(7, 24),
            GroundField::padic(2, 24), GroundField::real(), GroundField::laurent(5, 24),
            GroundField::laurent(3, 24)};
}

} // namespace

TEST_CASE("frame counts") {
    std::map<int, int> q5, q3;
    for (auto& fr : enumerate_frames(GroundField::padic(5, 24), 6)) q5[fr.order()]++;
    CHECK(q5 == std::map<int, int>{{1, 1}, {2, 3}, {3, 1}, {4, 6}, {5, 1}, {6, 4}});
    for (auto& fr : enumerate_frames(GroundField::padic(3, 24), 6)) q3[fr.order()]++;
    CHECK(q3 == std::map<int, int>{{1, 1}, {2, 3}, {3, 1}, {4, 2}, {5, 1}, {6, 3}});
    CHECK(enumerate_frames(GroundField::real(), 6).size() == 2);
    // Over Q2 only unramified frames and the f = 2, e = 3 frame are tame.
    std::map<int, int> q2;
    for (auto& fr : enumerate_frames(GroundField::padic(2, 24), 6)) {
        q2[fr.order()]++;
        CHECK((fr.K.e == 1 || (fr.K.e == 3 && fr.K.f == 2)));
    }
    CHECK(q2 == std::map<int, int>{{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 2}});
}

TEST_CASE("group law and Galois action are compatible") {
    for (auto& F : fields()) {
        for (auto& fr : enumerate_frames(F, 6)) {
            CAPTURE(F.descriptor(), fr.name());
            int n = fr.order(), d = fr.K.dim();
            int slack = F.nonarch() ? F.precision / 2 : 0;
            for (int s = 0; s < n; ++s) {
                CHECK(fr.mul(s, fr.inverse[s]) == 0);
                for (int t = 0; t < n; ++t)
                    for (int u = 0; u < n; ++u) REQUIRE(fr.mul(fr.mul(s, t), u) == fr.mul(s, fr.mul(t, u)));
            }
            for (int s = 0; s < n; ++s)
                for (int t = 0; t < n; ++t) {
                    FMat st = fmat_mul(fr.act[s], fr.act[t]);
                    const FMat& m = fr.act[fr.mul(s, t)];
                    for (int i = 0; i < d; ++i)
                        for (int j = 0; j < d; ++j) REQUIRE(near(st[i][j], m[i][j], slack));
                }
            KElem a = sample(fr.K, 1), b = sample(fr.K, 2);
            for (int s = 0; s < n; ++s)
                CHECK(kelem_near(fr.apply(s, fr.K.mul(a, b)), fr.K.mul(fr.apply(s, a), fr.apply(s, b)), slack));
        }
    }
}

TEST_CASE("field arithmetic") {
    auto F = GroundField::padic(5, 24);
    auto fr = make_frame(F, 2, 2, 2);
    const FrameField& K = fr.K;
    KElem y = K.basis(K.f);
    CHECK(kelem_near(K.pow(y, 2), K.scalar(FieldElem::pi(F) * felem(F, 2)), 20));
    KElem a = sample(K, 3);
    CHECK(kelem_near(K.mul(a, K.inv(a)), K.one(), 20));
    // The norm is the product of the conjugates.
    KElem prod = K.one();
    for (int s = 0; s < fr.order(); ++s) prod = K.mul(prod, fr.apply(s, a));
    CHECK(near(K.to_base(prod), K.norm(a), 20));
}

TEST_CASE("quadratic subfields") {
    for (auto& F : fields()) {
        for (auto& fr : enumerate_frames(F, 6)) {
            CAPTURE(F.descriptor(), fr.name());
            REQUIRE(fr.characters.size() == fr.classes.size());
            for (size_t i = 0; i < fr.characters.size(); ++i) {
                CHECK(!fr.classes[i].is_one());
                // Norms from K are norms from the quadratic subfield.
                for (int seed = 0; seed < 4; ++seed) {
                    FieldElem nz = fr.K.norm(sample(fr.K, seed));
                    if (!nz.is_zero()) CHECK(chi_eval(F, fr.classes[i], nz) == 1);
                }
                for (size_t j = 0; j < fr.characters.size(); ++j) {
                    std::vector<int> prod(fr.order());
                    for (int s = 0; s < fr.order(); ++s) prod[s] = fr.characters[i][s] ^ fr.characters[j][s];
                    CHECK(fr.class_of_character(prod) == fr.classes[i] * fr.classes[j]);
                }
            }
        }
    }
}

TEST_CASE("known quadratic frames") {
    auto Q5 = GroundField::padic(5, 24);
    auto unram = make_frame(Q5, 2, 1);
    CHECK(unram.classes.at(0) == class_of(Q5, 2));
    auto ram = make_frame(Q5, 1, 2, 1);
    CHECK(ram.classes.at(0) == square_class(Q5, FieldElem::pi(Q5)));
    auto ram2 = make_frame(Q5, 1, 2, 2);
    CHECK(ram2.classes.at(0) == square_class(Q5, FieldElem::pi(Q5) * felem(Q5, 2)));
    auto R = GroundField::real();
    CHECK(make_frame(R, 2, 1).classes.at(0) == class_of(R, -1));
    CHECK(quadratic_frame(Q5, class_of(Q5, 10)).name() == "f1e2c2");
    CHECK_THROWS(quadratic_frame(GroundField::padic(2, 24), class_of(GroundField::padic(2, 24), -1)));
}

TEST_CASE("extending generator images to homomorphisms") {
    auto fr = make_frame(GroundField::padic(7, 24), 1, 6, 1);
    auto law = [](int a, int b) { return (a + b) % 3; };
    auto h = fr.extend({1}, law, 0);
    REQUIRE(h);
    CHECK((*h)[fr.elem(4, 0)] == 1);
    auto fr2 = make_frame(GroundField::padic(5, 24), 2, 3, 1);
    // phi tau phi^-1 = tau^5 = tau^2 forbids a nontrivial abelian image of tau of order 3.
    CHECK_FALSE(fr2.extend({1, 0}, law, 0));
    CHECK(fr2.extend({0, 0}, law, 0));
}
