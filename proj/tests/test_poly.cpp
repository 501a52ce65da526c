#include "doctest.h"
#include "lamplighter/poly.hpp"
#include "test_util.hpp"

using namespace lamp;

namespace {
Poly P(const RingPtr& r, const std::string& s) { return parse_poly(r, s); }
}

TEST_CASE("addition over F2") {
    auto r = make_ring(2, 2);
    CHECK(P(r, "1+X2") + P(r, "1") == P(r, "X2"));
    Poly f = P(r, "X1^3+X2+1");
    CHECK(f + Poly::zero(r) == f);
    CHECK(P(r, "X1+X2+1") + P(r, "X1+X2") == P(r, "1"));
    CHECK((f + (-f)).is_zero());
    CHECK((f + (-f)).terms().empty());
}

TEST_CASE("multiplication and units") {
    auto r = make_ring(2, 1);
    CHECK(P(r, "X1") * P(r, "X1^-1") == P(r, "1"));
    CHECK(P(r, "X1+1") * P(r, "X1+1") == P(r, "X1^2+1"));
    auto r2 = make_ring(5, 3);
    IntVec a{1, -2, 3}, b{-4, 1, 0};
    CHECK(Poly::monomial(r2, a) * Poly::monomial(r2, b) == Poly::monomial(r2, iv_add(a, b)));
}

TEST_CASE("ring mismatch rejected") {
    auto r2 = make_ring(2, 1);
    auto r3 = make_ring(3, 1);
    CHECK_THROWS(P(r2, "X1") + P(r3, "X1"));
}

TEST_CASE("frobenius_pow basics") {
    auto r = make_ring(2, 1);
    CHECK(frobenius_pow(P(r, "X1+1"), 1) == P(r, "X1^2+1"));
    Poly f = P(r, "X1^3+X1+1");
    CHECK(frobenius_pow(f, 0) == f);
    auto r2 = make_ring(2, 2);
    CHECK(frobenius_pow(P(r2, "X1+X2"), 2) == P(r2, "X1^4+X2^4"));
}

TEST_CASE("frobenius_pow equals repeated multiplication") {
    std::mt19937 rng(7);
    for (uint32_t p : {2u, 3u}) {
        auto r = make_ring(p, 2);
        for (int it = 0; it < 20; ++it) {
            Poly f = testutil::random_poly(rng, r, 4, 4);
            for (uint32_t k = 1; k <= 2; ++k) {
                int64_t q = 1;
                for (uint32_t i = 0; i < k; ++i) q *= p;
                Poly chain = Poly::constant(r, 1);
                for (int64_t i = 0; i < q; ++i) chain = chain * f;
                CHECK(frobenius_pow(f, k) == chain);
            }
        }
    }
}

TEST_CASE("frobenius additivity on random pairs") {
    std::mt19937 rng(11);
    int checked = 0;
    for (uint32_t p : {2u, 3u, 5u}) {
        auto r = make_ring(p, 2);
        for (int it = 0; it < 40; ++it) {
            Poly f = testutil::random_poly(rng, r, 5, 6);
            Poly g = testutil::random_poly(rng, r, 5, 6);
            for (uint32_t k = 1; k <= 2; ++k) {
                CHECK(frobenius_pow(f + g, k) == frobenius_pow(f, k) + frobenius_pow(g, k));
                ++checked;
            }
        }
    }
    CHECK(checked >= 100);
}

TEST_CASE("geom_sum explicit values") {
    auto r = make_ring(2, 1);
    CHECK(geom_sum(r, {1}, 3) == P(r, "1+X1+X1^2"));
    CHECK(geom_sum(r, {1}, 0).is_zero());
    CHECK(geom_sum(r, {1}, -2) == P(r, "X1^-2+X1^-1"));
    CHECK_THROWS(geom_sum(r, {0}, 3));
}

TEST_CASE("geom_sum telescopes") {
    std::mt19937 rng(13);
    for (uint32_t p : {2u, 3u}) {
        auto r = make_ring(p, 2);
        for (int it = 0; it < 10; ++it) {
            IntVec a = testutil::random_vec(rng, 2, 3);
            if (iv_is_zero(a)) a[0] = 1;
            Poly one_minus = Poly::constant(r, 1) - Poly::monomial(r, a);
            for (int64_t z = -20; z <= 20; ++z) {
                Poly lhs = geom_sum(r, a, z) * one_minus;
                Poly rhs = Poly::constant(r, 1) - Poly::monomial(r, iv_scale(a, z));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("parse and print round trip") {
    auto r = make_ring(3, 2);
    for (const char* s : {"1", "2*X1^2*X2^-1+1", "X1+2*X2", "X1^-3"}) {
        Poly f = P(r, s);
        CHECK(P(r, f.str()) == f);
    }
    CHECK_THROWS(P(r, "X3"));
    CHECK_THROWS(P(r, ""));
    CHECK(P(r, " 2 * X1 ^ 2 + 1 ") == P(r, "2*X1^2+1"));
}

TEST_CASE("non-invertible variables reject negative exponents") {
    auto r = make_ring(2, {"X", "Y"}, {true, false});
    CHECK_THROWS(P(r, "Y^-1"));
    CHECK(P(r, "X^-1*Y").coeff(IntVec{-1, 1}) == 1);
}
