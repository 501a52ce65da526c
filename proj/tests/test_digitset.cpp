#include <random>
#include <set>

#include "doctest.h"
#include "lamplighter/digitset.hpp"

using namespace lamp;

namespace {

std::set<IntVec> window_set(const DigitAutomaton& a, int64_t b) {
    auto v = a.enumerate_window(b);
    return std::set<IntVec>(v.begin(), v.end());
}

// direct filter over the window
template <typename Pred>
std::set<IntVec> brute_window(uint32_t d, int64_t b, Pred pred) {
    std::set<IntVec> out;
    IntVec z(d, -b);
    while (true) {
        if (pred(z)) out.insert(z);
        uint32_t i = 0;
        while (i < d) {
            if (++z[i] <= b) break;
            z[i] = -b;
            ++i;
        }
        if (i == d) break;
    }
    return out;
}

DigitAutomaton random_automaton(std::mt19937& rng, uint32_t p, uint32_t d, uint32_t nstates) {
    DigitAutomaton a;
    a.p = p;
    a.d = d;
    DigitAlphabet ab{p, d};
    a.initial = 0;
    std::uniform_int_distribution<uint32_t> st(0, nstates - 1);
    std::uniform_int_distribution<int> fin(0, 3);
    a.trans.resize(static_cast<size_t>(nstates) * ab.size());
    a.finals.resize(nstates);
    for (uint32_t s = 0; s < nstates; ++s) {
        a.finals[s] = fin(rng) == 0;
        for (uint32_t l = 0; l < ab.size(); ++l) a.trans[s * ab.size() + l] = st(rng);
    }
    // scrub to canonical semantics: intersect with the full set
    return intersect(a, DigitAutomaton::full_set(p, d));
}

}  // namespace

TEST_CASE("encode examples") {
    CHECK(word_str(2, 1, encode_vec(2, IntVec{4})) == "+001");
    CHECK(word_str(2, 1, encode_vec(2, IntVec{0})) == "+0");
    // (-3, 2): signs (-,+), digit tuples (1,0),(1,1)
    auto w = encode_vec(2, IntVec{-3, 2});
    CHECK(word_str(2, 2, w) == "(-,+)(1,0)(1,1)");
}

TEST_CASE("decode round trip") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int64_t> dist(-1000000, 1000000);
    for (uint32_t p : {2u, 3u, 5u}) {
        for (uint32_t d : {1u, 2u, 3u}) {
            for (int it = 0; it < 200; ++it) {
                IntVec z(d);
                for (auto& x : z) x = dist(rng);
                CHECK(decode_word(p, d, encode_vec(p, z)) == z);
            }
        }
    }
    // non-canonical padding rejected
    DigitAlphabet ab{2, 1};
    std::vector<uint32_t> bad{ab.sign_letter({false}), ab.digit_letter({1}), ab.digit_letter({0})};
    CHECK_THROWS(decode_word(2, 1, bad));
    std::vector<uint32_t> minuszero{ab.sign_letter({true}), ab.digit_letter({0})};
    CHECK_THROWS(decode_word(2, 1, minuszero));
}

TEST_CASE("from_points and membership") {
    std::vector<IntVec> pts{{3}, {-5}, {0}, {1024}};
    auto a = DigitAutomaton::from_points(2, 1, pts);
    for (const auto& z : pts) CHECK(a.member(z));
    CHECK_FALSE(a.member(IntVec{4}));
    CHECK_FALSE(a.member(IntVec{-1024}));
    CHECK(window_set(a, 2000) == std::set<IntVec>(pts.begin(), pts.end()));
}

TEST_CASE("empty and full") {
    auto e = DigitAutomaton::empty_set(2, 2);
    CHECK(e.is_empty());
    auto f = DigitAutomaton::full_set(2, 2);
    CHECK_FALSE(f.is_empty());
    CHECK(window_set(f, 2) == brute_window(2, 2, [](const IntVec&) { return true; }));
    CHECK(complement(f).is_empty());
    CHECK(complement(e).same_language(f));
}

TEST_CASE("boolean ops against window semantics on random automata") {
    std::mt19937 rng(42);
    for (int it = 0; it < 12; ++it) {
        uint32_t p = it % 2 ? 2 : 3;
        uint32_t d = it % 3 == 2 ? 2 : 1;
        auto a = random_automaton(rng, p, d, 12);
        auto b = random_automaton(rng, p, d, 12);
        int64_t B = 32;
        auto wa = window_set(a, B), wb = window_set(b, B);

        auto wi = window_set(intersect(a, b), B);
        std::set<IntVec> expect_i;
        for (const auto& z : wa)
            if (wb.count(z)) expect_i.insert(z);
        CHECK(wi == expect_i);

        auto wu = window_set(unite(a, b), B);
        std::set<IntVec> expect_u = wa;
        expect_u.insert(wb.begin(), wb.end());
        CHECK(wu == expect_u);

        auto wc = window_set(complement(a), B);
        std::set<IntVec> expect_c;
        for (const auto& z : brute_window(d, B, [](const IntVec&) { return true; }))
            if (!wa.count(z)) expect_c.insert(z);
        CHECK(wc == expect_c);

        CHECK(complement(complement(a)).same_language(a));
        CHECK(intersect(a, a).same_language(a));
    }
}

TEST_CASE("is_empty agrees with short-word scan") {
    std::mt19937 rng(99);
    for (int it = 0; it < 10; ++it) {
        auto a = random_automaton(rng, 2, 1, 8);
        bool found = a.find_accepted(a.nstates() + 2).has_value();
        CHECK(a.is_empty() == !found);
    }
}

TEST_CASE("from_linear_system basics") {
    // A = I, b = 0 over Z^2: only the origin
    std::vector<IntVec> eye{{1, 0}, {0, 1}};
    auto a = from_linear_system(2, 2, eye, IntVec{0, 0});
    CHECK(window_set(a, 5) == std::set<IntVec>{IntVec{0, 0}});

    // z1 + z3 = 0 over Z^4 within window 8
    std::vector<IntVec> rows{{1, 0, 1, 0}};
    auto b = from_linear_system(2, 4, rows, IntVec{0});
    auto expect = brute_window(4, 3, [](const IntVec& z) { return z[0] + z[2] == 0; });
    CHECK(window_set(b, 3) == expect);

    // z = 1 mod 3, p = 2
    Congruence c{IntVec{1}, 1, 3};
    auto m = from_linear_system(2, 1, {}, IntVec{}, {c});
    auto expect_m = brute_window(1, 20, [](const IntVec& z) {
        return ((z[0] % 3) + 3) % 3 == 1;
    });
    CHECK(window_set(m, 20) == expect_m);

    // inhomogeneous: 2x - y = 3
    auto h = from_linear_system(2, 2, {{2, -1}}, IntVec{3});
    auto expect_h = brute_window(2, 10, [](const IntVec& z) { return 2 * z[0] - z[1] == 3; });
    CHECK(window_set(h, 10) == expect_h);
}

TEST_CASE("linear_preimage") {
    // identity preimage
    auto s = DigitAutomaton::from_points(2, 1, {{2}, {-3}});
    std::vector<IntVec> id{{1}};
    CHECK(linear_preimage(id, s).same_language(s));

    // phi(n1..n4) = (n1+n3, n2+n4), preimage of {(0,0)}
    auto zero = DigitAutomaton::from_points(2, 2, {{0, 0}});
    std::vector<IntVec> phi{{1, 0, 1, 0}, {0, 1, 0, 1}};
    auto pre = linear_preimage(phi, zero);
    auto expect = brute_window(4, 4, [](const IntVec& z) {
        return z[0] + z[2] == 0 && z[1] + z[3] == 0;
    });
    CHECK(window_set(pre, 4) == expect);

    // preimage of the empty set
    auto pe = linear_preimage(phi, DigitAutomaton::empty_set(2, 2));
    CHECK(pe.is_empty());
}

TEST_CASE("linear_image") {
    // identity
    auto s = DigitAutomaton::from_points(2, 2, {{1, 2}, {-4, 0}});
    std::vector<IntVec> id{{1, 0}, {0, 1}};
    CHECK(linear_image(id, s).same_language(s));

    // projection of {(-2^k, 2^k)} pairs to the second coordinate
    std::vector<IntVec> pairs;
    for (int k = 0; k <= 6; ++k) pairs.push_back(IntVec{-(1 << k), 1 << k});
    auto pairset = DigitAutomaton::from_points(2, 2, pairs);
    auto proj = linear_image(std::vector<IntVec>{{0, 1}}, pairset);
    std::set<IntVec> expect;
    for (int k = 0; k <= 6; ++k) expect.insert(IntVec{1 << k});
    CHECK(window_set(proj, 64) == std::set<IntVec>{IntVec{1}, IntVec{2}, IntVec{4}, IntVec{8},
                                                   IntVec{16}, IntVec{32}, IntVec{64}});
}

TEST_CASE("paper example: S = {(a,2a) : a < -1} is 2-automatic") {
    // build via linear machinery: X = {a : a <= -2} then image under a -> (a,2a)
    // {a <= -2} = { -m - 2 : m >= 0 } = image of {m >= 0} under m -> -m-2.
    // {m >= 0}: complement of negatives; negatives = image of {m >= 1} under neg...
    // Simplest construction: m >= 0 iff m = s for the full set intersected with
    // sign +; use power_scaled_point-free route: from_linear_system with congruence
    // trick is overkill -- enumerate directly via translate of the nonnegatives.
    // Nonnegatives: {m : m >= 0}: build from full set minus negatives using
    // from_points is impossible (infinite). Use the sign structure: accept only
    // words with '+' sign: full_set has both; filter by intersecting with an
    // automaton that rejects '-' signs.
    DigitAlphabet ab{2, 1};
    DigitAutomaton plus;  // '+'-signed canonical words
    plus.p = 2;
    plus.d = 1;
    plus.initial = 0;
    // states: 0 presign, 1 in digits, 2 sink
    plus.trans.assign(3 * ab.size(), 2);
    plus.finals = {0, 1, 0};
    plus.trans[0 * ab.size() + ab.sign_letter({false})] = 1;
    for (uint32_t dl = 0; dl < 2; ++dl)
        plus.trans[1 * ab.size() + ab.digit_letter({dl})] = 1;
    auto nonneg = intersect(plus, DigitAutomaton::full_set(2, 1));

    // a <= -2  <=>  a = -m - 2 with m >= 0  <=>  a in translate(image(nonneg, m->-m), -2)
    auto negs = linear_image(std::vector<IntVec>{{-1}}, nonneg);
    auto below = translate(negs, IntVec{-2});
    auto s = linear_image(std::vector<IntVec>{{1}, {2}}, below);
    auto expect = brute_window(2, 40, [](const IntVec& z) {
        return z[0] < -1 && z[1] == 2 * z[0];
    });
    CHECK(window_set(s, 40) == expect);
}

TEST_CASE("power_scaled_point") {
    // {2^k} in Z
    auto pw = power_scaled_point(2, IntVec{1}, IntVec{0});
    std::set<IntVec> expect;
    for (int64_t v = 1; v <= 1024; v *= 2) expect.insert(IntVec{v});
    CHECK(window_set(pw, 1024) == expect);
    CHECK(pw.member(IntVec{1024}));
    CHECK_FALSE(pw.member(IntVec{3}));

    // {2^k * (1,-2) - (1,0)}
    auto pv = power_scaled_point(2, IntVec{1, -2}, IntVec{1, 0});
    std::set<IntVec> expect2;
    for (int64_t m = 1; m <= 64; m *= 2) expect2.insert(IntVec{m - 1, -2 * m});
    CHECK(window_set(pv, 128) == expect2);
}

TEST_CASE("text round trip") {
    auto a = DigitAutomaton::from_points(3, 2, {{4, -1}, {0, 5}});
    auto b = DigitAutomaton::from_text(a.to_text());
    CHECK(a.same_language(b));
    CHECK(b.p == 3);
    CHECK(b.d == 2);
    auto dot = a.to_dot();
    CHECK(dot.find("digraph") != std::string::npos);
}

TEST_CASE("intersection of {2^k} with odds is {1}") {
    auto pw = power_scaled_point(2, IntVec{1}, IntVec{0});
    Congruence odd{IntVec{1}, 1, 2};
    auto odds = from_linear_system(2, 1, {}, IntVec{}, {odd});
    auto inter = intersect(pw, odds);
    CHECK(window_set(inter, 4096) == std::set<IntVec>{IntVec{1}});
}
