#include "doctest.h"
#include "lamplighter/oracle.hpp"

using namespace lamp;

namespace {

GroupCtxPtr lamplighter2() {
    auto r = make_ring(2, 2);
    return make_group(ModulePresentation(r, 1));
}

GroupElement el(const GroupCtxPtr& ctx, const std::string& poly, IntVec a) {
    return GroupElement::make(ctx, ModElem::single(parse_poly(ctx->ring(), poly)), std::move(a));
}

}  // namespace

TEST_CASE("bfs finds trivial witnesses") {
    auto ctx = lamplighter2();
    auto g1 = el(ctx, "1+X2", {2, 0});
    auto g2 = el(ctx, "1", {-2, 0});
    SearchBudget b{6, 6, 6};

    auto r0 = bfs_submonoid({g1, g2}, GroupElement::identity(ctx), b);
    CHECK(r0.found);
    CHECK(r0.witness.empty());

    auto r1 = bfs_submonoid({g1, g2}, g1, b);
    CHECK(r1.found);
    CHECK(r1.witness == std::vector<size_t>{0});

    auto r2 = bfs_submonoid({g1, g2}, gmul(g1, g2), b);
    CHECK(r2.found);
    CHECK(r2.witness.size() == 2);
}

TEST_CASE("bfs respects search budget and is deterministic") {
    auto ctx = lamplighter2();
    auto g1 = el(ctx, "1", {1, 0});
    // target needs 5 steps
    auto target = el(ctx, "1+X1+X1^2+X1^3+X1^4", {5, 0});
    CHECK(bfs_submonoid({g1}, target, SearchBudget{5, 8, 8}).found);
    CHECK_FALSE(bfs_submonoid({g1}, target, SearchBudget{4, 8, 8}).found);
    auto a = bfs_submonoid({g1}, target, SearchBudget{6, 8, 8});
    auto b = bfs_submonoid({g1}, target, SearchBudget{6, 8, 8});
    CHECK(a.witness == b.witness);
}

TEST_CASE("brute knapsack on the running example window") {
    // h1^a h2^b = g in the free lamplighter: powers of commuting-ish elements
    auto ctx = lamplighter2();
    auto h1 = el(ctx, "0", {1, 0});
    auto h2 = el(ctx, "0", {0, 1});
    auto g = el(ctx, "0", {3, -2});
    auto sols = brute_knapsack({h1, h2}, g, 4);
    CHECK(sols == std::set<IntVec>{IntVec{3, -2}});

    // empty instance
    auto e = brute_knapsack({}, GroupElement::identity(ctx), 4);
    CHECK(e == std::set<IntVec>{IntVec{}});

    // unsatisfiable
    auto u = brute_knapsack({h1}, el(ctx, "1", {0, 0}), 4);
    CHECK(u.empty());
}

TEST_CASE("brute sunit basics") {
    auto r = make_ring(2, 1);
    NFContext m(ModulePresentation(r, 1, {ModElem::single(parse_poly(r, "X1^2+X1+1"))}));
    // X^z * 1 = 1: z with X^z = 1 mod X^2+X+1: order 3, so z = 0 mod 3
    auto sols = brute_sunit(m, {ModElem::single(parse_poly(r, "1"))},
                            ModElem::single(parse_poly(r, "1")), 7);
    std::set<IntVec> expect;
    for (int64_t z = -7; z <= 7; ++z)
        if (((z % 3) + 3) % 3 == 0) expect.insert(IntVec{z});
    CHECK(sols == expect);
    CHECK(sols.count(IntVec{0}) == 1);
}

TEST_CASE("window_compare") {
    auto a = DigitAutomaton::from_points(2, 1, {{1}, {2}, {4}});
    std::set<IntVec> base{{1}, {2}, {4}};
    CHECK(window_compare(a, base, 8).pass);

    std::set<IntVec> missing{{1}, {2}, {4}, {5}};
    auto r1 = window_compare(a, missing, 8);
    CHECK_FALSE(r1.pass);
    CHECK(r1.missing);
    CHECK(*r1.counterexample == IntVec{5});

    std::set<IntVec> extra{{1}, {2}};
    auto r2 = window_compare(a, extra, 8);
    CHECK_FALSE(r2.pass);
    CHECK_FALSE(r2.missing);
    CHECK(*r2.counterexample == IntVec{4});
}
