#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "lfu/errors.hpp"
#include "lfu/hitting_set.hpp"

using namespace lfu;

namespace {

int brute_min(const HittingSetInstance& hs) {
    int best = hs.m() + 1;
    for (unsigned mask = 0; mask < (1u << hs.m()); ++mask) {
        std::vector<int> chosen;
        for (int e = 0; e < hs.m(); ++e)
            if (mask >> e & 1) chosen.push_back(e);
        if (static_cast<int>(chosen.size()) < best && is_hitting_set(hs, chosen)) best = static_cast<int>(chosen.size());
    }
    return best;
}

}  // namespace

TEST_CASE("small exact examples") {
    auto hs = make_hitting_set(3, {{0, 1}, {1, 2}});
    CHECK(solve_hitting_set(hs, HsMode::Exact).elements == std::vector<int>{1});
    CHECK(solve_hitting_set(make_hitting_set(3, {}), HsMode::Exact).elements.empty());
    auto fig = make_hitting_set(5, {{0, 1, 2}, {0, 4}});
    CHECK(solve_hitting_set(fig, HsMode::Exact).elements == std::vector<int>{0});
}

TEST_CASE("empty set is infeasible") {
    HittingSetInstance hs = make_hitting_set(2, {{0}});
    hs.sets.push_back({});
    try {
        solve_hitting_set(hs, HsMode::Exact);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InfeasibleInstance);
    }
}

TEST_CASE("exact cap on large instances") {
    std::vector<std::vector<int>> sets;
    for (int i = 0; i < 70; i += 2) sets.push_back({i, i + 1});
    auto hs = make_hitting_set(70, sets);
    try {
        solve_hitting_set(hs, HsMode::Exact);
        FAIL("expected cap");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CapExceeded);
    }
    auto g = solve_hitting_set(hs, HsMode::Greedy);
    CHECK(is_hitting_set(hs, g.elements));
    CHECK(g.lower_bound == 35);
}

TEST_CASE("exact matches brute force and prefers the lexicographically first set") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 300; ++t) {
        int m = 1 + static_cast<int>(rng() % 7);
        int k = static_cast<int>(rng() % 6);
        std::vector<std::vector<int>> sets;
        for (int i = 0; i < k; ++i) {
            std::vector<int> s;
            for (int e = 0; e < m; ++e)
                if (rng() % 3 == 0) s.push_back(e);
            if (s.empty()) s.push_back(static_cast<int>(rng() % m));
            sets.push_back(s);
        }
        auto hs = make_hitting_set(m, sets);
        auto res = solve_hitting_set(hs, HsMode::Exact);
        CHECK(res.exact);
        CHECK(is_hitting_set(hs, res.elements));
        CHECK(static_cast<int>(res.elements.size()) == brute_min(hs));
        // no lexicographically smaller minimum exists
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            std::vector<int> c;
            for (int e = 0; e < m; ++e)
                if (mask >> e & 1) c.push_back(e);
            if (c.size() == res.elements.size() && is_hitting_set(hs, c)) CHECK_FALSE(c < res.elements);
        }
        auto g = solve_hitting_set(hs, HsMode::Greedy);
        CHECK(is_hitting_set(hs, g.elements));
    }
}

TEST_CASE("file format round trip") {
    auto hs = parse_hitting_set("# demo\nelements: x y z\nset: x y\nset: z\n");
    CHECK(hs.m() == 3);
    CHECK(hs.sets == std::vector<std::vector<int>>{{0, 1}, {2}});
    CHECK(render_hitting_set(hs) == "elements: x y z\nset: x y\nset: z\n");
    CHECK_THROWS_AS(parse_hitting_set("set: a\n"), Error);
    CHECK_THROWS_AS(parse_hitting_set("elements: a\nset: b\n"), Error);
    CHECK_THROWS_AS(parse_hitting_set("elements: a a\n"), Error);
}
