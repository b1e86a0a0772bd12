#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "lfu/gadgets.hpp"
#include "support.hpp"

using namespace lfu;

namespace {

SolverLimits wide() {
    SolverLimits l;
    l.exact_node_cap = 1 << 20;
    return l;
}

std::map<EdgeKind, int> kind_counts(const GadgetLayout& lay) {
    std::map<EdgeKind, int> c;
    for (const auto& e : lay.edges) ++c[e.kind];
    return c;
}

}  // namespace

TEST_CASE("two-element set excludes one AE") {
    auto hs = make_hitting_set(2, {{0, 1}});
    for (Mode mode : {Mode::SLF, Mode::RLF}) {
        auto g = generate_gadget(hs, mode);
        auto rep = verify_correspondence(hs, g.instance, g.layout, wide());
        CHECK(rep.min_hitting_set == 1);
        CHECK(rep.excluded_elements.size() == 1);
    }
}

TEST_CASE("chain of two sets excludes the shared element") {
    auto hs = make_hitting_set(3, {{0, 1}, {1, 2}});
    for (Mode mode : {Mode::SLF, Mode::RLF}) {
        auto g = generate_gadget(hs, mode);
        auto rep = verify_correspondence(hs, g.instance, g.layout, wide());
        CHECK(rep.excluded_elements == std::vector<int>{1});
    }
}

TEST_CASE("no sets leaves every AE updatable") {
    auto hs = make_hitting_set(3, {});
    for (Mode mode : {Mode::SLF, Mode::RLF}) {
        auto g = generate_gadget(hs, mode);
        auto rep = verify_correspondence(hs, g.instance, g.layout, wide());
        CHECK(rep.excluded_elements.empty());
        CHECK(kind_counts(g.layout)[EdgeKind::AE] == 3);
    }
}

TEST_CASE("single element with a singleton set") {
    auto hs = make_hitting_set(1, {{0}});
    auto g = generate_gadget(hs, Mode::SLF);
    auto c = kind_counts(g.layout);
    CHECK(c[EdgeKind::AE] == 1);
    CHECK(c[EdgeKind::SE] == 2);
    CHECK(verify_correspondence(hs, g.instance, g.layout, wide()).excluded_elements == std::vector<int>{0});
    auto r = generate_gadget(hs, Mode::RLF);
    CHECK(verify_correspondence(hs, r.instance, r.layout, wide()).excluded_elements == std::vector<int>{0});
}

TEST_CASE("figure-style family: bundles, AEs and relaxed edges") {
    const int m = 4;
    auto hs = make_hitting_set(m, {{0, 1, 2}, {0, m - 1}});
    auto slf = generate_gadget(hs, Mode::SLF);
    auto rlf = generate_gadget(hs, Mode::RLF);
    auto cs = kind_counts(slf.layout), cr = kind_counts(rlf.layout);
    // bundles (1,2) (2,3) (3,1) (1,m) (m,1)
    CHECK(cs[EdgeKind::SE] == 5 * (m + 1));
    CHECK(cr[EdgeKind::SE] == 5 * (m + 1));
    CHECK(cs[EdgeKind::AE] == m);
    CHECK(cs[EdgeKind::WE] == 0);
    CHECK(cr[EdgeKind::WE] == m * (m + 1) * m);
    std::map<std::string, int> we_per_in;
    for (const auto& e : rlf.layout.edges)
        if (e.kind == EdgeKind::WE)
            for (const auto& s : rlf.layout.segments)
                if (e.to >= s.start && e.to <= s.end) ++we_per_in[s.name];
    CHECK(we_per_in.size() == static_cast<size_t>(m));
    for (auto& [name, count] : we_per_in) {
        CHECK(name.rfind("in", 0) == 0);
        CHECK(count == m * (m + 1));
    }
    CHECK(slf.layout.segments.size() == 1 + 2 * m);
    CHECK(rlf.layout.segments.size() == 2 + 2 * m);
    CHECK(rlf.layout.segments.back().name == "relaxed");
    auto r1 = verify_correspondence(hs, slf.instance, slf.layout, wide());
    auto r2 = verify_correspondence(hs, rlf.instance, rlf.layout, wide());
    CHECK(r1.excluded_elements == std::vector<int>{0});
    CHECK(r2.excluded_elements == std::vector<int>{0});
    CHECK(r2.support_leaves == r1.support_leaves + 1);
}

TEST_CASE("segments follow the descending element order") {
    auto g = generate_gadget(make_hitting_set(3, {{0, 2}}), Mode::RLF);
    std::vector<std::string> names;
    for (const auto& s : g.layout.segments) names.push_back(s.name);
    CHECK(names == std::vector<std::string>{"temp", "out3", "in3", "out2", "in2", "out1", "in1", "relaxed"});
    for (size_t i = 1; i < g.layout.segments.size(); ++i)
        CHECK(g.layout.segments[i].start > g.layout.segments[i - 1].end);
}

TEST_CASE("layout sidecar round trip") {
    auto hs = make_hitting_set(3, {{0, 1}, {1, 2}});
    for (Mode mode : {Mode::SLF, Mode::RLF}) {
        auto g = generate_gadget(hs, mode);
        auto text = render_layout(g.layout);
        auto back = parse_layout(text, g.instance);
        CHECK(render_layout(back) == text);
        CHECK(back.mode == mode);
        CHECK(back.ae_tail == g.layout.ae_tail);
        CHECK(text.find("AE 2 ") != std::string::npos);
        CHECK(text.find("SE 1 ") != std::string::npos);
        CHECK_THROWS_AS(parse_layout("XX 1 2\n", g.instance), Error);
        CHECK_THROWS_AS(parse_layout("CON 1 1\n", g.instance), Error);
    }
}

TEST_CASE("generated instances validate and survive rendering") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 40; ++t) {
        int m = 1 + static_cast<int>(rng() % 4);
        std::vector<std::vector<int>> sets;
        for (int k = static_cast<int>(rng() % 4); k > 0; --k) {
            std::vector<int> s;
            for (int e = 0; e < m; ++e)
                if (rng() % 2) s.push_back(e);
            if (s.empty()) s.push_back(0);
            sets.push_back(s);
        }
        auto hs = make_hitting_set(m, sets);
        for (Mode mode : {Mode::SLF, Mode::RLF}) {
            auto g = generate_gadget(hs, mode);
            auto again = parse_instance(render_instance(g.instance));
            CHECK(again.pi1 == g.instance.pi1);
            CHECK(again.pi2 == g.instance.pi2);
        }
    }
}

TEST_CASE("every family with up to three elements corresponds") {
    for (int m = 1; m <= 3; ++m) {
        const int subsets = (1 << m) - 1;
        for (int a = 0; a <= subsets; ++a)
            for (int b = a; b <= subsets; ++b) {
                std::vector<std::vector<int>> sets;
                for (int mask : {a, b}) {
                    if (!mask) continue;
                    std::vector<int> s;
                    for (int e = 0; e < m; ++e)
                        if (mask >> e & 1) s.push_back(e);
                    sets.push_back(s);
                }
                auto hs = make_hitting_set(m, sets);
                for (Mode mode : {Mode::SLF, Mode::RLF}) {
                    auto g = generate_gadget(hs, mode);
                    CHECK_NOTHROW(verify_correspondence(hs, g.instance, g.layout, wide()));
                }
            }
    }
}

TEST_CASE("full schedule on a gadget leaves one AE for round three") {
    auto hs = make_hitting_set(2, {{0, 1}});
    auto g = generate_gadget(hs, Mode::SLF);
    auto inst = std::make_shared<UpdateInstance>(g.instance);
    auto sched = full_schedule(inst, Mode::SLF, Solver::Exact, wide());
    auto st0 = initial_state(inst);
    CHECK(sched.rounds[0] == first_round(st0));
    int left = 0;
    for (NodeId v : g.layout.ae_tail)
        if (!contains(sched.rounds[1], v)) ++left;
    CHECK(left == 1);
    CHECK_NOTHROW(check_partition(*inst, sched));
}

TEST_CASE("tampered layout is caught") {
    auto hs = make_hitting_set(2, {{0, 1}});
    auto g = generate_gadget(hs, Mode::SLF);
    auto other = make_hitting_set(2, {{0}, {1}});
    try {
        verify_correspondence(other, g.instance, g.layout, wide());
        FAIL("expected a violation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CorrespondenceViolation);
    }
    CHECK_THROWS_AS(generate_gadget(make_hitting_set(0, {}), Mode::SLF), Error);
}
