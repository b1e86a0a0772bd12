#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lfu/io.hpp"
#include "support.hpp"

using namespace lfu;
using namespace lfu::testing;

namespace {

int count(const std::string& text, const std::string& needle) {
    int c = 0;
    for (size_t p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++c;
    return c;
}

}  // namespace

TEST_CASE("schedule round trip") {
    auto inst = instance_from("s a b d", "s b a d");
    UpdateSchedule s{Mode::RLF, {{0, 1}, {2}}};
    auto text = render_schedule(s, *inst);
    CHECK(text == "mode: rlf\nround 1: s a\nround 2: b\n");
    auto back = parse_schedule("# comment\nmode: rlf\nround 1: a s\nround 2: b\n", *inst);
    CHECK(back.mode == Mode::RLF);
    CHECK(back.rounds == s.rounds);
}

TEST_CASE("schedule syntax errors") {
    auto inst = instance_from("s a b d", "s b a d");
    auto code_of = [&](const std::string& t) {
        try {
            parse_schedule(t, *inst);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Internal;
    };
    CHECK(code_of("round 1: s\n") == ErrorCode::SyntaxError);
    CHECK(code_of("mode: xlf\n") == ErrorCode::SyntaxError);
    CHECK(code_of("mode: slf\nround 2: s\n") == ErrorCode::SyntaxError);
    CHECK(code_of("mode: slf\nround 1: s s\n") == ErrorCode::SyntaxError);
    CHECK(code_of("mode: slf\nround 1: q\n") == ErrorCode::UnknownNode);
    CHECK(code_of("mode: slf\nmode: rlf\n") == ErrorCode::SyntaxError);
}

TEST_CASE("dot export of the initial and final states") {
    auto inst = instance_from("s a b d", "s b a d");
    auto st = initial_state(inst);
    auto dot = export_dot(st);
    CHECK(count(dot, "style=solid") == 3);
    CHECK(count(dot, "style=dashed") == 3);
    CHECK(count(dot, "\n  \"") - count(dot, "->") == 4);
    auto end = apply_round(apply_round(st, {0, 1}), {2});
    auto dot2 = export_dot(end);
    CHECK(count(dot2, "style=dashed") == 0);
    CHECK(dot2.find("\"s\" -> \"b\" [style=solid]") != std::string::npos);
    CHECK(dot2.find("\"b\" -> \"a\" [style=solid]") != std::string::npos);
    CHECK(dot2.find("\"a\" -> \"d\" [style=solid]") != std::string::npos);
    CHECK(export_dot(st) == dot);
}

TEST_CASE("gadget export labels every registered edge") {
    auto hs = make_hitting_set(2, {{0, 1}});
    auto g = generate_gadget(hs, Mode::RLF);
    auto inst = std::make_shared<UpdateInstance>(g.instance);
    auto st = apply_round(initial_state(inst), first_round(initial_state(inst)));
    auto dot = export_dot(st, &g.layout);
    int registered_pending = 0;
    for (const auto& e : g.layout.edges)
        if (st.is_pending(e.from)) ++registered_pending;
    CHECK(count(dot, "style=dashed") == registered_pending);
    CHECK(count(dot, "label=\"AE ") == 2);
    CHECK(count(dot, "label=\"WE ") == 2 * 2 * 3);
    CHECK(count(dot, "label=\"SE ") == 2 * 3);
}

TEST_CASE("classification listing") {
    auto inst = instance_from("s a b d", "s b a d");
    auto text = render_classification(initial_state(inst));
    CHECK(text == "round: 1\nleaves: 1\npending: 3\ns F b\na F d\nb B a\n");
}

TEST_CASE("file helpers") {
    CHECK_THROWS_AS(read_file("/nonexistent/lfu"), Error);
    CHECK_THROWS_AS(write_file("/nonexistent/dir/x", "y"), Error);
}
