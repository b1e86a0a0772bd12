// Acceptance run: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sys/wait.h>
#include <unistd.h>
#include <sstream>

#include "lfu/gadgets.hpp"
#include "lfu/io.hpp"
#include "lfu/simulator.hpp"
#include "support.hpp"

using namespace lfu;
using namespace lfu::testing;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
};

bool report(int id, const std::string& title, const std::function<Outcome()>& body) {
    auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %d %s: %s (%s; %.1fs)\n", id, o.pass ? "PASS" : "FAIL", title.c_str(), o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    return o.pass;
}

NodeSet forward_class(const RoundState& st) {
    auto cls = classify_all(st);
    NodeSet out;
    for (NodeId v : st.pending())
        if (cls[v] == EdgeClass::Forward) out.push_back(v);
    return out;
}

Outcome criterion1() {
    std::mt19937_64 rng(101);
    long mismatches = 0, checks = 0;
    int instances = 0;
    auto t0 = Clock::now();
    for (; instances < 600; ++instances) {
        auto inst = random_instance(rng, 1 + instances % 9);  // |U| <= 10
        RoundState st = initial_state(inst);
        st = apply_round(st, first_round(st));
        NodeSet pending = st.pending();
        std::vector<NodeSet> subsets;
        if (pending.size() <= 8) {
            for (unsigned long mask = 0; mask < (1UL << pending.size()); ++mask) subsets.push_back(subset_of(pending, mask));
        } else {
            for (int i = 0; i < 256; ++i) subsets.push_back(subset_of(pending, rng() & ((1UL << pending.size()) - 1)));
        }
        for (const auto& S : subsets) {
            if (slf_safe(st, S).safe != oracle_safe(st, S, Mode::SLF).safe) ++mismatches;
            if (rlf_safe(st, S).safe != oracle_safe(st, S, Mode::RLF).safe) ++mismatches;
            checks += 2;
        }
    }
    double t = seconds_since(t0);
    std::ostringstream d;
    d << instances << " instances, " << checks << " comparisons, " << mismatches << " mismatches";
    return {mismatches == 0 && t < 60, d.str()};
}

Outcome criterion2() {
    std::mt19937_64 rng(202);
    int mismatches = 0, instances = 0;
    for (; instances < 600; ++instances) {
        auto inst = random_instance(rng, 2 + instances % 22);
        RoundState st = initial_state(inst);
        NodeSet fr = first_round(st);
        if (fr != forward_class(st)) ++mismatches;
        for (Mode mode : {Mode::SLF, Mode::RLF}) {
            auto ex = exact_max_round(st, mode);
            if (!ex.optimal || ex.nodes != fr) ++mismatches;
        }
    }
    return {mismatches == 0, std::to_string(instances) + " instances, both modes, " + std::to_string(mismatches) +
                                 " mismatches"};
}

// Round-2 states (after the forward round) with a given leaf count and |pending| <= 12.
std::vector<RoundState> round2_states(std::uint64_t seed, int leaves, int want) {
    std::mt19937_64 rng(seed);
    std::vector<RoundState> out;
    for (long t = 0; static_cast<int>(out.size()) < want && t < 2'000'000; ++t) {
        auto inst = random_instance(rng, 4 + static_cast<int>(t % 13));
        RoundState st = initial_state(inst);
        st = apply_round(st, first_round(st));
        auto n = st.pending().size();
        if (n == 0 || n > 12 || leaf_count(st) != leaves) continue;
        out.push_back(st);
    }
    return out;
}

Outcome criterion3(const std::vector<RoundState>& corpus) {
    auto t0 = Clock::now();
    int bad = 0;
    for (const auto& st : corpus) {
        auto slf = two_leaf_slf(st), rlf = two_leaf_rlf(st);
        auto opt_s = brute_optimum(st, Mode::SLF), opt_r = brute_optimum(st, Mode::RLF);
        if (!slf_safe(st, slf).safe || slf.size() != opt_s.size()) ++bad;
        if (!rlf_safe(st, rlf).safe || rlf.size() != opt_r.size()) ++bad;
        if (opt_r.size() < opt_s.size()) ++bad;
    }
    double t = seconds_since(t0);
    return {bad == 0 && corpus.size() >= 200 && t < 120,
            std::to_string(corpus.size()) + " two-leaf states, " + std::to_string(bad) + " failures"};
}

Outcome criterion4(const std::vector<RoundState>& two_leaf, const std::vector<RoundState>& three_leaf) {
    int bad = 0, greedy_used = 0;
    for (const auto& st : two_leaf) {
        auto cls = classify_all(st);
        int h = 0;
        for (NodeId v : st.pending())
            if (cls[v] == EdgeClass::Horizontal) ++h;
        auto out = majority_approx(st, Mode::SLF);
        if (!slf_safe(st, out).safe || horizontal_count(st, out) < (h + 1) / 2) ++bad;
        if (!rlf_safe(st, majority_approx(st, Mode::RLF)).safe) ++bad;
    }
    for (const auto& st : three_leaf) {
        HittingApproxInfo info;
        auto out = cycle_hitting_approx(st, Mode::SLF, {}, &info);
        if (!info.exact_subsolver) ++greedy_used;
        auto opt = brute_optimum(st, Mode::SLF);
        if (!slf_safe(st, out).safe || 3 * out.size() < 2 * opt.size()) ++bad;
        if (!rlf_safe(st, cycle_hitting_approx(st, Mode::RLF)).safe) ++bad;
    }
    return {bad == 0 && greedy_used == 0 && three_leaf.size() >= 100,
            std::to_string(two_leaf.size()) + " two-leaf and " + std::to_string(three_leaf.size()) +
                " three-leaf states, " + std::to_string(bad) + " violations"};
}

// Families of k <= 3 distinct nonempty subsets of m elements, one per isomorphism class.
std::vector<std::vector<int>> families(int m) {
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> perms;
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    auto canonical = [&](const std::vector<int>& fam) {
        std::vector<int> best;
        for (const auto& p : perms) {
            std::vector<int> img;
            for (int mask : fam) {
                int out = 0;
                for (int e = 0; e < m; ++e)
                    if (mask >> e & 1) out |= 1 << p[e];
                img.push_back(out);
            }
            std::sort(img.begin(), img.end());
            if (best.empty() || img < best) best = img;
        }
        return best;
    };
    const int top = (1 << m) - 1;
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> out;
    auto offer = [&](std::vector<int> fam) {
        auto c = fam.empty() ? fam : canonical(fam);
        if (seen.insert(c).second) out.push_back(c);
    };
    offer({});
    for (int a = 1; a <= top; ++a) {
        offer({a});
        for (int b = a + 1; b <= top; ++b) {
            offer({a, b});
            for (int c = b + 1; c <= top; ++c) offer({a, b, c});
        }
    }
    return out;
}

Outcome criterion5() {
    SolverLimits lim;
    lim.exact_node_cap = 1 << 20;
    lim.time_budget_seconds = 120;
    int runs = 0, failures = 0, fams = 0;
    std::string first_failure;
    for (int m = 1; m <= 4; ++m) {
        for (const auto& fam : families(m)) {
            ++fams;
            std::vector<std::vector<int>> sets;
            for (int mask : fam) {
                std::vector<int> s;
                for (int e = 0; e < m; ++e)
                    if (mask >> e & 1) s.push_back(e);
                sets.push_back(s);
            }
            auto hs = make_hitting_set(m, sets);
            for (Mode mode : {Mode::SLF, Mode::RLF}) {
                ++runs;
                try {
                    auto g = generate_gadget(hs, mode);
                    auto back = parse_instance(render_instance(g.instance));
                    if (back.pi1 != g.instance.pi1 || back.pi2 != g.instance.pi2)
                        throw Error(ErrorCode::CorrespondenceViolation, "render/parse mismatch");
                    verify_correspondence(hs, g.instance, g.layout, lim);
                } catch (const std::exception& e) {
                    if (failures++ == 0) first_failure = std::string("; first failure: ") + e.what();
                }
            }
        }
    }
    return {failures == 0, std::to_string(fams) + " families up to isomorphism (m<=4, k<=3), " + std::to_string(runs) +
                               " gadget checks, " + std::to_string(failures) + " failures" + first_failure};
}

Outcome criterion6() {
    std::mt19937_64 rng(606);
    int rounds = 0, disagreements = 0;
    for (int t = 0; rounds < 250 && t < 10000; ++t) {
        auto inst = random_instance(rng, 3 + t % 7);
        Mode mode = t % 2 ? Mode::RLF : Mode::SLF;
        RoundState st = initial_state(inst);
        UpdateSchedule sched{mode, {}};
        if (t % 3) {
            sched.rounds.push_back(first_round(st));
            if (sched.rounds.back().empty()) continue;
            st = apply_round(st, sched.rounds.back());
        }
        NodeSet pending = st.pending();
        if (pending.empty() || pending.size() > 8) continue;
        NodeSet round = subset_of(pending, (rng() % (1UL << pending.size())) | 1);
        sched.rounds.push_back(round);
        RoundState after = apply_round(st, round);
        for (NodeId v : after.pending()) sched.rounds.push_back({v});
        SimulationConfig cfg;
        cfg.trials = 1;
        cfg.probe = mode;
        cfg.exhaustive_limit = 8;
        auto rep = simulate(inst, sched, cfg);
        bool flagged = false;
        for (const auto& v : rep.violations)
            if (v.round == st.round_index) flagged = true;
        if (flagged != !oracle_safe(st, round, mode).safe) ++disagreements;
        ++rounds;
    }
    int noisy = 0, irreproducible = 0, schedules = 0;
    std::mt19937_64 rng2(607);
    for (int t = 0; t < 20; ++t) {
        auto inst = random_instance(rng2, 10 + t);
        for (Mode mode : {Mode::SLF, Mode::RLF}) {
            auto sched = full_schedule(inst, mode, Solver::Auto);
            SimulationConfig cfg;
            cfg.trials = 1000;
            cfg.seed = 4242 + t;
            cfg.probe = mode;
            cfg.exhaustive_limit = 0;
            auto a = simulate(inst, sched, cfg);
            auto b = simulate(inst, sched, cfg);
            if (a.violation_count != 0) ++noisy;
            if (report_text(a, *inst) != report_text(b, *inst) || report_json(a, *inst) != report_json(b, *inst))
                ++irreproducible;
            ++schedules;
        }
    }
    std::ostringstream d;
    d << rounds << " exhaustive rounds with " << disagreements << " disagreements; " << schedules
      << " schedules x 1000 trials with " << noisy << " violating and " << irreproducible << " irreproducible";
    return {rounds >= 200 && disagreements == 0 && noisy == 0 && irreproducible == 0, d.str()};
}

struct Run {
    int code;
    std::string out;
};

Run run_cli(const std::string& args, const fs::path& out_file) {
    std::string cmd = std::string("\"") + LFU_CLI_PATH + "\" " + args + " > \"" + out_file.string() + "\" 2>/dev/null";
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, read_file(out_file.string())};
}

Outcome criterion7() {
    const fs::path fixtures = LFU_FIXTURE_DIR;
    const fs::path work = fs::temp_directory_path() / ("lfu_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(work);
    auto q = [](const fs::path& p) { return "\"" + p.string() + "\""; };
    std::vector<std::string> instances;
    for (const auto& e : fs::directory_iterator(fixtures))
        if (e.path().extension() == ".txt" && e.path().stem() != "malformed" && e.path().stem().string().rfind("hs_", 0) != 0)
            instances.push_back(e.path().filename().string());
    std::sort(instances.begin(), instances.end());
    int mismatched = 0, wrong_codes = 0, cases = 0;
    std::string first;
    auto expect_code = [&](const std::string& what, int got, int want) {
        if (got != want) {
            ++wrong_codes;
            if (first.empty()) first = "; " + what + " exited " + std::to_string(got) + " not " + std::to_string(want);
        }
    };
    for (const auto& name : instances) {
        for (std::string mode : {"slf", "rlf"}) {
            ++cases;
            std::string outs[2];
            for (int pass = 0; pass < 2; ++pass) {
                auto sched_file = work / (name + "." + mode + "." + std::to_string(pass) + ".sched");
                auto s = run_cli("schedule " + q(fixtures / name) + " --mode " + mode + " -o " + q(sched_file), work / "out");
                expect_code("schedule " + name, s.code, 0);
                auto v = run_cli("verify " + q(fixtures / name) + " " + q(sched_file) + " --mode " + mode +
                                     " --trials 200 --seed 7",
                                 work / "verify");
                expect_code("verify " + name, v.code, 0);
                outs[pass] = read_file(sched_file.string()) + v.out;
            }
            if (outs[0] != outs[1]) ++mismatched;
        }
    }
    // the table: 1 input, 2 safety, 3 limits
    expect_code("verify unsafe", run_cli("verify " + q(fixtures / "i1.txt") + " " + q(fixtures / "i1_unsafe.sched") +
                                             " --mode slf --trials 100 --seed 7",
                                         work / "o").code,
                2);
    expect_code("missing file", run_cli("schedule " + q(work / "missing.txt") + " --mode slf", work / "o").code, 1);
    expect_code("malformed", run_cli("schedule " + q(fixtures / "malformed.txt") + " --mode slf", work / "o").code, 1);
    expect_code("unknown flag", run_cli("schedule " + q(fixtures / "i1.txt") + " --mode slf --bogus", work / "o").code, 1);
    expect_code("missing mode", run_cli("schedule " + q(fixtures / "i1.txt"), work / "o").code, 1);
    expect_code("node cap", run_cli("schedule " + q(fixtures / "random20.txt") + " --mode slf --solver exact --node-cap 2",
                                    work / "o").code,
                3);
    auto gad = work / "gadget.txt";
    expect_code("gen-hs", run_cli("gen-hs " + q(fixtures / "hs_chain.txt") + " --mode slf -o " + q(gad), work / "o").code, 0);
    expect_code("gadget exact cap", run_cli("schedule " + q(gad) + " --mode slf --solver exact", work / "o").code, 3);
    fs::remove_all(work);
    std::ostringstream d;
    d << cases << " fixture/mode pairs run twice, " << mismatched << " byte mismatches, " << wrong_codes
      << " unexpected exit codes (0/1/2/3 exercised; 4 is reserved for internal faults)" << first;
    return {mismatched == 0 && wrong_codes == 0 && cases > 0, d.str()};
}

}  // namespace

int main() {
    bool ok = true;
    ok &= report(1, "safety checks agree with the subset oracle", criterion1);
    ok &= report(2, "first round equals the forward class and the exact optimum", criterion2);
    auto two_leaf = round2_states(303, 2, 220);
    auto three_leaf = round2_states(404, 3, 120);
    ok &= report(3, "two-leaf solvers are optimal", [&] { return criterion3(two_leaf); });
    ok &= report(4, "approximation floors", [&] { return criterion4(two_leaf, three_leaf); });
    ok &= report(5, "gadget corresponds to minimum hitting set", criterion5);
    ok &= report(6, "simulator completeness and reproducibility", criterion6);
    ok &= report(7, "CLI determinism and exit codes", criterion7);
    return ok ? 0 : 1;
}
