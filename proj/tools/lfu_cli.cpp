#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lfu/lfu.h"

namespace {

struct Failure {
    int code;
};

void check(lfu_status st) {
    if (st == LFU_OK) return;
    std::cerr << "lfu: " << lfu_last_error() << '\n';
    throw Failure{static_cast<int>(st)};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "lfu: IoError: cannot read '" << path << "'\n";
        throw Failure{LFU_ERR_INPUT};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        std::cerr << "lfu: IoError: cannot write '" << path << "'\n";
        throw Failure{LFU_ERR_INPUT};
    }
}

struct Text {
    char* p = nullptr;
    ~Text() { lfu_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

using InstanceHandle = std::unique_ptr<lfu_instance, decltype(&lfu_instance_free)>;
using ScheduleHandle = std::unique_ptr<lfu_schedule, decltype(&lfu_schedule_free)>;

InstanceHandle load_instance(const std::string& path) {
    std::string text = slurp(path);
    lfu_instance* raw = nullptr;
    check(lfu_instance_parse(text.c_str(), &raw));
    return {raw, lfu_instance_free};
}

ScheduleHandle load_schedule(const lfu_instance* inst, const std::string& path) {
    if (path.empty()) return {nullptr, lfu_schedule_free};
    std::string text = slurp(path);
    lfu_schedule* raw = nullptr;
    check(lfu_schedule_parse(inst, text.c_str(), &raw));
    return {raw, lfu_schedule_free};
}

lfu_mode mode_of(const std::string& text) {
    lfu_mode m = LFU_SLF;
    check(lfu_mode_parse(text.c_str(), &m));
    return m;
}

struct SimFlags {
    std::string instance, schedule, mode, format = "text";
    int trials = 1000;
    std::uint64_t seed = 1;
    int exhaustive_limit = 8;
    std::vector<unsigned> delay_weights;
};

void add_sim_flags(CLI::App* cmd, SimFlags& f) {
    cmd->add_option("instance", f.instance, "instance file")->required();
    cmd->add_option("schedule", f.schedule, "schedule file")->required();
    cmd->add_option("--mode", f.mode, "slf or rlf")->required()->check(CLI::IsMember({"slf", "rlf"}));
    cmd->add_option("--trials", f.trials, "sampled trials")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "random seed");
    cmd->add_option("--exhaustive-limit", f.exhaustive_limit, "try every order for rounds up to this size (0 disables)")
        ->check(CLI::Range(0, 20));
    cmd->add_option("--delay-weights", f.delay_weights, "weights of per-switch delays 0,1,2,... (default: uniform order)")
        ->delimiter(',');
    cmd->add_option("--format", f.format, "text or json")->check(CLI::IsMember({"text", "json"}));
}

int run_sim(const SimFlags& f, bool full_verify) {
    auto inst = load_instance(f.instance);
    auto sched = load_schedule(inst.get(), f.schedule);
    lfu_sim_options opts;
    lfu_sim_options_default(&opts);
    opts.trials = f.trials;
    opts.seed = f.seed;
    opts.exhaustive_limit = f.exhaustive_limit;
    opts.json = f.format == "json";
    if (!f.delay_weights.empty()) {
        opts.delay_weights = f.delay_weights.data();
        opts.delay_weight_count = f.delay_weights.size();
    }
    Text report;
    lfu_status st = full_verify ? lfu_verify(inst.get(), sched.get(), mode_of(f.mode), &opts, &report.p)
                                : lfu_simulate(inst.get(), sched.get(), mode_of(f.mode), &opts, &report.p);
    std::cout << report.str();
    if (st != LFU_OK) std::cerr << "lfu: " << lfu_last_error() << '\n';
    return st;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Loop-free update scheduling for two-path network updates"};
    app.require_subcommand(1);

    std::string inst_path, sched_path, layout_path, out_path, mode, solver = "auto";
    int round = 1;
    lfu_limits limits;
    lfu_limits_default(&limits);

    auto* schedule = app.add_subcommand("schedule", "compute an update schedule");
    schedule->add_option("instance", inst_path, "instance file")->required();
    schedule->add_option("--mode", mode, "slf or rlf")->required()->check(CLI::IsMember({"slf", "rlf"}));
    schedule->add_option("--solver", solver, "exact, two-leaf, majority, hitting-set or auto")
        ->check(CLI::IsMember({"exact", "two-leaf", "majority", "hitting-set", "auto"}));
    schedule->add_option("--node-cap", limits.exact_node_cap, "largest pending set for the exact solver")
        ->check(CLI::PositiveNumber);
    schedule->add_option("--cycle-cap", limits.cycle_cap, "most simple cycles to enumerate")->check(CLI::PositiveNumber);
    schedule->add_option("--time-budget", limits.time_budget_seconds, "seconds per exact round")
        ->check(CLI::PositiveNumber);
    schedule->add_option("-o,--output", out_path, "write the schedule here instead of stdout");

    SimFlags verify_flags, sim_flags;
    auto* verify = app.add_subcommand("verify", "check a schedule round by round and by simulation");
    add_sim_flags(verify, verify_flags);
    auto* simulate = app.add_subcommand("simulate", "replay a schedule under random asynchronous orders");
    add_sim_flags(simulate, sim_flags);

    auto* classify = app.add_subcommand("classify", "classify pending edges of a state");
    classify->add_option("instance", inst_path, "instance file")->required();
    classify->add_option("--schedule", sched_path, "schedule file");
    classify->add_option("--round", round, "state before this round")->check(CLI::PositiveNumber);

    auto* gen = app.add_subcommand("gen-hs", "build the hardness gadget for a hitting-set instance");
    std::string hs_path;
    gen->add_option("hitting-set", hs_path, "hitting-set file")->required();
    gen->add_option("--mode", mode, "slf or rlf")->required()->check(CLI::IsMember({"slf", "rlf"}));
    gen->add_option("-o,--output", out_path, "instance output (default stdout)");
    gen->add_option("--layout", layout_path, "layout sidecar output");

    auto* dot = app.add_subcommand("export-dot", "render a state as a DOT digraph");
    dot->add_option("instance", inst_path, "instance file")->required();
    dot->add_option("--schedule", sched_path, "schedule file");
    dot->add_option("--round", round, "state before this round")->check(CLI::PositiveNumber);
    dot->add_option("--layout", layout_path, "gadget layout sidecar");
    dot->add_option("-o,--output", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return LFU_ERR_INPUT;
    }

    try {
        if (*schedule) {
            auto inst = load_instance(inst_path);
            lfu_schedule* raw = nullptr;
            check(lfu_schedule_compute(inst.get(), mode_of(mode), solver.c_str(), &limits, &raw));
            ScheduleHandle sched(raw, lfu_schedule_free);
            Text text;
            check(lfu_schedule_render(inst.get(), sched.get(), &text.p));
            emit(out_path, text.str());
        } else if (*verify) {
            return run_sim(verify_flags, true);
        } else if (*simulate) {
            return run_sim(sim_flags, false);
        } else if (*classify) {
            auto inst = load_instance(inst_path);
            auto sched = load_schedule(inst.get(), sched_path);
            Text text;
            check(lfu_classify(inst.get(), sched.get(), round, &text.p));
            std::cout << text.str();
        } else if (*gen) {
            std::string hs = slurp(hs_path);
            Text inst_text, layout_text;
            check(lfu_gen_hs(hs.c_str(), mode_of(mode), &inst_text.p, &layout_text.p));
            emit(out_path, inst_text.str());
            if (!layout_path.empty()) emit(layout_path, layout_text.str());
        } else if (*dot) {
            auto inst = load_instance(inst_path);
            auto sched = load_schedule(inst.get(), sched_path);
            std::string layout = layout_path.empty() ? "" : slurp(layout_path);
            Text text;
            check(lfu_export_dot(inst.get(), sched.get(), round, layout_path.empty() ? nullptr : layout.c_str(), &text.p));
            emit(out_path, text.str());
        }
    } catch (const Failure& f) {
        return f.code;
    }
    return 0;
}
