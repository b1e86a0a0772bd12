#include "lfu/lfu.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "json.hpp"
#include "lfu/gadgets.hpp"
#include "lfu/io.hpp"
#include "lfu/safety.hpp"
#include "lfu/schedulers.hpp"
#include "lfu/simulator.hpp"

struct lfu_instance {
    lfu::InstancePtr inst;
};

struct lfu_schedule {
    lfu::UpdateSchedule sched;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_error_name;

template <class F>
lfu_status guarded(F&& body) {
    g_error.clear();
    g_error_name.clear();
    try {
        return body();
    } catch (const lfu::Error& e) {
        g_error = e.what();
        g_error_name = lfu::error_code_name(e.code());
        return static_cast<lfu_status>(lfu::exit_code_for(e.code()));
    } catch (const std::bad_alloc&) {
        g_error = "out of memory";
        g_error_name = "Internal";
    } catch (const std::exception& e) {
        g_error = e.what();
        g_error_name = "Internal";
    }
    return LFU_ERR_INTERNAL;
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void need(const void* p, const char* what) {
    if (!p) throw lfu::Error(lfu::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

lfu::Mode to_mode(lfu_mode m) { return m == LFU_RLF ? lfu::Mode::RLF : lfu::Mode::SLF; }

lfu::RoundState state_for(const lfu_instance* inst, const lfu_schedule* sched, int round) {
    if (!sched) {
        if (round > 1) throw lfu::Error(lfu::ErrorCode::InvalidArgument, "a round needs a schedule");
        return lfu::initial_state(inst->inst);
    }
    int last = static_cast<int>(sched->sched.rounds.size()) + 1;
    if (round < 1 || round > last)
        throw lfu::Error(lfu::ErrorCode::InvalidArgument, "round must lie in 1.." + std::to_string(last));
    return lfu::state_before_round(inst->inst, sched->sched.rounds, round);
}

lfu::SimulationConfig sim_config(const lfu_sim_options* opts, lfu_mode mode) {
    lfu_sim_options d;
    lfu_sim_options_default(&d);
    if (!opts) opts = &d;
    lfu::SimulationConfig cfg;
    cfg.trials = opts->trials;
    cfg.seed = opts->seed;
    cfg.exhaustive_limit = opts->exhaustive_limit;
    cfg.probe = to_mode(mode);
    if (opts->delay_weights && opts->delay_weight_count > 0) {
        cfg.delay = lfu::DelayModel::Discrete;
        cfg.delay_weights.assign(opts->delay_weights, opts->delay_weights + opts->delay_weight_count);
    }
    return cfg;
}

std::string names(const lfu::UpdateInstance& inst, const std::vector<lfu::NodeId>& nodes) {
    std::string out;
    for (auto v : nodes) out += (out.empty() ? "" : " ") + inst.name(v);
    return out;
}

}  // namespace

extern "C" {

const char* lfu_last_error(void) { return g_error.c_str(); }
const char* lfu_last_error_name(void) { return g_error_name.c_str(); }

void lfu_string_free(char* s) { std::free(s); }

lfu_status lfu_mode_parse(const char* text, lfu_mode* out) {
    return guarded([&] {
        need(text, "mode");
        need(out, "output");
        *out = lfu::parse_mode(text) == lfu::Mode::RLF ? LFU_RLF : LFU_SLF;
        return LFU_OK;
    });
}

lfu_status lfu_instance_parse(const char* text, lfu_instance** out) {
    return guarded([&] {
        need(text, "text");
        need(out, "output");
        *out = new lfu_instance{std::make_shared<lfu::UpdateInstance>(lfu::parse_instance(text))};
        return LFU_OK;
    });
}

lfu_status lfu_instance_load(const char* path, lfu_instance** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "output");
        *out = new lfu_instance{std::make_shared<lfu::UpdateInstance>(lfu::parse_instance(lfu::read_file(path)))};
        return LFU_OK;
    });
}

lfu_status lfu_instance_render(const lfu_instance* inst, char** out) {
    return guarded([&] {
        need(inst, "instance");
        need(out, "output");
        *out = dup(lfu::render_instance(*inst->inst));
        return LFU_OK;
    });
}

size_t lfu_instance_size(const lfu_instance* inst) { return inst ? inst->inst->size() : 0; }

size_t lfu_instance_interesting_count(const lfu_instance* inst) {
    return inst ? lfu::interesting_nodes(*inst->inst).size() : 0;
}

void lfu_instance_free(lfu_instance* inst) { delete inst; }

void lfu_limits_default(lfu_limits* limits) {
    if (!limits) return;
    lfu::SolverLimits d;
    limits->exact_node_cap = d.exact_node_cap;
    limits->cycle_cap = d.cycle_cap;
    limits->time_budget_seconds = d.time_budget_seconds;
}

lfu_status lfu_schedule_compute(const lfu_instance* inst, lfu_mode mode, const char* solver, const lfu_limits* limits,
                                lfu_schedule** out) {
    return guarded([&] {
        need(inst, "instance");
        need(solver, "solver");
        need(out, "output");
        lfu::SolverLimits lim;
        if (limits) {
            if (limits->exact_node_cap < 1 || limits->cycle_cap < 1 || !(limits->time_budget_seconds > 0))
                throw lfu::Error(lfu::ErrorCode::InvalidArgument, "limits must be positive");
            lim.exact_node_cap = limits->exact_node_cap;
            lim.cycle_cap = limits->cycle_cap;
            lim.time_budget_seconds = limits->time_budget_seconds;
        }
        auto sched = lfu::full_schedule(inst->inst, to_mode(mode), lfu::parse_solver(solver), lim);
        *out = new lfu_schedule{std::move(sched)};
        return LFU_OK;
    });
}

lfu_status lfu_schedule_parse(const lfu_instance* inst, const char* text, lfu_schedule** out) {
    return guarded([&] {
        need(inst, "instance");
        need(text, "text");
        need(out, "output");
        *out = new lfu_schedule{lfu::parse_schedule(text, *inst->inst)};
        return LFU_OK;
    });
}

lfu_status lfu_schedule_render(const lfu_instance* inst, const lfu_schedule* sched, char** out) {
    return guarded([&] {
        need(inst, "instance");
        need(sched, "schedule");
        need(out, "output");
        *out = dup(lfu::render_schedule(sched->sched, *inst->inst));
        return LFU_OK;
    });
}

size_t lfu_schedule_round_count(const lfu_schedule* sched) { return sched ? sched->sched.rounds.size() : 0; }

lfu_mode lfu_schedule_mode(const lfu_schedule* sched) {
    return sched && sched->sched.mode == lfu::Mode::RLF ? LFU_RLF : LFU_SLF;
}

void lfu_schedule_free(lfu_schedule* sched) { delete sched; }

lfu_status lfu_classify(const lfu_instance* inst, const lfu_schedule* sched, int round, char** out) {
    return guarded([&] {
        need(inst, "instance");
        need(out, "output");
        *out = dup(lfu::render_classification(state_for(inst, sched, round)));
        return LFU_OK;
    });
}

lfu_status lfu_export_dot(const lfu_instance* inst, const lfu_schedule* sched, int round, const char* layout_text,
                          char** out) {
    return guarded([&] {
        need(inst, "instance");
        need(out, "output");
        auto st = state_for(inst, sched, round);
        if (layout_text) {
            auto layout = lfu::parse_layout(layout_text, *inst->inst);
            *out = dup(lfu::export_dot(st, &layout));
        } else {
            *out = dup(lfu::export_dot(st));
        }
        return LFU_OK;
    });
}

void lfu_sim_options_default(lfu_sim_options* opts) {
    if (!opts) return;
    lfu::SimulationConfig d;
    opts->trials = d.trials;
    opts->seed = d.seed;
    opts->exhaustive_limit = d.exhaustive_limit;
    opts->delay_weights = nullptr;
    opts->delay_weight_count = 0;
    opts->json = 0;
}

lfu_status lfu_simulate(const lfu_instance* inst, const lfu_schedule* sched, lfu_mode mode, const lfu_sim_options* opts,
                        char** report) {
    return guarded([&] {
        need(inst, "instance");
        need(sched, "schedule");
        need(report, "output");
        auto rep = lfu::simulate(inst->inst, sched->sched, sim_config(opts, mode));
        bool json = opts && opts->json;
        *report = dup(json ? lfu::report_json(rep, *inst->inst) : lfu::report_text(rep, *inst->inst));
        if (rep.loop_free_confirmed) return LFU_OK;
        g_error = "simulation found loops";
        g_error_name = "UnsafeSchedule";
        return LFU_ERR_SAFETY;
    });
}

lfu_status lfu_verify(const lfu_instance* inst, const lfu_schedule* sched, lfu_mode mode, const lfu_sim_options* opts,
                      char** report) {
    return guarded([&] {
        need(inst, "instance");
        need(sched, "schedule");
        need(report, "output");
        const auto& ui = *inst->inst;
        const auto& s = sched->sched;
        lfu::check_partition(ui, s);
        lfu::Mode m = to_mode(mode);
        bool ok = true;
        nlohmann::ordered_json rounds = nlohmann::ordered_json::array();
        std::string text = std::string("mode: ") + lfu::mode_name(m) + "\nschedule mode: " + lfu::mode_name(s.mode) +
                           "\npartition: ok\n";
        lfu::RoundState st = lfu::initial_state(inst->inst);
        for (std::size_t t = 0; t < s.rounds.size(); ++t) {
            auto v = lfu::mode_safe(st, s.rounds[t], m);
            nlohmann::ordered_json r;
            r["round"] = t + 1;
            r["size"] = s.rounds[t].size();
            r["safe"] = v.safe;
            text += "round " + std::to_string(t + 1) + ": ";
            if (v.safe) {
                text += "safe\n";
            } else {
                ok = false;
                text += "unsafe x={" + names(ui, v.witness.x) + "} loop=" + names(ui, v.witness.loop) + "\n";
                r["x"] = names(ui, v.witness.x);
                r["loop"] = names(ui, v.witness.loop);
            }
            rounds.push_back(r);
            st = lfu::apply_round(st, s.rounds[t]);
        }
        auto rep = lfu::simulate(inst->inst, s, sim_config(opts, mode));
        ok = ok && rep.loop_free_confirmed;
        if (opts && opts->json) {
            nlohmann::ordered_json j;
            j["mode"] = lfu::mode_name(m);
            j["schedule_mode"] = lfu::mode_name(s.mode);
            j["partition"] = "ok";
            j["rounds"] = rounds;
            j["simulation"] = nlohmann::ordered_json::parse(lfu::report_json(rep, ui));
            j["verdict"] = ok ? "pass" : "fail";
            *report = dup(j.dump(2) + "\n");
        } else {
            text += lfu::report_text(rep, ui);
            text += std::string("verdict: ") + (ok ? "pass" : "fail") + "\n";
            *report = dup(text);
        }
        if (!ok) {
            g_error = "schedule is not loop-free";
            g_error_name = "UnsafeSchedule";
        }
        return ok ? LFU_OK : LFU_ERR_SAFETY;
    });
}

lfu_status lfu_gen_hs(const char* hs_text, lfu_mode mode, char** instance_out, char** layout_out) {
    return guarded([&] {
        need(hs_text, "hitting-set text");
        need(instance_out, "instance output");
        need(layout_out, "layout output");
        auto g = lfu::generate_gadget(lfu::parse_hitting_set(hs_text), to_mode(mode));
        *instance_out = dup(lfu::render_instance(g.instance));
        *layout_out = dup(lfu::render_layout(g.layout));
        return LFU_OK;
    });
}

}  // extern "C"
