#include "lfu/simulator.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace lfu {

std::uint64_t SimRng::below(std::uint64_t bound) {
    if (bound == 0) throw Error(ErrorCode::InvalidArgument, "empty draw range");
    // reject the top partial bucket so every residue is equally likely
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do x = gen_();
    while (x >= limit);
    return x % bound;
}

void SimRng::shuffle(std::vector<NodeId>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
}

TraceResult trace_packet(const std::vector<NodeId>& next, NodeId origin) {
    TraceResult res;
    std::vector<int> seen_at(next.size(), -1);
    for (NodeId v = origin; v >= 0; v = next[v]) {
        if (seen_at[v] >= 0) {
            res.reached = false;
            res.loop.assign(res.path.begin() + seen_at[v], res.path.end());
            return res;
        }
        seen_at[v] = static_cast<int>(res.path.size());
        res.path.push_back(v);
    }
    return res;
}

namespace {

// Smallest origin whose packet loops in the functional graph, or -1.
NodeId first_looping_origin(const std::vector<NodeId>& next) {
    const int n = static_cast<int>(next.size());
    std::vector<char> state(n, 0);  // 0 new, 1 on stack, 2 exits, 3 loops
    std::vector<NodeId> stack;
    NodeId best = -1;
    for (NodeId v = 0; v < n; ++v) {
        if (state[v]) continue;
        stack.clear();
        NodeId x = v;
        char verdict = 2;
        while (x >= 0) {
            if (state[x] == 1) {
                verdict = 3;
                break;
            }
            if (state[x] >= 2) {
                verdict = state[x];
                break;
            }
            state[x] = 1;
            stack.push_back(x);
            x = next[x];
        }
        for (NodeId y : stack) state[y] = verdict;
        if (verdict == 3 && best < 0) best = v;
    }
    return best;
}

class Runner {
public:
    Runner(InstancePtr inst, const UpdateSchedule& sched, const SimulationConfig& cfg)
        : inst_(std::move(inst)), sched_(sched), cfg_(cfg), rng_(cfg.seed) {}

    SimulationReport run() {
        if (cfg_.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
        if (cfg_.delay == DelayModel::Discrete) {
            unsigned long total = 0;
            for (unsigned w : cfg_.delay_weights) total += w;
            if (total == 0) throw Error(ErrorCode::InvalidArgument, "discrete delay model needs a positive weight");
        }
        check_partition(*inst_, sched_);
        rep_.seed = cfg_.seed;
        rep_.rounds = static_cast<int>(sched_.rounds.size());
        RoundState st = initial_state(inst_);
        for (const auto& round : sched_.rounds) {
            before_.push_back(st);
            st = apply_round(st, round);
        }
        std::vector<char> exhaustive(sched_.rounds.size(), 0);
        for (std::size_t t = 0; t < sched_.rounds.size(); ++t) {
            if (static_cast<int>(sched_.rounds[t].size()) <= cfg_.exhaustive_limit) {
                exhaustive[t] = 1;
                ++rep_.exhaustive_rounds;
                run_exhaustive(static_cast<int>(t));
            }
        }
        for (int trial = 1; trial <= cfg_.trials; ++trial) {
            for (std::size_t t = 0; t < sched_.rounds.size(); ++t)
                if (!exhaustive[t]) run_sampled(trial, static_cast<int>(t));
            ++rep_.trials_run;
        }
        rep_.loop_free_confirmed = rep_.violation_count == 0;
        return rep_;
    }

private:
    InstancePtr inst_;
    const UpdateSchedule& sched_;
    const SimulationConfig& cfg_;
    SimRng rng_;
    SimulationReport rep_;
    std::vector<RoundState> before_;

    void probe(int trial, int round, std::vector<NodeId>& snap, const std::vector<NodeId>& order, std::size_t applied) {
        ++rep_.events_processed;
        NodeId origin = cfg_.probe == Mode::SLF ? first_looping_origin(snap) : inst_->s;
        if (origin < 0) return;
        auto tr = trace_packet(snap, origin);
        if (tr.reached) return;
        ++rep_.violation_count;
        if (rep_.violations.size() >= cfg_.max_violations) return;
        Violation v;
        v.trial = trial;
        v.round = round + 1;
        v.x = normalize(NodeSet(order.begin(), order.begin() + static_cast<long>(applied)));
        v.origin = origin;
        v.loop = tr.loop;
        rep_.violations.push_back(std::move(v));
    }

    std::vector<NodeId> draw_order(const NodeSet& round) {
        std::vector<NodeId> order(round.begin(), round.end());
        if (cfg_.delay == DelayModel::Uniform) {
            rng_.shuffle(order);
            return order;
        }
        std::uint64_t total = 0;
        for (unsigned w : cfg_.delay_weights) total += w;
        std::vector<std::tuple<std::uint64_t, std::uint64_t, NodeId>> keyed;
        for (NodeId v : order) {
            std::uint64_t r = rng_.below(total), delay = 0;
            while (r >= cfg_.delay_weights[delay]) r -= cfg_.delay_weights[delay++];
            keyed.emplace_back(delay, rng_.next(), v);
        }
        std::sort(keyed.begin(), keyed.end());
        for (std::size_t i = 0; i < keyed.size(); ++i) order[i] = std::get<2>(keyed[i]);
        return order;
    }

    void run_sampled(int trial, int round) {
        auto order = draw_order(sched_.rounds[round]);
        std::vector<NodeId> snap = before_[round].active_out;
        for (std::size_t i = 0; i < order.size(); ++i) {
            snap[order[i]] = inst_->out2[order[i]];
            probe(trial, round, snap, order, i + 1);
        }
    }

    void run_exhaustive(int round) {
        std::vector<NodeId> order(sched_.rounds[round].begin(), sched_.rounds[round].end());
        std::sort(order.begin(), order.end());
        std::unordered_set<std::uint64_t> seen;  // prefix sets as bit masks over the round
        std::vector<std::size_t> slot(inst_->size());
        for (std::size_t i = 0; i < order.size(); ++i) slot[order[i]] = i;
        do {
            std::vector<NodeId> snap = before_[round].active_out;
            std::uint64_t mask = 0;
            for (std::size_t i = 0; i < order.size(); ++i) {
                snap[order[i]] = inst_->out2[order[i]];
                mask |= std::uint64_t{1} << slot[order[i]];
                if (seen.insert(mask).second) probe(0, round, snap, order, i + 1);
            }
        } while (std::next_permutation(order.begin(), order.end()));
    }
};

std::string names_of(const UpdateInstance& inst, const std::vector<NodeId>& nodes) {
    std::string out;
    for (NodeId v : nodes) {
        if (!out.empty()) out += ' ';
        out += inst.name(v);
    }
    return out;
}

}  // namespace

SimulationReport simulate(InstancePtr inst, const UpdateSchedule& schedule, const SimulationConfig& config) {
    if (config.exhaustive_limit > 20) throw Error(ErrorCode::InvalidArgument, "exhaustive limit above 20");
    return Runner(std::move(inst), schedule, config).run();
}

std::string report_text(const SimulationReport& r, const UpdateInstance& inst) {
    std::ostringstream out;
    out << "seed: " << r.seed << '\n'
        << "trials: " << r.trials_run << '\n'
        << "rounds: " << r.rounds << " (exhaustive " << r.exhaustive_rounds << ")\n"
        << "events: " << r.events_processed << '\n'
        << "violations: " << r.violation_count << '\n';
    for (const auto& v : r.violations)
        out << "violation trial=" << v.trial << " round=" << v.round << " x={" << names_of(inst, v.x)
            << "} origin=" << inst.name(v.origin) << " loop=" << names_of(inst, v.loop) << '\n';
    out << "result: " << (r.loop_free_confirmed ? "loop-free" : "loops found") << '\n';
    return out.str();
}

std::string report_json(const SimulationReport& r, const UpdateInstance& inst) {
    nlohmann::ordered_json j;
    j["seed"] = r.seed;
    j["trials"] = r.trials_run;
    j["rounds"] = r.rounds;
    j["exhaustive_rounds"] = r.exhaustive_rounds;
    j["events"] = r.events_processed;
    j["violations"] = r.violation_count;
    j["loop_free"] = r.loop_free_confirmed;
    if (r.violations.empty()) {
        j["first_violation"] = nullptr;
    } else {
        const auto& v = r.violations.front();
        nlohmann::ordered_json f;
        f["trial"] = v.trial;
        f["round"] = v.round;
        std::vector<std::string> x, loop;
        for (NodeId n : v.x) x.push_back(inst.name(n));
        for (NodeId n : v.loop) loop.push_back(inst.name(n));
        f["x"] = x;
        f["origin"] = inst.name(v.origin);
        f["loop"] = loop;
        j["first_violation"] = f;
    }
    return j.dump(2) + "\n";
}

}  // namespace lfu
