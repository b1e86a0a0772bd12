#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lfu/model.hpp"

namespace lfu {

enum class DelayModel { Uniform, Discrete };

struct SimulationConfig {
    int trials = 1000;
    std::uint64_t seed = 1;
    DelayModel delay = DelayModel::Uniform;
    std::vector<unsigned> delay_weights;  // Discrete: weight of delay 0, 1, 2, ...
    Mode probe = Mode::SLF;
    int exhaustive_limit = 8;  // rounds up to this size try every order; 0 disables
    std::size_t max_violations = 100;
};

struct Violation {
    int trial = 0;  // 0 for exhaustive rounds
    int round = 0;
    NodeSet x;
    NodeId origin = -1;
    std::vector<NodeId> loop;
};

struct SimulationReport {
    std::uint64_t seed = 0;
    int trials_run = 0;
    int rounds = 0;
    int exhaustive_rounds = 0;
    long events_processed = 0;
    long violation_count = 0;
    std::vector<Violation> violations;  // first max_violations, in (trial, round, event) order
    bool loop_free_confirmed = true;
};

struct TraceResult {
    bool reached = true;
    std::vector<NodeId> path;  // visited nodes; when looped, ends just before the repeat
    std::vector<NodeId> loop;  // cycle nodes when looped
};

// Follows next[] from origin; node -1 terminates.
TraceResult trace_packet(const std::vector<NodeId>& next, NodeId origin);

SimulationReport simulate(InstancePtr inst, const UpdateSchedule& schedule, const SimulationConfig& config);

std::string report_text(const SimulationReport& report, const UpdateInstance& inst);
std::string report_json(const SimulationReport& report, const UpdateInstance& inst);

// mt19937_64 with a rejection-sampled bounded draw and a descending Fisher-Yates shuffle.
class SimRng {
public:
    explicit SimRng(std::uint64_t seed) : gen_(seed) {}
    std::uint64_t next() { return gen_(); }
    std::uint64_t below(std::uint64_t bound);
    void shuffle(std::vector<NodeId>& items);

private:
    std::mt19937_64 gen_;
};

}  // namespace lfu
