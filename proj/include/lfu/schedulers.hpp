#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lfu/graph.hpp"
#include "lfu/hitting_set.hpp"
#include "lfu/model.hpp"

namespace lfu {

struct SolverLimits {
    int exact_node_cap = 24;
    long cycle_cap = 1'000'000;
    double time_budget_seconds = 60.0;
};

enum class Solver { Exact, TwoLeaf, Majority, HittingSet, Auto };

const char* solver_name(Solver s);
Solver parse_solver(const std::string& text);

NodeSet first_round(const RoundState& state);

struct ExactResult {
    NodeSet nodes;
    bool optimal = true;
    long expansions = 0;
};

// Maximum mode-safe subset of the pending nodes; ties go to the lexicographically
// smallest node-index set. On timeout the best set found is returned with optimal=false.
ExactResult exact_max_round(const RoundState& state, Mode mode, const SolverLimits& limits = {});

// Horizontal candidate edges and their pairwise crossings.
struct ConflictGraph {
    std::vector<NodeId> vertices;                 // tail node of each candidate edge
    std::vector<std::pair<int, int>> conflicts;   // index pairs, i < j
    std::vector<int> side;                        // 0 / 1 colouring
};

ConflictGraph crossing_conflicts(const RoundState& state);

NodeSet two_leaf_slf(const RoundState& state);
NodeSet two_leaf_rlf(const RoundState& state);

NodeSet majority_approx(const RoundState& state, Mode mode);

// Johnson's algorithm; cycles are node sequences starting at their smallest node.
std::vector<std::vector<int>> enumerate_simple_cycles(const Digraph& g, long cap);

// Union of active edges with the new edges of every pending Forward and Horizontal node.
Digraph forward_horizontal_graph(const RoundState& state);

struct HCycle {
    std::vector<NodeId> nodes;
    NodeSet h_edges;  // Horizontal pending nodes whose new edge the cycle uses
};

std::vector<HCycle> horizontal_cycles(const RoundState& state, const Digraph& g, long cap);

struct HittingApproxInfo {
    int cycles = 0;
    int hit = 0;
    bool exact_subsolver = false;
};

NodeSet cycle_hitting_approx(const RoundState& state, Mode mode, const SolverLimits& limits = {},
                             HittingApproxInfo* info = nullptr);

NodeId fallback_single(const RoundState& state, Mode mode);

UpdateSchedule full_schedule(InstancePtr inst, Mode mode, Solver solver, const SolverLimits& limits = {});

// Runs one solver on a state; shared by full_schedule and the CLI.
NodeSet solve_round(const RoundState& state, Mode mode, Solver solver, const SolverLimits& limits);

}  // namespace lfu
