#pragma once

#include <string>
#include <vector>

#include "lfu/graph.hpp"
#include "lfu/model.hpp"

namespace lfu {

struct Witness {
    NodeSet x;                // nodes of S already switched
    std::vector<NodeId> loop;  // cycle node sequence
    std::vector<NodeId> stem;  // RLF: path from s to the loop
};

struct SafetyVerdict {
    bool safe = true;
    Witness witness;          // meaningful when !safe
    long subsets_checked = 0;  // oracle only
};

// Each v in S contributes out1(v) and out2(v); everyone else contributes active_out(v).
Digraph union_graph(const RoundState& state, const NodeSet& S);

SafetyVerdict slf_safe(const RoundState& state, const NodeSet& S);
SafetyVerdict rlf_safe(const RoundState& state, const NodeSet& S);
SafetyVerdict mode_safe(const RoundState& state, const NodeSet& S, Mode mode);

constexpr int kDefaultOracleCap = 20;

// Literal enumeration of every X subset of S (by size, then lexicographically).
SafetyVerdict oracle_safe(const RoundState& state, const NodeSet& S, Mode mode, int cap = kDefaultOracleCap);

// Forwarding map of the temporary graph: X on its new rule, all else on the active rule.
std::vector<NodeId> temporary_graph(const RoundState& state, const NodeSet& X);

// Replays a witness: true if patching X into the state exhibits the loop
// (for RLF, reachable from s).
bool replay_witness(const RoundState& state, const Witness& w, Mode mode);

}  // namespace lfu
