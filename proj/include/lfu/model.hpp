#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lfu/errors.hpp"

namespace lfu {

// Nodes are identified by their 0-based position on the old path.
using NodeId = int;
using NodeSet = std::vector<NodeId>;  // sorted, duplicate free

enum class Mode { SLF, RLF };
enum class EdgeClass { Forward, Backward, Horizontal };

const char* mode_name(Mode mode);  // "slf" / "rlf"
Mode parse_mode(const std::string& text);
const char* edge_class_letter(EdgeClass c);  // "F" / "B" / "H"

struct UpdateInstance {
    std::vector<std::string> names;  // token per position
    std::vector<NodeId> pi1;         // identity 0..ell-1
    std::vector<NodeId> pi2;
    NodeId s = 0;
    NodeId d = 0;
    std::vector<NodeId> out1, out2;  // -1 at d
    std::vector<int> pos2;           // index of each node on pi2
    int ell = 0;
    std::unordered_map<std::string, NodeId> index;

    int size() const { return ell; }
    bool interesting(NodeId v) const { return out1[v] != out2[v]; }
    const std::string& name(NodeId v) const { return names[v]; }
    NodeId lookup(const std::string& token) const;  // throws UnknownNode
};

using InstancePtr = std::shared_ptr<const UpdateInstance>;

// Builds and validates an instance from two token paths.
UpdateInstance make_instance(const std::vector<std::string>& pi1, const std::vector<std::string>& pi2);
UpdateInstance parse_instance(const std::string& text);
std::string render_instance(const UpdateInstance& inst);

NodeSet interesting_nodes(const UpdateInstance& inst);

struct RoundState {
    InstancePtr inst;
    std::vector<char> updated;  // per node
    std::vector<NodeId> active_out;
    int round_index = 1;

    int size() const { return inst->size(); }
    bool is_pending(NodeId v) const { return inst->interesting(v) && !updated[v]; }
    NodeSet pending() const;
    NodeSet updated_set() const;  // interesting nodes already switched
};

RoundState initial_state(InstancePtr inst);
RoundState apply_round(const RoundState& state, const NodeSet& S);
// State before round `round` of a schedule (round is 1-based).
RoundState state_before_round(InstancePtr inst, const std::vector<NodeSet>& rounds, int round);

struct Walk {
    std::vector<NodeId> nodes;
    bool looped = false;
    NodeId loop_at = -1;  // the repeated node when looped
};

Walk active_walk(const RoundState& state, NodeId v);
bool walk_contains(const RoundState& state, NodeId from, NodeId target);

EdgeClass classify_edge(const RoundState& state, NodeId v);
// Classes of all pending nodes, indexed by node (only pending entries meaningful).
std::vector<EdgeClass> classify_all(const RoundState& state);

bool active_is_acyclic(const RoundState& state);
int leaf_count(const RoundState& state);
// Leaves after repeatedly pruning leaves that are no longer pending.
int support_leaf_count(const RoundState& state);
std::vector<NodeId> leaves(const RoundState& state);
// Minimum-position leaf of each node's active in-subtree (-1 if none).
std::vector<NodeId> branch_tags(const RoundState& state);

struct UpdateSchedule {
    Mode mode = Mode::SLF;
    std::vector<NodeSet> rounds;
};

// Throws InvalidSchedule unless rounds are nonempty and partition U.
void check_partition(const UpdateInstance& inst, const UpdateSchedule& sched);

NodeSet normalize(NodeSet s);
bool contains(const NodeSet& s, NodeId v);

}  // namespace lfu
