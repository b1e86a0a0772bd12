#pragma once

#include <string>
#include <vector>

#include "lfu/hitting_set.hpp"
#include "lfu/model.hpp"
#include "lfu/schedulers.hpp"

namespace lfu {

// SE set edge, AE anti-selector, WE relaxed-branch edge, CON connector,
// RET zigzag return, DLY delayer (temp node to its target), BR branching chain.
enum class EdgeKind { SE, AE, WE, CON, RET, DLY, BR };

const char* edge_kind_name(EdgeKind k);

struct GadgetEdge {
    EdgeKind kind;
    NodeId from = -1;
    NodeId to = -1;
    int tag = -1;  // AE: element index; SE: set index (0-based); else -1
};

struct Segment {
    std::string name;  // temp, out<i>, in<i>, relaxed
    NodeId start = 0;  // inclusive pi1 positions
    NodeId end = 0;
};

struct GadgetLayout {
    Mode mode = Mode::SLF;
    int m = 0;
    std::vector<std::string> elements;
    std::vector<Segment> segments;
    std::vector<GadgetEdge> edges;  // one per pi2 edge
    std::vector<NodeId> ae_tail;    // element index -> tail node of its AE

    // Registered edge leaving v, or nullptr.
    const GadgetEdge* edge_from(NodeId v) const;
};

struct Gadget {
    UpdateInstance instance;
    GadgetLayout layout;
};

Gadget generate_gadget(const HittingSetInstance& hs, Mode mode);

// Sidecar text: SEG/AE/SE/WE lines plus CON/RET/DLY/BR, positions 1-based on pi1.
std::string render_layout(const GadgetLayout& layout);
GadgetLayout parse_layout(const std::string& text, const UpdateInstance& inst);

struct CorrespondenceReport {
    int pending_round2 = 0;
    int support_leaves = 0;
    int min_hitting_set = 0;
    NodeSet optimum;
    std::vector<int> excluded_elements;  // element indices whose AE was left out
    long expansions = 0;
};

// Throws CorrespondenceViolation describing every mismatch.
CorrespondenceReport verify_correspondence(const HittingSetInstance& hs, const UpdateInstance& inst,
                                           const GadgetLayout& layout, const SolverLimits& limits);

}  // namespace lfu
