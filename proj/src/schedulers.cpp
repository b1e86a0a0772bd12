#include "lfu/schedulers.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "lfu/safety.hpp"

namespace lfu {

const char* solver_name(Solver s) {
    switch (s) {
        case Solver::Exact: return "exact";
        case Solver::TwoLeaf: return "two-leaf";
        case Solver::Majority: return "majority";
        case Solver::HittingSet: return "hitting-set";
        case Solver::Auto: return "auto";
    }
    return "?";
}

Solver parse_solver(const std::string& text) {
    if (text == "exact") return Solver::Exact;
    if (text == "two-leaf") return Solver::TwoLeaf;
    if (text == "majority") return Solver::Majority;
    if (text == "hitting-set") return Solver::HittingSet;
    if (text == "auto") return Solver::Auto;
    throw Error(ErrorCode::InvalidArgument, "unknown solver '" + text + "'");
}

NodeSet first_round(const RoundState& state) {
    if (state.round_index != 1 || !state.updated_set().empty())
        throw Error(ErrorCode::NotInitialState, "first_round needs the initial two-path state");
    NodeSet out;
    for (NodeId v : state.pending())
        if (state.inst->out2[v] > v) out.push_back(v);
    return out;
}

namespace {

// Ancestor queries on an in-forest given by parent pointers (root has -1).
struct Ancestry {
    std::vector<int> tin, tout;

    explicit Ancestry(const std::vector<int>& parent) {
        const int n = static_cast<int>(parent.size());
        std::vector<std::vector<int>> children(n);
        for (int v = 0; v < n; ++v)
            if (parent[v] >= 0) children[parent[v]].push_back(v);
        tin.assign(n, -1);
        tout.assign(n, -1);
        int clock = 0;
        for (int r = 0; r < n; ++r) {
            if (parent[r] >= 0) continue;
            std::vector<std::pair<int, size_t>> stack{{r, 0}};
            tin[r] = clock++;
            while (!stack.empty()) {
                auto& [u, i] = stack.back();
                if (i < children[u].size()) {
                    int c = children[u][i++];
                    tin[c] = clock++;
                    stack.push_back({c, 0});
                } else {
                    tout[u] = clock++;
                    stack.pop_back();
                }
            }
        }
    }

    // a lies on the walk from x toward the root (a == x allowed)
    bool on_walk(int a, int x) const { return tin[a] <= tin[x] && tout[x] <= tout[a]; }
};

struct CoreResult {
    ConflictGraph graph;
    std::vector<char> keep;
};

// Crossing graph of candidate edges over a forest, then maximum matching and
// Koenig's theorem give a minimum vertex cover; everything else is kept.
CoreResult crossing_core(const std::vector<int>& parent, const std::vector<std::pair<int, int>>& edges) {
    Ancestry anc(parent);
    const int h = static_cast<int>(edges.size());
    CoreResult res;
    std::vector<std::vector<int>> adj(h);
    for (int i = 0; i < h; ++i) res.graph.vertices.push_back(edges[i].first);
    for (int i = 0; i < h; ++i)
        for (int j = i + 1; j < h; ++j) {
            auto [a, b] = edges[i];
            auto [c, e] = edges[j];
            if (anc.on_walk(c, b) && anc.on_walk(a, e)) {
                res.graph.conflicts.push_back({i, j});
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
        }
    std::vector<int> side(h, -1);
    for (int r = 0; r < h; ++r) {
        if (side[r] >= 0) continue;
        side[r] = 0;
        std::vector<int> stack{r};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[u]) {
                if (side[v] < 0) {
                    side[v] = 1 - side[u];
                    stack.push_back(v);
                } else if (side[v] == side[u]) {
                    throw Error(ErrorCode::Internal, "crossing graph is not bipartite");
                }
            }
        }
    }
    res.graph.side = side;
    // Kuhn's augmenting paths from side-0 vertices.
    std::vector<int> match(h, -1);
    for (int u = 0; u < h; ++u) {
        if (side[u] != 0) continue;
        std::vector<char> seen(h, 0);
        std::vector<std::pair<int, size_t>> stack{{u, 0}};
        std::vector<int> via;
        bool augmented = false;
        while (!stack.empty() && !augmented) {
            auto& [x, i] = stack.back();
            if (i >= adj[x].size()) {
                stack.pop_back();
                if (!via.empty()) via.pop_back();
                continue;
            }
            int y = adj[x][i++];
            if (seen[y]) continue;
            seen[y] = 1;
            if (match[y] < 0) {
                via.push_back(y);
                augmented = true;
                break;
            }
            via.push_back(y);
            stack.push_back({match[y], 0});
        }
        if (augmented) {
            // stack holds left vertices, via holds the right vertex chosen at each level
            for (size_t k = 0; k < via.size(); ++k) {
                int x = stack[k].first, y = via[k];
                match[y] = x;
                match[x] = y;
            }
        }
    }
    // Koenig: Z = vertices reachable from unmatched left vertices by alternating paths.
    std::vector<char> z(h, 0);
    std::vector<int> stack;
    for (int u = 0; u < h; ++u)
        if (side[u] == 0 && match[u] < 0) {
            z[u] = 1;
            stack.push_back(u);
        }
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : adj[x]) {
            if (z[y] || match[x] == y) continue;
            z[y] = 1;
            int x2 = match[y];
            if (x2 >= 0 && !z[x2]) {
                z[x2] = 1;
                stack.push_back(x2);
            }
        }
    }
    res.keep.assign(h, 1);
    for (int v = 0; v < h; ++v) {
        bool cover = (side[v] == 0 && !z[v]) || (side[v] == 1 && z[v]);
        if (cover) res.keep[v] = 0;
    }
    return res;
}

void require_two_leaf_forest(const RoundState& state) {
    if (!active_is_acyclic(state)) throw Error(ErrorCode::NotAForest, "active graph contains a cycle");
    int leaves = leaf_count(state);
    if (leaves > 2) throw Error(ErrorCode::TooManyLeaves, "state has " + std::to_string(leaves) + " leaves");
}

std::vector<char> guard_pass(const RoundState& state, Mode mode, const std::vector<NodeId>& order, NodeSet& chosen) {
    std::vector<char> added(state.size(), 0);
    for (NodeId v : order) {
        if (contains(chosen, v)) continue;
        NodeSet trial = chosen;
        trial.insert(std::upper_bound(trial.begin(), trial.end(), v), v);
        if (mode_safe(state, trial, mode).safe) {
            chosen = std::move(trial);
            added[v] = 1;
        }
    }
    return added;
}

}  // namespace

ConflictGraph crossing_conflicts(const RoundState& state) {
    require_two_leaf_forest(state);
    auto cls = classify_all(state);
    std::vector<std::pair<int, int>> edges;
    for (NodeId v : state.pending())
        if (cls[v] == EdgeClass::Horizontal) edges.push_back({v, state.inst->out2[v]});
    auto core = crossing_core(state.active_out, edges);
    return core.graph;
}

NodeSet two_leaf_slf(const RoundState& state) {
    require_two_leaf_forest(state);
    auto cls = classify_all(state);
    NodeSet out;
    std::vector<std::pair<int, int>> edges;
    for (NodeId v : state.pending()) {
        if (cls[v] == EdgeClass::Forward) out.push_back(v);
        else if (cls[v] == EdgeClass::Horizontal) edges.push_back({v, state.inst->out2[v]});
    }
    auto core = crossing_core(state.active_out, edges);
    for (size_t i = 0; i < edges.size(); ++i)
        if (core.keep[i]) out.push_back(edges[i].first);
    return normalize(out);
}

NodeSet two_leaf_rlf(const RoundState& state) {
    require_two_leaf_forest(state);
    const int n = state.size();
    const NodeId s = state.inst->s;
    auto cls = classify_all(state);
    std::vector<char> on_s(n, 0);
    for (NodeId v : active_walk(state, s).nodes) on_s[v] = 1;
    NodeSet out;
    std::vector<std::pair<int, int>> edges;
    std::vector<NodeId> virtual_tail;
    for (NodeId v : state.pending()) {
        NodeId w = state.inst->out2[v];
        if (cls[v] == EdgeClass::Forward) out.push_back(v);
        else if (cls[v] == EdgeClass::Horizontal) edges.push_back({v, w});
        else if (!on_s[w] && !on_s[v]) virtual_tail.push_back(v);  // backward edge inside the other branch
    }
    // Virtual heads hang below s, so every node of the s-branch lies on their walk.
    std::vector<int> parent = state.active_out;
    const int k = static_cast<int>(virtual_tail.size());
    parent.resize(n + k);
    for (int i = 0; i < k; ++i) parent[n + i] = (i + 1 < k) ? n + i + 1 : s;
    const size_t real = edges.size();
    for (int i = 0; i < k; ++i) edges.push_back({virtual_tail[i], n + i});
    auto core = crossing_core(parent, edges);
    for (size_t i = 0; i < edges.size(); ++i)
        if (core.keep[i]) out.push_back(i < real ? edges[i].first : virtual_tail[i - real]);
    return normalize(out);
}

NodeSet majority_approx(const RoundState& state, Mode mode) {
    const int n = state.size();
    auto cls = classify_all(state);
    auto tag = branch_tags(state);
    auto key = [&](NodeId v) { return tag[v] >= 0 ? tag[v] : n + v; };
    NodeSet pending = state.pending();
    std::vector<char> offwalk(n, 0);
    if (mode == Mode::RLF) {
        auto reach = reachable_from(union_graph(state, pending), state.inst->s);
        for (NodeId v : pending)
            if (!reach[v]) offwalk[v] = 1;
    }
    std::vector<NodeId> forward, lr, rl, rest;
    for (NodeId v : pending) {
        if (offwalk[v]) rest.push_back(v);
        else if (cls[v] == EdgeClass::Forward) forward.push_back(v);
        else if (cls[v] == EdgeClass::Horizontal)
            (key(v) < key(state.inst->out2[v]) ? lr : rl).push_back(v);
    }
    const auto& major = lr.size() >= rl.size() ? lr : rl;
    NodeSet chosen;
    guard_pass(state, mode, forward, chosen);
    guard_pass(state, mode, major, chosen);
    guard_pass(state, mode, rest, chosen);
    return chosen;
}

std::vector<std::vector<int>> enumerate_simple_cycles(const Digraph& g, long cap) {
    const int n = g.size();
    std::vector<std::vector<int>> cycles;
    std::vector<char> blocked(n, 0);
    std::vector<std::vector<int>> bset(n);
    for (int start = 0; start < n; ++start) {
        // strongly connected component of `start` within nodes >= start
        Digraph sub(n);
        for (int u = start; u < n; ++u)
            for (int v : g.adj[u])
                if (v >= start) sub.add_edge(u, v);
        auto comp = strongly_connected_components(sub);
        std::vector<char> in(n, 0);
        int members = 0;
        for (int u = start; u < n; ++u)
            if (comp[u] == comp[start]) {
                in[u] = 1;
                ++members;
            }
        if (members == 1 && !g.has_edge(start, start)) continue;
        for (int u = start; u < n; ++u) {
            blocked[u] = 0;
            bset[u].clear();
        }
        auto unblock = [&](int u) {
            std::vector<int> work{u};
            while (!work.empty()) {
                int x = work.back();
                work.pop_back();
                if (!blocked[x]) continue;
                blocked[x] = 0;
                for (int y : bset[x]) work.push_back(y);
                bset[x].clear();
            }
        };
        struct Frame {
            int v;
            size_t i;
            bool found;
        };
        std::vector<Frame> stack{{start, 0, false}};
        std::vector<int> path{start};
        blocked[start] = 1;
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& out = g.adj[f.v];
            if (f.i < out.size()) {
                int w = out[f.i++];
                if (!in[w]) continue;
                if (w == start) {
                    cycles.push_back(path);
                    if (static_cast<long>(cycles.size()) > cap)
                        throw Error(ErrorCode::CapExceeded, "more than " + std::to_string(cap) + " simple cycles");
                    f.found = true;
                } else if (!blocked[w]) {
                    blocked[w] = 1;
                    path.push_back(w);
                    stack.push_back({w, 0, false});
                }
                continue;
            }
            int v = f.v;
            bool found = f.found;
            if (found) {
                unblock(v);
            } else {
                for (int w : out)
                    if (in[w] && std::find(bset[w].begin(), bset[w].end(), v) == bset[w].end()) bset[w].push_back(v);
            }
            stack.pop_back();
            path.pop_back();
            if (!stack.empty() && found) stack.back().found = true;
        }
    }
    return cycles;
}

Digraph forward_horizontal_graph(const RoundState& state) {
    auto cls = classify_all(state);
    NodeSet fh;
    for (NodeId v : state.pending())
        if (cls[v] != EdgeClass::Backward) fh.push_back(v);
    return union_graph(state, fh);
}

std::vector<HCycle> horizontal_cycles(const RoundState& state, const Digraph& g, long cap) {
    auto cls = classify_all(state);
    std::vector<HCycle> out;
    for (auto& cyc : enumerate_simple_cycles(g, cap)) {
        HCycle hc;
        for (size_t i = 0; i < cyc.size(); ++i) {
            NodeId v = cyc[i], next = cyc[(i + 1) % cyc.size()];
            if (state.is_pending(v) && cls[v] == EdgeClass::Horizontal && state.inst->out2[v] == next)
                hc.h_edges.push_back(v);
        }
        hc.h_edges = normalize(hc.h_edges);
        hc.nodes = std::move(cyc);
        out.push_back(std::move(hc));
    }
    return out;
}

NodeSet cycle_hitting_approx(const RoundState& state, Mode mode, const SolverLimits& limits, HittingApproxInfo* info) {
    const int n = state.size();
    auto cls = classify_all(state);
    NodeSet pending = state.pending();
    std::vector<char> offwalk(n, 0);
    if (mode == Mode::RLF) {
        auto reach = reachable_from(union_graph(state, pending), state.inst->s);
        for (NodeId v : pending)
            if (!reach[v]) offwalk[v] = 1;
    }
    NodeSet forward, horizontal, rest;
    for (NodeId v : pending) {
        if (offwalk[v]) rest.push_back(v);
        else if (cls[v] == EdgeClass::Forward) forward.push_back(v);
        else if (cls[v] == EdgeClass::Horizontal) horizontal.push_back(v);
    }
    // Forward edges only shortcut active paths, so cycles over H and active
    // edges carry the same minimal H-sets as cycles of the F+H union graph.
    NodeSet with_h = horizontal;
    with_h.insert(with_h.end(), rest.begin(), rest.end());
    Digraph g = union_graph(state, normalize(with_h));
    if (mode == Mode::RLF) {
        auto reach = reachable_from(g, state.inst->s);
        for (int u = 0; u < n; ++u)
            if (!reach[u]) g.adj[u].clear();
    }
    auto cycles = horizontal_cycles(state, g, limits.cycle_cap);
    std::vector<int> pos(n, -1);
    for (size_t i = 0; i < horizontal.size(); ++i) pos[horizontal[i]] = static_cast<int>(i);
    HittingSetInstance hs;
    for (NodeId v : horizontal) hs.elements.push_back(state.inst->name(v));
    std::set<std::vector<int>> seen;
    for (const auto& c : cycles) {
        std::vector<int> s;
        for (NodeId v : c.h_edges)
            if (pos[v] >= 0) s.push_back(pos[v]);
        if (s.empty()) throw Error(ErrorCode::Internal, "cycle without horizontal edges");
        std::sort(s.begin(), s.end());
        if (seen.insert(s).second) hs.sets.push_back(s);
    }
    HittingSetResult hit;
    try {
        hit = solve_hitting_set(hs, HsMode::Exact);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::CapExceeded) throw;
        hit = solve_hitting_set(hs, HsMode::Greedy);
    }
    std::vector<char> dropped(horizontal.size(), 0);
    for (int e : hit.elements) dropped[e] = 1;
    std::vector<NodeId> keep_h;
    for (size_t i = 0; i < horizontal.size(); ++i)
        if (!dropped[i]) keep_h.push_back(horizontal[i]);
    NodeSet chosen;
    guard_pass(state, mode, forward, chosen);
    guard_pass(state, mode, keep_h, chosen);
    guard_pass(state, mode, rest, chosen);
    if (info) {
        info->cycles = static_cast<int>(hs.sets.size());
        info->hit = static_cast<int>(hit.elements.size());
        info->exact_subsolver = hit.exact;
    }
    return chosen;
}

NodeId fallback_single(const RoundState& state, Mode mode) {
    NodeId best = -1;
    for (NodeId v : state.pending())
        if (best < 0 || state.inst->pos2[v] > state.inst->pos2[best]) best = v;
    if (best < 0) throw Error(ErrorCode::NoSafeNode, "no pending node");
    if (!mode_safe(state, {best}, mode).safe)
        throw Error(ErrorCode::NoSafeNode, "node '" + state.inst->name(best) + "' is unexpectedly unsafe");
    return best;
}

NodeSet solve_round(const RoundState& state, Mode mode, Solver solver, const SolverLimits& limits) {
    switch (solver) {
        case Solver::Exact: return exact_max_round(state, mode, limits).nodes;
        case Solver::TwoLeaf: return mode == Mode::SLF ? two_leaf_slf(state) : two_leaf_rlf(state);
        case Solver::Majority: return majority_approx(state, mode);
        case Solver::HittingSet: return cycle_hitting_approx(state, mode, limits);
        case Solver::Auto: break;
    }
    if (static_cast<int>(state.pending().size()) <= limits.exact_node_cap)
        return exact_max_round(state, mode, limits).nodes;
    if (active_is_acyclic(state) && leaf_count(state) <= 2)
        return mode == Mode::SLF ? two_leaf_slf(state) : two_leaf_rlf(state);
    try {
        return cycle_hitting_approx(state, mode, limits);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::CapExceeded) throw;
    }
    return majority_approx(state, mode);
}

UpdateSchedule full_schedule(InstancePtr inst, Mode mode, Solver solver, const SolverLimits& limits) {
    UpdateSchedule sched;
    sched.mode = mode;
    RoundState state = initial_state(inst);
    while (!state.pending().empty()) {
        NodeSet round = state.round_index == 1 ? first_round(state) : solve_round(state, mode, solver, limits);
        if (round.empty()) round = {fallback_single(state, mode)};
        auto verdict = mode_safe(state, round, mode);
        if (!verdict.safe)
            throw Error(ErrorCode::UnsafeRound, "round " + std::to_string(state.round_index) + " failed verification");
        sched.rounds.push_back(round);
        state = apply_round(state, round);
    }
    return sched;
}

}  // namespace lfu
