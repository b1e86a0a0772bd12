// Branch and bound for the largest safe update set of one round.
#include <algorithm>
#include <chrono>
#include <deque>

#include "lfu/safety.hpp"
#include "lfu/schedulers.hpp"

namespace lfu {

namespace {

enum : char { kFixed = 0, kIn = 1, kOut = 2, kUndecided = 3 };

struct Timeout {};

class ExactSolver {
public:
    ExactSolver(const RoundState& state, Mode mode, const SolverLimits& limits)
        : st_(state), mode_(mode), n_(state.size()), s_(state.inst->s) {
        base_ = state.active_out;
        alt_ = state.inst->out2;
        status_.assign(n_, kFixed);
        for (NodeId v = 0; v < n_; ++v)
            if (state.is_pending(v)) {
                status_[v] = kUndecided;
                pending_.push_back(v);
            }
        deadline_ = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(limits.time_budget_seconds));
    }

    ExactResult run() {
        ExactResult res;
        root_reduce();
        NodeSet best = greedy_completion();
        bool exact_size = false;  // best was found by search(|best|)
        try {
            while (true) {
                NodeSet found;
                int target = static_cast<int>(best.size()) + 1;
                if (!search(target, found)) break;
                exact_size = static_cast<int>(found.size()) == target;
                best = found;
            }
            if (!exact_size) {
                NodeSet found;
                if (search(static_cast<int>(best.size()), found)) best = found;
            }
        } catch (const Timeout&) {
            res.optimal = false;
        }
        res.nodes = best;
        res.expansions = expansions_;
        return res;
    }

private:
    const RoundState& st_;
    Mode mode_;
    int n_;
    NodeId s_;
    std::vector<NodeId> base_, alt_;
    std::vector<char> status_;
    std::vector<NodeId> pending_;
    std::vector<NodeId> trail_;  // nodes whose status changed, for undo
    std::vector<char> trail_old_;
    long expansions_ = 0;
    std::chrono::steady_clock::time_point deadline_;

    // scratch
    std::vector<char> color_;
    std::vector<int> parent_, parent_edge_;
    std::vector<char> edge_next_;

    void set_status(NodeId v, char s) {
        trail_.push_back(v);
        trail_old_.push_back(status_[v]);
        status_[v] = s;
    }

    void undo_to(size_t mark) {
        while (trail_.size() > mark) {
            status_[trail_.back()] = trail_old_.back();
            trail_.pop_back();
            trail_old_.pop_back();
        }
    }

    void tick() {
        if ((++expansions_ & 255) == 0 && std::chrono::steady_clock::now() > deadline_) throw Timeout{};
    }

    // Successor k (0 = base, 1 = new edge) of v when nodes with on[v] use both rules.
    int succ(const std::vector<char>& on, int v, int k) const {
        if (k == 0) return base_[v];
        return on[v] ? alt_[v] : -1;
    }

    // Finds a cycle (SLF) or a cycle reachable from s (RLF) in the union graph of `on`.
    // Returns the undecided nodes whose new edge the structure uses; sets `found`.
    std::vector<NodeId> find_structure(const std::vector<char>& on, bool& found) {
        found = false;
        color_.assign(n_, 0);
        parent_.assign(n_, -1);
        parent_edge_.assign(n_, 0);
        edge_next_.assign(n_, 0);
        std::vector<int> stack;
        auto explore = [&](int root) -> std::pair<int, int> {
            stack.assign(1, root);
            color_[root] = 1;
            while (!stack.empty()) {
                int u = stack.back();
                if (edge_next_[u] < 2) {
                    int k = edge_next_[u]++;
                    int v = succ(on, u, k);
                    if (v < 0) continue;
                    if (color_[v] == 0) {
                        color_[v] = 1;
                        parent_[v] = u;
                        parent_edge_[v] = k;
                        stack.push_back(v);
                    } else if (color_[v] == 1) {
                        return {u, (v << 1) | k};
                    }
                } else {
                    color_[u] = 2;
                    stack.pop_back();
                }
            }
            return {-1, 0};
        };
        std::pair<int, int> hit{-1, 0};
        if (mode_ == Mode::SLF) {
            for (int r = 0; r < n_ && hit.first < 0; ++r)
                if (!color_[r]) hit = explore(r);
        } else {
            hit = explore(s_);
        }
        if (hit.first < 0) return {};
        found = true;
        int u = hit.first, v = hit.second >> 1, k = hit.second & 1;
        std::vector<NodeId> used;
        std::vector<char> cyc(n_, 0);
        if (k == 1 && status_[u] == kUndecided) used.push_back(u);
        cyc[u] = 1;
        for (int x = u; x != v; x = parent_[x]) {
            int p = parent_[x];
            cyc[p] = 1;
            if (parent_edge_[x] == 1 && status_[p] == kUndecided) used.push_back(p);
        }
        if (mode_ == Mode::RLF) {
            // shortest stem from s to the cycle, preferring free edges (0-1 BFS)
            std::vector<int> dist(n_, 1 << 29), from(n_, -1), from_k(n_, 0);
            std::deque<int> dq{s_};
            dist[s_] = 0;
            int entry = -1;
            while (!dq.empty()) {
                int x = dq.front();
                dq.pop_front();
                if (cyc[x]) {
                    entry = x;
                    break;
                }
                for (int kk = 0; kk < 2; ++kk) {
                    int y = succ(on, x, kk);
                    if (y < 0) continue;
                    int w = (kk == 1 && status_[x] == kUndecided) ? 1 : 0;
                    if (dist[x] + w < dist[y]) {
                        dist[y] = dist[x] + w;
                        from[y] = x;
                        from_k[y] = kk;
                        if (w) dq.push_back(y);
                        else dq.push_front(y);
                    }
                }
            }
            for (int x = entry; x >= 0 && from[x] >= 0; x = from[x])
                if (from_k[x] == 1 && status_[from[x]] == kUndecided) used.push_back(from[x]);
        }
        return used;
    }

    std::vector<char> mask(bool with_undecided) const {
        std::vector<char> on(n_, 0);
        for (NodeId v : pending_)
            if (status_[v] == kIn || (with_undecided && status_[v] == kUndecided)) on[v] = 1;
        return on;
    }

    bool safe_with(NodeId v) {
        auto on = mask(false);
        on[v] = 1;
        bool found;
        find_structure(on, found);
        return !found;
    }

    // Undecided nodes that no safe completion can be hurt by including.
    void include_free() {
        auto on = mask(true);
        Digraph g(n_);
        for (int v = 0; v < n_; ++v)
            for (int k = 0; k < 2; ++k) {
                int w = succ(on, v, k);
                if (w >= 0) g.add_edge(v, w);
            }
        if (mode_ == Mode::SLF) {
            auto comp = strongly_connected_components(g);
            for (NodeId v : pending_)
                if (status_[v] == kUndecided && comp[v] != comp[alt_[v]]) set_status(v, kIn);
        } else {
            auto reach = reachable_from(g, s_);
            auto rc = reaches_cycle(g);
            for (NodeId v : pending_)
                if (status_[v] == kUndecided && (!reach[v] || !rc[alt_[v]])) set_status(v, kIn);
        }
    }

    int lower_bound() {
        auto on = mask(true);
        int lb = 0;
        while (true) {
            bool found;
            auto used = find_structure(on, found);
            if (!found) break;
            if (used.empty()) return 1 << 29;  // chosen nodes alone are unsafe
            ++lb;
            for (NodeId v : used) on[v] = 0;
        }
        return lb;
    }

    void root_reduce() {
        auto cls = classify_all(st_);
        for (NodeId v : pending_)
            if (cls[v] == EdgeClass::Forward) set_status(v, kIn);
        for (NodeId v : pending_)
            if (status_[v] == kUndecided && !safe_with(v)) set_status(v, kOut);
        include_free();
        trail_.clear();
        trail_old_.clear();
    }

    NodeSet current_in() const {
        NodeSet out;
        for (NodeId v : pending_)
            if (status_[v] == kIn) out.push_back(v);
        return out;
    }

    NodeSet greedy_completion() {
        size_t mark = trail_.size();
        for (NodeId v : pending_)
            if (status_[v] == kUndecided) set_status(v, safe_with(v) ? kIn : kOut);
        NodeSet out = current_in();
        undo_to(mark);
        return out;
    }

    bool search(int target, NodeSet& found) {
        size_t mark = trail_.size();
        bool ok = dfs(target, found);
        undo_to(mark);
        return ok;
    }

    bool dfs(int target, NodeSet& found) {
        tick();
        int in = 0, undecided = 0;
        for (NodeId v : pending_) {
            if (status_[v] == kIn) ++in;
            else if (status_[v] == kUndecided) ++undecided;
        }
        if (in + undecided < target) return false;
        if (undecided == 0) {
            found = current_in();
            return true;
        }
        if (in + undecided - lower_bound() < target) return false;
        size_t mark = trail_.size();
        include_free();
        NodeId pick = -1;
        for (NodeId v : pending_)
            if (status_[v] == kUndecided) {
                if (!safe_with(v)) {
                    set_status(v, kOut);
                    continue;
                }
                pick = v;
                break;
            }
        if (pick < 0) {
            bool ok = dfs(target, found);
            undo_to(mark);
            return ok;
        }
        size_t mark2 = trail_.size();
        set_status(pick, kIn);
        if (dfs(target, found)) {
            undo_to(mark);
            return true;
        }
        undo_to(mark2);
        set_status(pick, kOut);
        bool ok = dfs(target, found);
        undo_to(mark);
        return ok;
    }
};

}  // namespace

ExactResult exact_max_round(const RoundState& state, Mode mode, const SolverLimits& limits) {
    int pending = static_cast<int>(state.pending().size());
    if (pending > limits.exact_node_cap)
        throw Error(ErrorCode::CapExceeded, "exact search limited to " + std::to_string(limits.exact_node_cap) +
                                                " pending nodes, got " + std::to_string(pending));
    ExactSolver solver(state, mode, limits);
    return solver.run();
}

}  // namespace lfu
