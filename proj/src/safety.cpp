#include "lfu/safety.hpp"

#include <algorithm>

namespace lfu {

Digraph union_graph(const RoundState& state, const NodeSet& S) {
    const int n = state.size();
    std::vector<char> in_s(n, 0);
    for (NodeId v : S) in_s[v] = 1;
    Digraph g(n);
    for (NodeId v = 0; v < n; ++v) {
        if (in_s[v]) {
            g.add_edge(v, state.inst->out1[v]);
            g.add_edge(v, state.inst->out2[v]);
        } else if (state.active_out[v] >= 0) {
            g.add_edge(v, state.active_out[v]);
        }
    }
    return g;
}

namespace {

NodeSet switched_on(const RoundState& state, const NodeSet& S, const std::vector<NodeId>& seq, bool closed) {
    NodeSet x;
    for (size_t i = 0; i < seq.size(); ++i) {
        NodeId v = seq[i];
        if (i + 1 == seq.size() && !closed) break;
        NodeId next = (i + 1 < seq.size()) ? seq[i + 1] : seq.front();
        if (contains(S, v) && state.inst->out2[v] == next) x.push_back(v);
    }
    return normalize(x);
}

}  // namespace

SafetyVerdict slf_safe(const RoundState& state, const NodeSet& S) {
    SafetyVerdict verdict;
    auto cyc = find_cycle(union_graph(state, S));
    if (!cyc) return verdict;
    verdict.safe = false;
    verdict.witness.loop = *cyc;
    verdict.witness.x = switched_on(state, S, *cyc, true);
    return verdict;
}

SafetyVerdict rlf_safe(const RoundState& state, const NodeSet& S) {
    SafetyVerdict verdict;
    auto lp = find_reachable_cycle(union_graph(state, S), state.inst->s);
    if (!lp) return verdict;
    verdict.safe = false;
    verdict.witness.loop = lp->cycle;
    verdict.witness.stem = lp->stem;
    NodeSet x = switched_on(state, S, lp->cycle, true);
    std::vector<NodeId> stem = lp->stem;
    stem.push_back(lp->cycle.front());
    NodeSet xs = switched_on(state, S, stem, false);
    x.insert(x.end(), xs.begin(), xs.end());
    verdict.witness.x = normalize(x);
    return verdict;
}

SafetyVerdict mode_safe(const RoundState& state, const NodeSet& S, Mode mode) {
    return mode == Mode::SLF ? slf_safe(state, S) : rlf_safe(state, S);
}

std::vector<NodeId> temporary_graph(const RoundState& state, const NodeSet& X) {
    std::vector<NodeId> out = state.active_out;
    for (NodeId v : X) out[v] = state.inst->out2[v];
    return out;
}

namespace {

// Cycle of a functional graph reached from `from`, or empty.
std::vector<NodeId> functional_loop(const std::vector<NodeId>& f, NodeId from, std::vector<int>& mark, int stamp) {
    NodeId cur = from;
    while (cur >= 0 && mark[cur] != stamp) {
        mark[cur] = stamp;
        cur = f[cur];
    }
    if (cur < 0) return {};
    std::vector<NodeId> loop{cur};
    for (NodeId x = f[cur]; x != cur; x = f[x]) loop.push_back(x);
    return loop;
}

std::vector<NodeId> any_functional_loop(const std::vector<NodeId>& f) {
    const int n = static_cast<int>(f.size());
    std::vector<char> color(n, 0);
    for (NodeId v = 0; v < n; ++v) {
        if (color[v]) continue;
        std::vector<NodeId> path;
        NodeId cur = v;
        while (cur >= 0 && color[cur] == 0) {
            color[cur] = 1;
            path.push_back(cur);
            cur = f[cur];
        }
        if (cur >= 0 && color[cur] == 1) {
            std::vector<NodeId> loop{cur};
            for (NodeId x = f[cur]; x != cur; x = f[x]) loop.push_back(x);
            return loop;
        }
        for (NodeId x : path) color[x] = 2;
    }
    return {};
}

}  // namespace

SafetyVerdict oracle_safe(const RoundState& state, const NodeSet& S, Mode mode, int cap) {
    const int k = static_cast<int>(S.size());
    if (k > cap) throw Error(ErrorCode::CapExceeded, "oracle limited to " + std::to_string(cap) + " nodes, got " + std::to_string(k));
    SafetyVerdict verdict;
    std::vector<int> mark(state.size(), -1);
    int stamp = 0;
    for (int size = 0; size <= k; ++size) {
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            NodeSet x;
            for (int i : idx) x.push_back(S[i]);
            ++verdict.subsets_checked;
            auto f = temporary_graph(state, x);
            std::vector<NodeId> loop;
            if (mode == Mode::SLF) loop = any_functional_loop(f);
            else loop = functional_loop(f, state.inst->s, mark, stamp++);
            if (!loop.empty()) {
                verdict.safe = false;
                verdict.witness.x = x;
                verdict.witness.loop = loop;
                if (mode == Mode::RLF) {
                    std::vector<char> on(state.size(), 0);
                    for (NodeId v : loop) on[v] = 1;
                    for (NodeId cur = state.inst->s; !on[cur]; cur = f[cur]) verdict.witness.stem.push_back(cur);
                }
                return verdict;
            }
            int i = size - 1;
            while (i >= 0 && idx[i] == k - size + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return verdict;
}

bool replay_witness(const RoundState& state, const Witness& w, Mode mode) {
    if (w.loop.empty()) return false;
    auto f = temporary_graph(state, w.x);
    for (size_t i = 0; i < w.loop.size(); ++i) {
        NodeId next = w.loop[(i + 1) % w.loop.size()];
        if (f[w.loop[i]] != next) return false;
    }
    if (mode == Mode::RLF) {
        std::vector<char> on(state.size(), 0);
        for (NodeId v : w.loop) on[v] = 1;
        int steps = 0;
        for (NodeId cur = state.inst->s; cur >= 0 && steps <= state.size(); cur = f[cur], ++steps)
            if (on[cur]) return true;
        return false;
    }
    return true;
}

}  // namespace lfu
