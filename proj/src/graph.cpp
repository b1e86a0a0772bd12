#include "lfu/graph.hpp"

#include <algorithm>
#include <deque>

namespace lfu {

bool Digraph::has_edge(int u, int v) const {
    return std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end();
}

int Digraph::edge_count() const {
    int m = 0;
    for (const auto& a : adj) m += static_cast<int>(a.size());
    return m;
}

namespace {

// DFS from the given roots; returns the first back-edge cycle found.
std::optional<std::vector<int>> dfs_cycle(const Digraph& g, const std::vector<int>& roots, std::vector<char>& color) {
    const int n = g.size();
    std::vector<int> parent(n, -1);
    std::vector<size_t> next(n, 0);
    for (int root : roots) {
        if (color[root]) continue;
        std::vector<int> stack{root};
        color[root] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            if (next[u] < g.adj[u].size()) {
                int v = g.adj[u][next[u]++];
                if (color[v] == 0) {
                    color[v] = 1;
                    parent[v] = u;
                    stack.push_back(v);
                } else if (color[v] == 1) {
                    std::vector<int> cyc;
                    for (int x = u; x != v; x = parent[x]) cyc.push_back(x);
                    cyc.push_back(v);
                    std::reverse(cyc.begin(), cyc.end());
                    return cyc;
                }
            } else {
                color[u] = 2;
                stack.pop_back();
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::vector<int>> find_cycle(const Digraph& g) {
    std::vector<char> color(g.size(), 0);
    std::vector<int> roots(g.size());
    for (int i = 0; i < g.size(); ++i) roots[i] = i;
    return dfs_cycle(g, roots, color);
}

std::vector<char> reachable_from(const Digraph& g, int root) {
    std::vector<char> seen(g.size(), 0);
    std::vector<int> stack{root};
    seen[root] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : g.adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                stack.push_back(v);
            }
    }
    return seen;
}

std::optional<Lollipop> find_reachable_cycle(const Digraph& g, int root) {
    std::vector<char> color(g.size(), 0);
    auto cyc = dfs_cycle(g, {root}, color);
    if (!cyc) return std::nullopt;
    // shortest stem by BFS from root to any cycle node
    const int n = g.size();
    std::vector<char> on_cycle(n, 0);
    for (int x : *cyc) on_cycle[x] = 1;
    std::vector<int> parent(n, -1);
    std::vector<char> seen(n, 0);
    std::deque<int> q{root};
    seen[root] = 1;
    int entry = -1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        if (on_cycle[u]) {
            entry = u;
            break;
        }
        for (int v : g.adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                parent[v] = u;
                q.push_back(v);
            }
    }
    Lollipop lp;
    for (int x = parent[entry]; x != -1; x = parent[x]) lp.stem.push_back(x);
    std::reverse(lp.stem.begin(), lp.stem.end());
    auto it = std::find(cyc->begin(), cyc->end(), entry);
    lp.cycle.assign(it, cyc->end());
    lp.cycle.insert(lp.cycle.end(), cyc->begin(), it);
    return lp;
}

std::vector<int> strongly_connected_components(const Digraph& g, int* count) {
    const int n = g.size();
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stack;
    std::vector<std::pair<int, size_t>> call;
    int counter = 0, ncomp = 0;
    for (int root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            auto& [u, i] = call.back();
            if (i < g.adj[u].size()) {
                int v = g.adj[u][i++];
                if (index[v] < 0) {
                    index[v] = low[v] = counter++;
                    stack.push_back(v);
                    on_stack[v] = 1;
                    call.push_back({v, 0});
                } else if (on_stack[v]) {
                    low[u] = std::min(low[u], index[v]);
                }
            } else {
                int done = u;
                if (low[done] == index[done]) {
                    int x;
                    do {
                        x = stack.back();
                        stack.pop_back();
                        on_stack[x] = 0;
                        comp[x] = ncomp;
                    } while (x != done);
                    ++ncomp;
                }
                call.pop_back();
                if (!call.empty()) {
                    int p = call.back().first;
                    low[p] = std::min(low[p], low[done]);
                }
            }
        }
    }
    if (count) *count = ncomp;
    return comp;
}

std::vector<char> on_some_cycle(const Digraph& g) {
    int nc = 0;
    auto comp = strongly_connected_components(g, &nc);
    std::vector<int> size(nc, 0);
    for (int c : comp) ++size[c];
    std::vector<char> out(g.size(), 0);
    for (int u = 0; u < g.size(); ++u) {
        if (size[comp[u]] > 1) out[u] = 1;
        for (int v : g.adj[u])
            if (v == u) out[u] = 1;
    }
    return out;
}

std::vector<char> reaches_cycle(const Digraph& g) {
    const int n = g.size();
    auto cyc = on_some_cycle(g);
    std::vector<std::vector<int>> radj(n);
    for (int u = 0; u < n; ++u)
        for (int v : g.adj[u]) radj[v].push_back(u);
    std::vector<char> out(n, 0);
    std::vector<int> stack;
    for (int u = 0; u < n; ++u)
        if (cyc[u]) {
            out[u] = 1;
            stack.push_back(u);
        }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : radj[v])
            if (!out[u]) {
                out[u] = 1;
                stack.push_back(u);
            }
    }
    return out;
}

}  // namespace lfu
