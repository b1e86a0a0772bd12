#pragma once

#include <optional>
#include <vector>

namespace lfu {

struct Digraph {
    std::vector<std::vector<int>> adj;

    Digraph() = default;
    explicit Digraph(int n) : adj(n) {}
    int size() const { return static_cast<int>(adj.size()); }
    void add_edge(int u, int v) { adj[u].push_back(v); }
    bool has_edge(int u, int v) const;
    int edge_count() const;
};

// Iterative three-colour DFS. Returns the node sequence of some directed cycle.
std::optional<std::vector<int>> find_cycle(const Digraph& g);

struct Lollipop {
    std::vector<int> stem;   // root ... node before the cycle entry (may be empty)
    std::vector<int> cycle;  // starts at the entry node
};

// A cycle reachable from root, with a shortest stem from root to it.
std::optional<Lollipop> find_reachable_cycle(const Digraph& g, int root);

std::vector<char> reachable_from(const Digraph& g, int root);

// Tarjan, iterative. Components numbered in reverse topological order.
std::vector<int> strongly_connected_components(const Digraph& g, int* count = nullptr);

// Nodes lying on some directed cycle (in a nontrivial SCC or with a self loop).
std::vector<char> on_some_cycle(const Digraph& g);

// Nodes from which some cycle can be reached.
std::vector<char> reaches_cycle(const Digraph& g);

}  // namespace lfu
