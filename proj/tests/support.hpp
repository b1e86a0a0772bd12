#pragma once

#include <algorithm>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "lfu/model.hpp"
#include "lfu/safety.hpp"
#include "lfu/schedulers.hpp"

namespace lfu::testing {

inline InstancePtr instance_from(const std::string& p1, const std::string& p2) {
    return std::make_shared<UpdateInstance>(parse_instance("pi1: " + p1 + "\npi2: " + p2 + "\n"));
}

// s, v1..v{inner}, d with a random middle order on pi2.
inline InstancePtr random_instance(std::mt19937_64& rng, int inner) {
    std::vector<std::string> p1{"s"};
    for (int i = 1; i <= inner; ++i) p1.push_back("v" + std::to_string(i));
    p1.push_back("d");
    std::vector<std::string> p2 = p1;
    std::shuffle(p2.begin() + 1, p2.end() - 1, rng);
    return std::make_shared<UpdateInstance>(make_instance(p1, p2));
}

inline NodeSet subset_of(const NodeSet& pool, unsigned long mask) {
    NodeSet out;
    for (size_t i = 0; i < pool.size(); ++i)
        if (mask >> i & 1) out.push_back(pool[i]);
    return out;
}

// Exhaustive optimum, ties to the lexicographically smallest set.
inline NodeSet brute_optimum(const RoundState& st, Mode mode) {
    NodeSet pending = st.pending();
    NodeSet best;
    bool have = false;
    for (unsigned long mask = 0; mask < (1UL << pending.size()); ++mask) {
        NodeSet s = subset_of(pending, mask);
        if (have && s.size() < best.size()) continue;
        if (!mode_safe(st, s, mode).safe) continue;
        if (!have || s.size() > best.size() || s < best) best = s;
        have = true;
    }
    return best;
}

// Random nonempty safe subset of the pending nodes, grown greedily in random order.
inline NodeSet random_safe_round(std::mt19937_64& rng, const RoundState& st, Mode mode, double keep = 0.5) {
    NodeSet pending = st.pending();
    std::shuffle(pending.begin(), pending.end(), rng);
    std::bernoulli_distribution coin(keep);
    NodeSet chosen;
    for (NodeId v : pending) {
        if (!chosen.empty() && !coin(rng)) continue;
        NodeSet trial = normalize([&] { auto t = chosen; t.push_back(v); return t; }());
        if (mode_safe(st, trial, mode).safe) chosen = trial;
    }
    return chosen;
}

// State after the first round and `extra` random safe rounds.
inline RoundState random_state(std::mt19937_64& rng, InstancePtr inst, Mode mode, int extra) {
    RoundState st = initial_state(inst);
    st = apply_round(st, first_round(st));
    for (int i = 0; i < extra && !st.pending().empty(); ++i) st = apply_round(st, random_safe_round(rng, st, mode));
    return st;
}

inline int horizontal_count(const RoundState& st, const NodeSet& S) {
    auto cls = classify_all(st);
    int c = 0;
    for (NodeId v : S)
        if (cls[v] == EdgeClass::Horizontal) ++c;
    return c;
}

}  // namespace lfu::testing
