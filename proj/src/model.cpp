#include "lfu/model.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lfu {

const char* mode_name(Mode mode) { return mode == Mode::SLF ? "slf" : "rlf"; }

Mode parse_mode(const std::string& text) {
    std::string t;
    for (char c : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (t == "slf") return Mode::SLF;
    if (t == "rlf") return Mode::RLF;
    throw Error(ErrorCode::InvalidArgument, "unknown mode '" + text + "'");
}

const char* edge_class_letter(EdgeClass c) {
    switch (c) {
        case EdgeClass::Forward: return "F";
        case EdgeClass::Backward: return "B";
        case EdgeClass::Horizontal: return "H";
    }
    return "?";
}

NodeId UpdateInstance::lookup(const std::string& token) const {
    auto it = index.find(token);
    if (it == index.end()) throw Error(ErrorCode::UnknownNode, "unknown node '" + token + "'");
    return it->second;
}

namespace {

bool valid_token(const std::string& t) {
    if (t.empty()) return false;
    for (char c : t) {
        bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
        if (!ok) return false;
    }
    return true;
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

UpdateInstance make_instance(const std::vector<std::string>& p1, const std::vector<std::string>& p2) {
    if (p1.size() < 2 || p2.size() < 2)
        throw Error(ErrorCode::SyntaxError, "a path needs at least two nodes");
    UpdateInstance inst;
    inst.ell = static_cast<int>(p1.size());
    for (size_t i = 0; i < p1.size(); ++i) {
        if (!valid_token(p1[i])) throw Error(ErrorCode::SyntaxError, "bad token '" + p1[i] + "'");
        if (!inst.index.emplace(p1[i], static_cast<NodeId>(i)).second)
            throw Error(ErrorCode::NonSimplePath, "pi1 repeats node '" + p1[i] + "'");
        inst.names.push_back(p1[i]);
        inst.pi1.push_back(static_cast<NodeId>(i));
    }
    std::vector<char> seen(p1.size(), 0);
    for (const auto& tok : p2) {
        if (!valid_token(tok)) throw Error(ErrorCode::SyntaxError, "bad token '" + tok + "'");
        auto it = inst.index.find(tok);
        if (it == inst.index.end())
            throw Error(ErrorCode::NodeSetMismatch, "pi2 node '" + tok + "' is not on pi1");
        if (seen[it->second]) throw Error(ErrorCode::NonSimplePath, "pi2 repeats node '" + tok + "'");
        seen[it->second] = 1;
        inst.pi2.push_back(it->second);
    }
    if (p2.size() != p1.size()) throw Error(ErrorCode::NodeSetMismatch, "pi1 and pi2 have different node sets");
    inst.s = 0;
    inst.d = inst.ell - 1;
    if (inst.pi2.front() != inst.s || inst.pi2.back() != inst.d)
        throw Error(ErrorCode::EndpointMismatch, "pi1 and pi2 must share first and last node");
    inst.out1.assign(inst.ell, -1);
    inst.out2.assign(inst.ell, -1);
    inst.pos2.assign(inst.ell, 0);
    for (int i = 0; i + 1 < inst.ell; ++i) inst.out1[i] = i + 1;
    for (int i = 0; i < inst.ell; ++i) {
        inst.pos2[inst.pi2[i]] = i;
        if (i + 1 < inst.ell) inst.out2[inst.pi2[i]] = inst.pi2[i + 1];
    }
    return inst;
}

UpdateInstance parse_instance(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::optional<std::vector<std::string>> p1, p2;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto colon = t.find(':');
        if (colon == std::string::npos)
            throw Error(ErrorCode::SyntaxError, "line " + std::to_string(lineno) + ": expected 'pi1:' or 'pi2:'");
        std::string key = trim(t.substr(0, colon));
        std::istringstream toks(t.substr(colon + 1));
        std::vector<std::string> nodes;
        for (std::string tok; toks >> tok;) {
            if (!valid_token(tok))
                throw Error(ErrorCode::SyntaxError, "line " + std::to_string(lineno) + ": bad token '" + tok + "'");
            nodes.push_back(tok);
        }
        auto* slot = key == "pi1" ? &p1 : key == "pi2" ? &p2 : nullptr;
        if (!slot) throw Error(ErrorCode::SyntaxError, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (slot->has_value())
            throw Error(ErrorCode::SyntaxError, "line " + std::to_string(lineno) + ": duplicate '" + key + "' line");
        *slot = std::move(nodes);
    }
    if (!p1 || !p2) throw Error(ErrorCode::SyntaxError, "line " + std::to_string(lineno) + ": missing pi1 or pi2 line");
    return make_instance(*p1, *p2);
}

std::string render_instance(const UpdateInstance& inst) {
    std::string out = "pi1:";
    for (NodeId v : inst.pi1) out += " " + inst.names[v];
    out += "\npi2:";
    for (NodeId v : inst.pi2) out += " " + inst.names[v];
    out += "\n";
    return out;
}

NodeSet interesting_nodes(const UpdateInstance& inst) {
    NodeSet u;
    for (NodeId v = 0; v < inst.ell; ++v)
        if (inst.interesting(v)) u.push_back(v);
    return u;
}

NodeSet RoundState::pending() const {
    NodeSet p;
    for (NodeId v = 0; v < size(); ++v)
        if (is_pending(v)) p.push_back(v);
    return p;
}

NodeSet RoundState::updated_set() const {
    NodeSet p;
    for (NodeId v = 0; v < size(); ++v)
        if (inst->interesting(v) && updated[v]) p.push_back(v);
    return p;
}

RoundState initial_state(InstancePtr inst) {
    RoundState st;
    st.updated.assign(inst->size(), 0);
    st.active_out = inst->out1;
    st.round_index = 1;
    st.inst = std::move(inst);
    return st;
}

RoundState apply_round(const RoundState& state, const NodeSet& S) {
    RoundState next = state;
    for (NodeId v : S) {
        if (v < 0 || v >= state.size() || !state.is_pending(v))
            throw Error(ErrorCode::NotPending, "node '" + (v >= 0 && v < state.size() ? state.inst->name(v) : std::to_string(v)) +
                                                   "' is not pending");
        next.updated[v] = 1;
        next.active_out[v] = state.inst->out2[v];
    }
    next.round_index = state.round_index + 1;
    return next;
}

RoundState state_before_round(InstancePtr inst, const std::vector<NodeSet>& rounds, int round) {
    RoundState st = initial_state(std::move(inst));
    for (int i = 0; i + 1 < round && i < static_cast<int>(rounds.size()); ++i) st = apply_round(st, rounds[i]);
    return st;
}

Walk active_walk(const RoundState& state, NodeId v) {
    Walk w;
    std::vector<char> seen(state.size(), 0);
    NodeId cur = v;
    while (cur >= 0) {
        if (seen[cur]) {
            w.looped = true;
            w.loop_at = cur;
            break;
        }
        seen[cur] = 1;
        w.nodes.push_back(cur);
        cur = state.active_out[cur];
    }
    return w;
}

bool walk_contains(const RoundState& state, NodeId from, NodeId target) {
    int steps = 0;
    for (NodeId cur = from; cur >= 0 && steps <= state.size(); cur = state.active_out[cur], ++steps)
        if (cur == target) return true;
    return false;
}

EdgeClass classify_edge(const RoundState& state, NodeId v) {
    NodeId w = state.inst->out2[v];
    if (walk_contains(state, v, w)) return EdgeClass::Forward;
    if (walk_contains(state, w, v)) return EdgeClass::Backward;
    return EdgeClass::Horizontal;
}

std::vector<EdgeClass> classify_all(const RoundState& state) {
    const int n = state.size();
    std::vector<EdgeClass> cls(n, EdgeClass::Horizontal);
    if (active_is_acyclic(state)) {
        // depth toward d lets us test ancestry by walking the deeper node up
        std::vector<int> depth(n, -1);
        for (NodeId v = 0; v < n; ++v) {
            std::vector<NodeId> stack;
            NodeId cur = v;
            while (cur >= 0 && depth[cur] < 0) {
                stack.push_back(cur);
                cur = state.active_out[cur];
            }
            int base = cur >= 0 ? depth[cur] : -1;
            while (!stack.empty()) {
                depth[stack.back()] = ++base;
                stack.pop_back();
            }
        }
        auto is_ancestor = [&](NodeId anc, NodeId x) {
            while (x >= 0 && depth[x] > depth[anc]) x = state.active_out[x];
            return x == anc;
        };
        for (NodeId v = 0; v < n; ++v) {
            if (!state.is_pending(v)) continue;
            NodeId w = state.inst->out2[v];
            if (is_ancestor(w, v)) cls[v] = EdgeClass::Forward;
            else if (is_ancestor(v, w)) cls[v] = EdgeClass::Backward;
            else cls[v] = EdgeClass::Horizontal;
        }
        return cls;
    }
    for (NodeId v = 0; v < n; ++v)
        if (state.is_pending(v)) cls[v] = classify_edge(state, v);
    return cls;
}

bool active_is_acyclic(const RoundState& state) {
    const int n = state.size();
    std::vector<char> color(n, 0);  // 0 new, 1 on current walk, 2 done
    for (NodeId v = 0; v < n; ++v) {
        if (color[v]) continue;
        std::vector<NodeId> path;
        NodeId cur = v;
        while (cur >= 0 && color[cur] == 0) {
            color[cur] = 1;
            path.push_back(cur);
            cur = state.active_out[cur];
        }
        if (cur >= 0 && color[cur] == 1) return false;
        for (NodeId x : path) color[x] = 2;
    }
    return true;
}

std::vector<NodeId> leaves(const RoundState& state) {
    if (!active_is_acyclic(state)) throw Error(ErrorCode::NotAForest, "active graph contains a cycle");
    std::vector<int> indeg(state.size(), 0);
    for (NodeId v = 0; v < state.size(); ++v)
        if (state.active_out[v] >= 0) ++indeg[state.active_out[v]];
    std::vector<NodeId> out;
    for (NodeId v = 0; v < state.size(); ++v)
        if (indeg[v] == 0) out.push_back(v);
    return out;
}

int leaf_count(const RoundState& state) { return static_cast<int>(leaves(state).size()); }

int support_leaf_count(const RoundState& state) {
    if (!active_is_acyclic(state)) throw Error(ErrorCode::NotAForest, "active graph contains a cycle");
    const int n = state.size();
    std::vector<int> indeg(n, 0);
    for (NodeId v = 0; v < n; ++v)
        if (state.active_out[v] >= 0) ++indeg[state.active_out[v]];
    std::vector<char> removed(n, 0);
    std::vector<NodeId> work;
    for (NodeId v = 0; v < n; ++v)
        if (indeg[v] == 0 && !state.is_pending(v)) work.push_back(v);
    while (!work.empty()) {
        NodeId v = work.back();
        work.pop_back();
        removed[v] = 1;
        NodeId w = state.active_out[v];
        if (w >= 0 && --indeg[w] == 0 && !state.is_pending(w)) work.push_back(w);
    }
    int count = 0;
    for (NodeId v = 0; v < n; ++v)
        if (!removed[v] && indeg[v] == 0) ++count;
    return count;
}

std::vector<NodeId> branch_tags(const RoundState& state) {
    const int n = state.size();
    std::vector<int> indeg(n, 0);
    for (NodeId v = 0; v < n; ++v)
        if (state.active_out[v] >= 0) ++indeg[state.active_out[v]];
    std::vector<NodeId> tag(n, -1);
    for (NodeId leaf = 0; leaf < n; ++leaf) {
        if (indeg[leaf] != 0) continue;
        for (NodeId cur = leaf; cur >= 0 && tag[cur] < 0; cur = state.active_out[cur]) tag[cur] = leaf;
    }
    return tag;
}

void check_partition(const UpdateInstance& inst, const UpdateSchedule& sched) {
    std::vector<int> count(inst.size(), 0);
    for (size_t r = 0; r < sched.rounds.size(); ++r) {
        if (sched.rounds[r].empty())
            throw Error(ErrorCode::InvalidSchedule, "round " + std::to_string(r + 1) + " is empty");
        for (NodeId v : sched.rounds[r]) {
            if (v < 0 || v >= inst.size()) throw Error(ErrorCode::InvalidSchedule, "node out of range");
            if (!inst.interesting(v))
                throw Error(ErrorCode::InvalidSchedule, "node '" + inst.name(v) + "' needs no update");
            ++count[v];
        }
    }
    for (NodeId v = 0; v < inst.size(); ++v) {
        if (inst.interesting(v) && count[v] != 1)
            throw Error(ErrorCode::InvalidSchedule, "node '" + inst.name(v) + "' scheduled " + std::to_string(count[v]) + " times");
    }
}

NodeSet normalize(NodeSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

bool contains(const NodeSet& s, NodeId v) { return std::binary_search(s.begin(), s.end(), v); }

}  // namespace lfu
