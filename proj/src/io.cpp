#include "lfu/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace lfu {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
}

UpdateSchedule parse_schedule(const std::string& text, const UpdateInstance& inst) {
    UpdateSchedule sched;
    bool have_mode = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& why) {
        throw Error(ErrorCode::SyntaxError, "schedule line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) fail("missing ':'");
        std::istringstream head(line.substr(b, colon - b));
        std::vector<std::string> key;
        for (std::string w; head >> w;) key.push_back(w);
        std::istringstream body(line.substr(colon + 1));
        std::vector<std::string> toks;
        for (std::string w; body >> w;) toks.push_back(w);
        if (key.size() == 1 && key[0] == "mode") {
            if (have_mode) fail("duplicate mode line");
            if (toks.size() != 1) fail("expected one mode");
            try {
                sched.mode = parse_mode(toks[0]);
            } catch (const Error& e) {
                fail(e.what());
            }
            have_mode = true;
        } else if (key.size() == 2 && key[0] == "round") {
            if (key[1] != std::to_string(sched.rounds.size() + 1))
                fail("expected round " + std::to_string(sched.rounds.size() + 1));
            NodeSet round;
            for (const auto& t : toks) round.push_back(inst.lookup(t));
            NodeSet sorted = normalize(round);
            if (sorted.size() != round.size()) fail("node repeated within a round");
            sched.rounds.push_back(sorted);
        } else {
            fail("expected 'mode:' or 'round <t>:'");
        }
    }
    if (!have_mode) throw Error(ErrorCode::SyntaxError, "schedule lacks a mode line");
    return sched;
}

std::string render_schedule(const UpdateSchedule& schedule, const UpdateInstance& inst) {
    std::string out = std::string("mode: ") + mode_name(schedule.mode) + "\n";
    for (std::size_t t = 0; t < schedule.rounds.size(); ++t) {
        out += "round " + std::to_string(t + 1) + ":";
        for (NodeId v : schedule.rounds[t]) out += " " + inst.name(v);
        out += "\n";
    }
    return out;
}

std::string render_classification(const RoundState& state) {
    const auto& inst = *state.inst;
    std::ostringstream out;
    out << "round: " << state.round_index << '\n';
    if (active_is_acyclic(state)) out << "leaves: " << leaf_count(state) << '\n';
    else out << "leaves: cyclic\n";
    NodeSet pending = state.pending();
    out << "pending: " << pending.size() << '\n';
    auto cls = classify_all(state);
    for (NodeId v : pending)
        out << inst.name(v) << ' ' << edge_class_letter(cls[v]) << ' ' << inst.name(inst.out2[v]) << '\n';
    return out.str();
}

namespace {

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

const char* class_colour(EdgeClass c) {
    switch (c) {
        case EdgeClass::Forward: return "darkgreen";
        case EdgeClass::Backward: return "red";
        case EdgeClass::Horizontal: return "blue";
    }
    return "black";
}

}  // namespace

std::string export_dot(const RoundState& state, const GadgetLayout* layout) {
    const auto& inst = *state.inst;
    const int n = inst.size();
    std::vector<const GadgetEdge*> reg(n, nullptr);
    if (layout)
        for (const auto& e : layout->edges)
            if (e.from >= 0 && e.from < n) reg[e.from] = &e;
    auto category = [&](NodeId v) -> std::string {
        if (!reg[v]) return "";
        std::string c = edge_kind_name(reg[v]->kind);
        if (reg[v]->kind == EdgeKind::AE && reg[v]->tag >= 0 && reg[v]->tag < static_cast<int>(layout->elements.size()))
            c += " " + layout->elements[reg[v]->tag];
        if (reg[v]->kind == EdgeKind::SE) c += " " + std::to_string(reg[v]->tag + 1);
        return c;
    };
    std::ostringstream out;
    out << "digraph lfu {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (NodeId v = 0; v < n; ++v) {
        out << "  " << quoted(inst.name(v));
        if (v == inst.s || v == inst.d) out << " [shape=doublecircle]";
        out << ";\n";
    }
    auto cls = classify_all(state);
    for (NodeId v = 0; v < n; ++v) {
        NodeId w = state.active_out[v];
        if (w < 0) continue;
        out << "  " << quoted(inst.name(v)) << " -> " << quoted(inst.name(w)) << " [style=solid";
        std::string c = category(v);
        if (!state.is_pending(v) && !c.empty()) out << ", label=" << quoted(c);
        out << "];\n";
    }
    for (NodeId v = 0; v < n; ++v) {
        if (!state.is_pending(v)) continue;
        std::string label = edge_class_letter(cls[v]);
        std::string c = category(v);
        if (!c.empty()) label = c + " " + label;
        out << "  " << quoted(inst.name(v)) << " -> " << quoted(inst.name(inst.out2[v])) << " [style=dashed, color="
            << class_colour(cls[v]) << ", label=" << quoted(label) << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace lfu
