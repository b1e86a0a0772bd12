#include "lfu/gadgets.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "lfu/errors.hpp"
#include "lfu/safety.hpp"

namespace lfu {

const char* edge_kind_name(EdgeKind k) {
    switch (k) {
        case EdgeKind::SE: return "SE";
        case EdgeKind::AE: return "AE";
        case EdgeKind::WE: return "WE";
        case EdgeKind::CON: return "CON";
        case EdgeKind::RET: return "RET";
        case EdgeKind::DLY: return "DLY";
        case EdgeKind::BR: return "BR";
    }
    return "?";
}

const GadgetEdge* GadgetLayout::edge_from(NodeId v) const {
    for (const auto& e : edges)
        if (e.from == v) return &e;
    return nullptr;
}

namespace {

constexpr long kMaxGadgetNodes = 2'000'000;

struct Bundle {
    int from = 0, to = 0;  // element indices: OUT_from -> IN_to
    int set = 0;           // first set that needs this pair
};

std::vector<Bundle> make_bundles(const HittingSetInstance& hs) {
    std::vector<Bundle> out;
    std::map<std::pair<int, int>, int> seen;
    for (int i = 0; i < hs.k(); ++i) {
        const auto& s = hs.sets[i];
        const int r = static_cast<int>(s.size());
        for (int j = 0; j < r; ++j) {
            std::pair<int, int> key{s[j], s[(j + 1) % r]};
            if (seen.emplace(key, i).second) out.push_back({key.first, key.second, i});
        }
    }
    return out;
}

class Builder {
public:
    Builder(const HittingSetInstance& hs, Mode mode) : hs_(hs), mode_(mode), m_(hs.m()) {}

    Gadget build() {
        if (m_ < 1) throw Error(ErrorCode::InvalidArgument, "gadget needs at least one element");
        for (const auto& s : hs_.sets)
            if (s.empty()) throw Error(ErrorCode::InvalidArgument, "gadget needs nonempty sets");
        bundles_ = make_bundles(hs_);
        long estimate = 4L * (m_ + 1) * (static_cast<long>(bundles_.size()) + m_ + 1) + 2L * m_ * m_ * (m_ + 1) * m_;
        if (estimate > kMaxGadgetNodes) throw Error(ErrorCode::InvalidArgument, "gadget would be too large");
        s_ = fresh();
        d_ = fresh();
        lay_out_segments();
        build_chain();
        return assemble();
    }

private:
    const HittingSetInstance& hs_;
    Mode mode_;
    int m_;
    std::vector<Bundle> bundles_;
    int count_ = 0;
    int s_ = -1, d_ = -1;

    std::vector<std::string> seg_names_;
    std::vector<std::vector<int>> segs_;  // bottom to top
    std::vector<int> betas_;

    // per bundle zones
    std::vector<std::vector<int>> src_, tgt_, dead_;
    std::vector<int> ob_, it_, cap_, q_;
    std::vector<std::vector<int>> w_;  // per IN segment
    std::vector<int> r_, rp_, z_;      // relaxed zones
    size_t next_rp_ = 0, next_z_ = 0;

    struct Link {
        EdgeKind kind;
        int tag;
        int to;
    };
    std::vector<int> chain_{};
    std::vector<Link> links_{};

    int fresh() { return count_++; }

    std::vector<int> fresh_block(int n) {
        std::vector<int> v(n);
        for (auto& x : v) x = fresh();
        return v;
    }

    void lay_out_segments() {
        const int B = static_cast<int>(bundles_.size());
        src_.resize(B);
        tgt_.resize(B);
        dead_.resize(B);
        for (int b = 0; b < B; ++b) {
            src_[b] = fresh_block(m_ + 1);
            tgt_[b] = fresh_block(m_ + 1);
            if (mode_ == Mode::SLF) dead_[b] = fresh_block(m_ + 1);
        }
        ob_ = fresh_block(m_);
        it_ = fresh_block(m_);
        if (mode_ == Mode::SLF) {
            cap_ = fresh_block(m_);
            q_ = fresh_block(m_);
        } else {
            w_.resize(m_);
            for (int l = 0; l < m_; ++l) w_[l] = fresh_block(m_ * (m_ + 1));
            r_ = fresh_block(m_ * m_ * (m_ + 1));
            rp_ = fresh_block((m_ + 1) * B + m_);
            z_ = fresh_block((m_ + 1) * B + m_);
        }
        for (int e = m_ - 1; e >= 0; --e) {
            std::vector<int> out;
            if (mode_ == Mode::SLF) out.push_back(q_[e]);
            out.push_back(ob_[e]);
            for (int b = 0; b < B; ++b)
                if (bundles_[b].from == e) out.insert(out.end(), src_[b].begin(), src_[b].end());
            if (mode_ == Mode::SLF) out.push_back(cap_[e]);
            add_segment("out" + std::to_string(e + 1), out);

            std::vector<int> in;
            if (mode_ == Mode::SLF) {
                for (int b = 0; b < B; ++b)
                    if (bundles_[b].to == e) in.insert(in.end(), dead_[b].begin(), dead_[b].end());
            } else {
                in = w_[e];
            }
            for (int b = 0; b < B; ++b)
                if (bundles_[b].to == e) in.insert(in.end(), tgt_[b].begin(), tgt_[b].end());
            in.push_back(it_[e]);
            add_segment("in" + std::to_string(e + 1), in);
        }
        if (mode_ == Mode::RLF) {
            std::vector<int> rel = r_;
            rel.insert(rel.end(), rp_.begin(), rp_.end());
            rel.insert(rel.end(), z_.begin(), z_.end());
            add_segment("relaxed", rel);
        }
        for (size_t j = 0; j + 1 < segs_.size(); ++j) betas_.push_back(fresh());
    }

    void add_segment(const std::string& name, const std::vector<int>& nodes) {
        seg_names_.push_back(name);
        segs_.push_back(nodes);
    }

    void step(EdgeKind kind, int to, int tag = -1) {
        links_.push_back({kind, tag, to});
        chain_.push_back(to);
    }

    // One relaxed detour for RLF: up into the z zone, back down to an r' node.
    void relaxed_return() {
        step(EdgeKind::CON, z_[next_z_++]);
        step(EdgeKind::RET, rp_[next_rp_++]);
    }

    void build_chain() {
        chain_.push_back(s_);
        auto enter = [&](int node) { step(EdgeKind::CON, node); };
        if (mode_ == Mode::RLF) {
            int j = 0;
            for (int l = 0; l < m_; ++l)
                for (int w : w_[l]) {
                    enter(r_[j++]);
                    step(EdgeKind::WE, w);
                }
        }
        for (size_t b = 0; b < bundles_.size(); ++b) {
            for (int k = 0; k <= m_; ++k) {
                enter(src_[b][k]);
                step(EdgeKind::SE, tgt_[b][k], bundles_[b].set);
                if (mode_ == Mode::SLF) step(EdgeKind::RET, dead_[b][k]);
                else relaxed_return();
            }
        }
        for (int l = 0; l < m_; ++l) {
            enter(it_[l]);
            step(EdgeKind::AE, ob_[l], l);
            if (mode_ == Mode::SLF) {
                step(EdgeKind::CON, cap_[l]);
                step(EdgeKind::RET, q_[l]);
            } else {
                relaxed_return();
            }
        }
        step(EdgeKind::CON, betas_.front());
    }

    Gadget assemble() {
        // Rank segment and branching nodes by their pi1 order.
        std::vector<long> rank(count_, -1);
        std::vector<int> body;
        for (size_t j = 0; j < segs_.size(); ++j) {
            body.insert(body.end(), segs_[j].begin(), segs_[j].end());
            if (j < betas_.size()) body.push_back(betas_[j]);
        }
        for (size_t i = 0; i < body.size(); ++i) rank[body[i]] = static_cast<long>(i);
        rank[s_] = -1;

        struct Routed {
            EdgeKind kind;
            int tag, from, temp, to;
        };
        std::vector<Routed> routed;
        std::vector<int> temps;
        for (size_t i = 0; i < links_.size(); ++i) {
            int from = chain_[i], to = chain_[i + 1];
            int temp = -1;
            if (from != s_ && rank[to] > rank[from]) {
                temp = fresh();
                temps.push_back(temp);
            }
            routed.push_back({links_[i].kind, links_[i].tag, from, temp, to});
        }

        std::vector<std::string> name(count_);
        name[s_] = "s";
        name[d_] = "d";
        for (size_t j = 0; j < segs_.size(); ++j)
            for (size_t k = 0; k < segs_[j].size(); ++k) name[segs_[j][k]] = seg_names_[j] + "." + std::to_string(k + 1);
        for (size_t j = 0; j < betas_.size(); ++j) name[betas_[j]] = "br." + std::to_string(j + 1);
        for (size_t j = 0; j < temps.size(); ++j) name[temps[j]] = "tmp." + std::to_string(j + 1);

        std::vector<int> p1{s_};
        p1.insert(p1.end(), temps.begin(), temps.end());
        p1.insert(p1.end(), body.begin(), body.end());
        p1.push_back(d_);
        std::vector<int> p2{s_};
        for (const auto& r : routed) {
            if (r.temp >= 0) p2.push_back(r.temp);
            p2.push_back(r.to);
        }
        for (size_t j = 1; j < betas_.size(); ++j) p2.push_back(betas_[j]);
        p2.push_back(d_);

        std::vector<std::string> n1, n2;
        for (int v : p1) n1.push_back(name[v]);
        for (int v : p2) n2.push_back(name[v]);
        Gadget g{make_instance(n1, n2), {}};
        std::vector<NodeId> pos(count_);
        for (size_t i = 0; i < p1.size(); ++i) pos[p1[i]] = static_cast<NodeId>(i);

        GadgetLayout& lay = g.layout;
        lay.mode = mode_;
        lay.m = m_;
        lay.elements = hs_.elements;
        if (!temps.empty()) lay.segments.push_back({"temp", pos[temps.front()], pos[temps.back()]});
        for (size_t j = 0; j < segs_.size(); ++j)
            lay.segments.push_back({seg_names_[j], pos[segs_[j].front()], pos[segs_[j].back()]});
        for (const auto& r : routed) {
            if (r.temp >= 0) {
                lay.edges.push_back({r.kind, pos[r.from], pos[r.temp], r.tag});
                lay.edges.push_back({EdgeKind::DLY, pos[r.temp], pos[r.to], -1});
            } else {
                lay.edges.push_back({r.kind, pos[r.from], pos[r.to], r.tag});
            }
        }
        for (size_t j = 0; j < betas_.size(); ++j)
            lay.edges.push_back({EdgeKind::BR, pos[betas_[j]], j + 1 < betas_.size() ? pos[betas_[j + 1]] : pos[d_], -1});
        lay.ae_tail.resize(m_);
        for (int l = 0; l < m_; ++l) lay.ae_tail[l] = pos[it_[l]];
        return g;
    }
};

}  // namespace

Gadget generate_gadget(const HittingSetInstance& hs, Mode mode) {
    validate_hitting_set(hs);
    return Builder(hs, mode).build();
}

std::string render_layout(const GadgetLayout& layout) {
    std::ostringstream out;
    for (const auto& s : layout.segments) out << "SEG " << s.name << ' ' << s.start + 1 << ' ' << s.end + 1 << '\n';
    for (const auto& e : layout.edges) {
        out << edge_kind_name(e.kind) << ' ';
        if (e.kind == EdgeKind::AE) out << layout.elements.at(e.tag) << ' ';
        if (e.kind == EdgeKind::SE) out << e.tag + 1 << ' ';
        out << e.from + 1 << ' ' << e.to + 1 << '\n';
    }
    return out.str();
}

GadgetLayout parse_layout(const std::string& text, const UpdateInstance& inst) {
    static const std::map<std::string, EdgeKind> kinds{
        {"SE", EdgeKind::SE},   {"AE", EdgeKind::AE},   {"WE", EdgeKind::WE}, {"CON", EdgeKind::CON},
        {"RET", EdgeKind::RET}, {"DLY", EdgeKind::DLY}, {"BR", EdgeKind::BR}};
    GadgetLayout lay;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& why) {
        throw Error(ErrorCode::SyntaxError, "layout line " + std::to_string(lineno) + ": " + why);
    };
    auto position = [&](const std::string& tok) {
        long p = 0;
        try {
            size_t used = 0;
            p = std::stol(tok, &used);
            if (used != tok.size()) fail("bad position '" + tok + "'");
        } catch (const std::logic_error&) {
            fail("bad position '" + tok + "'");
        }
        if (p < 1 || p > inst.size()) fail("position " + tok + " out of range");
        return static_cast<NodeId>(p - 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream toks(line);
        std::vector<std::string> w;
        for (std::string t; toks >> t;) w.push_back(t);
        if (w.empty() || w[0][0] == '#') continue;
        if (w[0] == "SEG") {
            if (w.size() != 4) fail("expected SEG <name> <start> <end>");
            lay.segments.push_back({w[1], position(w[2]), position(w[3])});
            if (w[1] == "relaxed") lay.mode = Mode::RLF;
            continue;
        }
        auto it = kinds.find(w[0]);
        if (it == kinds.end()) fail("unknown record '" + w[0] + "'");
        GadgetEdge e{it->second};
        size_t base = 1;
        if (e.kind == EdgeKind::AE) {
            if (w.size() != 4) fail("expected AE <element> <from> <to>");
            auto found = std::find(lay.elements.begin(), lay.elements.end(), w[1]);
            e.tag = static_cast<int>(found - lay.elements.begin());
            if (found == lay.elements.end()) lay.elements.push_back(w[1]);
            base = 2;
        } else if (e.kind == EdgeKind::SE) {
            if (w.size() != 4) fail("expected SE <set> <from> <to>");
            try {
                e.tag = std::stoi(w[1]) - 1;
            } catch (const std::logic_error&) {
                fail("bad set index '" + w[1] + "'");
            }
            base = 2;
        } else if (w.size() != 3) {
            fail("expected " + w[0] + " <from> <to>");
        }
        e.from = position(w[base]);
        e.to = position(w[base + 1]);
        if (inst.out2[e.from] != e.to) fail("edge is not on pi2");
        lay.edges.push_back(e);
        if (e.kind == EdgeKind::AE) {
            if (static_cast<int>(lay.ae_tail.size()) <= e.tag) lay.ae_tail.resize(e.tag + 1, -1);
            lay.ae_tail[e.tag] = e.from;
        }
    }
    lay.m = static_cast<int>(lay.elements.size());
    return lay;
}

CorrespondenceReport verify_correspondence(const HittingSetInstance& hs, const UpdateInstance& inst,
                                           const GadgetLayout& layout, const SolverLimits& limits) {
    std::vector<std::string> problems;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    };
    auto flush = [&] {
        if (problems.empty()) return;
        std::string msg = "gadget correspondence failed:";
        for (const auto& p : problems) msg += "\n  - " + p;
        throw Error(ErrorCode::CorrespondenceViolation, msg);
    };
    CorrespondenceReport rep;

    auto reparsed = parse_instance(render_instance(inst));
    expect(reparsed.pi2 == inst.pi2 && reparsed.names == inst.names, "instance does not survive a parse round trip");
    expect(layout.m == hs.m(), "layout element count differs from the hitting-set instance");
    expect(static_cast<int>(layout.ae_tail.size()) == hs.m(), "layout lacks one AE per element");
    flush();

    auto inst_ptr = std::make_shared<UpdateInstance>(inst);
    RoundState st0 = initial_state(inst_ptr);
    NodeSet r1 = first_round(st0);
    auto cls0 = classify_all(st0);
    NodeSet fwd;
    for (NodeId v : st0.pending())
        if (cls0[v] == EdgeClass::Forward) fwd.push_back(v);
    expect(r1 == fwd, "first round differs from the forward class");
    expect(slf_safe(st0, r1).safe, "first round is not safe");
    RoundState st1 = apply_round(st0, r1);

    std::vector<int> owner(inst.size(), -1);
    for (size_t i = 0; i < layout.edges.size(); ++i) {
        const auto& e = layout.edges[i];
        expect(owner[e.from] < 0, "node " + inst.name(e.from) + " registered twice");
        owner[e.from] = static_cast<int>(i);
        bool round2 = e.kind == EdgeKind::SE || e.kind == EdgeKind::AE || e.kind == EdgeKind::WE || e.kind == EdgeKind::RET ||
                      (e.kind == EdgeKind::CON && e.from != inst.s);
        expect(st1.is_pending(e.from) == round2,
               std::string(edge_kind_name(e.kind)) + " edge at " + inst.name(e.from) +
                   (round2 ? " was updated in round 1" : " is still pending after round 1"));
    }
    NodeSet pending = st1.pending();
    rep.pending_round2 = static_cast<int>(pending.size());
    for (NodeId v : pending) expect(owner[v] >= 0, "pending node " + inst.name(v) + " has no registered edge");

    const int expected_leaves = 2 * hs.m() + (layout.mode == Mode::RLF ? 1 : 0);
    rep.support_leaves = support_leaf_count(st1);
    expect(rep.support_leaves == expected_leaves, "round-1 state has " + std::to_string(rep.support_leaves) +
                                                      " branches, expected " + std::to_string(expected_leaves));
    flush();

    auto ex = exact_max_round(st1, layout.mode, limits);
    rep.expansions = ex.expansions;
    rep.optimum = ex.nodes;
    expect(ex.optimal, "round-2 search hit the time budget");
    auto hit = solve_hitting_set(hs, HsMode::Exact);
    rep.min_hitting_set = static_cast<int>(hit.elements.size());

    for (NodeId v : pending) {
        const auto& e = layout.edges[owner[v]];
        bool in = contains(ex.nodes, v);
        if ((e.kind == EdgeKind::SE || e.kind == EdgeKind::WE || e.kind == EdgeKind::CON) && !in)
            problems.push_back(std::string(edge_kind_name(e.kind)) + " edge at " + inst.name(v) + " missing from the optimum");
        if (e.kind == EdgeKind::RET && in) problems.push_back("return edge at " + inst.name(v) + " inside the optimum");
    }
    for (int l = 0; l < hs.m(); ++l)
        if (!contains(ex.nodes, layout.ae_tail[l])) rep.excluded_elements.push_back(l);
    expect(is_hitting_set(hs, rep.excluded_elements), "excluded AEs do not hit every set");
    expect(static_cast<int>(rep.excluded_elements.size()) == rep.min_hitting_set,
           "excluded AEs: " + std::to_string(rep.excluded_elements.size()) + ", minimum hitting set: " +
               std::to_string(rep.min_hitting_set));
    flush();
    return rep;
}

}  // namespace lfu
