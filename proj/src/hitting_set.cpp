#include "lfu/hitting_set.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

#include "lfu/errors.hpp"

namespace lfu {

HittingSetInstance make_hitting_set(int m, const std::vector<std::vector<int>>& sets) {
    HittingSetInstance hs;
    for (int i = 1; i <= m; ++i) hs.elements.push_back(std::to_string(i));
    for (auto s : sets) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        hs.sets.push_back(s);
    }
    validate_hitting_set(hs);
    return hs;
}

void validate_hitting_set(const HittingSetInstance& hs) {
    std::unordered_map<std::string, int> seen;
    for (const auto& e : hs.elements)
        if (!seen.emplace(e, 0).second) throw Error(ErrorCode::InvalidArgument, "duplicate element '" + e + "'");
    for (const auto& s : hs.sets)
        for (int e : s)
            if (e < 0 || e >= hs.m()) throw Error(ErrorCode::InvalidArgument, "set element out of range");
}

HittingSetInstance parse_hitting_set(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_elements = false;
    HittingSetInstance hs;
    std::unordered_map<std::string, int> index;
    while (std::getline(in, line)) {
        ++lineno;
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw Error(ErrorCode::SyntaxError, "line " + std::to_string(lineno) + ": expected 'elements:' or 'set:'");
        std::string key = line.substr(b, colon - b);
        while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
        std::istringstream toks(line.substr(colon + 1));
        std::vector<std::string> words;
        for (std::string w; toks >> w;) words.push_back(w);
        if (key == "elements") {
            if (have_elements) throw Error(ErrorCode::SyntaxError, "line " + std::to_string(lineno) + ": duplicate elements line");
            have_elements = true;
            for (const auto& w : words) {
                if (!index.emplace(w, hs.m()).second)
                    throw Error(ErrorCode::SyntaxError, "line " + std::to_string(lineno) + ": duplicate element '" + w + "'");
                hs.elements.push_back(w);
            }
        } else if (key == "set") {
            if (!have_elements)
                throw Error(ErrorCode::SyntaxError, "line " + std::to_string(lineno) + ": set before elements line");
            std::vector<int> s;
            for (const auto& w : words) {
                auto it = index.find(w);
                if (it == index.end())
                    throw Error(ErrorCode::SyntaxError, "line " + std::to_string(lineno) + ": unknown element '" + w + "'");
                s.push_back(it->second);
            }
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            hs.sets.push_back(s);
        } else {
            throw Error(ErrorCode::SyntaxError, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    if (!have_elements) throw Error(ErrorCode::SyntaxError, "missing elements line");
    return hs;
}

std::string render_hitting_set(const HittingSetInstance& hs) {
    std::string out = "elements:";
    for (const auto& e : hs.elements) out += " " + e;
    out += "\n";
    for (const auto& s : hs.sets) {
        out += "set:";
        for (int e : s) out += " " + hs.elements[e];
        out += "\n";
    }
    return out;
}

bool is_hitting_set(const HittingSetInstance& hs, const std::vector<int>& chosen) {
    for (const auto& s : hs.sets) {
        bool hit = false;
        for (int e : s)
            if (std::find(chosen.begin(), chosen.end(), e) != chosen.end()) hit = true;
        if (!hit) return false;
    }
    return true;
}

namespace {

struct ExactSearch {
    const HittingSetInstance& hs;
    std::vector<std::vector<int>> sets_of;  // element -> sets containing it
    std::vector<int> hits;                  // per set
    std::vector<int> max_elem;              // per set
    std::vector<int> chosen;
    int unhit = 0;
    long expansions = 0;
    long max_expansions;

    ExactSearch(const HittingSetInstance& h, long cap) : hs(h), max_expansions(cap) {
        sets_of.assign(hs.m(), {});
        for (int i = 0; i < hs.k(); ++i)
            for (int e : hs.sets[i]) sets_of[e].push_back(i);
        hits.assign(hs.k(), 0);
        max_elem.assign(hs.k(), -1);
        for (int i = 0; i < hs.k(); ++i) max_elem[i] = hs.sets[i].back();
        unhit = hs.k();
    }

    // Greedy packing of unhit sets, counting only elements >= from.
    int packing(int from) const {
        std::vector<char> used(hs.m(), 0);
        int count = 0;
        for (int i = 0; i < hs.k(); ++i) {
            if (hits[i]) continue;
            bool free = true;
            for (int e : hs.sets[i])
                if (e >= from && used[e]) free = false;
            if (!free) continue;
            ++count;
            for (int e : hs.sets[i])
                if (e >= from) used[e] = 1;
        }
        return count;
    }

    bool dfs(int i, int budget) {
        if (++expansions > max_expansions) throw Error(ErrorCode::CapExceeded, "hitting-set search budget exhausted");
        if (unhit == 0) return true;
        if (i >= hs.m()) return false;
        for (int s = 0; s < hs.k(); ++s)
            if (!hits[s] && max_elem[s] < i) return false;
        if (packing(i) > budget) return false;
        bool useful = false;
        for (int s : sets_of[i])
            if (!hits[s]) useful = true;
        if (useful && budget > 0) {
            for (int s : sets_of[i])
                if (hits[s]++ == 0) --unhit;
            chosen.push_back(i);
            if (dfs(i + 1, budget - 1)) return true;
            chosen.pop_back();
            for (int s : sets_of[i])
                if (--hits[s] == 0) ++unhit;
        }
        return dfs(i + 1, budget);
    }
};

std::vector<int> greedy_cover(const HittingSetInstance& hs) {
    std::vector<char> hit(hs.k(), 0);
    std::vector<int> chosen;
    int remaining = hs.k();
    while (remaining > 0) {
        std::vector<int> gain(hs.m(), 0);
        for (int i = 0; i < hs.k(); ++i)
            if (!hit[i])
                for (int e : hs.sets[i]) ++gain[e];
        int best = 0;
        for (int e = 1; e < hs.m(); ++e)
            if (gain[e] > gain[best]) best = e;
        chosen.push_back(best);
        for (int i = 0; i < hs.k(); ++i)
            if (!hit[i] && std::binary_search(hs.sets[i].begin(), hs.sets[i].end(), best)) {
                hit[i] = 1;
                --remaining;
            }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

}  // namespace

HittingSetResult solve_hitting_set(const HittingSetInstance& hs, HsMode mode, const HittingSetLimits& limits) {
    validate_hitting_set(hs);
    for (const auto& s : hs.sets)
        if (s.empty()) throw Error(ErrorCode::InfeasibleInstance, "empty set cannot be hit");
    HittingSetResult res;
    if (hs.sets.empty()) {
        res.exact = true;
        return res;
    }
    ExactSearch probe(hs, limits.max_expansions);
    res.lower_bound = probe.packing(0);
    auto greedy = greedy_cover(hs);
    if (mode == HsMode::Greedy) {
        res.elements = greedy;
        return res;
    }
    if (hs.m() > limits.max_universe && static_cast<int>(greedy.size()) > limits.max_solution)
        throw Error(ErrorCode::CapExceeded, "hitting-set instance too large for exact mode");
    for (int budget = res.lower_bound; budget <= static_cast<int>(greedy.size()); ++budget) {
        ExactSearch search(hs, limits.max_expansions);
        if (search.dfs(0, budget)) {
            res.elements = search.chosen;
            res.exact = true;
            res.lower_bound = budget;
            return res;
        }
    }
    throw Error(ErrorCode::Internal, "exact hitting-set search missed the greedy cover");
}

}  // namespace lfu
