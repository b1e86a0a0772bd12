#pragma once

#include <string>
#include <vector>

namespace lfu {

struct HittingSetInstance {
    std::vector<std::string> elements;   // el_1 < el_2 < ... in list order
    std::vector<std::vector<int>> sets;  // element indices, sorted

    int m() const { return static_cast<int>(elements.size()); }
    int k() const { return static_cast<int>(sets.size()); }
};

// Elements named "1".."m"; sets given as 0-based element indices.
HittingSetInstance make_hitting_set(int m, const std::vector<std::vector<int>>& sets);

// Format: '#' comments, one "elements: a b c" line, any number of "set: a b" lines.
HittingSetInstance parse_hitting_set(const std::string& text);
std::string render_hitting_set(const HittingSetInstance& hs);
void validate_hitting_set(const HittingSetInstance& hs);

enum class HsMode { Exact, Greedy };

struct HittingSetResult {
    std::vector<int> elements;  // sorted element indices
    int lower_bound = 0;        // disjoint-sets packing bound
    bool exact = false;
};

struct HittingSetLimits {
    int max_universe = 64;
    int max_solution = 12;
    long max_expansions = 20'000'000;
};

HittingSetResult solve_hitting_set(const HittingSetInstance& hs, HsMode mode, const HittingSetLimits& limits = {});

bool is_hitting_set(const HittingSetInstance& hs, const std::vector<int>& chosen);

}  // namespace lfu
