#pragma once

#include <set>

#include "lamplighter/digitset.hpp"
#include "lamplighter/group.hpp"

namespace lamp {

struct SearchBudget {
    uint32_t max_word_len = 12;  // L
    int64_t support_box = 8;     // W: lamp-support box per coordinate
    int64_t exponent_window = 8; // B: bound on pointer coordinates and exponents

    std::string str() const {
        return std::to_string(max_word_len) + "," + std::to_string(support_box) + "," +
               std::to_string(exponent_window);
    }
};

struct BfsResult {
    bool found = false;
    std::vector<size_t> witness;  // generator indices, in product order
};

// Breadth-first search over products of the generators (no inverses), pruning
// states whose lamp support leaves the box or whose pointer leaves the ball.
// A Found result is re-verified by evaluation before being returned.
BfsResult bfs_submonoid(const std::vector<GroupElement>& gens, const GroupElement& target,
                        const SearchBudget& budget);

// All (n_1..n_m) with |n|_inf <= bound and h_1^{n_1} ... h_m^{n_m} = target.
std::set<IntVec> brute_knapsack(const std::vector<GroupElement>& factors,
                                const GroupElement& target, int64_t bound);

// All (z_1..z_m), z_i in Z^n, |z|_inf <= bound, with sum X^{z_i} c_i = c0 in M.
// Returns flattened vectors of length n*m.
std::set<IntVec> brute_sunit(const NFContext& m, const std::vector<ModElem>& constants,
                             const ModElem& c0, int64_t bound);

struct WindowCompareResult {
    bool pass = false;
    std::optional<IntVec> counterexample;
    bool missing = false;  // counterexample missing from the automaton (vs extra)
};

WindowCompareResult window_compare(const DigitAutomaton& a, const std::set<IntVec>& baseline,
                                   int64_t bound);

}  // namespace lamp
