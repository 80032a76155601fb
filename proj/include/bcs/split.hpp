#ifndef BCS_SPLIT_HPP
#define BCS_SPLIT_HPP

#include <optional>
#include <vector>

#include "bcs/constraint.hpp"

namespace bcs {

enum class Splitter { DS, BS };

struct SplitOutcome {
    Splitter splitter;
    std::vector<Box> parts;  // for BS, parts[0] contains the complementary box
    int pivot_constraint = -1;
};

// Variable i is active iff it occurs in some running constraint, its domain
// width exceeds eps[i], and its domain is not canonical.
std::vector<char> active_variables(const Box& b, const ConstraintRefs& cs,
                                   const std::vector<double>& eps);

inline bool any_active(const std::vector<char>& m) {
    for (char c : m)
        if (c) return true;
    return false;
}

// Bisects the widest active variable (ties: lowest index) at its midpoint.
// Callers guarantee at least one active variable.
std::pair<Box, Box> DS(const Box& b, const std::vector<char>& active);

// Peels off the slabs of b around cb along active dimensions whose width is
// at least frag_ratio * that dimension's width of b, largest slab first.
// Returns nullopt when no slab qualifies.
std::optional<SplitOutcome> BS(const Box& b, const Box& cb, double frag_ratio,
                               const std::vector<char>& active);

}  // namespace bcs

#endif  // BCS_SPLIT_HPP
