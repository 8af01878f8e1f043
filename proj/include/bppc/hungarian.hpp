#ifndef BPPC_HUNGARIAN_HPP
#define BPPC_HUNGARIAN_HPP

#include <cstdint>
#include <vector>

namespace bppc {

// Minimum-cost perfect matching on a square integer cost matrix via shortest
// augmenting paths with dual potentials, O(n^3). Returns the matched column
// of each row. Deterministic: among equal-cost optima the result depends only
// on the matrix.
std::vector<int> hungarian_assign(
    const std::vector<std::vector<std::int64_t>>& cost);

std::int64_t assignment_cost(const std::vector<std::vector<std::int64_t>>& cost,
                             const std::vector<int>& row_to_col);

}  // namespace bppc

#endif
