#ifndef BPPC_ORACLE_HPP
#define BPPC_ORACLE_HPP

#include <cstdint>
#include <optional>

#include "bppc/instance.hpp"

namespace bppc {

// Exact minimum bin count by branch and bound: items in non-increasing weight
// order, each placed into every compatible open bin or (symmetry-broken) one
// new bin, pruned by the incumbent and a remaining-weight bound. Returns
// nullopt when the node budget runs out first. Meant for small instances
// (n up to ~16 at high densities).
std::optional<int> exact_optimum_oracle(const Instance& inst,
                                        std::uint64_t node_budget = 50'000'000);

}  // namespace bppc

#endif
