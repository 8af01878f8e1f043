#ifndef BPPC_NEIGHBORHOODS_HPP
#define BPPC_NEIGHBORHOODS_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bppc/local_search.hpp"
#include "bppc/rng.hpp"
#include "bppc/solution.hpp"

namespace bppc {

// Single-bin penalty deltas, each O(1) from conf plus at most one adjacency
// test. These are the arc costs of the ejection graph and the entries of the
// assignment matrix.
std::int64_t remove_cost(const Solution& s, int item, EvalCounters* c = nullptr);
// k must differ from item's bin.
std::int64_t insert_cost(const Solution& s, int item, int k,
                         EvalCounters* c = nullptr);
// Delta of outgoing's bin when outgoing is replaced by incoming; incoming may
// equal outgoing (cost 0) but must otherwise live in a different bin.
std::int64_t replace_cost(const Solution& s, int incoming, int outgoing,
                          EvalCounters* c = nullptr);

// Cheapest full relocation (removal + insertion) of `item` over bins other
// than its own and `excluded_bin`; ties to the lowest bin index. nullopt when
// no candidate bin exists.
std::optional<std::pair<int, std::int64_t>> best_insertion(const Solution& s,
                                                           int item,
                                                           int excluded_bin);

// One item per bin is torn out (a random problematic item plus one random
// item from every other nonempty bin) and the items are re-matched to the
// holes by a Hungarian solve on the replace-cost matrix. An epsilon surcharge
// on the problematic item's own hole steers ties away from the identity
// matching. Applied only when the epsilon-free delta is <= 0; returns whether
// the solution changed. max_selection > 0 caps the matrix size.
bool assignment_neighborhood(Solution& s, Rng& rng, int max_selection = 0);

// Ejection DAG: bins in a random order, one node per item plus a terminal
// zero-node per bin, arcs only from earlier to strictly later bins. A path
// source -> items -> zero-node encodes a chain of relocations whose realized
// penalty change equals the path cost exactly (each bin is touched once).
struct EjectionGraph {
  std::vector<int> bin_order;  // position -> bin
  std::vector<int> bin_pos;    // bin -> position
};

EjectionGraph build_ejection_graph(const Solution& s, Rng& rng);

struct EjectionPlan {
  std::vector<std::pair<int, int>> relocations;  // (item, target bin)
  std::int64_t cost = 0;
};

// DP shortest path over the ejection DAG; nullopt when no complete path
// exists (fewer than two bins). Returns the best plan even when its cost is
// nonnegative, so callers and tests can inspect it.
std::optional<EjectionPlan> find_best_ejection(const Solution& s,
                                               const EjectionGraph& g,
                                               EvalCounters* c = nullptr);

// Builds a fresh random-order graph and applies the best chain if it strictly
// improves. Returns whether the solution changed.
bool ejection_chain_step(Solution& s, Rng& rng);

// For each problematic item k (random order) and every other bin B: move k
// into B and sequentially re-home each occupant of B conflicting with k via
// its cheapest insertion elsewhere. Candidates are scored exactly by
// apply-and-rollback; the best compound move per k is re-applied when it
// strictly improves. Returns whether the solution changed.
bool grenade_step(Solution& s, Rng& rng);

}  // namespace bppc

#endif
