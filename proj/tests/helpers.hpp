#ifndef BPPC_TESTS_HELPERS_HPP
#define BPPC_TESTS_HELPERS_HPP

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include <optional>

#include "bppc/instance.hpp"
#include "bppc/neighborhoods.hpp"
#include "bppc/rng.hpp"
#include "bppc/solution.hpp"

// Independent recount oracles: everything here is computed from first
// principles (adjacency-list scans over an explicit partition), never through
// the solver's incremental bookkeeping that the tests are checking.
namespace oracle {

inline bool adjacent(const bppc::Instance& inst, int i, int j) {
  const auto& adj = inst.conflicts.adjacent(i);
  return std::find(adj.begin(), adj.end(), j) != adj.end();
}

inline std::int64_t bin_penalty_recount(const bppc::Instance& inst,
                                        const bppc::PenaltyWeights& w,
                                        const std::vector<int>& items) {
  std::int64_t load = 0;
  std::int64_t pairs = 0;
  for (std::size_t a = 0; a < items.size(); ++a) {
    load += inst.weights[static_cast<std::size_t>(items[a])];
    for (std::size_t b = a + 1; b < items.size(); ++b)
      if (adjacent(inst, items[a], items[b])) ++pairs;
  }
  const std::int64_t over = load > inst.capacity ? load - inst.capacity : 0;
  return w.omega_c * pairs + w.omega_w * over;
}

inline std::int64_t total_penalty_recount(
    const bppc::Instance& inst, const bppc::PenaltyWeights& w,
    const std::vector<std::vector<int>>& partition) {
  std::int64_t total = 0;
  for (const auto& bin : partition) total += bin_penalty_recount(inst, w, bin);
  return total;
}

inline std::vector<std::vector<std::int32_t>> conf_recount(
    const bppc::Instance& inst, const std::vector<std::vector<int>>& partition) {
  std::vector<std::vector<std::int32_t>> conf(
      static_cast<std::size_t>(inst.n),
      std::vector<std::int32_t>(partition.size(), 0));
  for (int i = 0; i < inst.n; ++i)
    for (std::size_t k = 0; k < partition.size(); ++k)
      for (int other : partition[k])
        if (adjacent(inst, i, other))
          ++conf[static_cast<std::size_t>(i)][k];
  return conf;
}

// Partition-level move simulation: moves `movers` from bin_a to bin_b and
// `mover_b` (if >= 0) from bin_b to bin_a, then recounts.
inline std::int64_t exchange_delta_recount(
    const bppc::Instance& inst, const bppc::PenaltyWeights& w,
    const std::vector<std::vector<int>>& partition,
    const std::vector<int>& movers_a, std::size_t bin_a,
    const std::vector<int>& movers_b, std::size_t bin_b) {
  const std::int64_t before =
      bin_penalty_recount(inst, w, partition[bin_a]) +
      bin_penalty_recount(inst, w, partition[bin_b]);
  std::vector<int> new_a;
  std::vector<int> new_b;
  for (int item : partition[bin_a])
    if (std::find(movers_a.begin(), movers_a.end(), item) == movers_a.end())
      new_a.push_back(item);
  for (int item : partition[bin_b])
    if (std::find(movers_b.begin(), movers_b.end(), item) == movers_b.end())
      new_b.push_back(item);
  new_a.insert(new_a.end(), movers_b.begin(), movers_b.end());
  new_b.insert(new_b.end(), movers_a.begin(), movers_a.end());
  return bin_penalty_recount(inst, w, new_a) +
         bin_penalty_recount(inst, w, new_b) - before;
}

// Exhaustive walk of every source -> ... -> zero-node path in an ejection
// DAG, mirroring the arc definitions: positions strictly increase along the
// path, item arcs eject their head, zero arcs land the tail in a bin, and a
// zero node may hand over to a later chain. Every complete path is scored
// twice: by summing the claimed arc costs and by replaying its relocations on
// a copy of the solution; `mismatches` counts paths where the two disagree
// and `best` is the minimum replayed delta over all paths.
struct EjectionPathWalker {
  const bppc::Solution* s;
  const bppc::EjectionGraph* g;
  std::vector<std::pair<int, int>> relocations;
  std::int64_t arc_sum = 0;
  std::optional<std::int64_t> best;
  std::int64_t mismatches = 0;

  void complete() {
    bppc::Solution copy = *s;
    for (const auto& [item, to] : relocations) copy.relocate_item(item, to);
    const std::int64_t realized = copy.total_penalty() - s->total_penalty();
    if (realized != arc_sum) ++mismatches;
    if (!best || realized < *best) best = realized;
  }

  void from_item(int i) {
    const int pos_i = g->bin_pos[static_cast<std::size_t>(s->bin_of(i))];
    for (int j = 0; j < s->num_items(); ++j) {
      if (g->bin_pos[static_cast<std::size_t>(s->bin_of(j))] <= pos_i) continue;
      const std::int64_t arc = bppc::replace_cost(*s, i, j);
      relocations.emplace_back(i, s->bin_of(j));
      arc_sum += arc;
      from_item(j);
      arc_sum -= arc;
      relocations.pop_back();
    }
    for (int k = 0; k < s->num_bins(); ++k) {
      if (g->bin_pos[static_cast<std::size_t>(k)] <= pos_i) continue;
      const std::int64_t arc = bppc::insert_cost(*s, i, k);
      relocations.emplace_back(i, k);
      arc_sum += arc;
      at_zero(g->bin_pos[static_cast<std::size_t>(k)]);
      arc_sum -= arc;
      relocations.pop_back();
    }
  }

  void at_zero(int pos_k) {
    complete();
    for (int j = 0; j < s->num_items(); ++j) {
      if (g->bin_pos[static_cast<std::size_t>(s->bin_of(j))] <= pos_k) continue;
      const std::int64_t arc = bppc::remove_cost(*s, j);
      arc_sum += arc;
      from_item(j);
      arc_sum -= arc;
    }
  }

  void run() {
    for (int i = 0; i < s->num_items(); ++i) {
      const std::int64_t arc = bppc::remove_cost(*s, i);
      arc_sum += arc;
      from_item(i);
      arc_sum -= arc;
    }
  }
};

}  // namespace oracle

namespace testgen {

// Random instance built directly (independent of the shipped generator):
// weights uniform in [lo, hi], each pair in conflict with probability density.
inline bppc::Instance random_instance(bppc::Rng& rng, int n,
                                      std::int64_t capacity, double density,
                                      std::int64_t w_lo, std::int64_t w_hi) {
  bppc::Instance inst;
  inst.n = n;
  inst.capacity = capacity;
  inst.name = "random";
  for (int i = 0; i < n; ++i)
    inst.weights.push_back(rng.range(w_lo, w_hi));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.chance(density)) edges.emplace_back(i, j);
  inst.conflicts = bppc::ConflictGraph::from_edges(n, edges);
  return inst;
}

// Uniform random assignment of all items to k bins; usually infeasible.
inline std::vector<std::vector<int>> random_partition(bppc::Rng& rng, int n,
                                                      int k) {
  std::vector<std::vector<int>> bins(static_cast<std::size_t>(k));
  for (int i = 0; i < n; ++i)
    bins[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(k)))]
        .push_back(i);
  return bins;
}

}  // namespace testgen

#endif
