#ifndef BPPC_SET_COVERING_HPP
#define BPPC_SET_COVERING_HPP

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "bppc/solution.hpp"

namespace bppc {

struct Column {
  std::vector<int> items;  // sorted, nonempty
  std::int64_t cost = 0;   // penalty of the bin it came from
  std::uint64_t key = 0;   // item-set hash, dedup fast path
  std::uint64_t age = 0;   // insertion counter, FIFO eviction order
};

std::uint64_t column_key(const std::vector<int>& sorted_items);

// FIFO pool of bin columns harvested from solutions. Duplicates (same item
// set) are dropped; overflow beyond the limit evicts the oldest column.
class ColumnPool {
 public:
  explicit ColumnPool(std::size_t limit) : limit_(limit) {}

  std::size_t size() const { return cols_.size(); }
  std::size_t limit() const { return limit_; }
  void set_limit(std::size_t limit);
  const Column& at(std::size_t i) const { return cols_[i]; }  // 0 = oldest

  // Sorts, dedups against the pool, evicts on overflow. Empty item sets are
  // ignored. Returns whether the column was inserted.
  bool add(std::vector<int> items, std::int64_t cost);
  // Every nonempty bin of `sol`, with its current penalty as cost.
  void add_solution(const Solution& sol);

  // One column per line: cost, then 1-based item ids.
  void dump(std::ostream& out) const;
  static ColumnPool parse(std::istream& in, std::size_t limit);

 private:
  std::deque<Column> cols_;
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> ages_by_key_;
  std::uint64_t next_age_ = 0;
  std::uint64_t front_age_ = 0;
  std::size_t limit_;

  void evict_overflow();
};

struct CoverSelection {
  std::vector<std::vector<int>> columns;  // chosen item sets
  std::int64_t cost = 0;
  bool proven_optimal = false;
};

// Depth-first branch and bound over the pool: minimum total cost choice of at
// most `max_columns` columns covering all n items (set partitioning instead
// when partition_mode). Branches on the lowest-index uncovered item, children
// ordered by column cost; prunes on cost against the incumbent and on the
// remaining column budget. The search is capped by a node budget (its only
// budget — deterministic by construction); an exhausted budget returns the
// best cover found so far with proven_optimal=false. `fallback` seeds the
// incumbent and is returned unchanged when nothing better is found, so the
// result never costs more than the fallback.
CoverSelection solve_restricted_cover(const ColumnPool& pool, int n,
                                      int max_columns,
                                      std::uint64_t node_budget,
                                      const CoverSelection& fallback,
                                      bool partition_mode = false);

// Turns a cover back into a partition: items covered several times stay in
// the column where removing them would help the least (processed in item
// order, deltas against the already-pruned contents), so the resulting
// penalty never exceeds the cover's cost. Pads with empty bins up to
// min_bins. Throws std::logic_error if the columns do not cover every item.
Solution cover_to_solution(const std::vector<std::vector<int>>& selection,
                           const Instance& inst, PenaltyWeights w,
                           int min_bins = 0);

// Pool-size feedback: +15% after a proven-optimal solve, -15% otherwise,
// clamped to [100, 100000].
std::int64_t adapt_pool_limit(std::int64_t limit, bool proven_optimal);

}  // namespace bppc

#endif
