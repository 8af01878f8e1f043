#ifndef BPPC_SOLUTION_HPP
#define BPPC_SOLUTION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bppc/instance.hpp"
#include "bppc/rng.hpp"

namespace bppc {

// Penalized objective of one bin: phi(B) = omega_c * conflicts(B)
//                                        + omega_w * max(0, load(B) - Q).
// Both weights are positive integers, so penalties are exact integers and a
// solution is feasible iff its total penalty is zero.
struct PenaltyWeights {
  std::int64_t omega_c = 1;
  std::int64_t omega_w = 1;
};

struct Bin {
  std::vector<int> items;  // insertion order; item-pair moves use adjacent slots
  std::int64_t load = 0;
  std::int64_t conflict_count = 0;  // conflicting pairs inside the bin
  std::uint64_t modified_stamp = 0;
};

std::int64_t bin_penalty(const Bin& bin, const PenaltyWeights& w,
                         std::int64_t capacity);

enum class FfdOrder { non_increasing, non_decreasing };
enum class ReduceRule { min_load, random };

// A (possibly infeasible) assignment of every item to one of K bins, with the
// bookkeeping that makes move evaluation O(1):
//   conf(i, k)   number of items in bin k conflicting with item i
//   total_penalty() sum of bin penalties, maintained incrementally
// conf rows are per item and contiguous, so the O(degree) row update of a
// relocation walks two cache-friendly strips.
class Solution {
 public:
  // `partition` assigns every item to exactly one bin (empty bins allowed);
  // throws std::logic_error otherwise.
  Solution(const Instance& inst, PenaltyWeights w,
           std::vector<std::vector<int>> partition);

  const Instance& instance() const { return *inst_; }
  const PenaltyWeights& weights() const { return w_; }

  int num_items() const { return inst_->n; }
  int num_bins() const { return static_cast<int>(bins_.size()); }
  int nonempty_bins() const;
  const Bin& bin(int k) const { return bins_[static_cast<std::size_t>(k)]; }
  int bin_of(int item) const {
    return assignment_[static_cast<std::size_t>(item)];
  }
  std::int32_t conf(int item, int k) const {
    return conf_[static_cast<std::size_t>(item)][static_cast<std::size_t>(k)];
  }

  std::int64_t total_penalty() const { return total_penalty_; }
  bool feasible() const { return total_penalty_ == 0; }
  std::int64_t excess(int k) const {
    const std::int64_t over = bin(k).load - inst_->capacity;
    return over > 0 ? over : 0;
  }
  std::int64_t phi(int k) const {
    return w_.omega_c * bin(k).conflict_count + w_.omega_w * excess(k);
  }

  // Moves `item` to bin `to` (must differ from its current bin): bin fields,
  // the conf rows of its neighbors, total_penalty and both modified_stamps are
  // updated in O(degree(item)). Relocating back restores the previous state.
  void relocate_item(int item, int to);

  // Empties one bin (lowest-load, ties to the lowest index, or uniformly
  // random under ReduceRule::random), relocating its items to uniformly random
  // surviving bins, then deletes it. Requires at least two bins.
  void remove_bin(ReduceRule rule, Rng& rng);

  // Monotone change counter backing the modified_stamps. bump_stamp hands out
  // a fresh value; ensure_stamp_at_least lets a caller keep stamps monotone
  // across solutions copied from older snapshots.
  std::uint64_t global_stamp() const { return global_stamp_; }
  std::uint64_t bump_stamp() { return ++global_stamp_; }
  void ensure_stamp_at_least(std::uint64_t floor) {
    if (global_stamp_ < floor) global_stamp_ = floor;
  }

  std::vector<std::vector<int>> to_partition(bool drop_empty) const;

  // Elementary conf-matrix writes performed by the constructor: one per
  // zeroed entry (K*n) plus one per adjacency endpoint (sum of degrees).
  std::uint64_t build_touches() const { return build_touches_; }

 private:
  const Instance* inst_;
  PenaltyWeights w_;
  std::vector<Bin> bins_;
  std::vector<int> assignment_;
  std::vector<std::vector<std::int32_t>> conf_;  // [item][bin]
  std::int64_t total_penalty_ = 0;
  std::uint64_t global_stamp_ = 0;
  std::uint64_t build_touches_ = 0;
};

// First-fit-decreasing restricted to conflict-free, non-overloaded placements:
// items in weight order (non-increasing by default, ties by index) go to the
// first compatible bin, opening a new bin when none fits. Always feasible.
Solution build_initial_mffd(const Instance& inst, PenaltyWeights w,
                            FfdOrder order = FfdOrder::non_increasing);

// One line per nonempty bin, item ids 1-based, space-separated.
std::string write_solution_text(const Solution& sol);
std::string write_partition_text(const std::vector<std::vector<int>>& bins);

}  // namespace bppc

#endif
