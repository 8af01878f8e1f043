#include "bppc/solution.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bppc {

std::int64_t bin_penalty(const Bin& bin, const PenaltyWeights& w,
                         std::int64_t capacity) {
  const std::int64_t over = bin.load - capacity;
  return w.omega_c * bin.conflict_count + w.omega_w * (over > 0 ? over : 0);
}

Solution::Solution(const Instance& inst, PenaltyWeights w,
                   std::vector<std::vector<int>> partition)
    : inst_(&inst), w_(w) {
  if (w.omega_c <= 0 || w.omega_w <= 0)
    throw std::logic_error("penalty weights must be positive");

  const int n = inst.n;
  const int k_count = static_cast<int>(partition.size());
  assignment_.assign(static_cast<std::size_t>(n), -1);
  bins_.resize(partition.size());
  for (int k = 0; k < k_count; ++k) {
    Bin& bin = bins_[static_cast<std::size_t>(k)];
    bin.items = std::move(partition[static_cast<std::size_t>(k)]);
    for (int item : bin.items) {
      if (item < 0 || item >= n)
        throw std::logic_error("partition references an unknown item");
      if (assignment_[static_cast<std::size_t>(item)] != -1)
        throw std::logic_error("item appears in two bins");
      assignment_[static_cast<std::size_t>(item)] = k;
      bin.load += inst.weights[static_cast<std::size_t>(item)];
    }
  }
  for (int i = 0; i < n; ++i)
    if (assignment_[static_cast<std::size_t>(i)] == -1)
      throw std::logic_error("item missing from partition");

  // conf build: K*n zeroed entries plus one increment per adjacency endpoint.
  conf_.assign(static_cast<std::size_t>(n),
               std::vector<std::int32_t>(static_cast<std::size_t>(k_count), 0));
  build_touches_ =
      static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(k_count);
  for (int i = 0; i < n; ++i) {
    const int k = assignment_[static_cast<std::size_t>(i)];
    for (int j : inst.conflicts.adjacent(i)) {
      ++conf_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      ++build_touches_;
    }
  }

  total_penalty_ = 0;
  for (int k = 0; k < k_count; ++k) {
    Bin& bin = bins_[static_cast<std::size_t>(k)];
    std::int64_t endpoints = 0;
    for (int item : bin.items)
      endpoints += conf_[static_cast<std::size_t>(item)][static_cast<std::size_t>(k)];
    bin.conflict_count = endpoints / 2;  // each internal pair counted twice
    total_penalty_ += bin_penalty(bin, w_, inst.capacity);
  }
}

int Solution::nonempty_bins() const {
  int count = 0;
  for (const Bin& b : bins_)
    if (!b.items.empty()) ++count;
  return count;
}

void Solution::relocate_item(int item, int to) {
  const int from = assignment_[static_cast<std::size_t>(item)];
  if (to == from) throw std::logic_error("relocation to the item's own bin");
  if (to < 0 || to >= num_bins())
    throw std::logic_error("relocation target out of range");

  Bin& src = bins_[static_cast<std::size_t>(from)];
  Bin& dst = bins_[static_cast<std::size_t>(to)];
  const std::int64_t capacity = inst_->capacity;
  const std::int64_t phi_before =
      bin_penalty(src, w_, capacity) + bin_penalty(dst, w_, capacity);

  auto pos = std::find(src.items.begin(), src.items.end(), item);
  src.items.erase(pos);
  const std::int64_t weight = inst_->weights[static_cast<std::size_t>(item)];
  src.load -= weight;
  src.conflict_count -= conf(item, from);
  dst.items.push_back(item);
  dst.load += weight;
  dst.conflict_count += conf(item, to);

  for (int j : inst_->conflicts.adjacent(item)) {
    auto& row = conf_[static_cast<std::size_t>(j)];
    --row[static_cast<std::size_t>(from)];
    ++row[static_cast<std::size_t>(to)];
  }
  assignment_[static_cast<std::size_t>(item)] = to;

  total_penalty_ +=
      bin_penalty(src, w_, capacity) + bin_penalty(dst, w_, capacity) -
      phi_before;
  src.modified_stamp = ++global_stamp_;
  dst.modified_stamp = ++global_stamp_;
}

void Solution::remove_bin(ReduceRule rule, Rng& rng) {
  const int k_count = num_bins();
  if (k_count < 2) throw std::logic_error("remove_bin needs at least two bins");

  int victim = 0;
  if (rule == ReduceRule::random) {
    victim = static_cast<int>(rng.below(static_cast<std::uint64_t>(k_count)));
  } else {
    for (int k = 1; k < k_count; ++k)
      if (bins_[static_cast<std::size_t>(k)].load <
          bins_[static_cast<std::size_t>(victim)].load)
        victim = k;
  }

  const std::vector<int> evicted = bins_[static_cast<std::size_t>(victim)].items;
  for (int item : evicted) {
    int to = static_cast<int>(rng.below(static_cast<std::uint64_t>(k_count - 1)));
    if (to >= victim) ++to;
    relocate_item(item, to);
  }

  // Drop the empty column: swap it with the last bin and pop. The swapped
  // bin's contents are unchanged but its index is new, so its stamp is bumped
  // to invalidate any cached pair evaluations that mention it.
  const int last = k_count - 1;
  if (victim != last) {
    std::swap(bins_[static_cast<std::size_t>(victim)],
              bins_[static_cast<std::size_t>(last)]);
    for (int item : bins_[static_cast<std::size_t>(victim)].items)
      assignment_[static_cast<std::size_t>(item)] = victim;
    for (auto& row : conf_)
      std::swap(row[static_cast<std::size_t>(victim)],
                row[static_cast<std::size_t>(last)]);
    bins_[static_cast<std::size_t>(victim)].modified_stamp = ++global_stamp_;
  }
  bins_.pop_back();
  for (auto& row : conf_) row.pop_back();
}

std::vector<std::vector<int>> Solution::to_partition(bool drop_empty) const {
  std::vector<std::vector<int>> out;
  out.reserve(bins_.size());
  for (const Bin& b : bins_)
    if (!drop_empty || !b.items.empty()) out.push_back(b.items);
  return out;
}

Solution build_initial_mffd(const Instance& inst, PenaltyWeights w,
                            FfdOrder order) {
  std::vector<int> items(static_cast<std::size_t>(inst.n));
  std::iota(items.begin(), items.end(), 0);
  std::stable_sort(items.begin(), items.end(), [&](int a, int b) {
    const std::int64_t wa = inst.weights[static_cast<std::size_t>(a)];
    const std::int64_t wb = inst.weights[static_cast<std::size_t>(b)];
    if (wa != wb)
      return order == FfdOrder::non_increasing ? wa > wb : wa < wb;
    return a < b;
  });

  std::vector<std::vector<int>> bins;
  std::vector<std::int64_t> loads;
  for (int item : items) {
    const std::int64_t weight = inst.weights[static_cast<std::size_t>(item)];
    bool placed = false;
    for (std::size_t k = 0; k < bins.size() && !placed; ++k) {
      if (loads[k] + weight > inst.capacity) continue;
      bool clash = false;
      for (int other : bins[k])
        if (inst.conflicts.is_conflict(item, other)) {
          clash = true;
          break;
        }
      if (clash) continue;
      bins[k].push_back(item);
      loads[k] += weight;
      placed = true;
    }
    if (!placed) {
      bins.push_back({item});
      loads.push_back(weight);
    }
  }
  return Solution(inst, w, std::move(bins));
}

std::string write_partition_text(const std::vector<std::vector<int>>& bins) {
  std::ostringstream out;
  for (const auto& bin : bins) {
    if (bin.empty()) continue;
    for (std::size_t i = 0; i < bin.size(); ++i)
      out << (i ? " " : "") << bin[i] + 1;
    out << '\n';
  }
  return out.str();
}

std::string write_solution_text(const Solution& sol) {
  return write_partition_text(sol.to_partition(/*drop_empty=*/true));
}

}  // namespace bppc
