#include "bppc/set_covering.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace bppc {

std::uint64_t column_key(const std::vector<int>& sorted_items) {
  // FNV-1a over the id bytes; collisions are resolved by full comparison.
  std::uint64_t h = 1469598103934665603ULL;
  for (int item : sorted_items) {
    std::uint64_t v = static_cast<std::uint64_t>(item);
    for (int byte = 0; byte < 4; ++byte) {
      h ^= (v >> (8 * byte)) & 0xff;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

void ColumnPool::set_limit(std::size_t limit) {
  limit_ = limit;
  evict_overflow();
}

bool ColumnPool::add(std::vector<int> items, std::int64_t cost) {
  if (items.empty()) return false;
  std::sort(items.begin(), items.end());
  const std::uint64_t key = column_key(items);
  if (auto it = ages_by_key_.find(key); it != ages_by_key_.end()) {
    for (std::uint64_t age : it->second) {
      const Column& existing = cols_[static_cast<std::size_t>(age - front_age_)];
      if (existing.items == items) return false;
    }
  }
  Column col;
  col.items = std::move(items);
  col.cost = cost;
  col.key = key;
  col.age = next_age_++;
  ages_by_key_[key].push_back(col.age);
  cols_.push_back(std::move(col));
  evict_overflow();
  return true;
}

void ColumnPool::evict_overflow() {
  while (cols_.size() > limit_) {
    const Column& victim = cols_.front();
    auto it = ages_by_key_.find(victim.key);
    auto& ages = it->second;
    ages.erase(std::find(ages.begin(), ages.end(), victim.age));
    if (ages.empty()) ages_by_key_.erase(it);
    cols_.pop_front();
    ++front_age_;
  }
}

void ColumnPool::add_solution(const Solution& sol) {
  for (int k = 0; k < sol.num_bins(); ++k) {
    const Bin& bin = sol.bin(k);
    if (bin.items.empty()) continue;
    add(bin.items, bin_penalty(bin, sol.weights(), sol.instance().capacity));
  }
}

void ColumnPool::dump(std::ostream& out) const {
  for (const Column& col : cols_) {
    out << col.cost;
    for (int item : col.items) out << ' ' << item + 1;
    out << '\n';
  }
}

ColumnPool ColumnPool::parse(std::istream& in, std::size_t limit) {
  ColumnPool pool(limit);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::int64_t cost = 0;
    if (!(ls >> cost)) throw std::runtime_error("pool line without a cost");
    std::vector<int> items;
    int id = 0;
    while (ls >> id) {
      if (id < 1) throw std::runtime_error("pool item ids are 1-based");
      items.push_back(id - 1);
    }
    if (!ls.eof()) throw std::runtime_error("malformed pool line: " + line);
    pool.add(std::move(items), cost);
  }
  return pool;
}

namespace {

struct CoverSearch {
  int n = 0;
  int max_columns = 0;
  bool partition_mode = false;
  std::vector<const Column*> cols;
  std::vector<std::vector<int>> candidates;  // per item, column indices
  std::vector<int> covered;
  int uncovered = 0;
  std::size_t max_col_size = 0;

  std::uint64_t budget = 0;
  bool exhausted = false;

  std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
  std::vector<int> stack, best_stack;
  bool improved = false;

  void run(int first_uncovered, int used, std::int64_t acc) {
    if (exhausted) return;
    if (budget == 0) {
      exhausted = true;
      return;
    }
    --budget;

    while (first_uncovered < n &&
           covered[static_cast<std::size_t>(first_uncovered)] > 0)
      ++first_uncovered;
    if (first_uncovered == n) {
      if (acc < best_cost) {
        best_cost = acc;
        best_stack = stack;
        improved = true;
      }
      return;
    }
    if (used == max_columns) return;
    const std::uint64_t budget_left =
        static_cast<std::uint64_t>(max_columns - used) * max_col_size;
    if (static_cast<std::uint64_t>(uncovered) > budget_left) return;

    for (int j : candidates[static_cast<std::size_t>(first_uncovered)]) {
      const Column& col = *cols[static_cast<std::size_t>(j)];
      if (acc + col.cost >= best_cost) break;  // cost-sorted children
      if (partition_mode) {
        bool overlap = false;
        for (int item : col.items)
          if (covered[static_cast<std::size_t>(item)] > 0) {
            overlap = true;
            break;
          }
        if (overlap) continue;
      }
      for (int item : col.items)
        if (covered[static_cast<std::size_t>(item)]++ == 0) --uncovered;
      stack.push_back(j);
      run(first_uncovered, used + 1, acc + col.cost);
      stack.pop_back();
      for (int item : col.items)
        if (--covered[static_cast<std::size_t>(item)] == 0) ++uncovered;
      if (exhausted) return;
    }
  }
};

}  // namespace

CoverSelection solve_restricted_cover(const ColumnPool& pool, int n,
                                      int max_columns,
                                      std::uint64_t node_budget,
                                      const CoverSelection& fallback,
                                      bool partition_mode) {
  CoverSearch search;
  search.n = n;
  search.max_columns = max_columns;
  search.partition_mode = partition_mode;
  search.budget = node_budget;
  search.cols.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    search.cols.push_back(&pool.at(i));
    search.max_col_size = std::max(search.max_col_size, pool.at(i).items.size());
  }

  search.candidates.resize(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < search.cols.size(); ++j)
    for (int item : search.cols[j]->items)
      if (item >= 0 && item < n)
        search.candidates[static_cast<std::size_t>(item)].push_back(
            static_cast<int>(j));
  for (auto& list : search.candidates)
    std::stable_sort(list.begin(), list.end(), [&](int a, int b) {
      return search.cols[static_cast<std::size_t>(a)]->cost <
             search.cols[static_cast<std::size_t>(b)]->cost;
    });

  search.covered.assign(static_cast<std::size_t>(n), 0);
  search.uncovered = n;
  search.best_cost = fallback.cost;
  search.run(0, 0, 0);

  CoverSelection result;
  result.proven_optimal = !search.exhausted;
  if (search.improved) {
    result.cost = search.best_cost;
    for (int j : search.best_stack)
      result.columns.push_back(search.cols[static_cast<std::size_t>(j)]->items);
  } else {
    result.columns = fallback.columns;
    result.cost = fallback.cost;
  }
  return result;
}

Solution cover_to_solution(const std::vector<std::vector<int>>& selection,
                           const Instance& inst, PenaltyWeights w,
                           int min_bins) {
  std::vector<std::vector<int>> bins = selection;
  std::vector<std::vector<int>> owners(static_cast<std::size_t>(inst.n));
  for (std::size_t k = 0; k < bins.size(); ++k)
    for (int item : bins[k]) {
      if (item < 0 || item >= inst.n)
        throw std::logic_error("cover references an unknown item");
      owners[static_cast<std::size_t>(item)].push_back(static_cast<int>(k));
    }

  std::vector<std::int64_t> loads(bins.size(), 0);
  for (std::size_t k = 0; k < bins.size(); ++k)
    for (int item : bins[k])
      loads[k] += inst.weights[static_cast<std::size_t>(item)];

  for (int item = 0; item < inst.n; ++item) {
    auto& holders = owners[static_cast<std::size_t>(item)];
    if (holders.empty())
      throw std::logic_error("cover misses an item");
    if (holders.size() < 2) continue;

    // Removal delta of `item` from bin k, against current pruned contents:
    // always <= 0; keep the copy whose removal would help the least.
    auto removal_delta = [&](int k) {
      std::int64_t clashes = 0;
      for (int other : bins[static_cast<std::size_t>(k)])
        if (other != item && inst.conflicts.is_conflict(item, other)) ++clashes;
      const std::int64_t weight =
          inst.weights[static_cast<std::size_t>(item)];
      const std::int64_t over_before =
          std::max<std::int64_t>(0, loads[static_cast<std::size_t>(k)] -
                                        inst.capacity);
      const std::int64_t over_after =
          std::max<std::int64_t>(0, loads[static_cast<std::size_t>(k)] -
                                        weight - inst.capacity);
      return -w.omega_c * clashes + w.omega_w * (over_after - over_before);
    };

    int keep = holders[0];
    std::int64_t keep_delta = removal_delta(holders[0]);
    for (std::size_t h = 1; h < holders.size(); ++h) {
      const std::int64_t d = removal_delta(holders[h]);
      if (d > keep_delta) {
        keep_delta = d;
        keep = holders[h];
      }
    }
    for (int k : holders) {
      if (k == keep) continue;
      auto& bin = bins[static_cast<std::size_t>(k)];
      bin.erase(std::find(bin.begin(), bin.end(), item));
      loads[static_cast<std::size_t>(k)] -=
          inst.weights[static_cast<std::size_t>(item)];
    }
    holders = {keep};
  }

  while (static_cast<int>(bins.size()) < min_bins) bins.emplace_back();
  return Solution(inst, w, std::move(bins));
}

std::int64_t adapt_pool_limit(std::int64_t limit, bool proven_optimal) {
  const double scaled =
      static_cast<double>(limit) * (proven_optimal ? 1.15 : 0.85);
  return std::clamp<std::int64_t>(std::llround(scaled), 100, 100000);
}

}  // namespace bppc
