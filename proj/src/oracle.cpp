#include "bppc/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "bppc/solution.hpp"

namespace bppc {

namespace {

struct OracleSearch {
  const Instance* inst;
  std::vector<int> order;            // items, heaviest first
  std::vector<std::int64_t> suffix;  // remaining weight from position t on
  std::vector<std::vector<int>> bins;
  std::vector<std::int64_t> loads;
  std::int64_t free_open = 0;  // spare capacity over open bins
  int best = 0;
  std::uint64_t budget = 0;
  bool exhausted = false;

  void dfs(std::size_t t, int used) {
    if (exhausted) return;
    if (budget == 0) {
      exhausted = true;
      return;
    }
    --budget;
    if (used >= best) return;
    if (t == order.size()) {
      best = used;
      return;
    }
    // Even with all spare space used, the leftover weight forces this many
    // extra bins.
    const std::int64_t leftover = suffix[t] - free_open;
    if (leftover > 0 &&
        used + (leftover + inst->capacity - 1) / inst->capacity >=
            static_cast<std::int64_t>(best))
      return;

    const int item = order[t];
    const std::int64_t w =
        inst->weights[static_cast<std::size_t>(item)];
    for (int k = 0; k < used; ++k) {
      if (loads[static_cast<std::size_t>(k)] + w > inst->capacity) continue;
      bool clash = false;
      for (int other : bins[static_cast<std::size_t>(k)])
        if (inst->conflicts.is_conflict(item, other)) {
          clash = true;
          break;
        }
      if (clash) continue;
      bins[static_cast<std::size_t>(k)].push_back(item);
      loads[static_cast<std::size_t>(k)] += w;
      free_open -= w;
      dfs(t + 1, used);
      free_open += w;
      loads[static_cast<std::size_t>(k)] -= w;
      bins[static_cast<std::size_t>(k)].pop_back();
      if (exhausted) return;
    }
    if (used + 1 < best) {  // symmetry break: only the next unopened bin
      bins[static_cast<std::size_t>(used)].push_back(item);
      loads[static_cast<std::size_t>(used)] = w;
      free_open += inst->capacity - w;
      dfs(t + 1, used + 1);
      free_open -= inst->capacity - w;
      loads[static_cast<std::size_t>(used)] = 0;
      bins[static_cast<std::size_t>(used)].pop_back();
    }
  }
};

}  // namespace

std::optional<int> exact_optimum_oracle(const Instance& inst,
                                        std::uint64_t node_budget) {
  OracleSearch search;
  search.inst = &inst;
  search.order.resize(static_cast<std::size_t>(inst.n));
  std::iota(search.order.begin(), search.order.end(), 0);
  std::stable_sort(search.order.begin(), search.order.end(), [&](int a, int b) {
    return inst.weights[static_cast<std::size_t>(a)] >
           inst.weights[static_cast<std::size_t>(b)];
  });
  search.suffix.assign(search.order.size() + 1, 0);
  for (std::size_t t = search.order.size(); t-- > 0;)
    search.suffix[t] =
        search.suffix[t + 1] +
        inst.weights[static_cast<std::size_t>(search.order[t])];

  // Greedy upper bound; the incumbent must be a real bin count, not n+1,
  // because the search only proves optimality below the incumbent.
  search.best = build_initial_mffd(inst, PenaltyWeights{1, 1}).nonempty_bins();
  search.bins.assign(static_cast<std::size_t>(inst.n), {});
  search.loads.assign(static_cast<std::size_t>(inst.n), 0);
  search.budget = node_budget;
  search.dfs(0, 0);
  if (search.exhausted) return std::nullopt;
  return search.best;
}

}  // namespace bppc
