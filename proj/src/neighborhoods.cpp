#include "bppc/neighborhoods.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>

#include "bppc/hungarian.hpp"

namespace bppc {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
constexpr std::int64_t kAssignEpsilon = 1;

inline std::int64_t overflow(std::int64_t load, std::int64_t capacity) {
  const std::int64_t over = load - capacity;
  return over > 0 ? over : 0;
}

}  // namespace

std::int64_t remove_cost(const Solution& s, int item, EvalCounters* c) {
  if (c) {
    ++c->move_evals;
    ++c->conf_reads;
  }
  const int k = s.bin_of(item);
  const std::int64_t q = s.instance().capacity;
  const std::int64_t w = s.instance().weights[static_cast<std::size_t>(item)];
  const PenaltyWeights& pw = s.weights();
  return -pw.omega_c * s.conf(item, k) +
         pw.omega_w * (overflow(s.bin(k).load - w, q) -
                       overflow(s.bin(k).load, q));
}

std::int64_t insert_cost(const Solution& s, int item, int k, EvalCounters* c) {
  assert(k != s.bin_of(item));
  if (c) {
    ++c->move_evals;
    ++c->conf_reads;
  }
  const std::int64_t q = s.instance().capacity;
  const std::int64_t w = s.instance().weights[static_cast<std::size_t>(item)];
  const PenaltyWeights& pw = s.weights();
  return pw.omega_c * s.conf(item, k) +
         pw.omega_w * (overflow(s.bin(k).load + w, q) -
                       overflow(s.bin(k).load, q));
}

std::int64_t replace_cost(const Solution& s, int incoming, int outgoing,
                          EvalCounters* c) {
  if (incoming == outgoing) return 0;
  assert(s.bin_of(incoming) != s.bin_of(outgoing));
  if (c) {
    ++c->move_evals;
    c->conf_reads += 2;
    ++c->adj_tests;
  }
  const int k = s.bin_of(outgoing);
  const std::int64_t q = s.instance().capacity;
  const auto& weights = s.instance().weights;
  // conf(incoming, k) still counts `outgoing`, which leaves before the
  // insertion lands, hence the is_conflict correction.
  const std::int64_t conflict_delta =
      s.conf(incoming, k) -
      (s.instance().conflicts.is_conflict(incoming, outgoing) ? 1 : 0) -
      s.conf(outgoing, k);
  const std::int64_t new_load =
      s.bin(k).load - weights[static_cast<std::size_t>(outgoing)] +
      weights[static_cast<std::size_t>(incoming)];
  const PenaltyWeights& pw = s.weights();
  return pw.omega_c * conflict_delta +
         pw.omega_w * (overflow(new_load, q) - overflow(s.bin(k).load, q));
}

std::optional<std::pair<int, std::int64_t>> best_insertion(const Solution& s,
                                                           int item,
                                                           int excluded_bin) {
  const int own = s.bin_of(item);
  const std::int64_t removal = remove_cost(s, item);
  std::optional<std::pair<int, std::int64_t>> best;
  for (int k = 0; k < s.num_bins(); ++k) {
    if (k == own || k == excluded_bin) continue;
    const std::int64_t delta = removal + insert_cost(s, item, k);
    if (!best || delta < best->second) best = {k, delta};
  }
  return best;
}

bool assignment_neighborhood(Solution& s, Rng& rng, int max_selection) {
  const std::vector<int> problematic = problematic_items(s);
  if (problematic.empty()) return false;
  const int pivot =
      problematic[static_cast<std::size_t>(rng.below(problematic.size()))];
  const int pivot_bin = s.bin_of(pivot);

  std::vector<int> other_bins;
  for (int k = 0; k < s.num_bins(); ++k)
    if (k != pivot_bin && !s.bin(k).items.empty()) other_bins.push_back(k);
  if (max_selection > 0 &&
      static_cast<int>(other_bins.size()) + 1 > max_selection) {
    rng.shuffle(other_bins);
    other_bins.resize(static_cast<std::size_t>(max_selection - 1));
    std::sort(other_bins.begin(), other_bins.end());
  }
  if (other_bins.empty()) return false;

  // selection[a] is removed from hole_bin[a]; matrix entry (a, b) is the
  // penalty delta of bin hole_bin[b] when its removed occupant is replaced by
  // selection[a]. Every bin loses exactly one item, so these per-bin deltas
  // add up exactly for any permutation, and the identity row/column costs 0.
  std::vector<int> selection{pivot};
  for (int k : other_bins) {
    const auto& items = s.bin(k).items;
    selection.push_back(items[static_cast<std::size_t>(rng.below(items.size()))]);
  }
  const std::size_t m = selection.size();

  std::vector<std::vector<std::int64_t>> cost(
      m, std::vector<std::int64_t>(m, 0));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      cost[a][b] = replace_cost(s, selection[a], selection[b]);
  cost[0][0] += kAssignEpsilon;  // nudge the pivot out of its own hole

  const std::vector<int> matching = hungarian_assign(cost);

  bool identity = true;
  std::int64_t raw_delta = 0;
  for (std::size_t a = 0; a < m; ++a) {
    if (matching[a] != static_cast<int>(a)) identity = false;
    raw_delta +=
        replace_cost(s, selection[a], selection[static_cast<std::size_t>(matching[a])]);
  }
  if (identity || raw_delta > 0) return false;

  // Hole bins must be frozen before the first relocation shifts anyone.
  std::vector<int> hole_bin(m);
  for (std::size_t b = 0; b < m; ++b) hole_bin[b] = s.bin_of(selection[b]);
  for (std::size_t a = 0; a < m; ++a) {
    if (matching[a] == static_cast<int>(a)) continue;
    s.relocate_item(selection[a],
                    hole_bin[static_cast<std::size_t>(matching[a])]);
  }
  return true;
}

EjectionGraph build_ejection_graph(const Solution& s, Rng& rng) {
  EjectionGraph g;
  g.bin_order.resize(static_cast<std::size_t>(s.num_bins()));
  std::iota(g.bin_order.begin(), g.bin_order.end(), 0);
  rng.shuffle(g.bin_order);
  g.bin_pos.resize(g.bin_order.size());
  for (std::size_t p = 0; p < g.bin_order.size(); ++p)
    g.bin_pos[static_cast<std::size_t>(g.bin_order[p])] = static_cast<int>(p);
  return g;
}

std::optional<EjectionPlan> find_best_ejection(const Solution& s,
                                               const EjectionGraph& g,
                                               EvalCounters* c) {
  const int k_count = s.num_bins();
  if (k_count < 2) return std::nullopt;

  // Node states. Item parents: kFromSource / kFromZero (a finished chain
  // precedes this one) / item id. Zero-node parent: the inserted item.
  constexpr int kFromSource = -1;
  constexpr int kFromZero = -2;
  std::vector<std::int64_t> dist(static_cast<std::size_t>(s.num_items()), kInf);
  std::vector<int> parent(static_cast<std::size_t>(s.num_items()), kFromSource);
  std::vector<std::int64_t> dzero(static_cast<std::size_t>(k_count), kInf);
  std::vector<int> zparent(static_cast<std::size_t>(k_count), -1);
  std::vector<int> zprev_zero(static_cast<std::size_t>(s.num_items()), -1);

  std::vector<int> earlier_items;  // all items of bins before the current one
  std::int64_t best_zero_prefix = kInf;  // min dzero over earlier bins
  int best_zero_bin = -1;

  for (int pos = 0; pos < k_count; ++pos) {
    const int bin = g.bin_order[static_cast<std::size_t>(pos)];

    for (int item : s.bin(bin).items) {
      const std::int64_t removal = remove_cost(s, item, c);
      std::int64_t best = removal;  // arc from the source
      int par = kFromSource;
      int via_zero = -1;
      if (best_zero_prefix < 0 && best_zero_prefix + removal < best) {
        best = best_zero_prefix + removal;  // start of a later disjoint chain
        par = kFromZero;
        via_zero = best_zero_bin;
      }
      for (int prev : earlier_items) {
        const std::int64_t cand =
            dist[static_cast<std::size_t>(prev)] + replace_cost(s, prev, item, c);
        if (cand < best) {
          best = cand;
          par = prev;
          via_zero = -1;
        }
      }
      dist[static_cast<std::size_t>(item)] = best;
      parent[static_cast<std::size_t>(item)] = par;
      zprev_zero[static_cast<std::size_t>(item)] = via_zero;
    }

    std::int64_t zbest = kInf;
    int zpar = -1;
    for (int prev : earlier_items) {
      const std::int64_t cand =
          dist[static_cast<std::size_t>(prev)] + insert_cost(s, prev, bin, c);
      if (cand < zbest) {
        zbest = cand;
        zpar = prev;
      }
    }
    dzero[static_cast<std::size_t>(bin)] = zbest;
    zparent[static_cast<std::size_t>(bin)] = zpar;

    if (zbest < best_zero_prefix) {
      best_zero_prefix = zbest;
      best_zero_bin = bin;
    }
    for (int item : s.bin(bin).items) earlier_items.push_back(item);
  }

  int final_zero = -1;
  for (int k = 0; k < k_count; ++k)
    if (dzero[static_cast<std::size_t>(k)] < kInf &&
        (final_zero < 0 || dzero[static_cast<std::size_t>(k)] <
                               dzero[static_cast<std::size_t>(final_zero)]))
      final_zero = k;
  if (final_zero < 0) return std::nullopt;

  EjectionPlan plan;
  plan.cost = dzero[static_cast<std::size_t>(final_zero)];
  // Walk backwards: each item on the path relocates to the bin of its
  // successor node (bin indices are original ones; path bins are distinct).
  int zero_bin = final_zero;
  while (zero_bin >= 0) {
    int item = zparent[static_cast<std::size_t>(zero_bin)];
    plan.relocations.emplace_back(item, zero_bin);
    while (parent[static_cast<std::size_t>(item)] >= 0) {
      const int prev = parent[static_cast<std::size_t>(item)];
      plan.relocations.emplace_back(prev, s.bin_of(item));
      item = prev;
    }
    zero_bin = parent[static_cast<std::size_t>(item)] == -2
                   ? zprev_zero[static_cast<std::size_t>(item)]
                   : -1;
  }
  std::reverse(plan.relocations.begin(), plan.relocations.end());
  return plan;
}

bool ejection_chain_step(Solution& s, Rng& rng) {
  if (s.num_bins() < 2) return false;
  const EjectionGraph g = build_ejection_graph(s, rng);
  const auto plan = find_best_ejection(s, g);
  if (!plan || plan->cost >= 0) return false;
  [[maybe_unused]] const std::int64_t before = s.total_penalty();
  for (auto [item, target] : plan->relocations) s.relocate_item(item, target);
  assert(s.total_penalty() - before == plan->cost);
  return true;
}

bool grenade_step(Solution& s, Rng& rng) {
  if (s.num_bins() < 2) return false;
  std::vector<int> targets = problematic_items(s);
  if (targets.empty()) return false;
  rng.shuffle(targets);

  bool changed = false;
  std::vector<std::tuple<int, int, int>> record, best_record;  // item, to, from
  for (int pivot : targets) {
    const int origin = s.bin_of(pivot);
    std::int64_t best_delta = 0;
    best_record.clear();

    for (int bin = 0; bin < s.num_bins(); ++bin) {
      if (bin == origin) continue;
      // Occupants of `bin` that conflict with the pivot, frozen before the
      // trial relocations start.
      std::vector<int> clashing;
      for (int other : s.bin(bin).items)
        if (s.instance().conflicts.is_conflict(pivot, other))
          clashing.push_back(other);

      const std::int64_t penalty_before = s.total_penalty();
      record.clear();
      record.emplace_back(pivot, bin, origin);
      s.relocate_item(pivot, bin);
      for (int item : clashing) {
        const auto target = best_insertion(s, item, /*excluded_bin=*/bin);
        if (!target) break;  // cannot happen with >= 2 bins; keep safe
        record.emplace_back(item, target->first, bin);
        s.relocate_item(item, target->first);
      }
      const std::int64_t delta = s.total_penalty() - penalty_before;
      for (auto it = record.rbegin(); it != record.rend(); ++it)
        s.relocate_item(std::get<0>(*it), std::get<2>(*it));

      if (delta < best_delta) {
        best_delta = delta;
        best_record = record;
      }
    }

    if (!best_record.empty()) {
      for (auto [item, to, from] : best_record) {
        (void)from;
        s.relocate_item(item, to);
      }
      changed = true;
    }
  }
  return changed;
}

}  // namespace bppc
