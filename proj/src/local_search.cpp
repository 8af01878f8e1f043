#include "bppc/local_search.hpp"

#include <algorithm>
#include <cassert>

namespace bppc {

namespace {

inline std::int64_t overflow(std::int64_t load, std::int64_t capacity) {
  const std::int64_t over = load - capacity;
  return over > 0 ? over : 0;
}

inline std::int32_t conf_read(const Solution& s, int item, int k,
                              EvalCounters* c) {
  if (c) ++c->conf_reads;
  return s.conf(item, k);
}

inline bool adj_test(const Solution& s, int i, int j, EvalCounters* c) {
  if (c) ++c->adj_tests;
  return s.instance().conflicts.is_conflict(i, j);
}

}  // namespace

std::int64_t delta_relocate(const Solution& s, int item, int to,
                            EvalCounters* c) {
  if (c) ++c->move_evals;
  const int from = s.bin_of(item);
  const std::int64_t q = s.instance().capacity;
  const std::int64_t w = s.instance().weights[static_cast<std::size_t>(item)];
  const std::int64_t conflict_delta =
      conf_read(s, item, to, c) - conf_read(s, item, from, c);
  const std::int64_t weight_delta =
      overflow(s.bin(from).load - w, q) - overflow(s.bin(from).load, q) +
      overflow(s.bin(to).load + w, q) - overflow(s.bin(to).load, q);
  const PenaltyWeights& pw = s.weights();
  return pw.omega_c * conflict_delta + pw.omega_w * weight_delta;
}

std::int64_t delta_swap(const Solution& s, int i, int j, EvalCounters* c) {
  if (c) ++c->move_evals;
  const int bi = s.bin_of(i);
  const int bj = s.bin_of(j);
  // conf(i,bj) and conf(j,bi) still count the partner about to leave; the
  // -2*is_conflict term removes exactly those two phantom endpoints.
  const std::int64_t conflict_delta =
      conf_read(s, i, bj, c) + conf_read(s, j, bi, c) -
      conf_read(s, i, bi, c) - conf_read(s, j, bj, c) -
      2 * static_cast<std::int64_t>(adj_test(s, i, j, c));
  const std::int64_t q = s.instance().capacity;
  const std::int64_t wi = s.instance().weights[static_cast<std::size_t>(i)];
  const std::int64_t wj = s.instance().weights[static_cast<std::size_t>(j)];
  const std::int64_t weight_delta =
      overflow(s.bin(bi).load - wi + wj, q) - overflow(s.bin(bi).load, q) +
      overflow(s.bin(bj).load + wi - wj, q) - overflow(s.bin(bj).load, q);
  const PenaltyWeights& pw = s.weights();
  return pw.omega_c * conflict_delta + pw.omega_w * weight_delta;
}

std::int64_t delta_generalized(const Solution& s, std::span<const int> set_a,
                               int bin_a, std::span<const int> set_b, int bin_b,
                               EvalCounters* c) {
  if (c) ++c->move_evals;
  assert(bin_a != bin_b);
  std::int64_t conflict_delta = 0;
  std::int64_t moved_a = 0, moved_b = 0;
  const auto& weights = s.instance().weights;
  for (int i : set_a) {
    assert(s.bin_of(i) == bin_a);
    conflict_delta += conf_read(s, i, bin_b, c) - conf_read(s, i, bin_a, c);
    moved_a += weights[static_cast<std::size_t>(i)];
  }
  for (int j : set_b) {
    assert(s.bin_of(j) == bin_b);
    conflict_delta += conf_read(s, j, bin_a, c) - conf_read(s, j, bin_b, c);
    moved_b += weights[static_cast<std::size_t>(j)];
  }
  // Conf rows over-subtract edges inside a moved set (those conflicts travel
  // with the set) and double-count edges between the two sets (each endpoint
  // claims a phantom conflict in its destination).
  std::int64_t intra_a = 0, intra_b = 0, inter = 0;
  for (std::size_t x = 0; x < set_a.size(); ++x)
    for (std::size_t y = x + 1; y < set_a.size(); ++y)
      intra_a += adj_test(s, set_a[x], set_a[y], c);
  for (std::size_t x = 0; x < set_b.size(); ++x)
    for (std::size_t y = x + 1; y < set_b.size(); ++y)
      intra_b += adj_test(s, set_b[x], set_b[y], c);
  for (int i : set_a)
    for (int j : set_b) inter += adj_test(s, i, j, c);
  conflict_delta += 2 * (intra_a + intra_b - inter);

  const std::int64_t q = s.instance().capacity;
  const std::int64_t weight_delta =
      overflow(s.bin(bin_a).load - moved_a + moved_b, q) -
      overflow(s.bin(bin_a).load, q) +
      overflow(s.bin(bin_b).load - moved_b + moved_a, q) -
      overflow(s.bin(bin_b).load, q);
  const PenaltyWeights& pw = s.weights();
  return pw.omega_c * conflict_delta + pw.omega_w * weight_delta;
}

void apply_move(Solution& s, const Move& m) {
  for (int x = 0; x < m.count_a; ++x)
    s.relocate_item(m.items_a[static_cast<std::size_t>(x)], m.bin_b);
  if (m.item_b >= 0) s.relocate_item(m.item_b, m.bin_a);
}

std::optional<Move> best_move_between(const Solution& s, int bin_a, int bin_b,
                                      EvalCounters* c) {
  assert(bin_a != bin_b);
  const auto& items_a = s.bin(bin_a).items;
  const auto& items_b = s.bin(bin_b).items;

  std::optional<Move> best;
  auto consider = [&](Move m) {
    if (!best || m.delta < best->delta) best = m;
  };

  for (int i : items_a)
    consider({MoveKind::relocate, bin_a, bin_b, {i, -1}, 1, -1,
              delta_relocate(s, i, bin_b, c)});
  for (int j : items_b)
    consider({MoveKind::relocate, bin_b, bin_a, {j, -1}, 1, -1,
              delta_relocate(s, j, bin_a, c)});
  for (int i : items_a)
    for (int j : items_b)
      consider({MoveKind::swap, bin_a, bin_b, {i, -1}, 1, j,
                delta_swap(s, i, j, c)});

  auto pairs_vs_singles = [&](int two_bin, const std::vector<int>& two_items,
                              int one_bin, const std::vector<int>& one_items) {
    for (std::size_t p = 0; p + 1 < two_items.size(); ++p) {
      const std::array<int, 2> pair{two_items[p], two_items[p + 1]};
      for (int j : one_items) {
        const int single[1] = {j};
        consider({MoveKind::swap2vs1, two_bin, one_bin, pair, 2, j,
                  delta_generalized(s, pair, two_bin, single, one_bin, c)});
      }
    }
  };
  pairs_vs_singles(bin_a, items_a, bin_b, items_b);
  pairs_vs_singles(bin_b, items_b, bin_a, items_a);

  return best;
}

std::vector<int> problematic_items(const Solution& s) {
  std::vector<int> out;
  for (int i = 0; i < s.num_items(); ++i) {
    const int k = s.bin_of(i);
    if (s.conf(i, k) > 0 || s.excess(k) > 0) out.push_back(i);
  }
  return out;
}

DescentStats LocalSearch::descend(Solution& s, Rng& rng, bool use_pair_cache) {
  DescentStats stats;
  const std::size_t k_count = static_cast<std::size_t>(s.num_bins());
  if (stride_ < k_count) {
    stride_ = k_count;
    pair_stamp_.assign(stride_ * stride_, 0);
  }

  // Stamps must grow monotonically even when the caller hands us a solution
  // copied from an older snapshot, otherwise stale cache entries could look
  // fresh. Entries older than descent_base are always re-evaluated.
  s.ensure_stamp_at_least(stamp_floor_);
  const std::uint64_t descent_base = s.bump_stamp();

  std::vector<int> outer, inner;
  bool keep_looping = true;
  while (keep_looping) {
    ++stats.loops;
    bool applied_any = false;
    bool applied_improving = false;

    outer.clear();
    for (int k = 0; k < static_cast<int>(k_count); ++k)
      if (s.phi(k) > 0) outer.push_back(k);
    rng.shuffle(outer);

    for (int a : outer) {
      if (s.phi(a) == 0) continue;  // repaired earlier in this pass
      inner.clear();
      for (int k = 0; k < static_cast<int>(k_count); ++k)
        if (k != a) inner.push_back(k);
      rng.shuffle(inner);

      for (int b : inner) {
        const std::size_t idx =
            static_cast<std::size_t>(std::min(a, b)) * stride_ +
            static_cast<std::size_t>(std::max(a, b));
        const std::uint64_t seen = pair_stamp_[idx];
        const bool dirty = seen < descent_base ||
                           s.bin(a).modified_stamp > seen ||
                           s.bin(b).modified_stamp > seen;
        if (use_pair_cache && stats.loops > 1 && !dirty) continue;

        const auto move = best_move_between(s, a, b, &counters_);
        ++stats.pairs_evaluated;
        pair_stamp_[idx] = s.global_stamp();
        if (!move) continue;
        if (move->delta < 0 || (move->delta == 0 && stats.loops == 1)) {
          apply_move(s, *move);
          ++stats.moves_applied;
          applied_any = true;
          if (move->delta < 0) applied_improving = true;
        }
      }
    }
    // Zero-delta applications are first-pass only, but they dirty their bins,
    // so one more pass confirms no improving move was uncovered.
    keep_looping = applied_improving || (stats.loops == 1 && applied_any);
  }

  stamp_floor_ = s.global_stamp();
  return stats;
}

}  // namespace bppc
