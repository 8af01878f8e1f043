#ifndef BPPC_LOCAL_SEARCH_HPP
#define BPPC_LOCAL_SEARCH_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bppc/rng.hpp"
#include "bppc/solution.hpp"

namespace bppc {

// Work counters for the O(1)-evaluation claim: conf-matrix reads and adjacency
// membership tests per move evaluation.
struct EvalCounters {
  std::uint64_t conf_reads = 0;
  std::uint64_t adj_tests = 0;
  std::uint64_t move_evals = 0;
  std::uint64_t touches() const { return conf_reads + adj_tests; }
};

enum class MoveKind { relocate, swap, swap2vs1 };

// items_a leave bin_a for bin_b; item_b (when present) goes the other way.
// swap2vs1 always keeps its two-item side in bin_a.
struct Move {
  MoveKind kind = MoveKind::relocate;
  int bin_a = -1;
  int bin_b = -1;
  std::array<int, 2> items_a{-1, -1};
  int count_a = 0;
  int item_b = -1;  // -1 = none
  std::int64_t delta = 0;
};

// Exact total-penalty deltas from conf lookups; no solution state is touched.
std::int64_t delta_relocate(const Solution& s, int item, int to,
                            EvalCounters* c = nullptr);
std::int64_t delta_swap(const Solution& s, int i, int j,
                        EvalCounters* c = nullptr);
// Exchanges set_a (subset of bin_a) with set_b (subset of bin_b); either set
// may be empty. Cost: one conf read per moved item per side, one adjacency
// test per intra/inter pair of the sets.
std::int64_t delta_generalized(const Solution& s, std::span<const int> set_a,
                               int bin_a, std::span<const int> set_b, int bin_b,
                               EvalCounters* c = nullptr);

void apply_move(Solution& s, const Move& m);

// Best of relocate / swap / swap-two-consecutive-vs-one over one bin pair;
// first-encountered wins ties. nullopt when both bins are empty.
std::optional<Move> best_move_between(const Solution& s, int bin_a, int bin_b,
                                      EvalCounters* c = nullptr);

struct DescentStats {
  std::uint64_t pairs_evaluated = 0;
  std::uint64_t moves_applied = 0;
  int loops = 0;
};

// Steepest-style descent over bin pairs. Each loop pass visits every
// (penalized bin, other bin) pair in fresh random order and applies the pair's
// best move when it improves; zero-delta moves are applied in the first pass
// only. Later passes skip pairs whose bins are unchanged since their last
// evaluation (pair stamp cache); the first pass evaluates unconditionally, so
// the cache can never hide an improving move. Terminates once a pass applies
// no strictly improving move.
class LocalSearch {
 public:
  DescentStats descend(Solution& s, Rng& rng, bool use_pair_cache = true);
  const EvalCounters& counters() const { return counters_; }

 private:
  std::vector<std::uint64_t> pair_stamp_;
  std::size_t stride_ = 0;
  std::uint64_t stamp_floor_ = 0;  // keeps stamps monotone across snapshots
  EvalCounters counters_;
};

// Items currently in conflict inside their bin or inside an overloaded bin.
std::vector<int> problematic_items(const Solution& s);

}  // namespace bppc

#endif
