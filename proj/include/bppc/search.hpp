#ifndef BPPC_SEARCH_HPP
#define BPPC_SEARCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bppc/instance.hpp"
#include "bppc/rng.hpp"
#include "bppc/set_covering.hpp"
#include "bppc/solution.hpp"

namespace bppc {

enum class Mode { simple, complete };

const char* mode_name(Mode m);
Mode parse_mode(const std::string& s);  // throws std::invalid_argument

// Deterministic stand-in for the per-call set-covering time budget: seconds
// are converted to branch-and-bound nodes at this fixed rate, so equal seeds
// give byte-identical runs regardless of machine speed.
constexpr double kScNodesPerSecond = 1.0e6;

struct SearchParams {
  int n_shak = 50;          // shakes without improvement before giving up a K
  int n_ls = 100;           // inner local-search/large-neighborhood rounds
  int n_sc = 25;            // set covering every n_sc failed shakes
  std::int64_t s_pool = 1500;  // initial column-pool limit
  double t_limit = 20.0;    // set-covering budget per call, seconds-equivalent
  int s_shak = 3;           // items relocated per shake
  std::int64_t omega_c = 0;  // conflict penalty weight; 0 = use capacity
  std::int64_t omega_w = 1;  // overload penalty weight
  Mode mode = Mode::complete;
  std::uint64_t seed = 1;
  double wall_limit = 0.0;  // wall-clock cap in seconds; 0 = off

  FfdOrder ffd_order = FfdOrder::non_increasing;
  ReduceRule reduce_rule = ReduceRule::min_load;
  int assign_max_nodes = 0;   // assignment matrix size cap; 0 = all bins
  bool sc_partition = false;  // set partitioning instead of covering
};

void validate_params(const SearchParams& p);  // throws std::invalid_argument
PenaltyWeights resolve_weights(const SearchParams& p, const Instance& inst);

struct KAttempt {
  int k = 0;                       // bin count attempted
  bool success = false;            // feasibility reached at this K
  int shakes = 0;                  // shake operations performed
  std::int64_t initial_penalty = 0;  // right after the bin removal
  std::int64_t final_penalty = 0;    // best penalty when the attempt ended
};

struct RunResult {
  std::string instance;
  int n = 0;
  Mode mode = Mode::complete;
  std::uint64_t seed = 0;
  int bins = 0;         // bins of the last feasible solution
  bool feasible = true;  // a feasible solution is always retained
  bool timed_out = false;
  double elapsed = 0.0;  // seconds
  std::vector<KAttempt> trace;
  std::vector<std::vector<int>> best_partition;  // nonempty bins
};

// Iterated local search: start from the first-fit-decreasing solution, then
// repeatedly delete one bin and fight the resulting penalty back to zero with
// shaking rounds of local search (plus, in complete mode, the assignment,
// ejection-chain and grenade neighborhoods and scheduled set covering over the
// collected column pool). Stops at the first bin count it cannot repair within
// n_shak fruitless shakes, or at the weight lower bound.
RunResult run_ils(const Instance& inst, const SearchParams& params);

// Relocates s_shak items of `s` to uniformly random other bins; half of them
// (rounded up) are drawn from the problematic items when enough exist.
void shake(Solution& s, int s_shak, Rng& rng);

// One bin-removal step; in complete mode (pool != nullptr) the pre-removal
// columns are pushed into the pool first.
void reduce_bins(Solution& s, ReduceRule rule, Rng& rng, ColumnPool* pool);

std::string run_result_json(const RunResult& r);
// Trace only (no timings): the determinism-comparison payload.
std::string run_trace_json(const RunResult& r);

}  // namespace bppc

#endif
