#include "bppc/search.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "bppc/local_search.hpp"
#include "bppc/neighborhoods.hpp"

#include "json.hpp"

namespace bppc {

const char* mode_name(Mode m) {
  return m == Mode::simple ? "simple" : "complete";
}

Mode parse_mode(const std::string& s) {
  if (s == "simple") return Mode::simple;
  if (s == "complete") return Mode::complete;
  throw std::invalid_argument("unknown mode: " + s + " (simple|complete)");
}

void validate_params(const SearchParams& p) {
  if (p.n_shak < 0) throw std::invalid_argument("n_shak must be >= 0");
  if (p.n_ls < 1) throw std::invalid_argument("n_ls must be >= 1");
  if (p.n_sc < 1) throw std::invalid_argument("n_sc must be >= 1");
  if (p.s_pool < 1) throw std::invalid_argument("s_pool must be >= 1");
  if (p.t_limit < 0) throw std::invalid_argument("t_limit must be >= 0");
  if (p.s_shak < 1) throw std::invalid_argument("s_shak must be >= 1");
  if (p.omega_c < 0) throw std::invalid_argument("omega_c must be >= 0");
  if (p.omega_w < 1) throw std::invalid_argument("omega_w must be >= 1");
  if (p.wall_limit < 0) throw std::invalid_argument("wall_limit must be >= 0");
  if (p.assign_max_nodes < 0 || p.assign_max_nodes == 1)
    throw std::invalid_argument("assign_max_nodes must be 0 or >= 2");
}

PenaltyWeights resolve_weights(const SearchParams& p, const Instance& inst) {
  return {p.omega_c > 0 ? p.omega_c : inst.capacity, p.omega_w};
}

void shake(Solution& s, int s_shak, Rng& rng) {
  const int k_count = s.num_bins();
  const int n = s.num_items();
  if (k_count < 2 || n == 0) return;
  const int quota = std::min(s_shak, n);
  const int problematic_quota = std::min((s_shak + 1) / 2, quota);

  std::vector<int> chosen;
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  std::vector<int> problematic = problematic_items(s);
  rng.shuffle(problematic);
  for (int item : problematic) {
    if (static_cast<int>(chosen.size()) >= problematic_quota) break;
    chosen.push_back(item);
    taken[static_cast<std::size_t>(item)] = 1;
  }
  std::vector<int> rest;
  rest.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    if (!taken[static_cast<std::size_t>(i)]) rest.push_back(i);
  rng.shuffle(rest);
  for (int item : rest) {
    if (static_cast<int>(chosen.size()) >= quota) break;
    chosen.push_back(item);
  }

  for (int item : chosen) {
    int to = static_cast<int>(rng.below(static_cast<std::uint64_t>(k_count - 1)));
    if (to >= s.bin_of(item)) ++to;
    s.relocate_item(item, to);
  }
}

void reduce_bins(Solution& s, ReduceRule rule, Rng& rng, ColumnPool* pool) {
  if (pool) pool->add_solution(s);
  s.remove_bin(rule, rng);
}

RunResult run_ils(const Instance& inst, const SearchParams& params) {
  validate_params(params);
  const auto start = std::chrono::steady_clock::now();
  auto elapsed_seconds = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };
  auto over_wall = [&] {
    return params.wall_limit > 0 && elapsed_seconds() > params.wall_limit;
  };

  const PenaltyWeights w = resolve_weights(params, inst);
  const bool complete = params.mode == Mode::complete;
  Rng rng(params.seed);

  Solution s_best = build_initial_mffd(inst, w, params.ffd_order);
  const int k_lb = lower_bound(inst);

  RunResult res;
  res.instance = inst.name;
  res.n = inst.n;
  res.mode = params.mode;
  res.seed = params.seed;
  res.best_partition = s_best.to_partition(/*drop_empty=*/true);
  res.bins = s_best.nonempty_bins();

  std::int64_t pool_limit = params.s_pool;
  ColumnPool pool(static_cast<std::size_t>(pool_limit));
  const std::uint64_t sc_nodes =
      static_cast<std::uint64_t>(params.t_limit * kScNodesPerSecond);
  LocalSearch ls;

  while (!res.timed_out && s_best.feasible() &&
         s_best.nonempty_bins() > k_lb) {
    // Set covering can hand back covers with idle columns; drop them so the
    // bin count and the trace stay in terms of real bins.
    if (s_best.nonempty_bins() < s_best.num_bins())
      s_best = Solution(inst, w, s_best.to_partition(/*drop_empty=*/true));

    KAttempt attempt;
    attempt.k = s_best.num_bins() - 1;
    reduce_bins(s_best, params.reduce_rule, rng, complete ? &pool : nullptr);
    attempt.initial_penalty = s_best.total_penalty();

    Solution s = s_best;
    int i_shak = 0;
    while (i_shak <= params.n_shak && !s_best.feasible()) {
      if (over_wall()) {
        res.timed_out = true;
        break;
      }

      if (!s.feasible()) {
        for (int it = 0; it < params.n_ls && !s.feasible(); ++it) {
          ls.descend(s, rng);
          if (complete && !s.feasible()) {
            assignment_neighborhood(s, rng, params.assign_max_nodes);
            ejection_chain_step(s, rng);
            grenade_step(s, rng);
          }
          if (over_wall()) break;
        }
      }

      if (complete && !s.feasible() && i_shak > 0 &&
          i_shak % params.n_sc == 0) {
        const int k_current = s.num_bins();
        pool.add_solution(s);
        CoverSelection fallback;
        fallback.columns = s.to_partition(/*drop_empty=*/true);
        fallback.cost = s.total_penalty();
        const CoverSelection picked =
            solve_restricted_cover(pool, inst.n, k_current, sc_nodes, fallback,
                                   params.sc_partition);
        s = cover_to_solution(picked.columns, inst, w, k_current);
        pool_limit = adapt_pool_limit(pool_limit, picked.proven_optimal);
        pool.set_limit(static_cast<std::size_t>(pool_limit));
      }

      if (s.total_penalty() < s_best.total_penalty()) {
        s_best = s;
        i_shak = 0;
      } else {
        ++i_shak;
      }

      if (i_shak <= params.n_shak && !s_best.feasible()) {
        s = s_best;
        shake(s, params.s_shak, rng);
        ++attempt.shakes;
      }
    }

    attempt.success = s_best.feasible();
    attempt.final_penalty = s_best.total_penalty();
    res.trace.push_back(attempt);
    if (attempt.success) {
      res.best_partition = s_best.to_partition(/*drop_empty=*/true);
      res.bins = s_best.nonempty_bins();
    }
  }

  res.feasible = true;  // the last feasible solution is always retained
  res.elapsed = elapsed_seconds();
  return res;
}

namespace {

nlohmann::json trace_json(const RunResult& r) {
  nlohmann::json arr = nlohmann::json::array();
  for (const KAttempt& a : r.trace)
    arr.push_back({{"k", a.k},
                   {"success", a.success},
                   {"shakes", a.shakes},
                   {"initial_penalty", a.initial_penalty},
                   {"final_penalty", a.final_penalty}});
  return arr;
}

}  // namespace

std::string run_result_json(const RunResult& r) {
  nlohmann::json j;
  j["instance"] = r.instance;
  j["n"] = r.n;
  j["mode"] = mode_name(r.mode);
  j["seed"] = r.seed;
  j["bins"] = r.bins;
  j["feasible"] = r.feasible;
  j["timed_out"] = r.timed_out;
  j["elapsed_seconds"] = r.elapsed;
  j["trace"] = trace_json(r);
  return j.dump(2) + "\n";
}

std::string run_trace_json(const RunResult& r) {
  nlohmann::json j;
  j["instance"] = r.instance;
  j["mode"] = mode_name(r.mode);
  j["seed"] = r.seed;
  j["bins"] = r.bins;
  j["trace"] = trace_json(r);
  return j.dump(2) + "\n";
}

}  // namespace bppc
