#include <algorithm>
#include <stdexcept>
#include <vector>

#include "bppc/oracle.hpp"
#include "bppc/search.hpp"
#include "bppc/validate.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"

using namespace bppc;

namespace {

// Exact minimum feasible bin count by enumerating every set partition via
// restricted growth strings (Bell(10) is small). Independent of the shipped
// branch-and-bound: no ordering, no bounds beyond the trivial block count.
struct BellBrute {
  const Instance* inst;
  std::vector<int> block_of;
  int best;

  bool fits(int item, int block) const {
    std::int64_t load = inst->weights[static_cast<std::size_t>(item)];
    for (int j = 0; j < item; ++j) {
      if (block_of[static_cast<std::size_t>(j)] != block) continue;
      if (oracle::adjacent(*inst, item, j)) return false;
      load += inst->weights[static_cast<std::size_t>(j)];
    }
    return load <= inst->capacity;
  }

  void recurse(int item, int used) {
    if (used >= best) return;
    if (item == inst->n) {
      best = used;
      return;
    }
    for (int b = 0; b <= used && b < best; ++b) {
      if (!fits(item, b)) continue;
      block_of[static_cast<std::size_t>(item)] = b;
      recurse(item + 1, b == used ? used + 1 : used);
    }
  }

  int solve() {
    block_of.assign(static_cast<std::size_t>(inst->n), 0);
    best = inst->n + 1;
    recurse(0, 0);
    return best;
  }
};

SearchParams quick_params(std::uint64_t seed, Mode mode) {
  SearchParams p;
  p.seed = seed;
  p.mode = mode;
  p.t_limit = 0.1;  // keeps the covering budget small for unit-test speed
  return p;
}

void check_run(const Instance& inst, const RunResult& r) {
  CHECK(r.feasible);
  CHECK(r.bins >= lower_bound(inst));
  CHECK(r.bins == static_cast<int>(r.best_partition.size()));
  const FeasibilityReport rep =
      validate_solution(inst, r.best_partition);
  CHECK(rep.ok);
  for (std::size_t t = 0; t + 1 < r.trace.size(); ++t) {
    CHECK(r.trace[t].k > r.trace[t + 1].k);
    CHECK(r.trace[t].success);
  }
  if (!r.trace.empty()) {
    CHECK(r.trace.back().success == (r.bins == lower_bound(inst)));
    for (const KAttempt& a : r.trace) {
      CHECK(a.k >= lower_bound(inst));
      CHECK(a.shakes >= 0);
      if (a.success) CHECK(a.final_penalty == 0);
      if (!a.success) CHECK(a.final_penalty > 0);
    }
  }
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("default parameters are the standard set") {
  const SearchParams p;
  CHECK(p.n_shak == 50);
  CHECK(p.n_ls == 100);
  CHECK(p.n_sc == 25);
  CHECK(p.s_pool == 1500);
  CHECK(p.t_limit == 20.0);
  CHECK(p.s_shak == 3);
  CHECK(p.omega_c == 0);
  CHECK(p.omega_w == 1);
  CHECK(p.mode == Mode::complete);
  CHECK(p.seed == 1);
  CHECK(p.wall_limit == 0.0);
  CHECK(p.ffd_order == FfdOrder::non_increasing);
  CHECK(p.reduce_rule == ReduceRule::min_load);
  CHECK(p.assign_max_nodes == 0);
  CHECK_FALSE(p.sc_partition);
  CHECK_NOTHROW(validate_params(p));
}

TEST_CASE("parameter validation rejects each out-of-range field") {
  auto broken = [](auto&& change) {
    SearchParams p;
    change(p);
    CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
  };
  broken([](SearchParams& p) { p.n_shak = -1; });
  broken([](SearchParams& p) { p.n_ls = 0; });
  broken([](SearchParams& p) { p.n_sc = 0; });
  broken([](SearchParams& p) { p.s_pool = 0; });
  broken([](SearchParams& p) { p.t_limit = -0.5; });
  broken([](SearchParams& p) { p.s_shak = 0; });
  broken([](SearchParams& p) { p.omega_c = -1; });
  broken([](SearchParams& p) { p.omega_w = 0; });
  broken([](SearchParams& p) { p.wall_limit = -1.0; });
  broken([](SearchParams& p) { p.assign_max_nodes = 1; });
  broken([](SearchParams& p) { p.assign_max_nodes = -2; });
}

TEST_CASE("conflict weight defaults to the capacity") {
  Instance inst;
  inst.n = 1;
  inst.capacity = 77;
  inst.weights = {1};
  inst.conflicts = ConflictGraph(1);
  SearchParams p;
  CHECK(resolve_weights(p, inst).omega_c == 77);
  CHECK(resolve_weights(p, inst).omega_w == 1);
  p.omega_c = 5;
  p.omega_w = 3;
  CHECK(resolve_weights(p, inst).omega_c == 5);
  CHECK(resolve_weights(p, inst).omega_w == 3);
}

TEST_CASE("mode names round-trip and bad names throw") {
  CHECK(parse_mode("simple") == Mode::simple);
  CHECK(parse_mode("complete") == Mode::complete);
  CHECK(mode_name(Mode::simple) == std::string("simple"));
  CHECK(mode_name(Mode::complete) == std::string("complete"));
  CHECK_THROWS_AS(parse_mode("fancy"), std::invalid_argument);
}

TEST_CASE("shake relocates exactly the requested number of items") {
  Rng setup(163);
  const Instance inst = testgen::random_instance(setup, 20, 60, 0.2, 1, 30);
  Solution s = build_initial_mffd(inst, PenaltyWeights{60, 1});
  REQUIRE(s.num_bins() >= 2);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Solution t = s;
    std::vector<int> before(20);
    for (int i = 0; i < 20; ++i) before[static_cast<std::size_t>(i)] = t.bin_of(i);
    Rng rng(seed);
    shake(t, 3, rng);
    int moved = 0;
    for (int i = 0; i < 20; ++i)
      if (t.bin_of(i) != before[static_cast<std::size_t>(i)]) ++moved;
    CHECK(moved == 3);
    CHECK(t.total_penalty() ==
          oracle::total_penalty_recount(inst, PenaltyWeights{60, 1},
                                        t.to_partition(false)));
  }
}

TEST_CASE("bin reduction drops one bin and stocks the column pool first") {
  Rng rng(167);
  const Instance inst = testgen::random_instance(rng, 18, 40, 0.3, 1, 25);
  Solution s = build_initial_mffd(inst, PenaltyWeights{40, 1});
  const int before = s.num_bins();
  REQUIRE(before >= 2);
  ColumnPool pool(100);
  reduce_bins(s, ReduceRule::min_load, rng, &pool);
  CHECK(s.num_bins() == before - 1);
  CHECK(pool.size() == static_cast<std::size_t>(before));  // pre-removal bins
  std::vector<int> seen(18, 0);
  for (const auto& bin : s.to_partition(false))
    for (int i : bin) ++seen[static_cast<std::size_t>(i)];
  CHECK(std::count(seen.begin(), seen.end(), 1) == 18);

  Solution t = build_initial_mffd(inst, PenaltyWeights{40, 1});
  reduce_bins(t, ReduceRule::random, rng, nullptr);  // pool is optional
  CHECK(t.num_bins() == before - 1);
}

TEST_CASE("a conflict-free pile that fits one bin is solved to one bin") {
  Instance inst;
  inst.n = 8;
  inst.capacity = 100;
  inst.weights = {5, 5, 5, 5, 5, 5, 5, 5};
  inst.conflicts = ConflictGraph(8);
  for (Mode mode : {Mode::simple, Mode::complete}) {
    const RunResult r = run_ils(inst, quick_params(3, mode));
    CHECK(r.bins == 1);
    CHECK(r.feasible);
    check_run(inst, r);
  }
}

TEST_CASE("runs end feasible, validated and lower-bounded in both modes") {
  Rng rng(173);
  for (int round = 0; round < 12; ++round) {
    const int n = 10 + static_cast<int>(rng.below(15));
    const Instance inst = testgen::random_instance(
        rng, n, 50, 0.1 + rng.real01() * 0.5, 5, 30);
    const Mode mode = round % 2 == 0 ? Mode::complete : Mode::simple;
    const RunResult r = run_ils(inst, quick_params(100 + round, mode));
    check_run(inst, r);
    CHECK(r.n == n);
    CHECK_FALSE(r.timed_out);
    if (!r.trace.empty()) {
      const Solution start =
          build_initial_mffd(inst, resolve_weights(quick_params(0, mode), inst));
      CHECK(r.trace.front().k == start.nonempty_bins() - 1);
    }
  }
}

TEST_CASE("equal seeds reproduce the trace and the partition exactly") {
  Rng rng(179);
  const Instance inst = testgen::random_instance(rng, 24, 50, 0.4, 5, 30);
  for (Mode mode : {Mode::simple, Mode::complete}) {
    const RunResult a = run_ils(inst, quick_params(7, mode));
    const RunResult b = run_ils(inst, quick_params(7, mode));
    CHECK(run_trace_json(a) == run_trace_json(b));
    CHECK(a.best_partition == b.best_partition);
    const RunResult c = run_ils(inst, quick_params(8, mode));
    check_run(inst, c);  // different seed still ends valid
  }
}

TEST_CASE("run reports serialize with the expected keys") {
  Instance inst;
  inst.n = 4;
  inst.capacity = 10;
  inst.weights = {5, 5, 5, 5};
  inst.conflicts = ConflictGraph::from_edges(4, {{0, 1}});
  inst.name = "tiny";
  SearchParams p = quick_params(2, Mode::complete);
  const RunResult r = run_ils(inst, p);
  const nlohmann::json full = nlohmann::json::parse(run_result_json(r));
  for (const char* key : {"instance", "n", "mode", "seed", "bins", "feasible",
                          "timed_out", "elapsed_seconds", "trace"})
    CHECK(full.contains(key));
  CHECK(full["instance"] == "tiny");
  CHECK(full["mode"] == "complete");
  CHECK(full["n"] == 4);
  for (const auto& entry : full["trace"])
    for (const char* key :
         {"k", "success", "shakes", "initial_penalty", "final_penalty"})
      CHECK(entry.contains(key));
  const nlohmann::json trace = nlohmann::json::parse(run_trace_json(r));
  CHECK_FALSE(trace.contains("elapsed_seconds"));
  CHECK(trace.contains("trace"));
  CHECK(trace["bins"] == full["bins"]);
}

TEST_CASE("exact oracle agrees with full partition enumeration") {
  Rng rng(181);
  for (int round = 0; round < 50; ++round) {
    const int n = 2 + static_cast<int>(rng.below(7));  // <= 8 items
    Instance inst = testgen::random_instance(
        rng, n, 20, rng.real01() * 0.8, 1, 15);
    BellBrute brute{&inst, {}, 0};
    const int expect = brute.solve();
    const auto got = exact_optimum_oracle(inst);
    REQUIRE(got.has_value());
    CHECK(*got == expect);
  }
}

TEST_CASE("exact oracle handles the classic corner cases") {
  Instance clique;
  clique.n = 6;
  clique.capacity = 100;
  clique.weights = {1, 1, 1, 1, 1, 1};
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) edges.emplace_back(i, j);
  clique.conflicts = ConflictGraph::from_edges(6, edges);
  CHECK(exact_optimum_oracle(clique) == 6);

  Instance thirds;
  thirds.n = 3;
  thirds.capacity = 4;
  thirds.weights = {3, 3, 3};
  thirds.conflicts = ConflictGraph(3);
  CHECK(exact_optimum_oracle(thirds) == 3);

  Rng rng(191);
  const Instance big = testgen::random_instance(rng, 12, 30, 0.5, 5, 20);
  CHECK_FALSE(exact_optimum_oracle(big, 2).has_value());
}

TEST_CASE("the search reaches the exact optimum on small instances") {
  Rng rng(193);
  for (int round = 0; round < 15; ++round) {
    const int n = 4 + static_cast<int>(rng.below(7));  // <= 10 items
    Instance inst = testgen::random_instance(
        rng, n, 20, rng.real01() * 0.6, 1, 15);
    BellBrute brute{&inst, {}, 0};
    const int expect = brute.solve();
    const Mode mode = round % 2 == 0 ? Mode::complete : Mode::simple;
    const RunResult r = run_ils(inst, quick_params(round + 1, mode));
    check_run(inst, r);
    CHECK(r.bins == expect);
  }
}

}  // TEST_SUITE
