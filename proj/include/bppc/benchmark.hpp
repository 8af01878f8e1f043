#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bppc/instance.hpp"
#include "bppc/search.hpp"

namespace bppc {

// One solver run on one instance.
struct BenchmarkRow {
  std::string name;
  int n = 0;
  double density = 0.0;
  int k_lb = 0;
  std::string mode;
  std::uint64_t seed = 0;
  int bins = 0;
  bool feasible = false;
  bool timed_out = false;
  double elapsed = 0.0;
  std::optional<int> z_bks;
  std::optional<double> gap;  // 100 * (bins - z_bks) / z_bks
};

// Aggregate over rows sharing a key (instance class x size, or x density).
struct BenchmarkGroup {
  std::string key;
  int rows = 0;
  int feasible = 0;
  double mean_bins = 0.0;
  double mean_elapsed = 0.0;
  std::optional<double> mean_gap;  // over rows that have a gap
};

// Reads "name,best_known" lines (header line optional).  Throws ParseError
// on malformed rows.
std::map<std::string, int> load_bks_csv(const std::string& path);

// Runs the solver on every instance `repeats` times (seeds params.seed,
// params.seed+1, ...).  Each solution is re-validated from scratch; an
// infeasible "feasible" result throws.  `jobs` > 1 runs instances in
// parallel; rows come back in deterministic (instance, repeat) order.
std::vector<BenchmarkRow> run_benchmark(
    const std::vector<Instance>& instances, const SearchParams& params,
    int repeats, const std::map<std::string, int>* best_known, int jobs);

void write_benchmark_csv(std::ostream& out,
                         const std::vector<BenchmarkRow>& rows);

// Instance class = leading alphabetic prefix of the name ("t", "ua", ...).
std::string instance_class(const std::string& name);

enum class GroupBy { class_and_size, class_and_density };

std::vector<BenchmarkGroup> group_rows(const std::vector<BenchmarkRow>& rows,
                                       GroupBy by);

void write_group_table(std::ostream& out,
                       const std::vector<BenchmarkGroup>& groups);

}  // namespace bppc
