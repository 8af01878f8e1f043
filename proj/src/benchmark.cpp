#include "bppc/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bppc/validate.hpp"

namespace bppc {

std::map<std::string, int> load_bks_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open best-known file: " + path);
  std::map<std::string, int> best;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'name,bins'");
    std::string name = line.substr(0, comma);
    std::string value = line.substr(comma + 1);
    const auto strip = [](std::string& s) {
      const auto first = s.find_first_not_of(" \t\r");
      const auto last = s.find_last_not_of(" \t\r");
      s = first == std::string::npos ? "" : s.substr(first, last - first + 1);
    };
    strip(name);
    strip(value);
    if (line_no == 1 && !value.empty() &&
        value.find_first_not_of("0123456789") != std::string::npos)
      continue;  // header row
    std::size_t used = 0;
    long long bins = 0;
    try {
      bins = std::stoll(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (name.empty() || used != value.size() || bins < 1)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'name,bins', got '" + line + "'");
    best[name] = static_cast<int>(bins);
  }
  return best;
}

namespace {

BenchmarkRow run_one(const Instance& inst, SearchParams params,
                     std::uint64_t seed,
                     const std::map<std::string, int>* best_known) {
  params.seed = seed;
  const RunResult result = run_ils(inst, params);
  const FeasibilityReport report =
      validate_solution(inst, result.best_partition);
  if (result.feasible && !report.ok)
    throw std::runtime_error("solver reported a feasible solution for " +
                             inst.name + " that fails validation:\n" +
                             report.to_string());
  BenchmarkRow row;
  row.name = inst.name;
  row.n = inst.n;
  row.density = inst.conflicts.density();
  row.k_lb = lower_bound(inst);
  row.mode = mode_name(params.mode);
  row.seed = seed;
  row.bins = result.bins;
  row.feasible = result.feasible;
  row.timed_out = result.timed_out;
  row.elapsed = result.elapsed;
  if (best_known) {
    const auto it = best_known->find(inst.name);
    if (it != best_known->end()) {
      row.z_bks = it->second;
      if (result.feasible && it->second > 0)
        row.gap = 100.0 * (result.bins - it->second) / it->second;
    }
  }
  return row;
}

}  // namespace

std::vector<BenchmarkRow> run_benchmark(
    const std::vector<Instance>& instances, const SearchParams& params,
    int repeats, const std::map<std::string, int>* best_known, int jobs) {
  if (repeats < 1) throw std::invalid_argument("repeats must be positive");
  if (jobs < 1) throw std::invalid_argument("jobs must be positive");
  struct Task {
    std::size_t instance;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (int r = 0; r < repeats; ++r)
      tasks.push_back({i, params.seed + static_cast<std::uint64_t>(r)});

  std::vector<BenchmarkRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  const auto worker = [&] {
    for (;;) {
      const std::size_t id = next.fetch_add(1);
      if (id >= tasks.size()) return;
      try {
        rows[id] = run_one(instances[tasks[id].instance], params,
                           tasks[id].seed, best_known);
      } catch (...) {
        std::lock_guard<std::mutex> guard(failure_lock);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (jobs == 1 || tasks.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const std::size_t count =
        std::min<std::size_t>(static_cast<std::size_t>(jobs), tasks.size());
    for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_benchmark_csv(std::ostream& out,
                         const std::vector<BenchmarkRow>& rows) {
  out << "name,n,density,k_lb,mode,seed,bins,feasible,timed_out,elapsed,"
         "z_bks,gap\n";
  for (const auto& row : rows) {
    out << row.name << ',' << row.n << ',' << std::fixed
        << std::setprecision(4) << row.density << ',' << row.k_lb << ','
        << row.mode << ',' << row.seed << ',' << row.bins << ','
        << (row.feasible ? 1 : 0) << ',' << (row.timed_out ? 1 : 0) << ','
        << std::setprecision(3) << row.elapsed << ',';
    if (row.z_bks) out << *row.z_bks;
    out << ',';
    if (row.gap) out << std::setprecision(2) << *row.gap;
    out << '\n';
  }
  out.unsetf(std::ios::fixed);
}

std::string instance_class(const std::string& name) {
  std::size_t end = 0;
  while (end < name.size() && std::isalpha(static_cast<unsigned char>(name[end])))
    ++end;
  return end == 0 ? std::string("other") : name.substr(0, end);
}

std::vector<BenchmarkGroup> group_rows(const std::vector<BenchmarkRow>& rows,
                                       GroupBy by) {
  struct Acc {
    int rows = 0;
    int feasible = 0;
    double bins = 0.0;
    double elapsed = 0.0;
    double gap = 0.0;
    int gap_rows = 0;
  };
  std::map<std::string, Acc> acc;
  for (const auto& row : rows) {
    std::ostringstream key;
    key << instance_class(row.name) << ' ';
    if (by == GroupBy::class_and_size)
      key << "n=" << row.n;
    else
      key << "d=" << std::fixed << std::setprecision(1) << row.density;
    auto& bucket = acc[key.str()];
    ++bucket.rows;
    bucket.feasible += row.feasible ? 1 : 0;
    bucket.bins += row.bins;
    bucket.elapsed += row.elapsed;
    if (row.gap) {
      bucket.gap += *row.gap;
      ++bucket.gap_rows;
    }
  }
  std::vector<BenchmarkGroup> groups;
  for (const auto& [key, bucket] : acc) {
    BenchmarkGroup group;
    group.key = key;
    group.rows = bucket.rows;
    group.feasible = bucket.feasible;
    group.mean_bins = bucket.bins / bucket.rows;
    group.mean_elapsed = bucket.elapsed / bucket.rows;
    if (bucket.gap_rows > 0) group.mean_gap = bucket.gap / bucket.gap_rows;
    groups.push_back(std::move(group));
  }
  return groups;
}

void write_group_table(std::ostream& out,
                       const std::vector<BenchmarkGroup>& groups) {
  out << std::left << std::setw(16) << "group" << std::right << std::setw(6)
      << "runs" << std::setw(10) << "feas" << std::setw(12) << "mean_bins"
      << std::setw(12) << "mean_gap" << std::setw(12) << "mean_time" << '\n';
  for (const auto& group : groups) {
    out << std::left << std::setw(16) << group.key << std::right
        << std::setw(6) << group.rows << std::setw(10) << group.feasible
        << std::setw(12) << std::fixed << std::setprecision(2)
        << group.mean_bins;
    if (group.mean_gap)
      out << std::setw(12) << std::setprecision(2) << *group.mean_gap;
    else
      out << std::setw(12) << "-";
    out << std::setw(12) << std::setprecision(3) << group.mean_elapsed << '\n';
  }
  out.unsetf(std::ios::fixed);
}

}  // namespace bppc
