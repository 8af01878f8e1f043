#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bppc/benchmark.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bppc;

namespace {

Instance two_bin_instance(const std::string& name) {
  Instance inst;
  inst.n = 4;
  inst.capacity = 10;
  inst.weights = {5, 5, 5, 5};
  inst.conflicts = ConflictGraph(4);
  inst.name = name;
  return inst;
}

SearchParams bench_params(std::uint64_t seed) {
  SearchParams p;
  p.seed = seed;
  p.t_limit = 0.05;
  return p;
}

std::string temp_file(const std::string& stem) {
  return (std::filesystem::temp_directory_path() / stem).string();
}

bool same_but_elapsed(const BenchmarkRow& a, const BenchmarkRow& b) {
  return a.name == b.name && a.n == b.n && a.density == b.density &&
         a.k_lb == b.k_lb && a.mode == b.mode && a.seed == b.seed &&
         a.bins == b.bins && a.feasible == b.feasible &&
         a.timed_out == b.timed_out && a.z_bks == b.z_bks && a.gap == b.gap;
}

}  // namespace

TEST_SUITE("benchmark") {

TEST_CASE("rows come back per instance and repeat with stepped seeds") {
  const std::vector<Instance> instances = {two_bin_instance("alpha"),
                                           two_bin_instance("beta")};
  const auto rows = run_benchmark(instances, bench_params(10), 3, nullptr, 1);
  REQUIRE(rows.size() == 6);
  const char* names[] = {"alpha", "alpha", "alpha", "beta", "beta", "beta"};
  for (int r = 0; r < 6; ++r) {
    CHECK(rows[static_cast<std::size_t>(r)].name == names[r]);
    CHECK(rows[static_cast<std::size_t>(r)].seed ==
          static_cast<std::uint64_t>(10 + r % 3));
    CHECK(rows[static_cast<std::size_t>(r)].bins == 2);
    CHECK(rows[static_cast<std::size_t>(r)].feasible);
    CHECK(rows[static_cast<std::size_t>(r)].k_lb == 2);
    CHECK_FALSE(rows[static_cast<std::size_t>(r)].z_bks.has_value());
    CHECK_FALSE(rows[static_cast<std::size_t>(r)].gap.has_value());
  }
}

TEST_CASE("parallel and serial runs produce the same rows") {
  Rng rng(211);
  std::vector<Instance> instances;
  for (int i = 0; i < 4; ++i) {
    instances.push_back(
        testgen::random_instance(rng, 12 + i, 40, 0.3, 5, 25));
    instances.back().name = "p" + std::to_string(i);
  }
  const auto serial = run_benchmark(instances, bench_params(5), 2, nullptr, 1);
  const auto parallel = run_benchmark(instances, bench_params(5), 2, nullptr, 3);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t r = 0; r < serial.size(); ++r)
    CHECK(same_but_elapsed(serial[r], parallel[r]));
}

TEST_CASE("gaps are computed against best-known values only when present") {
  const std::vector<Instance> instances = {two_bin_instance("known"),
                                           two_bin_instance("stale"),
                                           two_bin_instance("unknown")};
  std::map<std::string, int> bks = {{"known", 2}, {"stale", 1}};
  const auto rows = run_benchmark(instances, bench_params(3), 1, &bks, 1);
  REQUIRE(rows.size() == 3);
  REQUIRE(rows[0].gap.has_value());
  CHECK(rows[0].z_bks == 2);
  CHECK(*rows[0].gap == 0.0);
  REQUIRE(rows[1].gap.has_value());  // solver found 2, best known 1
  CHECK(*rows[1].gap == 100.0);
  CHECK_FALSE(rows[2].z_bks.has_value());
  CHECK_FALSE(rows[2].gap.has_value());
}

TEST_CASE("csv output starts with the fixed header and blanks unknown gaps") {
  BenchmarkRow row;
  row.name = "t10_r20_s1";
  row.n = 10;
  row.density = 0.2;
  row.k_lb = 4;
  row.mode = "complete";
  row.seed = 9;
  row.bins = 5;
  row.feasible = true;
  row.timed_out = false;
  row.elapsed = 0.25;
  std::ostringstream out;
  write_benchmark_csv(out, {row});
  std::istringstream lines(out.str());
  std::string header;
  std::string data;
  REQUIRE(std::getline(lines, header));
  REQUIRE(std::getline(lines, data));
  CHECK(header ==
        "name,n,density,k_lb,mode,seed,bins,feasible,timed_out,elapsed,"
        "z_bks,gap");
  CHECK(data.find("t10_r20_s1,10,") == 0);
  CHECK(data.find(",,") != std::string::npos);  // empty z_bks and gap fields

  row.z_bks = 4;
  row.gap = 25.0;
  std::ostringstream out2;
  write_benchmark_csv(out2, {row});
  CHECK(out2.str().find(",4,25") != std::string::npos);
}

TEST_CASE("best-known files load with or without a header") {
  const std::string path = temp_file("bppc_bks_test.csv");
  {
    std::ofstream out(path);
    out << "name,bins\nfoo,3\nbar,5\n";
  }
  auto bks = load_bks_csv(path);
  CHECK(bks.size() == 2);
  CHECK(bks.at("foo") == 3);
  CHECK(bks.at("bar") == 5);
  {
    std::ofstream out(path);
    out << "foo,4\n";
  }
  bks = load_bks_csv(path);
  CHECK(bks.at("foo") == 4);
  {
    std::ofstream out(path);
    out << "foo,3\nbar\n";
  }
  CHECK_THROWS_AS(load_bks_csv(path), ParseError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_bks_csv(path), ParseError);
}

TEST_CASE("instance class is the leading alphabetic prefix") {
  CHECK(instance_class("t120_r30_s7") == "t");
  CHECK(instance_class("ua50_r55_s2") == "ua");
  CHECK(instance_class("d200_r0_s13") == "d");
  CHECK(instance_class("9lives") == "other");
  CHECK(instance_class("") == "other");
}

TEST_CASE("rows group by class and size or by class and density") {
  auto row = [](const std::string& name, int n, double density, int bins,
                double gap_or_negative) {
    BenchmarkRow r;
    r.name = name;
    r.n = n;
    r.density = density;
    r.bins = bins;
    r.feasible = true;
    r.elapsed = 1.0;
    if (gap_or_negative >= 0) r.gap = gap_or_negative;
    return r;
  };
  const std::vector<BenchmarkRow> rows = {
      row("t60_r20_s1", 60, 0.2, 21, 5.0),
      row("t60_r40_s1", 60, 0.4, 23, -1),
      row("t120_r20_s1", 120, 0.2, 41, 0.0),
      row("u60_r20_s1", 60, 0.2, 11, -1),
  };

  const auto by_size = group_rows(rows, GroupBy::class_and_size);
  REQUIRE(by_size.size() == 3);
  bool saw_t60 = false;
  for (const auto& g : by_size) {
    if (g.key != "t n=60") continue;
    saw_t60 = true;
    CHECK(g.rows == 2);
    CHECK(g.feasible == 2);
    CHECK(g.mean_bins == 22.0);
    REQUIRE(g.mean_gap.has_value());
    CHECK(*g.mean_gap == 5.0);  // only one row carries a gap
  }
  CHECK(saw_t60);

  const auto by_density = group_rows(rows, GroupBy::class_and_density);
  bool saw_td = false;
  for (const auto& g : by_density) {
    if (g.key == "t d=0.2") {
      saw_td = true;
      CHECK(g.rows == 2);  // both t instances at density 0.2
    }
    CHECK(g.key.find("d=") != std::string::npos);
  }
  CHECK(saw_td);

  std::ostringstream table;
  write_group_table(table, by_size);
  CHECK(table.str().find("t n=60") != std::string::npos);
  CHECK(table.str().find("t n=120") != std::string::npos);
  CHECK(table.str().find("u n=60") != std::string::npos);
}

}  // TEST_SUITE
