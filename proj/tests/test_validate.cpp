#include <string>
#include <vector>

#include "bppc/validate.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bppc;

namespace {

bool mentions(const std::vector<std::string>& lines, const std::string& what) {
  for (const auto& line : lines)
    if (line.find(what) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_SUITE("validate") {

TEST_CASE("first-fit solutions validate cleanly") {
  Rng rng(197);
  for (int round = 0; round < 20; ++round) {
    const int n = 8 + static_cast<int>(rng.below(20));
    const Instance inst =
        testgen::random_instance(rng, n, 50, rng.real01() * 0.5, 1, 30);
    const Solution s = build_initial_mffd(inst, PenaltyWeights{50, 1});
    const FeasibilityReport rep = validate_solution(inst, s.to_partition(true));
    CHECK(rep.ok);
    CHECK(rep.structural.empty());
    CHECK(rep.overloaded.empty());
    CHECK(rep.conflicts.empty());
  }
}

TEST_CASE("a smuggled conflict is reported with both one-based ids") {
  Rng rng(199);
  Instance inst = testgen::random_instance(rng, 12, 100, 0.3, 1, 30);
  int a = -1;
  int b = -1;
  for (int i = 0; i < 12 && a < 0; ++i)
    for (int j = i + 1; j < 12 && a < 0; ++j)
      if (oracle::adjacent(inst, i, j)) {
        a = i;
        b = j;
      }
  REQUIRE(a >= 0);
  std::vector<std::vector<int>> partition;
  partition.push_back({a, b});
  for (int i = 0; i < 12; ++i)
    if (i != a && i != b) partition.push_back({i});
  const FeasibilityReport rep = validate_solution(inst, partition);
  CHECK_FALSE(rep.ok);
  CHECK(rep.structural.empty());
  REQUIRE_FALSE(rep.conflicts.empty());
  CHECK(mentions(rep.conflicts, std::to_string(a + 1)));
  CHECK(mentions(rep.conflicts, std::to_string(b + 1)));
  CHECK(rep.to_string().find(std::to_string(a + 1)) != std::string::npos);
}

TEST_CASE("structural and capacity defects are each called out") {
  Instance inst;
  inst.n = 3;
  inst.capacity = 10;
  inst.weights = {6, 6, 2};
  inst.conflicts = ConflictGraph(3);

  SUBCASE("missing item") {
    const FeasibilityReport rep = validate_solution(inst, {{0}, {1}});
    CHECK_FALSE(rep.ok);
    CHECK(mentions(rep.structural, "3"));
  }
  SUBCASE("duplicated item") {
    const FeasibilityReport rep = validate_solution(inst, {{0, 2}, {1}, {2}});
    CHECK_FALSE(rep.ok);
    CHECK(mentions(rep.structural, "3"));
  }
  SUBCASE("out-of-range id") {
    const FeasibilityReport rep = validate_solution(inst, {{0, 1, 2}, {7}});
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.structural.empty());
  }
  SUBCASE("overloaded bin") {
    const FeasibilityReport rep = validate_solution(inst, {{0, 1}, {2}});
    CHECK_FALSE(rep.ok);
    CHECK(rep.structural.empty());
    REQUIRE_FALSE(rep.overloaded.empty());
    CHECK(mentions(rep.overloaded, "12"));  // the offending load
  }
  SUBCASE("feasible layout passes") {
    const FeasibilityReport rep = validate_solution(inst, {{0, 2}, {1}});
    CHECK(rep.ok);
    CHECK(rep.to_string().find("feasible") != std::string::npos);
  }
}

TEST_CASE("solution text parses bins, comments and blank lines") {
  const auto bins = parse_partition("1 2\n\n# a note\n3\n4 5 # trailing\n");
  REQUIRE(bins.size() == 3);
  CHECK(bins[0] == std::vector<int>{0, 1});
  CHECK(bins[1] == std::vector<int>{2});
  CHECK(bins[2] == std::vector<int>{3, 4});
}

TEST_CASE("solution text rejects junk and non-positive ids") {
  CHECK_THROWS_AS(parse_partition("1 x\n"), ParseError);
  CHECK_THROWS_AS(parse_partition("1 2\n0\n"), ParseError);
  CHECK_THROWS_AS(parse_partition("-3\n"), ParseError);
  CHECK_THROWS_AS(parse_partition("1.5\n"), ParseError);
  try {
    parse_partition("1\n2 y\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("loading a missing solution file throws") {
  CHECK_THROWS_AS(load_partition("/nonexistent/bppc.sol"), ParseError);
}

}  // TEST_SUITE
