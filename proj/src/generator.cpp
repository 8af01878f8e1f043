#include "bppc/generator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "bppc/rng.hpp"

namespace bppc {

namespace {

constexpr double kDensityCap = 0.95;
constexpr double kIntervalTolerance = 0.05;
constexpr int kCalibrationRounds = 50;

std::vector<std::int64_t> draw_weights(ClassKind kind, int n,
                                       std::int64_t& capacity, Rng& rng) {
  std::vector<std::int64_t> w;
  w.reserve(static_cast<std::size_t>(n));
  switch (kind) {
    case ClassKind::triplet: {
      // Each triple sums to Q with every weight strictly inside (Q/4, Q/2),
      // so three is both the most and the fewest items a full bin can hold.
      capacity = 1000;
      for (int t = 0; t < n / 3; ++t) {
        const std::int64_t w1 = rng.range(251, 497);
        const std::int64_t w2 = rng.range(251, (999 - w1) / 2);
        w.push_back(w1);
        w.push_back(w2);
        w.push_back(capacity - w1 - w2);
      }
      rng.shuffle(w);
      return w;
    }
    case ClassKind::uniform:
      capacity = 150;
      for (int i = 0; i < n; ++i) w.push_back(rng.range(20, 100));
      return w;
    case ClassKind::largeweight:
      capacity = 10000;
      for (int i = 0; i < n; ++i) w.push_back(rng.range(500, 2500));
      return w;
  }
  throw GenerateError("unknown weight class");
}

std::vector<std::pair<int, int>> arbitrary_edges(int n, double density,
                                                 Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.chance(density)) edges.emplace_back(i, j);
  return edges;
}

// Pairs of starts within distance `len`, counted over the sorted starts with a
// sliding window.
std::int64_t overlap_pairs(const std::vector<double>& sorted_starts,
                           double len) {
  std::int64_t pairs = 0;
  std::size_t lo = 0;
  for (std::size_t hi = 0; hi < sorted_starts.size(); ++hi) {
    while (sorted_starts[hi] - sorted_starts[lo] > len) ++lo;
    pairs += static_cast<std::int64_t>(hi - lo);
  }
  return pairs;
}

std::vector<std::pair<int, int>> interval_edges(int n, double density,
                                                Rng& rng) {
  std::vector<double> starts(static_cast<std::size_t>(n));
  for (double& s : starts) s = rng.real01();

  std::vector<double> sorted = starts;
  std::sort(sorted.begin(), sorted.end());
  const double total_pairs = static_cast<double>(n) * (n - 1) / 2.0;

  double lo = 0.0, hi = 1.0;
  double best_len = 0.0;
  double best_err = std::abs(static_cast<double>(overlap_pairs(sorted, 0.0)) /
                                 total_pairs -
                             density);
  for (int round = 0; round < kCalibrationRounds && best_err > 0; ++round) {
    const double mid = (lo + hi) / 2.0;
    const double realized =
        static_cast<double>(overlap_pairs(sorted, mid)) / total_pairs;
    if (std::abs(realized - density) < best_err) {
      best_err = std::abs(realized - density);
      best_len = mid;
    }
    if (realized < density)
      lo = mid;
    else
      hi = mid;
  }
  if (best_err > kIntervalTolerance)
    throw GenerateError(
        "interval graph calibration failed: no shared length reaches the "
        "requested density within 0.05");

  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(starts[static_cast<std::size_t>(i)] -
                   starts[static_cast<std::size_t>(j)]) <= best_len)
        edges.emplace_back(i, j);
  return edges;
}

}  // namespace

std::string default_instance_name(const GeneratorSpec& spec) {
  std::ostringstream out;
  switch (spec.class_kind) {
    case ClassKind::triplet: out << 't'; break;
    case ClassKind::uniform: out << 'u'; break;
    case ClassKind::largeweight: out << 'd'; break;
  }
  if (spec.graph_kind == GraphKind::arbitrary) out << 'a';
  const double d = std::min(std::max(spec.density, 0.0), kDensityCap);
  out << spec.n << "_r" << static_cast<int>(std::lround(d * 100)) << "_s"
      << spec.seed;
  return out.str();
}

Instance generate_instance(const GeneratorSpec& spec) {
  if (spec.n < 3) throw GenerateError("instance needs at least 3 items");
  if (spec.class_kind == ClassKind::triplet && spec.n % 3 != 0)
    throw GenerateError("triplet class needs n divisible by 3");
  if (spec.density < 0.0) throw GenerateError("density must be nonnegative");
  const double density = std::min(spec.density, kDensityCap);

  Rng rng(spec.seed);
  Instance inst;
  inst.n = spec.n;
  inst.weights = draw_weights(spec.class_kind, spec.n, inst.capacity, rng);
  const auto edges = spec.graph_kind == GraphKind::arbitrary
                         ? arbitrary_edges(spec.n, density, rng)
                         : interval_edges(spec.n, density, rng);
  inst.conflicts = ConflictGraph::from_edges(spec.n, edges);
  inst.name = spec.name.empty() ? default_instance_name(spec) : spec.name;
  return inst;
}

const char* class_kind_name(ClassKind k) {
  switch (k) {
    case ClassKind::triplet: return "triplet";
    case ClassKind::uniform: return "uniform";
    case ClassKind::largeweight: return "largeweight";
  }
  return "?";
}

const char* graph_kind_name(GraphKind k) {
  return k == GraphKind::interval ? "interval" : "arbitrary";
}

ClassKind parse_class_kind(const std::string& s) {
  if (s == "triplet") return ClassKind::triplet;
  if (s == "uniform") return ClassKind::uniform;
  if (s == "largeweight") return ClassKind::largeweight;
  throw GenerateError("unknown weight class: " + s);
}

GraphKind parse_graph_kind(const std::string& s) {
  if (s == "interval") return GraphKind::interval;
  if (s == "arbitrary") return GraphKind::arbitrary;
  throw GenerateError("unknown graph kind: " + s);
}

}  // namespace bppc
