#ifndef BPPC_INSTANCE_HPP
#define BPPC_INSTANCE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bppc {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Undirected conflict graph over items 0..n-1. Adjacency lists are kept
// sorted; for n <= kBitMatrixMaxN a dense bit matrix backs is_conflict so the
// test is a single word probe, otherwise it falls back to binary search.
class ConflictGraph {
 public:
  ConflictGraph() = default;
  explicit ConflictGraph(int n) : n_(n), adj_(static_cast<std::size_t>(n)) {}

  // Builds from an edge list (0-based endpoints). Symmetrizes and removes
  // duplicates; throws ParseError on self-loops or out-of-range endpoints.
  static ConflictGraph from_edges(int n,
                                  const std::vector<std::pair<int, int>>& edges);

  int size() const { return n_; }
  const std::vector<int>& adjacent(int i) const {
    return adj_[static_cast<std::size_t>(i)];
  }
  int degree(int i) const {
    return static_cast<int>(adj_[static_cast<std::size_t>(i)].size());
  }
  bool is_conflict(int i, int j) const;
  std::int64_t edge_count() const;
  // Fraction of item pairs in conflict; 0 for n < 2.
  double density() const;

  static constexpr int kBitMatrixMaxN = 2048;

 private:
  int n_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<std::uint64_t> bits_;  // n rows of `words_` words each
  int words_ = 0;

  void finalize();  // sort adjacency, build bit matrix
};

struct Instance {
  int n = 0;
  std::int64_t capacity = 0;
  std::vector<std::int64_t> weights;  // weights[i], 1 <= w <= capacity
  ConflictGraph conflicts;
  std::string name;
};

// Text format, items and conflicts 1-based:
//   line 1:       n Q
//   lines 2..n+1: item_id weight [conflicting_item_id ...]
// A conflict may be listed on either endpoint; the writer emits each edge once
// on its lower-id endpoint. parse_instance throws ParseError naming the
// offending line on malformed input.
Instance parse_instance(const std::string& text, std::string name = "");
std::string write_instance(const Instance& inst);

// File wrappers; load_instance names the instance after the file stem.
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

// ceil(sum of weights / capacity): bins needed ignoring conflicts, >= 1 for
// any nonempty instance.
int lower_bound(const Instance& inst);

}  // namespace bppc

#endif
