#pragma once

#include <string>
#include <vector>

#include "bppc/instance.hpp"

namespace bppc {

// Outcome of checking a bin assignment against an instance.  `structural`
// covers coverage errors (missing, duplicated, or out-of-range items);
// `overloaded` and `conflicts` list offending bins / item pairs.
struct FeasibilityReport {
  bool ok = false;
  std::vector<std::string> structural;
  std::vector<std::string> overloaded;
  std::vector<std::string> conflicts;

  std::string to_string() const;
};

// Checks that `partition` is a feasible solution of `inst`: every item in
// exactly one bin, no bin over capacity, no conflicting pair sharing a bin.
FeasibilityReport validate_solution(const Instance& inst,
                                    const std::vector<std::vector<int>>& partition);

// Parses solution text: one line per bin, whitespace-separated 1-based item
// ids.  Blank lines and lines starting with '#' are skipped.  Throws
// ParseError on malformed input.  Returned ids are 0-based.
std::vector<std::vector<int>> parse_partition(const std::string& text);

// Reads a solution file via parse_partition.  Throws ParseError (including
// for an unreadable file).
std::vector<std::vector<int>> load_partition(const std::string& path);

}  // namespace bppc
