#include "bppc/validate.hpp"

#include <fstream>
#include <sstream>

namespace bppc {

std::string FeasibilityReport::to_string() const {
  if (ok) return "feasible";
  std::ostringstream out;
  for (const auto& msg : structural) out << "structural: " << msg << '\n';
  for (const auto& msg : overloaded) out << "capacity: " << msg << '\n';
  for (const auto& msg : conflicts) out << "conflict: " << msg << '\n';
  return out.str();
}

FeasibilityReport validate_solution(
    const Instance& inst, const std::vector<std::vector<int>>& partition) {
  FeasibilityReport report;
  std::vector<int> seen(static_cast<std::size_t>(inst.n), 0);
  for (std::size_t k = 0; k < partition.size(); ++k) {
    std::int64_t load = 0;
    const auto& bin = partition[k];
    for (std::size_t a = 0; a < bin.size(); ++a) {
      const int item = bin[a];
      if (item < 0 || item >= inst.n) {
        std::ostringstream msg;
        msg << "bin " << k + 1 << " refers to item " << item + 1
            << " outside 1.." << inst.n;
        report.structural.push_back(msg.str());
        continue;
      }
      if (++seen[static_cast<std::size_t>(item)] == 2) {
        std::ostringstream msg;
        msg << "item " << item + 1 << " assigned more than once";
        report.structural.push_back(msg.str());
      }
      load += inst.weights[static_cast<std::size_t>(item)];
      for (std::size_t b = a + 1; b < bin.size(); ++b) {
        const int other = bin[b];
        if (other < 0 || other >= inst.n) continue;
        if (inst.conflicts.is_conflict(item, other)) {
          std::ostringstream msg;
          msg << "items " << item + 1 << " and " << other + 1
              << " share bin " << k + 1;
          report.conflicts.push_back(msg.str());
        }
      }
    }
    if (load > inst.capacity) {
      std::ostringstream msg;
      msg << "bin " << k + 1 << " holds " << load << " > capacity "
          << inst.capacity;
      report.overloaded.push_back(msg.str());
    }
  }
  for (int i = 0; i < inst.n; ++i)
    if (seen[static_cast<std::size_t>(i)] == 0) {
      std::ostringstream msg;
      msg << "item " << i + 1 << " is not assigned";
      report.structural.push_back(msg.str());
    }
  report.ok = report.structural.empty() && report.overloaded.empty() &&
              report.conflicts.empty();
  return report;
}

std::vector<std::vector<int>> parse_partition(const std::string& text) {
  std::vector<std::vector<int>> bins;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string tok;
    std::vector<int> bin;
    bool comment = false;
    while (fields >> tok) {
      if (tok[0] == '#') {
        comment = true;
        break;
      }
      std::size_t used = 0;
      long long value = 0;
      try {
        value = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size())
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected an item id, got '" + tok + "'");
      if (value < 1)
        throw ParseError("line " + std::to_string(line_no) +
                         ": item ids are 1-based, got " + tok);
      bin.push_back(static_cast<int>(value - 1));
    }
    if (comment && bin.empty()) continue;
    if (!bin.empty()) bins.push_back(std::move(bin));
  }
  return bins;
}

std::vector<std::vector<int>> load_partition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open solution file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_partition(buffer.str());
}

}  // namespace bppc
