#include "bppc/instance.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace bppc {

namespace {

std::string line_msg(int line_no, const std::string& what) {
  return "line " + std::to_string(line_no) + ": " + what;
}

}  // namespace

ConflictGraph ConflictGraph::from_edges(
    int n, const std::vector<std::pair<int, int>>& edges) {
  ConflictGraph g(n);
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw ParseError("conflict endpoint out of range");
    if (a == b) throw ParseError("self-conflict");
    g.adj_[static_cast<std::size_t>(a)].push_back(b);
    g.adj_[static_cast<std::size_t>(b)].push_back(a);
  }
  g.finalize();
  return g;
}

void ConflictGraph::finalize() {
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  if (n_ > 0 && n_ <= kBitMatrixMaxN) {
    words_ = (n_ + 63) / 64;
    bits_.assign(static_cast<std::size_t>(n_) * words_, 0);
    for (int i = 0; i < n_; ++i)
      for (int j : adj_[static_cast<std::size_t>(i)])
        bits_[static_cast<std::size_t>(i) * words_ + j / 64] |=
            std::uint64_t{1} << (j % 64);
  }
}

bool ConflictGraph::is_conflict(int i, int j) const {
  if (i == j) return false;
  if (!bits_.empty())
    return (bits_[static_cast<std::size_t>(i) * words_ + j / 64] >>
            (j % 64)) & 1;
  const auto& list = adj_[static_cast<std::size_t>(i)];
  return std::binary_search(list.begin(), list.end(), j);
}

std::int64_t ConflictGraph::edge_count() const {
  std::int64_t twice = 0;
  for (const auto& list : adj_) twice += static_cast<std::int64_t>(list.size());
  return twice / 2;
}

double ConflictGraph::density() const {
  if (n_ < 2) return 0.0;
  return 2.0 * static_cast<double>(edge_count()) /
         (static_cast<double>(n_) * (n_ - 1));
}

Instance parse_instance(const std::string& text, std::string name) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  auto next_line = [&](bool required) {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    if (required) throw ParseError("unexpected end of input");
    return false;
  };

  if (!next_line(false)) throw ParseError("empty input");

  Instance inst;
  inst.name = std::move(name);
  {
    std::istringstream hs(line);
    if (!(hs >> inst.n >> inst.capacity))
      throw ParseError(line_msg(line_no, "malformed header, expected 'n Q'"));
    std::string rest;
    if (hs >> rest)
      throw ParseError(line_msg(line_no, "trailing tokens after 'n Q'"));
    if (inst.n < 1)
      throw ParseError(line_msg(line_no, "item count must be positive"));
    if (inst.capacity < 1)
      throw ParseError(line_msg(line_no, "capacity must be positive"));
  }

  inst.weights.assign(static_cast<std::size_t>(inst.n), -1);
  std::vector<std::pair<int, int>> edges;
  for (int row = 0; row < inst.n; ++row) {
    next_line(true);
    std::istringstream ls(line);
    long long id = 0;
    if (!(ls >> id))
      throw ParseError(line_msg(line_no, "expected item line 'id weight ...'"));
    if (id < 1 || id > inst.n)
      throw ParseError(line_msg(line_no, "item index out of range"));
    const int item = static_cast<int>(id) - 1;
    if (inst.weights[static_cast<std::size_t>(item)] >= 0)
      throw ParseError(line_msg(line_no, "duplicate item line"));
    std::int64_t w = 0;
    if (!(ls >> w))
      throw ParseError(line_msg(line_no, "non-integer or missing weight"));
    if (w < 1)
      throw ParseError(line_msg(line_no, "weight must be positive"));
    if (w > inst.capacity)
      throw ParseError(line_msg(line_no, "weight exceeds capacity"));
    inst.weights[static_cast<std::size_t>(item)] = w;
    long long other = 0;
    while (ls >> other) {
      if (other < 1 || other > inst.n)
        throw ParseError(line_msg(line_no, "conflict index out of range"));
      if (other == id)
        throw ParseError(line_msg(line_no, "item listed in conflict with itself"));
      edges.emplace_back(item, static_cast<int>(other) - 1);
    }
    if (!ls.eof())
      throw ParseError(line_msg(line_no, "non-integer conflict token"));
  }
  if (next_line(false))
    throw ParseError(line_msg(line_no, "trailing content after last item"));

  inst.conflicts = ConflictGraph::from_edges(inst.n, edges);
  return inst;
}

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  out << inst.n << ' ' << inst.capacity << '\n';
  for (int i = 0; i < inst.n; ++i) {
    out << i + 1 << ' ' << inst.weights[static_cast<std::size_t>(i)];
    for (int j : inst.conflicts.adjacent(i))
      if (j > i) out << ' ' << j + 1;  // each edge once, lower endpoint
    out << '\n';
  }
  return out.str();
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), std::filesystem::path(path).stem().string());
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write instance file: " + path);
  out << write_instance(inst);
}

int lower_bound(const Instance& inst) {
  std::int64_t total = 0;
  for (std::int64_t w : inst.weights) total += w;
  return static_cast<int>((total + inst.capacity - 1) / inst.capacity);
}

}  // namespace bppc
