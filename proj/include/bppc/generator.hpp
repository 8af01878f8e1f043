#ifndef BPPC_GENERATOR_HPP
#define BPPC_GENERATOR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include "bppc/instance.hpp"

namespace bppc {

class GenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Weight classes:
//   triplet     Q=1000, items come in triples summing exactly to Q, each
//               weight in (Q/4, Q/2); a conflict-free optimum packs exactly
//               three items per bin. Requires n divisible by 3.
//   uniform     Q=150, weights uniform in [20, 100].
//   largeweight Q=10000, weights uniform in [500, 2500].
enum class ClassKind { triplet, uniform, largeweight };

// Conflict graphs:
//   arbitrary   every pair independently with probability `density`.
//   interval    items get uniform starts in [0,1) and one shared interval
//               length; items conflict when intervals intersect. The length is
//               binary-searched so the realized density lands within 0.05 of
//               the request; failing that after 50 rounds is an error.
enum class GraphKind { interval, arbitrary };

struct GeneratorSpec {
  ClassKind class_kind = ClassKind::uniform;
  GraphKind graph_kind = GraphKind::arbitrary;
  int n = 0;
  double density = 0.0;  // requested, capped at 0.95
  std::uint64_t seed = 1;
  std::string name;  // optional; empty = derive from the fields
};

// "t120_r30_s7" style: class code (t/u/d, +a for arbitrary graphs), item
// count, density percent, seed.
std::string default_instance_name(const GeneratorSpec& spec);

Instance generate_instance(const GeneratorSpec& spec);

const char* class_kind_name(ClassKind k);
const char* graph_kind_name(GraphKind k);
ClassKind parse_class_kind(const std::string& s);  // throws GenerateError
GraphKind parse_graph_kind(const std::string& s);

}  // namespace bppc

#endif
