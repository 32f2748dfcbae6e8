#pragma once

#include <cstdint>

namespace wittkit {

// Global size guards. Combinatorial constructions (exponential diagrams in
// particular) can explode; these make the failure mode a clean error instead
// of a hung process.
struct Limits {
  int64_t max_poset_elements = 10'000;
  int64_t max_tuples = 1'000'000;      // exponential-diagram enumeration bound
  int64_t max_diagram_elements = 600;  // D and E element bound
  int64_t max_poly_terms = 2'000'000;
  bool cross_check_torsion_free = true;  // compare universal-polynomial route
                                         // against the ghost route when exact
};

Limits& limits();

}  // namespace wittkit
