#pragma once

#include <cstdint>

namespace polyadic {

// Enumeration guards. Exceeding a cap raises Errc::BudgetExceeded.
// The environment variable POLYADIC_BUDGET (a single element count)
// replaces all four count caps; the carrier caps are part of the
// library contract and stay fixed unless the variable is set, in which
// case they are lifted and only the count caps apply.
struct Budget {
  std::int64_t table_cells = 10'000'000;    // explicit n-ary table size
  std::int64_t assoc_tuples = 100'000'000;  // full associativity scan
  std::int64_t product_size = 1'000'000;    // thread / Y-set enumeration
  std::int64_t map_count = 20'000'000;      // brute-force map enumeration
  int hom_carrier = 8;                      // enumerate_homs carrier cap
  int congruence_carrier = 8;               // enumerate_congruences cap
  bool carrier_caps_enforced = true;

  static const Budget& current();
};

}  // namespace polyadic
