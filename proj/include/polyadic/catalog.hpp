#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyadic/polyadic_group.hpp"

namespace polyadic {

struct CatalogEntry {
  PolyadicGroup group;
  std::string base_name;
  std::vector<int> theta;
  int b;
  std::optional<int> nary_identity;  // present exactly for reducible entries
  bool reducible() const { return nary_identity.has_value(); }
};

struct Catalog {
  int arity = 0;
  int max_order = 0;
  std::vector<CatalogEntry> entries;  // pairwise non-isomorphic

  std::vector<PolyadicGroup> groups() const;
  std::vector<PolyadicGroup> groups_up_to(int order) const;
};

// All derivable polyadic groups of the given arity over the built-in
// base groups up to max_order, one representative per isomorphism class.
// Ordered by carrier size, then base group, then (theta, b).
Catalog build_catalog(int arity, int max_order);

// Brute-force enumeration of every operation table of the given order
// and arity, filtered by the axioms and classified up to isomorphism.
// Feasible only for order^(order^arity) scannable (order <= 2 at n = 3).
std::vector<PolyadicGroup> brute_force_polyadic_groups(int order, int arity);

struct CatalogCrossCheck {
  int order;
  int brute_class_count;
  int catalog_class_count;
  bool classes_match;  // every brute class appears exactly once in the catalog
};

// Compares the brute-force classification with the catalog at every
// order where the scan is feasible.
std::vector<CatalogCrossCheck> catalog_cross_validate(const Catalog& cat);

}  // namespace polyadic
