#include "polyadic/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "polyadic/budget.hpp"
#include "polyadic/small_groups.hpp"
#include "polyadic/structure.hpp"

namespace polyadic {

std::vector<PolyadicGroup> Catalog::groups() const {
  std::vector<PolyadicGroup> out;
  for (const auto& e : entries) out.push_back(e.group);
  return out;
}

std::vector<PolyadicGroup> Catalog::groups_up_to(int order) const {
  std::vector<PolyadicGroup> out;
  for (const auto& e : entries)
    if (e.group.order() <= order) out.push_back(e.group);
  return out;
}

Catalog build_catalog(int arity, int max_order) {
  require(arity >= 3, Errc::InvalidParams, "catalog arity must be >= 3");
  require(max_order >= 1 && max_order <= 8, Errc::InvalidParams,
          "catalog max order must be 1..8");
  Catalog cat;
  cat.arity = arity;
  cat.max_order = max_order;

  for (const auto& G : small_groups_up_to(max_order)) {
    for (const auto& theta : enumerate_automorphisms(G)) {
      for (int b = 0; b < G.order(); ++b) {
        if (theta[b] != b) continue;
        bool pow_ok = true;
        for (int x = 0; x < G.order() && pow_ok; ++x) {
          int t = x;
          for (int k = 0; k < arity - 1; ++k) t = theta[t];
          pow_ok = t == G.conjugate(b, x);
        }
        if (!pow_ok) continue;
        auto P = PolyadicGroup::theta_derived(G, Automorphism(G, theta), b,
                                              arity);
        bool fresh = true;
        for (const auto& e : cat.entries) {
          if (e.group.order() != P.order()) continue;
          if (find_polyadic_isomorphism(e.group, P)) {
            fresh = false;
            break;
          }
        }
        if (fresh)
          cat.entries.push_back(
              {P, G.name(), theta, b, find_nary_identity(P)});
      }
    }
  }
  std::stable_sort(cat.entries.begin(), cat.entries.end(),
                   [](const CatalogEntry& a, const CatalogEntry& b) {
                     return a.group.order() < b.group.order();
                   });
  return cat;
}

std::vector<PolyadicGroup> brute_force_polyadic_groups(int order, int arity) {
  long long cells = 1;
  for (int i = 0; i < arity; ++i) cells *= order;
  // order^cells candidate tables
  double log_count = cells * std::log2(static_cast<double>(order));
  require(log_count <= 24, Errc::BudgetExceeded,
          "table space too large for a brute-force scan");

  std::vector<PolyadicGroup> classes;
  std::vector<int> table(cells, 0);
  auto bump = [&]() {
    long long pos = cells - 1;
    while (pos >= 0 && table[pos] == order - 1) table[pos--] = 0;
    if (pos < 0) return false;
    ++table[pos];
    return true;
  };
  do {
    NAryTable t(arity, order, table);
    if (!verify_polyadic(t).ok) continue;
    auto P = PolyadicGroup::from_table(std::move(t));
    bool fresh = true;
    for (const auto& known : classes)
      if (find_polyadic_isomorphism(known, P)) {
        fresh = false;
        break;
      }
    if (fresh) classes.push_back(std::move(P));
  } while (bump());
  return classes;
}

std::vector<CatalogCrossCheck> catalog_cross_validate(const Catalog& cat) {
  std::vector<CatalogCrossCheck> out;
  for (int order = 1; order <= cat.max_order; ++order) {
    long long cells = 1;
    for (int i = 0; i < cat.arity; ++i) cells *= order;
    double log_count = cells * std::log2(std::max(2.0, double(order)));
    if (order > 1 && log_count > 24) continue;  // not scannable

    auto brute = brute_force_polyadic_groups(order, cat.arity);
    std::vector<const CatalogEntry*> entries;
    for (const auto& e : cat.entries)
      if (e.group.order() == order) entries.push_back(&e);

    bool match = brute.size() == entries.size();
    if (match) {
      // bijective correspondence between the classifications
      std::vector<char> used(entries.size(), 0);
      for (const auto& bf : brute) {
        bool found = false;
        for (size_t i = 0; i < entries.size() && !found; ++i) {
          if (used[i]) continue;
          if (find_polyadic_isomorphism(bf, entries[i]->group)) {
            used[i] = 1;
            found = true;
          }
        }
        if (!found) match = false;
      }
    }
    out.push_back({order, static_cast<int>(brute.size()),
                   static_cast<int>(entries.size()), match});
  }
  return out;
}

}  // namespace polyadic
