#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyadic/error.hpp"

namespace polyadic {

// Finite group on elements 0..m-1 backed by a full multiplication table.
// Immutable after construction; identity and inverses are precomputed.
class FiniteGroup {
 public:
  FiniteGroup() = default;  // empty; assign from a factory before use

  // Validates the Latin property, associativity and the identity/inverse
  // structure. Throws NotLatin / NotAssociative / NoIdentity.
  static FiniteGroup from_table(const std::vector<std::vector<int>>& table,
                                std::string name = "");
  static FiniteGroup from_flat_table(int order, std::vector<int> table,
                                     std::string name = "");

  int order() const { return order_; }
  int op(int x, int y) const { return table_[x * order_ + y]; }
  int identity() const { return identity_; }
  int inverse(int x) const { return inverse_[x]; }
  const std::string& name() const { return name_; }
  const std::vector<int>& flat_table() const { return table_; }

  int conjugate(int g, int x) const;  // g x g^{-1}
  int power(int x, long long k) const;
  int element_order(int x) const;
  bool is_abelian() const;
  bool is_central(int x) const;
  bool is_cyclic() const;

  bool same_table(const FiniteGroup& other) const {
    return order_ == other.order_ && table_ == other.table_;
  }

 private:
  int order_ = 0;
  std::vector<int> table_;  // row-major m*m
  int identity_ = 0;
  std::vector<int> inverse_;
  std::string name_;
};

// Permutation of 0..m-1 that preserves the group table.
class Automorphism {
 public:
  // Validates bijectivity and the homomorphism property.
  Automorphism(const FiniteGroup& domain, std::vector<int> map);

  int operator()(int x) const { return map_[x]; }
  const std::vector<int>& map() const { return map_; }
  int degree() const { return static_cast<int>(map_.size()); }

 private:
  std::vector<int> map_;
};

struct GroupHom {
  FiniteGroup source;
  FiniteGroup target;
  std::vector<int> map;
};

bool is_group_hom(const FiniteGroup& G, const FiniteGroup& H,
                  const std::vector<int>& map);
GroupHom make_group_hom(const FiniteGroup& G, const FiniteGroup& H,
                        std::vector<int> map);

// Mixed-radix element encoding for direct products: with factor orders
// m_1..m_k, the tuple (x_1..x_k) maps to x_1*m_2*...*m_k + ... + x_k
// (first factor is most significant). decode is the inverse.
std::vector<long long> product_strides(const std::vector<int>& orders);
int product_encode(const std::vector<int>& orders, const std::vector<int>& xs);
std::vector<int> product_decode(const std::vector<int>& orders, int index);

FiniteGroup direct_product(const std::vector<FiniteGroup>& factors);

// Subgroups are represented as sorted member-index vectors.
std::vector<int> generated_subgroup(const FiniteGroup& G,
                                    const std::vector<int>& seed);
bool is_subgroup(const FiniteGroup& G, const std::vector<int>& members);
bool is_normal_subgroup(const FiniteGroup& G, const std::vector<int>& members);

// All subgroups / normal subgroups, sorted by size then lexicographically.
std::vector<std::vector<int>> enumerate_subgroups(const FiniteGroup& G);
std::vector<std::vector<int>> enumerate_normal_subgroups(const FiniteGroup& G);

struct QuotientGroup {
  FiniteGroup group;
  std::vector<int> projection;       // parent element -> coset index
  std::vector<int> representatives;  // coset index -> minimal parent element
};

// Throws NotNormal when N is not normal in G.
QuotientGroup quotient_group(const FiniteGroup& G, const std::vector<int>& N);

std::vector<int> commutator_subgroup(const FiniteGroup& G,
                                     const std::vector<int>& A,
                                     const std::vector<int>& B);

// name is one of: abelian, solvable, nilpotent, "<p>-group" or "p-group(<p>)".
bool class_predicate(const std::string& name, const FiniteGroup& G);

// All automorphisms of G as permutation arrays, lexicographically sorted.
std::vector<std::vector<int>> enumerate_automorphisms(const FiniteGroup& G);

// All homomorphisms G -> H as map arrays, lexicographically sorted.
std::vector<std::vector<int>> enumerate_group_homs(const FiniteGroup& G,
                                                   const FiniteGroup& H);

// Backtracking search on generator images; nullopt when non-isomorphic.
std::optional<std::vector<int>> find_group_isomorphism(const FiniteGroup& A,
                                                       const FiniteGroup& B);

// Greedy generating sequence (empty for the trivial group).
std::vector<int> generating_sequence(const FiniteGroup& G);

}  // namespace polyadic
