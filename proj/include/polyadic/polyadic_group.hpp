#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polyadic/group.hpp"

namespace polyadic {

// Flat n-dimensional operation table over 0..m-1, row-major with the
// first argument most significant.
class NAryTable {
 public:
  NAryTable(int arity, int order, std::vector<int> cells);
  static NAryTable from_nested(int arity, int order,
                               const std::vector<int>& cells);

  int arity() const { return arity_; }
  int order() const { return order_; }
  int eval(std::span<const int> args) const;
  int cell(long long flat_index) const { return cells_[flat_index]; }
  long long size() const { return static_cast<long long>(cells_.size()); }
  const std::vector<int>& cells() const { return cells_; }

 private:
  int arity_;
  int order_;
  std::vector<int> cells_;
};

struct AxiomViolation {
  enum class Kind { bad_shape, unique_solvability, associativity };
  Kind kind;
  std::vector<int> tuple;  // the witnessing argument tuple
  int axis = -1;           // failing coordinate direction (axiom ii)
  int pos_i = -1, pos_j = -1;  // failing bracketing pair (axiom i)
  std::string describe() const;
};

struct VerifyResult {
  bool ok = false;
  std::optional<AxiomViolation> violation;
};

// Axiom (ii) is checked as the Latin-cube condition (every coordinate
// line is a permutation), axiom (i) over all (2n-1)-tuples and all
// bracketing positions. Lexicographically first violation is reported.
VerifyResult verify_polyadic(const NAryTable& table);

// Hosszu-Gluskin data: base group, automorphism theta with theta(b)=b and
// theta^{n-1} = conjugation by b, evaluating as
//   f(x_1..x_n) = x_1 * theta(x_2) * ... * theta^{n-1}(x_n) * b.
struct HGTriple {
  FiniteGroup base;
  std::vector<int> theta;
  int b = 0;
  std::vector<std::vector<int>> theta_pow;  // theta^0 .. theta^{n-1}
  std::vector<int> theta_inv;
};

class PolyadicGroup {
 public:
  PolyadicGroup() = default;  // empty; assign from a factory before use

  // Verifies both axioms (within budget) before accepting the table.
  static PolyadicGroup from_table(NAryTable table, std::string name = "");

  // derive / b-derive / (theta,b)-derive from an ordinary group.
  static PolyadicGroup derived(const FiniteGroup& G, int arity);
  static PolyadicGroup b_derived(const FiniteGroup& G, int b, int arity);
  static PolyadicGroup theta_derived(const FiniteGroup& G,
                                     const Automorphism& theta, int b,
                                     int arity);

  int arity() const { return arity_; }
  int order() const { return order_; }
  const std::string& name() const { return name_; }

  int eval(std::span<const int> args) const;
  int eval(std::initializer_list<int> args) const {
    return eval(std::span<const int>(args.begin(), args.size()));
  }

  // The unique x with f(known_0..known_{pos-1}, x, known_pos..) = rhs;
  // pos is 0-based and known has n-1 entries.
  int solve(int pos, std::span<const int> known, int rhs) const;

  const std::optional<HGTriple>& hg() const { return hg_; }
  const NAryTable* table() const { return table_ ? &*table_ : nullptr; }

  // Explicit table of this group's operation (from cache or by
  // evaluating the backing formula; budget-guarded).
  NAryTable materialized() const;

 private:
  int arity_ = 0;
  int order_ = 0;
  std::optional<NAryTable> table_;
  std::optional<HGTriple> hg_;
  std::string name_;
};

// skew(x) is the unique y with f(x,..,x,y) = x (n-1 copies of x).
std::vector<int> skew_map(const PolyadicGroup& P);

struct DornteResult {
  bool ok = true;
  int x = -1, y = -1, i = -1;  // witness (i is the 2..n identity index)
  bool left_side = true;
};

// f(x^(i-2), ~x, x^(n-i), y) = y = f(y, x^(n-i), ~x, x^(i-2)) for all
// x, y and 2 <= i <= n.
DornteResult check_dornte(const PolyadicGroup& P);

// An element a with f(a^(i-1), x, a^(n-i)) = x for all x and i; present
// exactly when the group is derived from an ordinary group.
std::optional<int> find_nary_identity(const PolyadicGroup& P);

PolyadicGroup polyadic_direct_product(const PolyadicGroup& A,
                                      const PolyadicGroup& B);

// Polyadic group induced on a carrier subset closed under f (dense
// reindexing in carrier order).
PolyadicGroup restrict_to_carrier(const PolyadicGroup& P,
                                  const std::vector<int>& carrier);

// All f-closed nonempty carrier subsets (each is automatically closed
// under skew), sorted by size then lexicographically.
std::vector<std::vector<int>> enumerate_subpolyadic_carriers(
    const PolyadicGroup& P);

// Bijection alpha with alpha(f(x..)) = g(alpha(x)..); nullopt when the
// groups are not isomorphic.
std::optional<std::vector<int>> find_polyadic_isomorphism(
    const PolyadicGroup& P, const PolyadicGroup& Q);

bool is_polyadic_hom(const PolyadicGroup& P, const PolyadicGroup& Q,
                     const std::vector<int>& map);

}  // namespace polyadic
