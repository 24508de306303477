#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyadic/structure.hpp"

namespace polyadic {

// Partition of the carrier compatible with f. Blocks are labelled
// 0,1,.. in order of their minimal elements.
struct Congruence {
  std::vector<int> block_of;
  int num_blocks = 0;

  std::vector<std::vector<int>> blocks() const;
  bool operator==(const Congruence&) const = default;
  bool operator<(const Congruence& o) const { return block_of < o.block_of; }
};

Congruence canonical_partition(const std::vector<int>& raw_block_of);
Congruence partition_from_blocks(int order,
                                 const std::vector<std::vector<int>>& blocks);

struct CongruenceCheck {
  bool ok = true;
  // witnessing coordinate substitution: tuples agree except at one
  // position where related elements x ~ y produce unrelated values
  std::vector<int> tuple;
  int position = -1;
  int other = -1;
};

CongruenceCheck is_congruence(const PolyadicGroup& P,
                              const std::vector<int>& block_of);

// All congruences: full partition scan for carriers <= 5, principal
// congruence closure lattice above that. Result is sorted by number of
// blocks (descending: equality first) then lexicographically.
std::vector<Congruence> enumerate_congruences(const PolyadicGroup& P);

// Smallest congruence relating every listed pair.
Congruence congruence_closure(const PolyadicGroup& P,
                              const std::vector<std::pair<int, int>>& pairs);

struct QuotientPolyadic {
  PolyadicGroup quotient;
  Congruence congruence;
  std::vector<int> representatives;  // block -> minimal parent element
};

QuotientPolyadic quotient(const PolyadicGroup& P, const Congruence& R);

struct LambdaReport {
  int basepoint;
  Congruence congruence;
  bool lambda_is_hom = false;
  bool lambda_surjective = false;
  std::vector<int> kernel;             // members of ker(lambda) in ret_a
  bool kernel_iso_holds = false;       // ret_a/ker = ret_{[a]}(quotient)
  std::vector<int> iso;                // witnessing isomorphism
  bool ok() const {
    return lambda_is_hom && lambda_surjective && kernel_iso_holds;
  }
};

// lambda(x) = [x] as a map ret_a(P) -> ret_{[a]}(P/R): verifies it is a
// surjective group homomorphism and exhibits the induced isomorphism
// from ret_a / ker(lambda).
LambdaReport lambda_check(const PolyadicGroup& P, const Congruence& R, int a);

struct PairSubgroupReport {
  FiniteGroup pair_group;      // ret_0(P) x ret_0(P)
  std::vector<int> members;    // encoded related pairs
  bool is_subgroup = false;
  bool is_normal = false;
};

// The relation R as a subset of G x G for P presented over its retract
// at 0; checks the subgroup property and records normality.
PairSubgroupReport congruence_as_subgroup(const PolyadicGroup& P,
                                          const Congruence& R);

struct PsiStep {
  std::string name;
  bool pass;
  std::string detail;
};

struct PsiEmbeddingReport {
  std::vector<PsiStep> steps;
  std::optional<PolyadicGroup> target;  // der_{theta-bar, b-bar}((GxG)/R)
  std::vector<int> psi;                 // block -> target element
  bool ok() const;
  std::string first_failure() const;
};

// The embedding psi([x]) = (x,1)R of the quotient into the derived group
// of (GxG)/R. Each construction step is verified exhaustively and the
// report names the first step that fails (when one does).
PsiEmbeddingReport psi_embedding(const PolyadicGroup& P, const Congruence& R);

}  // namespace polyadic
