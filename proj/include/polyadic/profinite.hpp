#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polyadic/congruence.hpp"

namespace polyadic {

// Finite partial order with an explicit reachability matrix. Directedness
// (every pair has an upper bound) is recorded but not required: limits
// over non-directed shapes are still plain thread sets, only the
// nonemptiness guarantee needs directedness.
class DirectedPoset {
 public:
  static DirectedPoset from_pairs(int size,
                                  const std::vector<std::pair<int, int>>&
                                      lower_upper_pairs);

  int size() const { return size_; }
  bool leq(int a, int b) const { return leq_[a * size_ + b]; }  // a <= b
  bool is_directed() const;
  std::optional<int> greatest() const;
  // Linear extension with greater elements first.
  std::vector<int> descending_linear_extension() const;

 private:
  int size_ = 0;
  std::vector<char> leq_;
};

struct InverseSystem {
  DirectedPoset poset;
  std::vector<PolyadicGroup> stages;
  // connecting maps keyed by (higher, lower), higher != lower
  std::map<std::pair<int, int>, std::vector<int>> maps;

  const std::vector<int>& map(int from_higher, int to_lower) const;
  std::vector<int> identity_map(int stage) const;
};

struct SystemCheck {
  std::string name;
  bool pass;
  std::string detail;
};

struct SystemValidation {
  std::vector<SystemCheck> checks;
  bool ok() const;
  std::string first_failure() const;
};

// Poset axioms, directedness report, stage validity, hom property of
// every connecting map, and the composition law over all chains.
SystemValidation validate_system(const InverseSystem& S);

struct ThreadLimit {
  std::vector<std::vector<int>> threads;  // each of length poset.size()
  PolyadicGroup induced;                  // operation on thread indices
  int thread_index(const std::vector<int>& thread) const;
};

// Enumerates every compatible tuple, asserts nonemptiness and closure
// under the componentwise operation, and verifies the polyadic axioms
// on the induced table.
ThreadLimit inverse_limit(const InverseSystem& S);

struct YSetReport {
  std::vector<std::vector<std::vector<int>>> y_sets;  // tuples per index
  bool all_nonempty = false;
  bool monotone = false;          // i <= s implies Y_s subset of Y_i
  bool intersection_is_limit = false;
};

std::vector<std::vector<int>> y_set(const InverseSystem& S, int i);
YSetReport y_set_suite(const InverseSystem& S);

struct LimitRetractReport {
  std::vector<int> thread;
  bool maps_are_group_homs = false;
  bool limit_group_valid = false;
  bool isomorphism_holds = false;  // limit of retracts = retract of limit
  std::string detail;
  bool ok() const {
    return maps_are_group_homs && limit_group_valid && isomorphism_holds;
  }
};

// Stage retracts at the coordinates of a thread; the connecting maps are
// group homomorphisms between them and the group limit coincides with
// the retract of the polyadic limit at that thread.
LimitRetractReport limit_retract(const InverseSystem& S,
                                 const std::vector<int>& thread);

struct DerCommuteReport {
  bool stages_have_hg = false;
  bool maps_compatible = false;  // group homs, theta- and b-compatible
  bool sides_equal = false;      // limit of derived = derived of limit
  std::string detail;
  bool ok() const {
    return stages_have_hg && maps_compatible && sides_equal;
  }
};

DerCommuteReport der_limit_commute(const InverseSystem& S);

// K = intersection of theta^i(L) for i = 0..n-1; verified normal,
// theta-invariant and contained in L.
std::vector<int> theta_core(const FiniteGroup& G, const std::vector<int>& theta,
                            const std::vector<int>& L, int arity);

struct ReconstructReport {
  int invariant_subgroup_count = 0;
  int normal_subgroup_count = 0;
  bool system_valid = false;
  bool limit_isomorphic = false;
  bool cofinality_holds = false;  // every normal L contains a core in I
  std::vector<int> iso;           // limit -> P carrier bijection
  bool ok() const {
    return system_valid && limit_isomorphic && cofinality_holds;
  }
};

// Rebuilds P from the inverse system of its quotients by theta-invariant
// normal subgroups of the base group of its decomposition at 0.
ReconstructReport reconstruct_from_quotients(const PolyadicGroup& P);

bool poln_membership(const std::string& cls, const PolyadicGroup& P);

struct ClosureCounterexample {
  std::string operation;  // "sub", "product", "quotient"
  std::string detail;
};

struct ClosureSuiteReport {
  int members = 0;
  int subs_checked = 0, products_checked = 0, quotients_checked = 0;
  std::vector<ClosureCounterexample> counterexamples;
  bool ok() const { return counterexamples.empty(); }
};

// Closure of the membership class under sub-polyadic-groups, pairwise
// direct products and congruence quotients, over the given samples.
ClosureSuiteReport poln_closure_suite(const std::string& cls,
                                      const std::vector<PolyadicGroup>& samples);

struct ProXReport {
  std::vector<bool> stage_membership;
  bool all_stages_in_class = false;
  // forward: per stage-kernel congruence of the limit, the quotient's
  // membership; a failure names the stage
  bool forward_ok = false;
  std::optional<int> counterexample_stage;
  std::optional<Congruence> counterexample_congruence;
  // empirical converse: when every congruence quotient of the limit is
  // in the class, the limit is a limit of its own class quotients
  bool all_quotients_in_class = false;
  bool self_system_exhibited = false;
  int self_system_stage_count = 0;
};

ProXReport pro_x_check(const InverseSystem& S, const std::string& cls);

// Stage-kernel congruence of the limit at a stage index: threads are
// related when their coordinates at that stage agree.
Congruence stage_kernel_congruence(const InverseSystem& S,
                                   const ThreadLimit& L, int stage);

// Tower builders. cyclic_pk: stages Z_{p^k} for k = depth..1 with
// reduction maps, theta = +/- identity, shared b (reduced per stage).
InverseSystem build_tower_cyclic_pk(int p, int depth, int sign, long long b,
                                    int arity);
// derived chain: groups[0] is the top stage; homs[i] maps groups[i] ->
// groups[i+1]; every stage is the derived polyadic group.
InverseSystem build_tower_derived_chain(const std::vector<FiniteGroup>& groups,
                                        const std::vector<std::vector<int>>& homs,
                                        int arity);

}  // namespace polyadic
