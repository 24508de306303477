#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyadic/polyadic_group.hpp"

namespace polyadic {

// Ordinary group x*y = f(x, a^(n-2), y) on the carrier of a polyadic
// group; its identity is skew(a).
struct Retract {
  int basepoint;
  FiniteGroup group;
};

Retract retract_at(const PolyadicGroup& P, int a);

// Closed-form inverse map of the retract (cross-checked against table
// inversion inside retract_at); requires arity >= 3.
std::vector<int> retract_inverse_formula(const PolyadicGroup& P, int a);

// Explicit isomorphism ret_a -> ret_a2; throws NotFound when the search
// fails (which would falsify the all-retracts-isomorphic fact).
std::vector<int> retracts_isomorphic(const PolyadicGroup& P, int a, int a2);

struct HGDecomposition {
  int arity;
  Retract retract;
  std::vector<int> theta;
  int b;
};

// Retract at v with theta(x) = f(~v, x, v^(n-2)) and b = f(~v,..,~v);
// all decomposition invariants (including exact reconstruction of f)
// are verified before returning.
HGDecomposition hg_decompose(const PolyadicGroup& P, int v);

PolyadicGroup hg_reconstruct(const HGDecomposition& D);

struct PostCoverCheck {
  std::string name;
  bool pass;
  std::string detail;
};

// Cover group on pairs (x, k), k in 0..n-2, encoded as k*m + x, with
//   (x,i)(y,j) = (x * theta^i(y) * b^carry, (i+j) mod (n-1)).
// The carrier embeds as x -> (x, 1 mod (n-1)).
struct PostCover {
  int arity;
  FiniteGroup cover;
  std::vector<int> embedding;  // carrier -> cover element
  std::vector<int> kernel;     // members of K
  std::vector<PostCoverCheck> checks;
  bool all_pass() const;
};

// Verifies the five cover properties before returning; a failure throws
// ConstructionFailed (an implementation bug, not bad input).
PostCover post_cover(const PolyadicGroup& P);

struct HomCheck {
  bool ok = true;
  std::vector<int> witness;  // argument tuple where the map fails
};

// Exhaustive polyadic-homomorphism check with witness.
HomCheck hom_verify(const PolyadicGroup& P, const PolyadicGroup& Q,
                    const std::vector<int>& map);

// psi = R(a) . phi with a = psi(identity of the source retract) and
// phi(x) = psi(x) * a^{ -1}; both published compatibility-condition
// variants are evaluated and recorded.
struct HomFactorization {
  int a;
  std::vector<int> phi;
  bool phi_is_hom;
  bool cond_power;          // h(a^(n)) = phi(b) * a
  bool cond_twist_inner;    // phi.theta = I_a . eta . phi
  bool cond_twist_inverse;  // phi.theta = I_{a^-1} . eta . phi
};

HomFactorization hom_decompose(const PolyadicGroup& P, const PolyadicGroup& Q,
                               const std::vector<int>& psi);

// A verified map between polyadic groups, with its factorization data
// when the computation is requested.
struct PolyadicHom {
  PolyadicGroup source;
  PolyadicGroup target;
  std::vector<int> map;
  std::optional<HomFactorization> factorization;
};

PolyadicHom make_polyadic_hom(const PolyadicGroup& source,
                              const PolyadicGroup& target,
                              std::vector<int> map, bool factorize = true);

struct HomEnumeration {
  std::vector<std::vector<int>> brute;            // all maps, filtered
  std::vector<std::vector<int>> factored_inner;   // R(a)phi, I_a variant
  std::vector<std::vector<int>> factored_inverse; // I_{a^-1} variant
  bool equal_inner;
  bool equal_inverse;
};

// Two independent enumerations of Hom(P, Q); carriers above the budget
// cap raise BudgetExceeded.
HomEnumeration enumerate_homs(const PolyadicGroup& P, const PolyadicGroup& Q);

struct UniversalExtension {
  std::vector<int> h;   // cover element -> H
  bool restricts_to_beta;
  int agreeing_hom_count;  // homs cover->H with h(embed(x)) = beta(x)
  bool unique() const { return agreeing_hom_count == 1; }
};

// The unique ordinary homomorphism cover -> H restricting to beta along
// the embedding, where beta maps P into the derived group of H.
// Uniqueness is established by exhaustive hom enumeration.
UniversalExtension universal_extend(const PolyadicGroup& P,
                                    const PostCover& C,
                                    const PolyadicGroup& target,
                                    const std::vector<int>& beta);

}  // namespace polyadic
