#pragma once

#include <vector>

#include "polyadic/group.hpp"

namespace polyadic {

FiniteGroup cyclic_group(int m);
FiniteGroup klein_four_group();
FiniteGroup symmetric_group_s3();
FiniteGroup dihedral_group_d4();
FiniteGroup quaternion_group_q8();

// Every group of order 1..8, one representative per isomorphism class,
// constructed and verified at first use. Ordered by order, cyclic first.
const std::vector<FiniteGroup>& small_groups();
std::vector<FiniteGroup> small_groups_up_to(int max_order);

}  // namespace polyadic
