#include "polyadic/small_groups.hpp"

#include <array>

namespace polyadic {

FiniteGroup cyclic_group(int m) {
  require(m >= 1, Errc::BadShape, "order must be positive");
  std::vector<int> table(static_cast<size_t>(m) * m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) table[x * m + y] = (x + y) % m;
  return FiniteGroup::from_flat_table(m, std::move(table),
                                      "Z" + std::to_string(m));
}

FiniteGroup klein_four_group() {
  auto g = direct_product({cyclic_group(2), cyclic_group(2)});
  return FiniteGroup::from_flat_table(4, g.flat_table(), "Z2xZ2");
}

FiniteGroup symmetric_group_s3() {
  // Permutations of {0,1,2} in lexicographic one-line order; composition
  // (p*q)(x) = p(q(x)).
  const std::array<std::array<int, 3>, 6> perms = {{{0, 1, 2},
                                                    {0, 2, 1},
                                                    {1, 0, 2},
                                                    {1, 2, 0},
                                                    {2, 0, 1},
                                                    {2, 1, 0}}};
  auto index_of = [&](const std::array<int, 3>& p) {
    for (int i = 0; i < 6; ++i)
      if (perms[i] == p) return i;
    return -1;
  };
  std::vector<int> table(36);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      std::array<int, 3> comp{};
      for (int x = 0; x < 3; ++x) comp[x] = perms[i][perms[j][x]];
      table[i * 6 + j] = index_of(comp);
    }
  return FiniteGroup::from_flat_table(6, std::move(table), "S3");
}

FiniteGroup dihedral_group_d4() {
  // Element a + 4e encodes r^a s^e with r^4 = s^2 = 1 and s r = r^-1 s.
  auto enc = [](int a, int e) { return ((a % 4) + 4) % 4 + 4 * e; };
  std::vector<int> table(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int a = x % 4, e = x / 4, b = y % 4, f = y / 4;
      table[x * 8 + y] = e == 0 ? enc(a + b, f) : enc(a - b, (1 + f) % 2);
    }
  return FiniteGroup::from_flat_table(8, std::move(table), "D4");
}

FiniteGroup quaternion_group_q8() {
  // 0..7 = 1, -1, i, -i, j, -j, k, -k.
  auto enc = [](int axis, int sign) { return 2 * axis + (sign < 0 ? 1 : 0); };
  auto axis_of = [](int x) { return x / 2; };
  auto sign_of = [](int x) { return x % 2 == 0 ? 1 : -1; };
  // unit table on axes {1,i,j,k}: result axis and sign of u*v
  static const int mul_axis[4][4] = {{0, 1, 2, 3},
                                     {1, 0, 3, 2},
                                     {2, 3, 0, 1},
                                     {3, 2, 1, 0}};
  static const int mul_sign[4][4] = {{1, 1, 1, 1},
                                     {1, -1, 1, -1},
                                     {1, -1, -1, 1},
                                     {1, 1, -1, -1}};
  std::vector<int> table(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int ax = axis_of(x), ay = axis_of(y);
      int s = sign_of(x) * sign_of(y) * mul_sign[ax][ay];
      table[x * 8 + y] = enc(mul_axis[ax][ay], s);
    }
  return FiniteGroup::from_flat_table(8, std::move(table), "Q8");
}

const std::vector<FiniteGroup>& small_groups() {
  static const std::vector<FiniteGroup> groups = [] {
    std::vector<FiniteGroup> gs;
    gs.push_back(cyclic_group(1));
    gs.push_back(cyclic_group(2));
    gs.push_back(cyclic_group(3));
    gs.push_back(cyclic_group(4));
    gs.push_back(klein_four_group());
    gs.push_back(cyclic_group(5));
    gs.push_back(cyclic_group(6));
    gs.push_back(symmetric_group_s3());
    gs.push_back(cyclic_group(7));
    gs.push_back(cyclic_group(8));
    {
      auto g = direct_product({cyclic_group(4), cyclic_group(2)});
      gs.push_back(FiniteGroup::from_flat_table(8, g.flat_table(), "Z4xZ2"));
    }
    {
      auto g = direct_product(
          {cyclic_group(2), cyclic_group(2), cyclic_group(2)});
      gs.push_back(FiniteGroup::from_flat_table(8, g.flat_table(), "Z2xZ2xZ2"));
    }
    gs.push_back(dihedral_group_d4());
    gs.push_back(quaternion_group_q8());
    return gs;
  }();
  return groups;
}

std::vector<FiniteGroup> small_groups_up_to(int max_order) {
  std::vector<FiniteGroup> out;
  for (const auto& g : small_groups())
    if (g.order() <= max_order) out.push_back(g);
  return out;
}

}  // namespace polyadic
