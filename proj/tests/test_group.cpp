#include <doctest.h>

#include "polyadic/group.hpp"
#include "polyadic/small_groups.hpp"

#include "oracles.hpp"

using namespace polyadic;

TEST_CASE("group_from_table basics") {
  auto z2 = FiniteGroup::from_table({{0, 1}, {1, 0}});
  CHECK(z2.order() == 2);
  CHECK(z2.identity() == 0);

  auto z4 = cyclic_group(4);
  CHECK(z4.order() == 4);
  CHECK(z4.inverse(1) == 3);

  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), Error);
  try {
    FiniteGroup::from_table({{0, 1}, {1, 1}});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotLatin);
  }
}

TEST_CASE("latin but non-associative table is rejected") {
  // subtraction mod 5: a quasigroup that is not a group
  std::vector<std::vector<int>> t(5, std::vector<int>(5));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) t[i][j] = ((i - j) % 5 + 5) % 5;
  try {
    FiniteGroup::from_table(t);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotAssociative);
  }
}

TEST_CASE("direct product encoding and orders") {
  auto v4 = direct_product({cyclic_group(2), cyclic_group(2)});
  CHECK(v4.order() == 4);
  for (int x = 1; x < 4; ++x) CHECK(v4.element_order(x) == 2);

  auto z4 = direct_product({cyclic_group(4)});
  CHECK(z4.order() == 4);
  CHECK(z4.is_cyclic());

  auto z6 = direct_product({cyclic_group(2), cyclic_group(3)});
  bool has_generator = false;
  for (int x = 0; x < 6; ++x)
    if (oracles::element_order_scan(z6, x) == 6) has_generator = true;
  CHECK(has_generator);

  // mixed radix: first factor most significant
  CHECK(product_encode({2, 3}, {1, 2}) == 5);
  CHECK(product_decode({2, 3}, 5) == std::vector<int>{1, 2});
}

TEST_CASE("quotient group with minimal representatives") {
  auto z4 = cyclic_group(4);
  auto q = quotient_group(z4, {0, 2});
  CHECK(q.group.order() == 2);
  for (int x = 0; x < 4; ++x) CHECK(q.projection[x] == x % 2);

  auto full = quotient_group(z4, {0});
  CHECK(full.group.order() == 4);

  auto v4 = klein_four_group();
  auto sub = generated_subgroup(v4, {product_encode({2, 2}, {1, 0})});
  CHECK(quotient_group(v4, sub).group.order() == 2);

  auto s3 = symmetric_group_s3();
  bool threw = false;
  for (const auto& S : enumerate_subgroups(s3))
    if (S.size() == 2) {
      try {
        quotient_group(s3, S);
      } catch (const Error& e) {
        threw = e.code() == Errc::NotNormal;
      }
      break;
    }
  CHECK(threw);
}

TEST_CASE("normal subgroup enumeration") {
  auto z4 = cyclic_group(4);
  auto normals = enumerate_normal_subgroups(z4);
  REQUIRE(normals.size() == 3);
  CHECK(normals[0] == std::vector<int>{0});
  CHECK(normals[1] == std::vector<int>{0, 2});
  CHECK(normals[2] == std::vector<int>{0, 1, 2, 3});

  CHECK(enumerate_normal_subgroups(cyclic_group(2)).size() == 2);

  auto s3 = symmetric_group_s3();
  auto s3_normals = enumerate_normal_subgroups(s3);
  REQUIRE(s3_normals.size() == 3);
  CHECK(s3_normals[1].size() == 3);  // the rotation subgroup

  // subgroup (not necessarily normal) count for S3: 1+3+1+1 = 6
  CHECK(enumerate_subgroups(s3).size() == 6);
}

TEST_CASE("class predicates") {
  CHECK(class_predicate("abelian", cyclic_group(4)));
  CHECK(class_predicate("2-group", klein_four_group()));
  CHECK(class_predicate("p-group(2)", cyclic_group(8)));
  CHECK_FALSE(class_predicate("abelian", symmetric_group_s3()));
  CHECK(class_predicate("solvable", symmetric_group_s3()));
  CHECK(class_predicate("nilpotent", quaternion_group_q8()));
  CHECK_FALSE(class_predicate("nilpotent", symmetric_group_s3()));
  CHECK_FALSE(class_predicate("2-group", cyclic_group(6)));
  CHECK_THROWS_AS(class_predicate("frobnitz", cyclic_group(2)), Error);
}

TEST_CASE("class predicate closure on small orders") {
  // abelian and 2-group classes closed under subgroup, quotient, product
  std::vector<FiniteGroup> abelians = {cyclic_group(2), cyclic_group(4),
                                       klein_four_group()};
  for (const auto& G : abelians) {
    for (const auto& S : enumerate_subgroups(G)) {
      // subgroup of an abelian group: restrict the table
      std::vector<int> index_of(G.order(), -1);
      for (size_t i = 0; i < S.size(); ++i) index_of[S[i]] = int(i);
      std::vector<std::vector<int>> t(S.size(), std::vector<int>(S.size()));
      for (size_t i = 0; i < S.size(); ++i)
        for (size_t j = 0; j < S.size(); ++j)
          t[i][j] = index_of[G.op(S[i], S[j])];
      CHECK(class_predicate("abelian", FiniteGroup::from_table(t)));
    }
    for (const auto& N : enumerate_normal_subgroups(G))
      CHECK(class_predicate("abelian", quotient_group(G, N).group));
    for (const auto& H : abelians)
      CHECK(class_predicate("abelian", direct_product({G, H})));
  }
  std::vector<FiniteGroup> two_groups = {cyclic_group(2), cyclic_group(4),
                                         klein_four_group(), cyclic_group(8)};
  for (const auto& G : two_groups)
    for (const auto& H : two_groups)
      CHECK(class_predicate("2-group", direct_product({G, H})));
}

TEST_CASE("automorphisms and homs") {
  auto z4 = cyclic_group(4);
  auto autos = enumerate_automorphisms(z4);
  CHECK(autos.size() == 2);  // identity and negation

  auto v4 = klein_four_group();
  CHECK(enumerate_automorphisms(v4).size() == 6);

  auto homs = enumerate_group_homs(z4, cyclic_group(2));
  CHECK(homs.size() == 2);  // zero map and reduction

  auto s3 = symmetric_group_s3();
  CHECK(enumerate_group_homs(s3, cyclic_group(2)).size() == 2);
  CHECK(enumerate_group_homs(s3, cyclic_group(3)).size() == 1);

  CHECK(is_group_hom(z4, cyclic_group(2), {0, 1, 0, 1}));
  CHECK_FALSE(is_group_hom(z4, cyclic_group(2), {0, 0, 1, 0}));
}

TEST_CASE("group isomorphism search") {
  auto z4 = cyclic_group(4);
  auto v4 = klein_four_group();
  CHECK_FALSE(find_group_isomorphism(z4, v4).has_value());

  auto z6 = cyclic_group(6);
  auto z2x3 = direct_product({cyclic_group(2), cyclic_group(3)});
  auto iso = find_group_isomorphism(z6, z2x3);
  REQUIRE(iso.has_value());
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y)
      CHECK((*iso)[z6.op(x, y)] == z2x3.op((*iso)[x], (*iso)[y]));

  CHECK_FALSE(
      find_group_isomorphism(dihedral_group_d4(), quaternion_group_q8())
          .has_value());
  CHECK(find_group_isomorphism(quaternion_group_q8(), quaternion_group_q8())
            .has_value());
}

TEST_CASE("quotient projection is a surjective hom with kernel N") {
  for (const auto& G : {cyclic_group(4), klein_four_group(),
                        symmetric_group_s3(), cyclic_group(8)}) {
    for (const auto& N : enumerate_normal_subgroups(G)) {
      auto q = quotient_group(G, N);
      CHECK(is_group_hom(G, q.group, q.projection));
      std::vector<char> hit(q.group.order(), 0);
      for (int v : q.projection) hit[v] = 1;
      for (char c : hit) CHECK(c == 1);
      std::vector<int> kernel;
      for (int x = 0; x < G.order(); ++x)
        if (q.projection[x] == q.group.identity()) kernel.push_back(x);
      CHECK(kernel == N);
    }
  }
}

TEST_CASE("factor projections of a product are homs") {
  auto a = cyclic_group(3);
  auto b = symmetric_group_s3();
  auto prod = direct_product({a, b});
  std::vector<int> to_a(prod.order()), to_b(prod.order());
  for (int x = 0; x < prod.order(); ++x) {
    auto xs = product_decode({3, 6}, x);
    to_a[x] = xs[0];
    to_b[x] = xs[1];
  }
  CHECK(is_group_hom(prod, a, to_a));
  CHECK(is_group_hom(prod, b, to_b));
}

TEST_CASE("small groups verify at startup") {
  CHECK(small_groups().size() == 14);
  for (const auto& g : small_groups()) {
    CHECK(g.order() >= 1);
    CHECK(g.order() <= 8);
  }
  CHECK(small_groups_up_to(6).size() == 8);
}
