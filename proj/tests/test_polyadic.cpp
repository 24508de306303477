#include <doctest.h>

#include "polyadic/polyadic_group.hpp"
#include "polyadic/small_groups.hpp"

#include "oracles.hpp"

using namespace polyadic;

namespace {

// f(x,y,z) = x - y + z mod m, the standard irreducible ternary example.
PolyadicGroup minus_plus(int m) {
  auto g = cyclic_group(m);
  std::vector<int> neg(m);
  for (int x = 0; x < m; ++x) neg[x] = (m - x) % m;
  return PolyadicGroup::theta_derived(g, Automorphism(g, neg), 0, 3);
}

}  // namespace

TEST_CASE("verify accepts derived ternary tables") {
  auto p = PolyadicGroup::derived(cyclic_group(2), 3);
  CHECK(verify_polyadic(p.materialized()).ok);

  auto q = minus_plus(4);
  CHECK(q.eval({1, 2, 3}) == (1 - 2 + 3) % 4);
  CHECK(verify_polyadic(q.materialized()).ok);
}

TEST_CASE("latin cube without associativity is caught by the second pass") {
  // f(x,y,z) = x - y - z mod 4: every line is a permutation, but
  // bracketings disagree
  std::vector<int> cells(64);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (int z = 0; z < 4; ++z)
        cells[(x * 4 + y) * 4 + z] = ((x - y - z) % 4 + 4) % 4;
  auto res = verify_polyadic(NAryTable(3, 4, cells));
  REQUIRE_FALSE(res.ok);
  CHECK(res.violation->kind == AxiomViolation::Kind::associativity);
  CHECK_THROWS_AS(PolyadicGroup::from_table(NAryTable(3, 4, cells)), Error);
  try {
    PolyadicGroup::from_table(NAryTable(3, 4, cells));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotAssociative);
  }
}

TEST_CASE("single-cell mutations break unique solvability") {
  auto q = minus_plus(4);
  auto table = q.materialized();
  auto cells = table.cells();
  for (long long idx = 0; idx < table.size(); idx += 7) {
    auto mutated = cells;
    mutated[idx] = (mutated[idx] + 1) % 4;
    auto res = verify_polyadic(NAryTable(3, 4, mutated));
    REQUIRE_FALSE(res.ok);
    CHECK(res.violation->kind == AxiomViolation::Kind::unique_solvability);
  }
}

TEST_CASE("latin-cube equals direct unique-solvability scan") {
  // cross-check the two formulations of the solvability axiom on small
  // tables, valid and mutated
  auto entries = {PolyadicGroup::derived(cyclic_group(2), 3),
                  PolyadicGroup::b_derived(cyclic_group(2), 1, 3),
                  minus_plus(4),
                  PolyadicGroup::derived(cyclic_group(3), 3)};
  for (const auto& p : entries) {
    auto t = p.materialized();
    CHECK(verify_polyadic(t).ok == oracles::unique_solvability(t));
    auto cells = t.cells();
    cells[1] = (cells[1] + 1) % p.order();
    if (p.order() > 1) {
      NAryTable bad(3, p.order(), cells);
      CHECK(verify_polyadic(bad).ok == oracles::unique_solvability(bad));
    }
  }
}


TEST_CASE("derive families") {
  auto d = PolyadicGroup::derived(cyclic_group(2), 3);
  CHECK(d.eval({1, 1, 1}) == 1);

  auto db = PolyadicGroup::b_derived(cyclic_group(2), 1, 3);
  CHECK(db.eval({0, 0, 0}) == 1);

  auto d4 = PolyadicGroup::derived(symmetric_group_s3(), 4);
  auto s3 = symmetric_group_s3();
  for (int x : {0, 3, 5})
    for (int y : {1, 2, 4}) {
      int direct = s3.op(s3.op(s3.op(x, y), x), y);
      CHECK(d4.eval({x, y, x, y}) == direct);
    }

  CHECK_THROWS_AS(PolyadicGroup::b_derived(symmetric_group_s3(), 2, 3), Error);

  auto z4 = cyclic_group(4);
  std::vector<int> neg{0, 3, 2, 1};
  CHECK_THROWS_AS(
      PolyadicGroup::theta_derived(z4, Automorphism(z4, neg), 1, 3), Error);

  auto v4 = klein_four_group();
  std::vector<int> swap = {0, 2, 1, 3};  // coordinate swap under encoding
  auto pswap = PolyadicGroup::theta_derived(v4, Automorphism(v4, swap), 0, 3);
  CHECK(verify_polyadic(pswap.materialized()).ok);
}

TEST_CASE("hg and table backings agree") {
  auto p = minus_plus(4);
  auto table = p.materialized();
  auto q = PolyadicGroup::from_table(table);
  std::vector<int> args(3, 0);
  do {
    CHECK(p.eval(args) == q.eval(args));
  } while (oracles::next_tuple(args, 4));
}

TEST_CASE("solve in every position") {
  auto d = PolyadicGroup::derived(cyclic_group(2), 3);
  CHECK(d.solve(1, std::vector<int>{1, 1}, 0) == 0);

  auto q = minus_plus(4);
  CHECK(q.solve(0, std::vector<int>{2, 3}, 0) == 3);
  CHECK(q.solve(1, std::vector<int>{1, 1}, 1) == 1);

  // solve is a two-sided inverse of eval in each coordinate
  for (const auto& p : {q, PolyadicGroup::b_derived(cyclic_group(4), 2, 3)}) {
    std::vector<int> args(3, 0);
    do {
      int value = p.eval(args);
      for (int pos = 0; pos < 3; ++pos) {
        std::vector<int> known;
        for (int t = 0; t < 3; ++t)
          if (t != pos) known.push_back(args[t]);
        CHECK(p.solve(pos, known, value) == args[pos]);
      }
    } while (oracles::next_tuple(args, 4));
  }
}

TEST_CASE("skew maps") {
  auto d = PolyadicGroup::derived(cyclic_group(2), 3);
  CHECK(skew_map(d) == std::vector<int>{0, 1});

  auto q = minus_plus(4);
  CHECK(skew_map(q) == std::vector<int>{0, 1, 2, 3});

  auto db = PolyadicGroup::b_derived(cyclic_group(2), 1, 3);
  CHECK(skew_map(db) == std::vector<int>{1, 0});
}

TEST_CASE("cancellation identities hold for valid groups") {
  for (const auto& p :
       {PolyadicGroup::derived(cyclic_group(2), 3), minus_plus(4),
        PolyadicGroup::b_derived(cyclic_group(4), 2, 3),
        PolyadicGroup::derived(symmetric_group_s3(), 3)}) {
    CHECK(check_dornte(p).ok);
  }
}

TEST_CASE("n-ary identity detection") {
  auto d = PolyadicGroup::derived(cyclic_group(2), 3);
  CHECK(find_nary_identity(d) == 0);

  CHECK_FALSE(find_nary_identity(minus_plus(4)).has_value());

  // f(a,x,a) = x + 2a + 1 = x + 1 can never fix x, so the b-derived
  // group over Z2 with b = 1 is irreducible
  auto db = PolyadicGroup::b_derived(cyclic_group(2), 1, 3);
  CHECK_FALSE(find_nary_identity(db).has_value());

  // odd carrier: 2a + 1 = 0 mod 3 has the solution a = 1
  auto db3 = PolyadicGroup::b_derived(cyclic_group(3), 1, 3);
  CHECK(find_nary_identity(db3) == 1);
}

TEST_CASE("arity two degenerates to ordinary groups") {
  auto p = PolyadicGroup::derived(cyclic_group(4), 2);
  CHECK(p.eval({1, 3}) == 0);
  auto skew = skew_map(p);
  for (int x = 0; x < 4; ++x) CHECK(skew[x] == 0);
  CHECK(check_dornte(p).ok);
  CHECK(find_nary_identity(p) == 0);
}

TEST_CASE("polyadic direct product and subcarriers") {
  auto a = minus_plus(4);
  auto b = PolyadicGroup::derived(cyclic_group(2), 3);
  auto prod = polyadic_direct_product(a, b);
  CHECK(prod.order() == 8);
  CHECK(verify_polyadic(prod.materialized()).ok);

  // table-backed factors take the explicit-table path
  auto at = PolyadicGroup::from_table(a.materialized());
  auto bt = PolyadicGroup::from_table(b.materialized());
  auto prod_t = polyadic_direct_product(at, bt);
  CHECK(prod_t.order() == 8);
  std::vector<int> args(3, 0);
  do {
    CHECK(prod_t.eval(args) == prod.eval(args));
  } while (oracles::next_tuple(args, 8));

  auto subs = enumerate_subpolyadic_carriers(a);
  // {0},{1},{2},{3},{0,2},{1,3},{0..3} for x-y+z mod 4
  CHECK(subs.size() == 7);
  for (const auto& s : subs) {
    auto sub = restrict_to_carrier(a, s);
    CHECK(verify_polyadic(sub.materialized()).ok);
  }
}

TEST_CASE("polyadic isomorphism search") {
  auto d1 = PolyadicGroup::derived(cyclic_group(2), 3);
  auto db = PolyadicGroup::b_derived(cyclic_group(2), 1, 3);
  CHECK_FALSE(find_polyadic_isomorphism(d1, db).has_value());
  CHECK(find_polyadic_isomorphism(d1, d1).has_value());

  // x-y+z mod 4 is isomorphic to itself relabelled by any unit shift
  auto q = minus_plus(4);
  auto table = q.materialized();
  std::vector<int> relabel{1, 2, 3, 0};
  std::vector<int> cells(64);
  std::vector<int> args(3, 0);
  long long idx = 0;
  do {
    std::vector<int> pre(3);
    for (int t = 0; t < 3; ++t) pre[t] = relabel[args[t]];
    // build the conjugated table g = alpha^-1 . f . alpha
    cells[idx++] = std::find(relabel.begin(), relabel.end(),
                             q.eval(pre)) - relabel.begin();
  } while (oracles::next_tuple(args, 4));
  auto q2 = PolyadicGroup::from_table(NAryTable(3, 4, cells));
  CHECK(find_polyadic_isomorphism(q, q2).has_value());
}
