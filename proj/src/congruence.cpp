#include "polyadic/congruence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "polyadic/budget.hpp"

namespace polyadic {

namespace {

bool next_tuple(std::vector<int>& t, int base) {
  int pos = static_cast<int>(t.size()) - 1;
  while (pos >= 0 && t[pos] == base - 1) t[pos--] = 0;
  if (pos < 0) return false;
  ++t[pos];
  return true;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;  // keep the smaller index as root
    return true;
  }
};

}  // namespace

std::vector<std::vector<int>> Congruence::blocks() const {
  std::vector<std::vector<int>> out(num_blocks);
  for (int x = 0; x < static_cast<int>(block_of.size()); ++x)
    out[block_of[x]].push_back(x);
  return out;
}

Congruence canonical_partition(const std::vector<int>& raw_block_of) {
  Congruence c;
  c.block_of.assign(raw_block_of.size(), -1);
  std::map<int, int> relabel;
  for (size_t x = 0; x < raw_block_of.size(); ++x) {
    auto [it, fresh] = relabel.emplace(raw_block_of[x], c.num_blocks);
    if (fresh) ++c.num_blocks;
    c.block_of[x] = it->second;
  }
  return c;
}

Congruence partition_from_blocks(int order,
                                 const std::vector<std::vector<int>>& blocks) {
  std::vector<int> raw(order, -1);
  for (size_t b = 0; b < blocks.size(); ++b)
    for (int x : blocks[b]) {
      require(0 <= x && x < order, Errc::BadShape, "element out of range");
      require(raw[x] < 0, Errc::BadShape, "blocks overlap");
      raw[x] = static_cast<int>(b);
    }
  for (int x = 0; x < order; ++x)
    require(raw[x] >= 0, Errc::BadShape,
            "partition does not cover element " + std::to_string(x));
  return canonical_partition(raw);
}

CongruenceCheck is_congruence(const PolyadicGroup& P,
                              const std::vector<int>& block_of) {
  require(static_cast<int>(block_of.size()) == P.order(), Errc::BadShape,
          "partition does not cover the carrier");
  const int n = P.arity();
  const int m = P.order();
  // Single-coordinate substitutions suffice: a full componentwise
  // replacement factors through them by transitivity.
  std::vector<int> args(n, 0), args2(n);
  do {
    int base = block_of[P.eval(args)];
    for (int pos = 0; pos < n; ++pos) {
      args2 = args;
      for (int y = 0; y < m; ++y) {
        if (block_of[y] != block_of[args[pos]]) continue;
        args2[pos] = y;
        if (block_of[P.eval(args2)] != base)
          return {false, args, pos, y};
      }
    }
  } while (next_tuple(args, m));
  return {};
}

Congruence congruence_closure(const PolyadicGroup& P,
                              const std::vector<std::pair<int, int>>& pairs) {
  const int n = P.arity();
  const int m = P.order();
  UnionFind uf(m);
  for (auto [a, b] : pairs) uf.unite(a, b);
  // Propagate compatibility: whenever x ~ y, merging the values of every
  // single-coordinate substitution, to a fixed point.
  bool changed = true;
  std::vector<int> args(n), args2(n);
  while (changed) {
    changed = false;
    for (int x = 0; x < m; ++x)
      for (int y = x + 1; y < m; ++y) {
        if (uf.find(x) != uf.find(y)) continue;
        std::fill(args.begin(), args.end(), 0);
        do {
          for (int pos = 0; pos < n; ++pos) {
            if (args[pos] != x) continue;
            args2 = args;
            args2[pos] = y;
            if (uf.unite(P.eval(args), P.eval(args2))) changed = true;
          }
        } while (next_tuple(args, m));
      }
  }
  std::vector<int> raw(m);
  for (int x = 0; x < m; ++x) raw[x] = uf.find(x);
  return canonical_partition(raw);
}

namespace {

// Restricted-growth-string enumeration of all partitions of 0..m-1.
std::vector<std::vector<int>> all_partitions(int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> rgs(m, 0);
  while (true) {
    out.push_back(rgs);
    int pos = m - 1;
    while (pos > 0) {
      int cap = *std::max_element(rgs.begin(), rgs.begin() + pos) + 1;
      if (rgs[pos] < cap) break;
      --pos;
    }
    if (pos == 0) break;
    ++rgs[pos];
    std::fill(rgs.begin() + pos + 1, rgs.end(), 0);
  }
  return out;
}

}  // namespace

std::vector<Congruence> enumerate_congruences(const PolyadicGroup& P) {
  const int m = P.order();
  const auto& budget = Budget::current();
  if (budget.carrier_caps_enforced)
    require(m <= budget.congruence_carrier, Errc::BudgetExceeded,
            "carrier exceeds the congruence enumeration cap");

  std::set<Congruence> found;
  if (m <= 5) {
    // Bell(5) = 52: scan every partition.
    for (auto& rgs : all_partitions(m))
      if (is_congruence(P, rgs).ok) found.insert(canonical_partition(rgs));
  } else {
    // Principal congruences plus join closure generate the lattice.
    std::vector<Congruence> principal;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        principal.push_back(congruence_closure(P, {{a, b}}));
    Congruence equality;
    equality.block_of.resize(m);
    std::iota(equality.block_of.begin(), equality.block_of.end(), 0);
    equality.num_blocks = m;
    found.insert(equality);
    std::vector<Congruence> frontier{equality};
    while (!frontier.empty()) {
      std::vector<Congruence> next;
      for (const auto& R : frontier) {
        for (const auto& Pr : principal) {
          UnionFind uf(m);
          std::vector<std::pair<int, int>> pairs;
          for (int x = 0; x < m; ++x) {
            for (int y = x + 1; y < m; ++y) {
              if (R.block_of[x] == R.block_of[y] ||
                  Pr.block_of[x] == Pr.block_of[y])
                pairs.emplace_back(x, y);
            }
          }
          auto joined = congruence_closure(P, pairs);
          if (found.insert(joined).second) next.push_back(joined);
        }
      }
      frontier = std::move(next);
    }
  }
  std::vector<Congruence> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const Congruence& a,
                                       const Congruence& b) {
    if (a.num_blocks != b.num_blocks) return a.num_blocks > b.num_blocks;
    return a.block_of < b.block_of;
  });
  return out;
}

QuotientPolyadic quotient(const PolyadicGroup& P, const Congruence& R) {
  auto chk = is_congruence(P, R.block_of);
  require(chk.ok, Errc::NotACongruence, "partition is not a congruence");
  const int n = P.arity();
  const int q = R.num_blocks;
  std::vector<int> reps(q, -1);
  for (int x = P.order() - 1; x >= 0; --x) reps[R.block_of[x]] = x;
  size_t cells = 1;
  for (int i = 0; i < n; ++i) cells *= q;
  std::vector<int> data;
  data.reserve(cells);
  std::vector<int> tuple(n, 0), args(n);
  do {
    for (int t = 0; t < n; ++t) args[t] = reps[tuple[t]];
    data.push_back(R.block_of[P.eval(args)]);
  } while (next_tuple(tuple, q));
  auto quot = PolyadicGroup::from_table(NAryTable(n, q, std::move(data)),
                                        P.name() + "/R");
  return QuotientPolyadic{std::move(quot), R, std::move(reps)};
}

LambdaReport lambda_check(const PolyadicGroup& P, const Congruence& R, int a) {
  auto Q = quotient(P, R);
  auto ret_parent = retract_at(P, a);
  auto ret_quot = retract_at(Q.quotient, R.block_of[a]);

  LambdaReport rep;
  rep.basepoint = a;
  rep.congruence = R;

  const auto& lambda = R.block_of;
  rep.lambda_is_hom = is_group_hom(ret_parent.group, ret_quot.group, lambda);
  std::vector<char> hit(ret_quot.group.order(), 0);
  for (int v : lambda) hit[v] = 1;
  rep.lambda_surjective =
      std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });

  for (int x = 0; x < P.order(); ++x)
    if (lambda[x] == ret_quot.group.identity()) rep.kernel.push_back(x);

  if (rep.lambda_is_hom && rep.lambda_surjective) {
    auto quo = quotient_group(ret_parent.group, rep.kernel);
    // induced map coset -> lambda(representative)
    std::vector<int> induced(quo.group.order());
    for (int c = 0; c < quo.group.order(); ++c)
      induced[c] = lambda[quo.representatives[c]];
    bool hom = is_group_hom(quo.group, ret_quot.group, induced);
    std::vector<char> seen(ret_quot.group.order(), 0);
    bool inj = true;
    for (int v : induced) {
      if (seen[v]) inj = false;
      seen[v] = 1;
    }
    rep.kernel_iso_holds =
        hom && inj && quo.group.order() == ret_quot.group.order();
    if (rep.kernel_iso_holds) rep.iso = std::move(induced);
  }
  return rep;
}

PairSubgroupReport congruence_as_subgroup(const PolyadicGroup& P,
                                          const Congruence& R) {
  require(is_congruence(P, R.block_of).ok, Errc::NotACongruence,
          "partition is not a congruence");
  auto D = hg_decompose(P, 0);
  const FiniteGroup& G = D.retract.group;
  PairSubgroupReport rep{direct_product({G, G}), {}, false, false};
  const std::vector<int> orders{G.order(), G.order()};
  for (int x = 0; x < P.order(); ++x)
    for (int y = 0; y < P.order(); ++y)
      if (R.block_of[x] == R.block_of[y])
        rep.members.push_back(product_encode(orders, {x, y}));
  std::sort(rep.members.begin(), rep.members.end());
  rep.is_subgroup = is_subgroup(rep.pair_group, rep.members);
  rep.is_normal = rep.is_subgroup &&
                  is_normal_subgroup(rep.pair_group, rep.members);
  return rep;
}

bool PsiEmbeddingReport::ok() const {
  return std::all_of(steps.begin(), steps.end(),
                     [](const PsiStep& s) { return s.pass; });
}

std::string PsiEmbeddingReport::first_failure() const {
  for (const auto& s : steps)
    if (!s.pass) return s.name + (s.detail.empty() ? "" : ": " + s.detail);
  return "";
}

PsiEmbeddingReport psi_embedding(const PolyadicGroup& P, const Congruence& R) {
  PsiEmbeddingReport rep;
  auto step = [&](std::string name, bool pass, std::string detail = "") {
    rep.steps.push_back({std::move(name), pass, std::move(detail)});
    return pass;
  };

  auto pairs = congruence_as_subgroup(P, R);
  if (!step("R_subgroup_of_GxG", pairs.is_subgroup)) return rep;

  auto D = hg_decompose(P, 0);
  const FiniteGroup& G = D.retract.group;
  const FiniteGroup& GG = pairs.pair_group;
  const std::vector<int> orders{G.order(), G.order()};
  const int n = P.arity();

  // Coset multiplication on (GxG)/R needs R normal in GxG.
  if (!step("R_normal_in_GxG", pairs.is_normal,
            "coset multiplication in (GxG)/R is ill-defined for a "
            "non-normal subgroup"))
    return rep;

  auto quo = quotient_group(GG, pairs.members);
  const FiniteGroup& Q = quo.group;

  // theta-bar([u]) = [(theta x theta)(u)] must be well-defined, i.e. the
  // doubled automorphism must fix the pair set.
  std::vector<int> theta2(GG.order());
  for (int u = 0; u < GG.order(); ++u) {
    auto xy = product_decode(orders, u);
    theta2[u] = product_encode(orders, {D.theta[xy[0]], D.theta[xy[1]]});
  }
  {
    std::set<int> mem(pairs.members.begin(), pairs.members.end());
    bool invariant = std::all_of(pairs.members.begin(), pairs.members.end(),
                                 [&](int u) { return mem.count(theta2[u]); });
    if (!step("theta_bar_well_defined", invariant,
              "(theta x theta)(R) != R")) return rep;
  }
  std::vector<int> theta_bar(Q.order());
  for (int c = 0; c < Q.order(); ++c)
    theta_bar[c] = quo.projection[theta2[quo.representatives[c]]];
  bool theta_bar_auto = true;
  {
    std::vector<char> hit(Q.order(), 0);
    for (int v : theta_bar) {
      if (hit[v]) theta_bar_auto = false;
      hit[v] = 1;
    }
    if (theta_bar_auto)
      theta_bar_auto = is_group_hom(Q, Q, theta_bar);
  }
  if (!step("theta_bar_automorphism", theta_bar_auto)) return rep;

  int b_bar = quo.projection[product_encode(orders, {D.b, G.identity()})];

  // Derivation conditions for (theta-bar, b-bar) on the quotient.
  bool fixes_b = theta_bar[b_bar] == b_bar;
  bool conj_ok = true;
  for (int c = 0; c < Q.order() && conj_ok; ++c) {
    int t = c;
    for (int k = 0; k < n - 1; ++k) t = theta_bar[t];
    conj_ok = t == Q.conjugate(b_bar, c);
  }
  if (!step("derivation_conditions_on_quotient", fixes_b && conj_ok,
            fixes_b ? "theta-bar^{n-1} differs from conjugation by b-bar"
                    : "theta-bar does not fix b-bar"))
    return rep;

  auto target = PolyadicGroup::theta_derived(Q, Automorphism(Q, theta_bar),
                                             b_bar, n);

  // psi([x]) = class of (x, 1).
  std::vector<int> psi(R.num_blocks, -1);
  bool well_defined = true;
  for (int x = 0; x < P.order(); ++x) {
    int img = quo.projection[product_encode(orders, {x, G.identity()})];
    int blk = R.block_of[x];
    if (psi[blk] < 0)
      psi[blk] = img;
    else if (psi[blk] != img)
      well_defined = false;
  }
  if (!step("psi_well_defined", well_defined)) return rep;

  bool injective = true;
  for (int i = 0; i < R.num_blocks && injective; ++i)
    for (int j = i + 1; j < R.num_blocks && injective; ++j)
      injective = psi[i] != psi[j];
  if (!step("psi_injective", injective)) return rep;

  auto quot = quotient(P, R);
  auto hc = hom_verify(quot.quotient, target, psi);
  step("psi_polyadic_hom", hc.ok);

  rep.target = std::move(target);
  rep.psi = std::move(psi);
  return rep;
}

}  // namespace polyadic
