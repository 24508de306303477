#include "polyadic/profinite.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "polyadic/budget.hpp"
#include "polyadic/small_groups.hpp"

namespace polyadic {

namespace {

bool next_tuple(std::vector<int>& t, int base) {
  int pos = static_cast<int>(t.size()) - 1;
  while (pos >= 0 && t[pos] == base - 1) t[pos--] = 0;
  if (pos < 0) return false;
  ++t[pos];
  return true;
}

bool next_tuple_mixed(std::vector<int>& t, const std::vector<int>& bases) {
  int pos = static_cast<int>(t.size()) - 1;
  while (pos >= 0 && t[pos] == bases[pos] - 1) t[pos--] = 0;
  if (pos < 0) return false;
  ++t[pos];
  return true;
}

}  // namespace

DirectedPoset DirectedPoset::from_pairs(
    int size, const std::vector<std::pair<int, int>>& lower_upper_pairs) {
  require(size >= 1, Errc::BadShape, "poset must be nonempty");
  DirectedPoset p;
  p.size_ = size;
  p.leq_.assign(static_cast<size_t>(size) * size, 0);
  for (int i = 0; i < size; ++i) p.leq_[i * size + i] = 1;
  for (auto [lo, hi] : lower_upper_pairs) {
    require(0 <= lo && lo < size && 0 <= hi && hi < size, Errc::BadShape,
            "order pair out of range");
    p.leq_[lo * size + hi] = 1;
  }
  // transitive closure
  for (int k = 0; k < size; ++k)
    for (int i = 0; i < size; ++i)
      if (p.leq_[i * size + k])
        for (int j = 0; j < size; ++j)
          if (p.leq_[k * size + j]) p.leq_[i * size + j] = 1;
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j)
      require(!(p.leq_[i * size + j] && p.leq_[j * size + i]), Errc::BadShape,
              "antisymmetry fails for " + std::to_string(i) + "," +
                  std::to_string(j));
  return p;
}

bool DirectedPoset::is_directed() const {
  for (int a = 0; a < size_; ++a)
    for (int b = 0; b < size_; ++b) {
      bool bounded = false;
      for (int u = 0; u < size_ && !bounded; ++u)
        bounded = leq(a, u) && leq(b, u);
      if (!bounded) return false;
    }
  return true;
}

std::optional<int> DirectedPoset::greatest() const {
  for (int u = 0; u < size_; ++u) {
    bool top = true;
    for (int a = 0; a < size_ && top; ++a) top = leq(a, u);
    if (top) return u;
  }
  return std::nullopt;
}

std::vector<int> DirectedPoset::descending_linear_extension() const {
  std::vector<int> order(size_);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    int above_a = 0, above_b = 0;
    for (int u = 0; u < size_; ++u) {
      above_a += leq(a, u);
      above_b += leq(b, u);
    }
    return above_a < above_b;  // fewer elements above = closer to the top
  });
  return order;
}

const std::vector<int>& InverseSystem::map(int from_higher,
                                           int to_lower) const {
  auto it = maps.find({from_higher, to_lower});
  require(it != maps.end(), Errc::BadShape,
          "no connecting map " + std::to_string(from_higher) + " -> " +
              std::to_string(to_lower));
  return it->second;
}

std::vector<int> InverseSystem::identity_map(int stage) const {
  std::vector<int> id(stages[stage].order());
  std::iota(id.begin(), id.end(), 0);
  return id;
}

bool SystemValidation::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const SystemCheck& c) {
    return c.pass || c.name == "poset_directed";
  });
}

std::string SystemValidation::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass && c.name != "poset_directed")
      return c.name + (c.detail.empty() ? "" : ": " + c.detail);
  return "";
}

SystemValidation validate_system(const InverseSystem& S) {
  SystemValidation V;
  auto check = [&](std::string name, bool pass, std::string detail = "") {
    V.checks.push_back({std::move(name), pass, std::move(detail)});
  };
  const int k = S.poset.size();
  check("stage_count", static_cast<int>(S.stages.size()) == k);
  check("poset_directed", S.poset.is_directed(),
        "informational: limits over non-directed shapes are computed but "
        "nonemptiness is only guaranteed for directed systems");

  bool arity_ok = true;
  for (const auto& g : S.stages) arity_ok &= g.arity() == S.stages[0].arity();
  check("uniform_arity", arity_ok);

  bool maps_present = true, homs_ok = true;
  std::string hom_bad;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j || !S.poset.leq(j, i)) continue;
      auto it = S.maps.find({i, j});
      if (it == S.maps.end()) {
        maps_present = false;
        continue;
      }
      auto hc = hom_verify(S.stages[i], S.stages[j], it->second);
      if (!hc.ok) {
        homs_ok = false;
        if (hom_bad.empty())
          hom_bad = "map " + std::to_string(i) + "->" + std::to_string(j);
      }
    }
  check("maps_present_for_all_comparable_pairs", maps_present);
  check("maps_are_polyadic_homs", homs_ok, hom_bad);

  bool composition_ok = true;
  std::string comp_bad;
  for (int i = 0; i < k && maps_present; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j || !S.poset.leq(j, i)) continue;
      for (int l = 0; l < k; ++l) {
        if (l == j || l == i || !S.poset.leq(l, j)) continue;
        const auto& f_ij = S.map(i, j);
        const auto& f_jl = S.map(j, l);
        const auto& f_il = S.map(i, l);
        for (int x = 0; x < S.stages[i].order(); ++x)
          if (f_jl[f_ij[x]] != f_il[x]) {
            composition_ok = false;
            if (comp_bad.empty())
              comp_bad = "chain " + std::to_string(l) + " <= " +
                         std::to_string(j) + " <= " + std::to_string(i) +
                         " at x = " + std::to_string(x);
          }
      }
    }
  check("composition_law", composition_ok, comp_bad);
  return V;
}

namespace {

// Depth-first thread enumeration in a descending linear extension:
// coordinates at greater indices are assigned first, so each new
// coordinate is either forced by the already assigned ones above it or
// free.
void enumerate_threads(const InverseSystem& S, const std::vector<int>& order,
                       size_t depth, std::vector<int>& partial,
                       std::vector<std::vector<int>>& out) {
  if (depth == order.size()) {
    out.push_back(partial);
    return;
  }
  int i = order[depth];
  int forced = -1;
  bool consistent = true;
  for (size_t d = 0; d < depth && consistent; ++d) {
    int j = order[d];
    if (!S.poset.leq(i, j)) continue;  // need j above i
    int v = S.map(j, i)[partial[j]];
    if (forced < 0)
      forced = v;
    else if (forced != v)
      consistent = false;
  }
  if (!consistent) return;
  if (forced >= 0) {
    partial[i] = forced;
    enumerate_threads(S, order, depth + 1, partial, out);
    partial[i] = -1;
    return;
  }
  for (int v = 0; v < S.stages[i].order(); ++v) {
    partial[i] = v;
    enumerate_threads(S, order, depth + 1, partial, out);
  }
  partial[i] = -1;
}

}  // namespace

int ThreadLimit::thread_index(const std::vector<int>& thread) const {
  auto it = std::lower_bound(threads.begin(), threads.end(), thread);
  if (it == threads.end() || *it != thread) return -1;
  return static_cast<int>(it - threads.begin());
}

ThreadLimit inverse_limit(const InverseSystem& S) {
  auto V = validate_system(S);
  require(V.ok(), Errc::IncompatibleSystem, V.first_failure());

  long long product = 1;
  for (const auto& g : S.stages) {
    product *= g.order();
    require(product <= Budget::current().product_size, Errc::BudgetExceeded,
            "stage product exceeds budget");
  }

  auto order = S.poset.descending_linear_extension();
  std::vector<int> partial(S.poset.size(), -1);
  std::vector<std::vector<int>> threads;
  enumerate_threads(S, order, 0, partial, threads);
  std::sort(threads.begin(), threads.end());
  require(!threads.empty(), Errc::EmptyLimit, "thread set is empty");

  const int n = S.stages[0].arity();
  const int t = static_cast<int>(threads.size());
  ThreadLimit L;
  L.threads = threads;

  long long cells = 1;
  for (int i = 0; i < n; ++i) {
    cells *= t;
    require(cells <= Budget::current().table_cells, Errc::BudgetExceeded,
            "limit table exceeds budget");
  }
  std::vector<int> data(cells);
  std::vector<int> pick(n, 0);
  std::vector<int> combo(S.poset.size());
  std::vector<int> args(n);
  long long idx = 0;
  do {
    for (int s = 0; s < S.poset.size(); ++s) {
      for (int a = 0; a < n; ++a) args[a] = threads[pick[a]][s];
      combo[s] = S.stages[s].eval(args);
    }
    int result = L.thread_index(combo);
    require(result >= 0, Errc::ConstructionFailed,
            "componentwise value is not a thread");
    data[idx++] = result;
  } while (next_tuple(pick, t));
  L.induced =
      PolyadicGroup::from_table(NAryTable(n, t, std::move(data)), "limit");
  return L;
}

std::vector<std::vector<int>> y_set(const InverseSystem& S, int i) {
  long long product = 1;
  for (const auto& g : S.stages) {
    product *= g.order();
    require(product <= Budget::current().product_size, Errc::BudgetExceeded,
            "full product exceeds budget");
  }
  std::vector<int> orders;
  for (const auto& g : S.stages) orders.push_back(g.order());
  const int k = S.poset.size();
  std::vector<std::vector<int>> out;
  std::vector<int> tuple(k, 0);
  do {
    bool ok = true;
    for (int a = 0; a < k && ok; ++a) {
      if (!S.poset.leq(a, i)) continue;
      for (int b = 0; b < k && ok; ++b) {
        if (b == a || !S.poset.leq(b, a)) continue;
        ok = S.map(a, b)[tuple[a]] == tuple[b];
      }
    }
    if (ok) out.push_back(tuple);
  } while (next_tuple_mixed(tuple, orders));
  return out;
}

YSetReport y_set_suite(const InverseSystem& S) {
  const int k = S.poset.size();
  YSetReport R;
  for (int i = 0; i < k; ++i) R.y_sets.push_back(y_set(S, i));
  R.all_nonempty = std::all_of(R.y_sets.begin(), R.y_sets.end(),
                               [](const auto& y) { return !y.empty(); });
  R.monotone = true;
  for (int i = 0; i < k; ++i)
    for (int s = 0; s < k; ++s) {
      if (i == s || !S.poset.leq(i, s)) continue;
      // Y_s must be contained in Y_i
      for (const auto& tup : R.y_sets[s])
        if (!std::binary_search(R.y_sets[i].begin(), R.y_sets[i].end(), tup)) {
          R.monotone = false;
        }
    }
  // intersection of all Y_i equals the thread set
  std::vector<std::vector<int>> inter = R.y_sets.empty()
                                            ? std::vector<std::vector<int>>{}
                                            : R.y_sets[0];
  for (int i = 1; i < k; ++i) {
    std::vector<std::vector<int>> next;
    std::set_intersection(inter.begin(), inter.end(), R.y_sets[i].begin(),
                          R.y_sets[i].end(), std::back_inserter(next));
    inter = std::move(next);
  }
  auto L = inverse_limit(S);
  R.intersection_is_limit = inter == L.threads;
  return R;
}

LimitRetractReport limit_retract(const InverseSystem& S,
                                 const std::vector<int>& thread) {
  LimitRetractReport rep;
  rep.thread = thread;
  auto L = inverse_limit(S);
  require(L.thread_index(thread) >= 0, Errc::InvalidThread,
          "not a compatible thread");

  const int k = S.poset.size();
  std::vector<Retract> retracts;
  for (int s = 0; s < k; ++s) retracts.push_back(retract_at(S.stages[s], thread[s]));

  rep.maps_are_group_homs = true;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j || !S.poset.leq(j, i)) continue;
      if (!is_group_hom(retracts[i].group, retracts[j].group, S.map(i, j)))
        rep.maps_are_group_homs = false;
    }

  // Group limit on the same thread set under componentwise retract product.
  const int t = static_cast<int>(L.threads.size());
  std::vector<int> table(static_cast<size_t>(t) * t);
  std::vector<int> combo(k);
  bool closed = true;
  for (int x = 0; x < t && closed; ++x)
    for (int y = 0; y < t && closed; ++y) {
      for (int s = 0; s < k; ++s)
        combo[s] = retracts[s].group.op(L.threads[x][s], L.threads[y][s]);
      int z = L.thread_index(combo);
      if (z < 0)
        closed = false;
      else
        table[x * t + y] = z;
    }
  if (!closed) {
    rep.limit_group_valid = false;
    rep.detail = "componentwise retract product leaves the thread set";
    return rep;
  }
  FiniteGroup limit_group;
  try {
    limit_group = FiniteGroup::from_flat_table(t, std::move(table));
    rep.limit_group_valid = true;
  } catch (const Error& e) {
    rep.limit_group_valid = false;
    rep.detail = e.what();
    return rep;
  }

  // Retract of the polyadic limit at the thread itself.
  int v = L.thread_index(thread);
  auto limit_retract_group = retract_at(L.induced, v);
  rep.isomorphism_holds =
      limit_retract_group.group.same_table(limit_group);
  if (!rep.isomorphism_holds) {
    // same carrier, so any isomorphism would do; the construction makes
    // them literally equal, so a mismatch is a failure
    rep.detail = "componentwise retract limit differs from the retract of "
                 "the limit";
  }
  return rep;
}

DerCommuteReport der_limit_commute(const InverseSystem& S) {
  DerCommuteReport rep;
  const int k = S.poset.size();
  rep.stages_have_hg = std::all_of(
      S.stages.begin(), S.stages.end(),
      [](const PolyadicGroup& g) { return g.hg().has_value(); });
  if (!rep.stages_have_hg) {
    rep.detail = "a stage has no derivation data";
    return rep;
  }

  rep.maps_compatible = true;
  for (int i = 0; i < k && rep.maps_compatible; ++i)
    for (int j = 0; j < k && rep.maps_compatible; ++j) {
      if (i == j || !S.poset.leq(j, i)) continue;
      const auto& f = S.map(i, j);
      const auto& hi = *S.stages[i].hg();
      const auto& hj = *S.stages[j].hg();
      if (!is_group_hom(hi.base, hj.base, f)) {
        rep.maps_compatible = false;
        rep.detail = "map is not a group homomorphism of the bases";
        break;
      }
      for (int x = 0; x < hi.base.order(); ++x)
        if (f[hi.theta[x]] != hj.theta[f[x]]) {
          rep.maps_compatible = false;
          rep.detail = "map does not intertwine the stage automorphisms";
          break;
        }
      if (rep.maps_compatible && f[hi.b] != hj.b) {
        rep.maps_compatible = false;
        rep.detail = "map does not carry b to b";
      }
    }
  if (!rep.maps_compatible) return rep;

  auto L = inverse_limit(S);
  const int t = static_cast<int>(L.threads.size());

  // Group limit: componentwise base product on threads.
  std::vector<int> table(static_cast<size_t>(t) * t);
  std::vector<int> combo(k);
  for (int x = 0; x < t; ++x)
    for (int y = 0; y < t; ++y) {
      for (int s = 0; s < k; ++s)
        combo[s] = S.stages[s].hg()->base.op(L.threads[x][s], L.threads[y][s]);
      int z = L.thread_index(combo);
      if (z < 0) {
        rep.detail = "base products leave the thread set";
        return rep;
      }
      table[x * t + y] = z;
    }
  auto limit_group = FiniteGroup::from_flat_table(t, std::move(table));

  // theta-hat and b-hat componentwise; b-hat must itself be a thread.
  std::vector<int> theta_hat(t);
  for (int x = 0; x < t; ++x) {
    for (int s = 0; s < k; ++s) combo[s] = S.stages[s].hg()->theta[L.threads[x][s]];
    int z = L.thread_index(combo);
    if (z < 0) {
      rep.detail = "componentwise theta leaves the thread set";
      return rep;
    }
    theta_hat[x] = z;
  }
  for (int s = 0; s < k; ++s) combo[s] = S.stages[s].hg()->b;
  int b_hat = L.thread_index(combo);
  if (b_hat < 0) {
    rep.detail = "(b_i) is not a thread";
    return rep;
  }

  const int n = S.stages[0].arity();
  PolyadicGroup derived_of_limit = PolyadicGroup::theta_derived(
      limit_group, Automorphism(limit_group, theta_hat), b_hat, n);

  rep.sides_equal = true;
  std::vector<int> args(n, 0);
  do {
    if (L.induced.eval(args) != derived_of_limit.eval(args)) {
      rep.sides_equal = false;
      rep.detail = "operation tables differ";
      break;
    }
  } while (next_tuple(args, t));
  return rep;
}

std::vector<int> theta_core(const FiniteGroup& G, const std::vector<int>& theta,
                            const std::vector<int>& L, int arity) {
  require(is_normal_subgroup(G, L), Errc::PreconditionViolated,
          "L is not a normal subgroup");
  Automorphism check(G, theta);
  bool inner = false;
  for (int b = 0; b < G.order() && !inner; ++b) {
    bool match = true;
    for (int x = 0; x < G.order() && match; ++x) {
      int t = x;
      for (int i = 0; i < arity - 1; ++i) t = theta[t];
      match = t == G.conjugate(b, x);
    }
    inner = match;
  }
  require(inner, Errc::PreconditionViolated,
          "theta^{n-1} is not an inner automorphism");

  std::set<int> core(L.begin(), L.end());
  std::vector<int> image(L.begin(), L.end());
  for (int i = 1; i < arity; ++i) {
    for (int& x : image) x = theta[x];  // image = theta^i(L)
    std::set<int> img_set(image.begin(), image.end());
    std::set<int> next;
    for (int x : core)
      if (img_set.count(x)) next.insert(x);
    core = std::move(next);
  }
  std::vector<int> K(core.begin(), core.end());
  require(is_normal_subgroup(G, K), Errc::ConstructionFailed,
          "core is not normal");
  for (int x : K)
    require(core.count(theta[x]), Errc::ConstructionFailed,
            "core is not theta-invariant");
  std::set<int> Lset(L.begin(), L.end());
  for (int x : K)
    require(Lset.count(x), Errc::ConstructionFailed, "core exceeds L");
  return K;
}

ReconstructReport reconstruct_from_quotients(const PolyadicGroup& P) {
  ReconstructReport rep;
  auto D = hg_decompose(P, 0);
  const FiniteGroup& G = D.retract.group;
  const int n = P.arity();

  auto normals = enumerate_normal_subgroups(G);
  rep.normal_subgroup_count = static_cast<int>(normals.size());

  std::vector<std::vector<int>> invariant;
  for (const auto& N : normals) {
    bool inv = true;
    std::set<int> mem(N.begin(), N.end());
    for (int x : N) inv &= mem.count(D.theta[x]) > 0;
    if (inv) invariant.push_back(N);
  }
  rep.invariant_subgroup_count = static_cast<int>(invariant.size());

  // Cofinality: theta_core lands inside every normal subgroup and is
  // itself in the invariant family.
  rep.cofinality_holds = true;
  std::set<std::vector<int>> invariant_set(invariant.begin(), invariant.end());
  for (const auto& N : normals) {
    auto K = theta_core(G, D.theta, N, n);
    std::set<int> Nset(N.begin(), N.end());
    bool inside = std::all_of(K.begin(), K.end(),
                              [&](int x) { return Nset.count(x) > 0; });
    if (!inside || !invariant_set.count(K)) rep.cofinality_holds = false;
  }

  // Inverse system of quotient stages over reverse inclusion: index i is
  // above j when K_i is contained in K_j.
  const int k = static_cast<int>(invariant.size());
  std::vector<QuotientGroup> quotients;
  for (const auto& K : invariant) quotients.push_back(quotient_group(G, K));

  InverseSystem S;
  std::vector<std::pair<int, int>> pairs;
  auto contains = [&](const std::vector<int>& big, const std::vector<int>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
  };
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j && contains(invariant[j], invariant[i]))
        pairs.emplace_back(j, i);  // j lower than i
  S.poset = DirectedPoset::from_pairs(k, pairs);

  for (int i = 0; i < k; ++i) {
    const auto& q = quotients[i];
    std::vector<int> theta_q(q.group.order());
    for (int c = 0; c < q.group.order(); ++c)
      theta_q[c] = q.projection[D.theta[q.representatives[c]]];
    int b_q = q.projection[D.b];
    S.stages.push_back(PolyadicGroup::theta_derived(
        q.group, Automorphism(q.group, theta_q), b_q, n));
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j || !S.poset.leq(j, i)) continue;
      // canonical projection G/K_i -> G/K_j
      std::vector<int> f(quotients[i].group.order());
      for (int c = 0; c < quotients[i].group.order(); ++c)
        f[c] = quotients[j].projection[quotients[i].representatives[c]];
      S.maps[{i, j}] = std::move(f);
    }

  auto V = validate_system(S);
  rep.system_valid = V.ok();
  if (!rep.system_valid) return rep;

  auto L = inverse_limit(S);
  // The trivial subgroup is theta-invariant, so the poset has a greatest
  // element and the limit projects bijectively onto G/1 = G.
  auto iso = find_polyadic_isomorphism(L.induced, P);
  rep.limit_isomorphic = iso.has_value();
  if (iso) rep.iso = *iso;
  return rep;
}

bool poln_membership(const std::string& cls, const PolyadicGroup& P) {
  auto r = retract_at(P, 0);
  return class_predicate(cls, r.group);
}

ClosureSuiteReport poln_closure_suite(const std::string& cls,
                                      const std::vector<PolyadicGroup>& samples) {
  ClosureSuiteReport rep;
  std::vector<const PolyadicGroup*> members;
  for (const auto& s : samples)
    if (poln_membership(cls, s)) members.push_back(&s);
  rep.members = static_cast<int>(members.size());

  for (const auto* m : members) {
    for (const auto& carrier : enumerate_subpolyadic_carriers(*m)) {
      auto sub = restrict_to_carrier(*m, carrier);
      ++rep.subs_checked;
      if (!poln_membership(cls, sub))
        rep.counterexamples.push_back(
            {"sub", m->name() + " restricted to a carrier of size " +
                        std::to_string(carrier.size())});
    }
    for (const auto* m2 : members) {
      auto prod = polyadic_direct_product(*m, *m2);
      ++rep.products_checked;
      if (!poln_membership(cls, prod))
        rep.counterexamples.push_back(
            {"product", m->name() + " x " + m2->name()});
    }
    for (const auto& R : enumerate_congruences(*m)) {
      auto q = quotient(*m, R);
      ++rep.quotients_checked;
      if (!poln_membership(cls, q.quotient))
        rep.counterexamples.push_back(
            {"quotient", m->name() + " by a congruence with " +
                             std::to_string(R.num_blocks) + " blocks"});
    }
  }
  return rep;
}

Congruence stage_kernel_congruence(const InverseSystem& S,
                                   const ThreadLimit& L, int stage) {
  (void)S;
  std::vector<int> raw(L.threads.size());
  for (size_t t = 0; t < L.threads.size(); ++t) raw[t] = L.threads[t][stage];
  return canonical_partition(raw);
}

ProXReport pro_x_check(const InverseSystem& S, const std::string& cls) {
  ProXReport rep;
  for (const auto& g : S.stages)
    rep.stage_membership.push_back(poln_membership(cls, g));
  rep.all_stages_in_class =
      std::all_of(rep.stage_membership.begin(), rep.stage_membership.end(),
                  [](bool b) { return b; });

  auto L = inverse_limit(S);
  rep.forward_ok = true;
  for (int s = 0; s < S.poset.size(); ++s) {
    auto R = stage_kernel_congruence(S, L, s);
    auto q = quotient(L.induced, R);
    if (!poln_membership(cls, q.quotient)) {
      rep.forward_ok = false;
      if (!rep.counterexample_stage) {
        rep.counterexample_stage = s;
        rep.counterexample_congruence = R;
      }
    }
  }

  // Empirical converse: enumerate every congruence of the limit when the
  // carrier is small enough; when all quotients are members, the limit
  // is itself a limit of member stages (its own quotients).
  if (L.induced.order() <= Budget::current().congruence_carrier ||
      !Budget::current().carrier_caps_enforced) {
    auto congruences = enumerate_congruences(L.induced);
    rep.all_quotients_in_class = true;
    for (const auto& R : congruences) {
      auto q = quotient(L.induced, R);
      if (!poln_membership(cls, q.quotient)) rep.all_quotients_in_class = false;
    }
    if (rep.all_quotients_in_class) {
      // Self-quotient system over refinement order.
      const int c = static_cast<int>(congruences.size());
      std::vector<std::pair<int, int>> pairs;
      auto refines = [&](const Congruence& fine, const Congruence& coarse) {
        for (size_t x = 0; x < fine.block_of.size(); ++x)
          for (size_t y = x + 1; y < fine.block_of.size(); ++y)
            if (fine.block_of[x] == fine.block_of[y] &&
                coarse.block_of[x] != coarse.block_of[y])
              return false;
        return true;
      };
      InverseSystem self;
      std::vector<QuotientPolyadic> quots;
      for (const auto& R : congruences) quots.push_back(quotient(L.induced, R));
      for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j)
          if (i != j && refines(congruences[i], congruences[j]))
            pairs.emplace_back(j, i);  // coarser j sits below finer i
      self.poset = DirectedPoset::from_pairs(c, pairs);
      for (auto& q : quots) self.stages.push_back(q.quotient);
      for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j) {
          if (i == j || !self.poset.leq(j, i)) continue;
          std::vector<int> f(quots[i].quotient.order());
          for (int blk = 0; blk < quots[i].quotient.order(); ++blk)
            f[blk] = congruences[j].block_of[quots[i].representatives[blk]];
          self.maps[{i, j}] = std::move(f);
        }
      auto V = validate_system(self);
      rep.self_system_exhibited = V.ok();
      rep.self_system_stage_count = c;
      if (rep.self_system_exhibited) {
        auto selfL = inverse_limit(self);
        auto iso = find_polyadic_isomorphism(selfL.induced, L.induced);
        rep.self_system_exhibited = iso.has_value();
      }
    }
  }
  return rep;
}

InverseSystem build_tower_cyclic_pk(int p, int depth, int sign, long long b,
                                    int arity) {
  require(p >= 2, Errc::InvalidParams, "p must be at least 2");
  require(depth >= 1, Errc::InvalidParams, "depth must be at least 1");
  require(sign == 1 || sign == -1, Errc::InvalidParams, "sign must be +-1");
  require(arity >= 2, Errc::InvalidParams, "arity must be at least 2");

  // stage s holds Z_{p^(depth-s)}; stage 0 is the top
  InverseSystem S;
  std::vector<std::pair<int, int>> pairs;
  for (int s = 0; s + 1 < depth; ++s) pairs.emplace_back(s + 1, s);
  S.poset = DirectedPoset::from_pairs(depth, pairs);

  std::vector<long long> mods(depth);
  for (int s = 0; s < depth; ++s) {
    long long m = 1;
    for (int i = 0; i < depth - s; ++i) {
      m *= p;
      require(m <= 100000, Errc::InvalidParams, "stage too large");
    }
    mods[s] = m;
  }
  for (int s = 0; s < depth; ++s) {
    const int m = static_cast<int>(mods[s]);
    auto G = cyclic_group(m);
    std::vector<int> theta(m);
    for (int x = 0; x < m; ++x)
      theta[x] = sign == 1 ? x : (m - x) % m;
    int bs = static_cast<int>(((b % m) + m) % m);
    if (theta[bs] != bs)
      fail(Errc::InvalidParams,
           "theta does not fix b at stage of order " + std::to_string(m));
    bool pow_ok = true;
    for (int x = 0; x < m && pow_ok; ++x) {
      int t = x;
      for (int i = 0; i < arity - 1; ++i) t = theta[t];
      pow_ok = t == x;  // conjugation in an abelian group is trivial
    }
    if (!pow_ok)
      fail(Errc::InvalidParams,
           "theta^{n-1} is not the identity at stage of order " +
               std::to_string(m) + " (sign/arity mismatch)");
    S.stages.push_back(
        PolyadicGroup::theta_derived(G, Automorphism(G, theta), bs, arity));
  }
  for (int i = 0; i < depth; ++i)
    for (int j = i + 1; j < depth; ++j) {
      // reduce from stage i (larger modulus) to stage j
      std::vector<int> f(static_cast<size_t>(mods[i]));
      for (long long x = 0; x < mods[i]; ++x)
        f[x] = static_cast<int>(x % mods[j]);
      S.maps[{i, j}] = std::move(f);
    }
  auto V = validate_system(S);
  require(V.ok(), Errc::InvalidParams, V.first_failure());
  return S;
}

InverseSystem build_tower_derived_chain(
    const std::vector<FiniteGroup>& groups,
    const std::vector<std::vector<int>>& homs, int arity) {
  require(!groups.empty(), Errc::InvalidParams, "empty chain");
  require(homs.size() + 1 == groups.size(), Errc::InvalidParams,
          "need one hom per consecutive pair");
  const int k = static_cast<int>(groups.size());
  InverseSystem S;
  std::vector<std::pair<int, int>> pairs;
  for (int s = 0; s + 1 < k; ++s) pairs.emplace_back(s + 1, s);
  S.poset = DirectedPoset::from_pairs(k, pairs);
  for (const auto& g : groups)
    S.stages.push_back(PolyadicGroup::derived(g, arity));
  // compose consecutive homs for every comparable pair
  for (int i = 0; i < k; ++i) {
    std::vector<int> acc = S.identity_map(i);
    for (int j = i + 1; j < k; ++j) {
      const auto& step = homs[j - 1];
      require(is_group_hom(groups[j - 1], groups[j], step),
              Errc::InvalidParams,
              "link " + std::to_string(j - 1) + " is not a homomorphism");
      std::vector<int> next(acc.size());
      for (size_t x = 0; x < acc.size(); ++x) next[x] = step[acc[x]];
      acc = std::move(next);
      S.maps[{i, j}] = acc;
    }
  }
  auto V = validate_system(S);
  require(V.ok(), Errc::InvalidParams, V.first_failure());
  return S;
}

}  // namespace polyadic
