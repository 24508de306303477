#include "polyadic/structure.hpp"

#include <algorithm>
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

long long ipow(long long base, int exp) {
  long long r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

}  // namespace

Retract retract_at(const PolyadicGroup& P, int a) {
  require(0 <= a && a < P.order(), Errc::BadShape, "basepoint out of range");
  const int n = P.arity();
  const int m = P.order();
  std::vector<int> table(static_cast<size_t>(m) * m);
  std::vector<int> args(n, a);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      args.front() = x;
      args.back() = y;
      table[x * m + y] = P.eval(args);
    }
  auto group = FiniteGroup::from_flat_table(
      m, std::move(table), "ret_" + std::to_string(a) + "(" + P.name() + ")");

  auto skew = skew_map(P);
  require(group.identity() == skew[a], Errc::ConstructionFailed,
          "retract identity differs from the skew of the basepoint");
  if (n >= 3) {
    auto inv = retract_inverse_formula(P, a);
    for (int x = 0; x < m; ++x)
      require(inv[x] == group.inverse(x), Errc::ConstructionFailed,
              "closed-form inverse differs from table inversion at " +
                  std::to_string(x));
  }
  return Retract{a, std::move(group)};
}

std::vector<int> retract_inverse_formula(const PolyadicGroup& P, int a) {
  const int n = P.arity();
  require(n >= 3, Errc::BadShape, "closed form needs arity >= 3");
  auto skew = skew_map(P);
  std::vector<int> out(P.order());
  std::vector<int> args(n);
  for (int x = 0; x < P.order(); ++x) {
    int k = 0;
    args[k++] = skew[a];
    for (int t = 0; t < n - 3; ++t) args[k++] = x;
    args[k++] = skew[x];
    args[k++] = skew[a];
    out[x] = P.eval(args);
  }
  return out;
}

std::vector<int> retracts_isomorphic(const PolyadicGroup& P, int a, int a2) {
  auto r1 = retract_at(P, a);
  auto r2 = retract_at(P, a2);
  auto iso = find_group_isomorphism(r1.group, r2.group);
  require(iso.has_value(), Errc::NotFound,
          "no isomorphism between retracts at " + std::to_string(a) + " and " +
              std::to_string(a2));
  return *iso;
}

HGDecomposition hg_decompose(const PolyadicGroup& P, int v) {
  const int n = P.arity();
  const int m = P.order();
  auto retract = retract_at(P, v);
  auto skew = skew_map(P);

  std::vector<int> theta(m);
  std::vector<int> args(n);
  for (int x = 0; x < m; ++x) {
    args[0] = skew[v];
    args[1] = x;
    for (int t = 2; t < n; ++t) args[t] = v;
    theta[x] = P.eval(args);
  }
  std::fill(args.begin(), args.end(), skew[v]);
  int b = P.eval(args);

  // Decomposition invariants: theta is an automorphism of the retract
  // fixing b, theta^{n-1} is conjugation by b, and the derived operation
  // reproduces f cell for cell.
  Automorphism auto_theta(retract.group, theta);
  require(theta[b] == b, Errc::ConstructionFailed, "theta does not fix b");
  for (int x = 0; x < m; ++x) {
    int t = x;
    for (int k = 0; k < n - 1; ++k) t = theta[t];
    require(t == retract.group.conjugate(b, x), Errc::ConstructionFailed,
            "theta^{n-1} is not conjugation by b");
  }
  HGDecomposition D{n, std::move(retract), std::move(theta), b};
  auto rebuilt = hg_reconstruct(D);
  std::vector<int> tuple(n, 0);
  do {
    require(P.eval(tuple) == rebuilt.eval(tuple), Errc::ConstructionFailed,
            "reconstruction mismatch");
  } while (next_tuple(tuple, m));
  return D;
}

PolyadicGroup hg_reconstruct(const HGDecomposition& D) {
  return PolyadicGroup::theta_derived(
      D.retract.group, Automorphism(D.retract.group, D.theta), D.b, D.arity);
}

bool PostCover::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const PostCoverCheck& c) { return c.pass; });
}

PostCover post_cover(const PolyadicGroup& P) {
  const int n = P.arity();
  const int m = P.order();
  auto D = hg_decompose(P, 0);
  const FiniteGroup& R = D.retract.group;
  const int blocks = n - 1;
  const int cover_order = blocks * m;

  auto theta_pow = [&](int k, int x) {
    for (int t = 0; t < k; ++t) x = D.theta[x];
    return x;
  };
  auto enc = [&](int x, int k) { return k * m + x; };

  std::vector<int> table(static_cast<size_t>(cover_order) * cover_order);
  for (int e1 = 0; e1 < cover_order; ++e1) {
    int x = e1 % m, i = e1 / m;
    for (int e2 = 0; e2 < cover_order; ++e2) {
      int y = e2 % m, j = e2 / m;
      int carry = (i + j) / blocks;
      int val = R.op(x, theta_pow(i, y));
      if (carry) val = R.op(val, D.b);
      table[e1 * cover_order + e2] = enc(val, (i + j) % blocks);
    }
  }

  PostCover C;
  C.arity = n;
  try {
    C.cover = FiniteGroup::from_flat_table(cover_order, std::move(table),
                                           P.name() + "*");
  } catch (const Error& e) {
    fail(Errc::ConstructionFailed,
         std::string("cover table is not a group: ") + e.what());
  }
  C.embedding.resize(m);
  for (int x = 0; x < m; ++x) C.embedding[x] = enc(x, 1 % blocks);
  C.kernel.resize(m);
  for (int x = 0; x < m; ++x) C.kernel[x] = enc(x, 0);

  auto check = [&](std::string name, bool pass, std::string detail = "") {
    C.checks.push_back({std::move(name), pass, std::move(detail)});
  };

  check("cover_order", C.cover.order() == (n - 1) * m);

  // 1: the embedded carrier is a coset of the normal subgroup K.
  bool normal = is_normal_subgroup(C.cover, C.kernel);
  std::set<int> image(C.embedding.begin(), C.embedding.end());
  std::set<int> coset;
  for (int k : C.kernel) coset.insert(C.cover.op(C.embedding[0], k));
  check("embedding_injective", image.size() == static_cast<size_t>(m));
  check("image_is_coset_of_K", normal && coset == image);

  // 2: K is isomorphic to a retract.
  bool k_subgroup = is_subgroup(C.cover, C.kernel);
  bool k_iso = true;
  for (int x = 0; x < m && k_iso; ++x)
    for (int y = 0; y < m && k_iso; ++y)
      k_iso = C.cover.op(enc(x, 0), enc(y, 0)) == enc(R.op(x, y), 0);
  check("K_isomorphic_to_retract", k_subgroup && k_iso,
        "pairwise products agree with the retract table");

  // 3: cover / K is cyclic of order n-1.
  bool quotient_cyclic = false;
  if (normal) {
    auto q = quotient_group(C.cover, C.kernel);
    quotient_cyclic =
        q.group.order() == n - 1 && q.group.is_cyclic();
  }
  check("quotient_cyclic_n_minus_1", quotient_cyclic);

  // 4: f agrees with the n-fold cover product on embedded elements.
  bool f_matches = true;
  std::vector<int> tuple(n, 0);
  do {
    int acc = C.embedding[tuple[0]];
    for (int t = 1; t < n; ++t) acc = C.cover.op(acc, C.embedding[tuple[t]]);
    if (acc != C.embedding[P.eval(tuple)]) {
      f_matches = false;
      break;
    }
  } while (next_tuple(tuple, m));
  check("f_is_cover_product", f_matches);

  // 5: the embedded carrier generates the cover.
  std::set<int> gen(C.embedding.begin(), C.embedding.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(gen.begin(), gen.end());
    for (int u : cur)
      for (int v : cur)
        if (gen.insert(C.cover.op(u, v)).second) grew = true;
  }
  check("cover_generated_by_image",
        gen.size() == static_cast<size_t>(cover_order));

  if (!C.all_pass()) {
    std::string bad;
    for (const auto& c : C.checks)
      if (!c.pass) bad += (bad.empty() ? "" : ", ") + c.name;
    fail(Errc::ConstructionFailed, "cover property failed: " + bad);
  }
  return C;
}

HomCheck hom_verify(const PolyadicGroup& P, const PolyadicGroup& Q,
                    const std::vector<int>& map) {
  require(P.arity() == Q.arity(), Errc::ArityMismatch,
          "source and target arity differ");
  require(static_cast<int>(map.size()) == P.order(), Errc::BadShape,
          "map is not total on the carrier");
  for (int v : map)
    require(0 <= v && v < Q.order(), Errc::BadShape, "map value out of range");
  const int n = P.arity();
  std::vector<int> args(n, 0), mapped(n);
  do {
    for (int t = 0; t < n; ++t) mapped[t] = map[args[t]];
    if (map[P.eval(args)] != Q.eval(mapped)) return {false, args};
  } while (next_tuple(args, P.order()));
  return {};
}

HomFactorization hom_decompose(const PolyadicGroup& P, const PolyadicGroup& Q,
                               const std::vector<int>& psi) {
  require(hom_verify(P, Q, psi).ok, Errc::NotAHom,
          "psi is not a polyadic homomorphism");
  auto DS = hg_decompose(P, 0);
  auto DT = hg_decompose(Q, 0);
  const FiniteGroup& G = DS.retract.group;
  const FiniteGroup& H = DT.retract.group;
  const int n = P.arity();

  HomFactorization F{};
  F.a = psi[G.identity()];
  F.phi.resize(G.order());
  for (int x = 0; x < G.order(); ++x)
    F.phi[x] = H.op(psi[x], H.inverse(F.a));
  F.phi_is_hom = is_group_hom(G, H, F.phi);

  std::vector<int> all_a(n, F.a);
  F.cond_power = Q.eval(all_a) == H.op(F.phi[DS.b], F.a);

  F.cond_twist_inner = true;
  F.cond_twist_inverse = true;
  int a_inv = H.inverse(F.a);
  for (int x = 0; x < G.order(); ++x) {
    int lhs = F.phi[DS.theta[x]];
    int eta_phi = DT.theta[F.phi[x]];
    if (lhs != H.op(H.op(F.a, eta_phi), a_inv)) F.cond_twist_inner = false;
    if (lhs != H.op(H.op(a_inv, eta_phi), F.a)) F.cond_twist_inverse = false;
  }
  return F;
}

PolyadicHom make_polyadic_hom(const PolyadicGroup& source,
                              const PolyadicGroup& target,
                              std::vector<int> map, bool factorize) {
  auto hc = hom_verify(source, target, map);
  if (!hc.ok) {
    std::string w;
    for (int v : hc.witness) w += (w.empty() ? "" : ",") + std::to_string(v);
    fail(Errc::NotAHom, "map fails at (" + w + ")");
  }
  PolyadicHom h{source, target, std::move(map), std::nullopt};
  if (factorize) h.factorization = hom_decompose(source, target, h.map);
  return h;
}

HomEnumeration enumerate_homs(const PolyadicGroup& P, const PolyadicGroup& Q) {
  require(P.arity() == Q.arity(), Errc::ArityMismatch,
          "source and target arity differ");
  const auto& budget = Budget::current();
  if (budget.carrier_caps_enforced)
    require(P.order() <= budget.hom_carrier && Q.order() <= budget.hom_carrier,
            Errc::BudgetExceeded, "carriers exceed the enumeration cap");
  require(ipow(Q.order(), P.order()) <= budget.map_count, Errc::BudgetExceeded,
          "map enumeration exceeds budget");

  HomEnumeration E{};

  // (A) every map, filtered by the exhaustive hom check.
  {
    const int n = P.arity();
    std::vector<int> map(P.order(), 0);
    std::vector<int> args(n, 0), mapped(n);
    do {
      bool ok = true;
      std::fill(args.begin(), args.end(), 0);
      do {
        for (int t = 0; t < n; ++t) mapped[t] = map[args[t]];
        if (map[P.eval(args)] != Q.eval(mapped)) {
          ok = false;
          break;
        }
      } while (next_tuple(args, P.order()));
      if (ok) E.brute.push_back(map);
    } while (next_tuple(map, Q.order()));
  }

  // (B) pairs (a, phi) satisfying the factorization conditions, in both
  // published sign conventions of the twist condition.
  {
    auto DS = hg_decompose(P, 0);
    auto DT = hg_decompose(Q, 0);
    const FiniteGroup& G = DS.retract.group;
    const FiniteGroup& H = DT.retract.group;
    const int n = P.arity();
    std::set<std::vector<int>> inner, inverse;
    for (auto& phi : enumerate_group_homs(G, H)) {
      for (int a = 0; a < H.order(); ++a) {
        std::vector<int> all_a(n, a);
        if (Q.eval(all_a) != H.op(phi[DS.b], a)) continue;
        bool twist_inner = true, twist_inverse = true;
        int a_inv = H.inverse(a);
        for (int x = 0; x < G.order(); ++x) {
          int lhs = phi[DS.theta[x]];
          int eta_phi = DT.theta[phi[x]];
          if (lhs != H.op(H.op(a, eta_phi), a_inv)) twist_inner = false;
          if (lhs != H.op(H.op(a_inv, eta_phi), a)) twist_inverse = false;
          if (!twist_inner && !twist_inverse) break;
        }
        if (twist_inner || twist_inverse) {
          std::vector<int> psi(G.order());
          for (int x = 0; x < G.order(); ++x) psi[x] = H.op(phi[x], a);
          if (twist_inner) inner.insert(psi);
          if (twist_inverse) inverse.insert(std::move(psi));
        }
      }
    }
    E.factored_inner.assign(inner.begin(), inner.end());
    E.factored_inverse.assign(inverse.begin(), inverse.end());
  }

  E.equal_inner = E.brute == E.factored_inner;
  E.equal_inverse = E.brute == E.factored_inverse;
  return E;
}

UniversalExtension universal_extend(const PolyadicGroup& P,
                                    const PostCover& C,
                                    const PolyadicGroup& target,
                                    const std::vector<int>& beta) {
  require(target.hg().has_value(), Errc::PreconditionViolated,
          "target must carry a derived backing");
  const HGTriple& hg = *target.hg();
  bool theta_id = true;
  for (int i = 0; i < hg.base.order(); ++i)
    if (hg.theta[i] != i) theta_id = false;
  require(theta_id && hg.b == hg.base.identity(), Errc::PreconditionViolated,
          "target is not the derived group of an ordinary group");
  const FiniteGroup& H = hg.base;
  require(hom_verify(P, target, beta).ok, Errc::PreconditionViolated,
          "beta is not a polyadic homomorphism");

  const FiniteGroup& cover = C.cover;
  // Extend from the embedded image by product closure; the image
  // generates the cover, so the propagation reaches every element.
  std::vector<int> h(cover.order(), -1);
  for (int x = 0; x < P.order(); ++x) {
    int e = C.embedding[x];
    if (h[e] >= 0 && h[e] != beta[x])
      fail(Errc::ExtensionNotFound, "beta conflicts with itself on the image");
    h[e] = beta[x];
  }
  bool progress = true;
  while (progress) {
    progress = false;
    for (int u = 0; u < cover.order(); ++u) {
      if (h[u] < 0) continue;
      for (int v = 0; v < cover.order(); ++v) {
        if (h[v] < 0) continue;
        int w = cover.op(u, v);
        int val = H.op(h[u], h[v]);
        if (h[w] < 0) {
          h[w] = val;
          progress = true;
        } else if (h[w] != val) {
          fail(Errc::ExtensionNotFound,
               "product closure is inconsistent; no extension exists");
        }
      }
    }
  }
  for (int u = 0; u < cover.order(); ++u)
    require(h[u] >= 0, Errc::ExtensionNotFound,
            "image does not generate the cover");
  require(is_group_hom(cover, H, h), Errc::ExtensionNotFound,
          "extended map is not a homomorphism");

  UniversalExtension U;
  U.h = h;
  U.restricts_to_beta = true;
  for (int x = 0; x < P.order(); ++x)
    if (h[C.embedding[x]] != beta[x]) U.restricts_to_beta = false;

  U.agreeing_hom_count = 0;
  for (const auto& cand : enumerate_group_homs(cover, H)) {
    bool agrees = true;
    for (int x = 0; x < P.order() && agrees; ++x)
      agrees = cand[C.embedding[x]] == beta[x];
    if (agrees) ++U.agreeing_hom_count;
  }
  return U;
}

}  // namespace polyadic
