#include "polyadic/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace polyadic {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotLatin: return "NotLatin";
    case Errc::NotAssociative: return "NotAssociative";
    case Errc::NoIdentity: return "NoIdentity";
    case Errc::NotNormal: return "NotNormal";
    case Errc::NotCentral: return "NotCentral";
    case Errc::UnknownClass: return "UnknownClass";
    case Errc::BadShape: return "BadShape";
    case Errc::ConditionViolated: return "ConditionViolated";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NotACongruence: return "NotACongruence";
    case Errc::NotASubgroup: return "NotASubgroup";
    case Errc::IllDefined: return "IllDefined";
    case Errc::NotInjective: return "NotInjective";
    case Errc::NotAHom: return "NotAHom";
    case Errc::ExtensionNotFound: return "ExtensionNotFound";
    case Errc::NotFound: return "NotFound";
    case Errc::ConstructionFailed: return "ConstructionFailed";
    case Errc::InvalidThread: return "InvalidThread";
    case Errc::IncompatibleSystem: return "IncompatibleSystem";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::EmptyLimit: return "EmptyLimit";
    case Errc::UnknownSuite: return "UnknownSuite";
    case Errc::ParseError: return "ParseError";
  }
  return "Error";
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& table,
                                    std::string name) {
  const int m = static_cast<int>(table.size());
  require(m > 0, Errc::BadShape, "empty table");
  std::vector<int> flat;
  flat.reserve(static_cast<size_t>(m) * m);
  for (const auto& row : table) {
    require(static_cast<int>(row.size()) == m, Errc::BadShape,
            "table is not square");
    for (int v : row) {
      require(0 <= v && v < m, Errc::BadShape, "entry out of range");
      flat.push_back(v);
    }
  }
  return from_flat_table(m, std::move(flat), std::move(name));
}

FiniteGroup FiniteGroup::from_flat_table(int order, std::vector<int> table,
                                         std::string name) {
  const int m = order;
  require(m > 0 && static_cast<int>(table.size()) == m * m, Errc::BadShape,
          "flat table size mismatch");
  for (int v : table)
    require(0 <= v && v < m, Errc::BadShape, "entry out of range");

  // Latin square: each row and column is a permutation.
  std::vector<char> seen(m);
  for (int r = 0; r < m; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int c = 0; c < m; ++c) {
      int v = table[r * m + c];
      if (seen[v])
        fail(Errc::NotLatin, "row " + std::to_string(r) + " repeats value " +
                                 std::to_string(v));
      seen[v] = 1;
    }
  }
  for (int c = 0; c < m; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int r = 0; r < m; ++r) {
      int v = table[r * m + c];
      if (seen[v])
        fail(Errc::NotLatin, "column " + std::to_string(c) +
                                 " repeats value " + std::to_string(v));
      seen[v] = 1;
    }
  }

  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        if (table[table[a * m + b] * m + c] != table[a * m + table[b * m + c]])
          fail(Errc::NotAssociative,
               "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                   std::to_string(c) + ")");

  int identity = -1;
  for (int e = 0; e < m && identity < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < m && ok; ++x)
      ok = table[e * m + x] == x && table[x * m + e] == x;
    if (ok) identity = e;
  }
  require(identity >= 0, Errc::NoIdentity, "no two-sided identity");

  std::vector<int> inverse(m, -1);
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      if (table[x * m + y] == identity && table[y * m + x] == identity) {
        inverse[x] = y;
        break;
      }
    }
    require(inverse[x] >= 0, Errc::NoIdentity,
            "element " + std::to_string(x) + " has no inverse");
  }

  FiniteGroup g;
  g.order_ = m;
  g.table_ = std::move(table);
  g.identity_ = identity;
  g.inverse_ = std::move(inverse);
  g.name_ = std::move(name);
  return g;
}

int FiniteGroup::conjugate(int g, int x) const {
  return op(op(g, x), inverse_[g]);
}

int FiniteGroup::power(int x, long long k) const {
  if (k < 0) return power(inverse_[x], -k);
  int acc = identity_;
  for (long long i = 0; i < k; ++i) acc = op(acc, x);
  return acc;
}

int FiniteGroup::element_order(int x) const {
  int acc = x, ord = 1;
  while (acc != identity_) {
    acc = op(acc, x);
    ++ord;
  }
  return ord;
}

bool FiniteGroup::is_abelian() const {
  for (int x = 0; x < order_; ++x)
    for (int y = x + 1; y < order_; ++y)
      if (op(x, y) != op(y, x)) return false;
  return true;
}

bool FiniteGroup::is_central(int x) const {
  for (int y = 0; y < order_; ++y)
    if (op(x, y) != op(y, x)) return false;
  return true;
}

bool FiniteGroup::is_cyclic() const {
  for (int x = 0; x < order_; ++x)
    if (element_order(x) == order_) return true;
  return order_ == 1;
}

Automorphism::Automorphism(const FiniteGroup& domain, std::vector<int> map)
    : map_(std::move(map)) {
  const int m = domain.order();
  require(static_cast<int>(map_.size()) == m, Errc::BadShape,
          "automorphism length mismatch");
  std::vector<char> hit(m, 0);
  for (int v : map_) {
    require(0 <= v && v < m && !hit[v], Errc::ConditionViolated,
            "map is not a bijection");
    hit[v] = 1;
  }
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      require(map_[domain.op(x, y)] == domain.op(map_[x], map_[y]),
              Errc::ConditionViolated, "map does not preserve products");
}

bool is_group_hom(const FiniteGroup& G, const FiniteGroup& H,
                  const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != G.order()) return false;
  for (int v : map)
    if (v < 0 || v >= H.order()) return false;
  for (int x = 0; x < G.order(); ++x)
    for (int y = 0; y < G.order(); ++y)
      if (map[G.op(x, y)] != H.op(map[x], map[y])) return false;
  return true;
}

GroupHom make_group_hom(const FiniteGroup& G, const FiniteGroup& H,
                        std::vector<int> map) {
  require(is_group_hom(G, H, map), Errc::NotAHom,
          "map does not preserve products");
  return GroupHom{G, H, std::move(map)};
}

std::vector<long long> product_strides(const std::vector<int>& orders) {
  std::vector<long long> strides(orders.size(), 1);
  for (int i = static_cast<int>(orders.size()) - 2; i >= 0; --i)
    strides[i] = strides[i + 1] * orders[i + 1];
  return strides;
}

int product_encode(const std::vector<int>& orders, const std::vector<int>& xs) {
  auto strides = product_strides(orders);
  long long idx = 0;
  for (size_t i = 0; i < orders.size(); ++i) idx += strides[i] * xs[i];
  return static_cast<int>(idx);
}

std::vector<int> product_decode(const std::vector<int>& orders, int index) {
  auto strides = product_strides(orders);
  std::vector<int> xs(orders.size());
  long long rest = index;
  for (size_t i = 0; i < orders.size(); ++i) {
    xs[i] = static_cast<int>(rest / strides[i]);
    rest %= strides[i];
  }
  return xs;
}

FiniteGroup direct_product(const std::vector<FiniteGroup>& factors) {
  require(!factors.empty(), Errc::BadShape, "empty factor list");
  std::vector<int> orders;
  long long total = 1;
  std::string name;
  for (const auto& f : factors) {
    orders.push_back(f.order());
    total *= f.order();
    if (!name.empty()) name += "x";
    name += f.name().empty() ? "?" : f.name();
  }
  require(total <= 1'000'000, Errc::BudgetExceeded, "product order too large");
  const int m = static_cast<int>(total);
  std::vector<int> table(static_cast<size_t>(m) * m);
  for (int x = 0; x < m; ++x) {
    auto xs = product_decode(orders, x);
    for (int y = 0; y < m; ++y) {
      auto ys = product_decode(orders, y);
      std::vector<int> zs(orders.size());
      for (size_t i = 0; i < orders.size(); ++i)
        zs[i] = factors[i].op(xs[i], ys[i]);
      table[x * m + y] = product_encode(orders, zs);
    }
  }
  return FiniteGroup::from_flat_table(m, std::move(table), std::move(name));
}

std::vector<int> generated_subgroup(const FiniteGroup& G,
                                    const std::vector<int>& seed) {
  std::set<int> members{G.identity()};
  for (int s : seed) members.insert(s);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(members.begin(), members.end());
    for (int x : cur)
      for (int y : cur) {
        if (members.insert(G.op(x, y)).second) grew = true;
      }
    for (int x : cur)
      if (members.insert(G.inverse(x)).second) grew = true;
  }
  return {members.begin(), members.end()};
}

bool is_subgroup(const FiniteGroup& G, const std::vector<int>& members) {
  if (members.empty()) return false;
  std::vector<char> in(G.order(), 0);
  for (int x : members) {
    if (x < 0 || x >= G.order()) return false;
    in[x] = 1;
  }
  if (!in[G.identity()]) return false;
  for (int x : members) {
    if (!in[G.inverse(x)]) return false;
    for (int y : members)
      if (!in[G.op(x, y)]) return false;
  }
  return true;
}

bool is_normal_subgroup(const FiniteGroup& G, const std::vector<int>& members) {
  if (!is_subgroup(G, members)) return false;
  std::vector<char> in(G.order(), 0);
  for (int x : members) in[x] = 1;
  for (int g = 0; g < G.order(); ++g)
    for (int x : members)
      if (!in[G.conjugate(g, x)]) return false;
  return true;
}

std::vector<std::vector<int>> enumerate_subgroups(const FiniteGroup& G) {
  // Closure-generated lattice walk: grow known subgroups by one generator
  // at a time instead of scanning the power set.
  std::set<std::vector<int>> known;
  known.insert(generated_subgroup(G, {}));
  std::vector<std::vector<int>> frontier(known.begin(), known.end());
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& S : frontier) {
      std::vector<char> in(G.order(), 0);
      for (int x : S) in[x] = 1;
      for (int g = 0; g < G.order(); ++g) {
        if (in[g]) continue;
        auto seed = S;
        seed.push_back(g);
        auto bigger = generated_subgroup(G, seed);
        if (known.insert(bigger).second) next.push_back(bigger);
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::vector<int>> out(known.begin(), known.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<std::vector<int>> enumerate_normal_subgroups(const FiniteGroup& G) {
  std::vector<std::vector<int>> out;
  for (auto& S : enumerate_subgroups(G))
    if (is_normal_subgroup(G, S)) out.push_back(std::move(S));
  return out;
}

QuotientGroup quotient_group(const FiniteGroup& G, const std::vector<int>& N) {
  require(is_normal_subgroup(G, N), Errc::NotNormal,
          "subgroup is not normal");
  const int m = G.order();
  std::vector<int> coset_of(m, -1);
  std::vector<int> reps;  // minimal-index representatives, in index order
  for (int x = 0; x < m; ++x) {
    if (coset_of[x] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int n : N) coset_of[G.op(x, n)] = id;
  }
  const int q = static_cast<int>(reps.size());
  std::vector<int> table(static_cast<size_t>(q) * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      table[a * q + b] = coset_of[G.op(reps[a], reps[b])];
  auto group = FiniteGroup::from_flat_table(q, std::move(table),
                                            G.name().empty() ? "" : G.name() + "/N");
  return QuotientGroup{std::move(group), std::move(coset_of), std::move(reps)};
}

std::vector<int> commutator_subgroup(const FiniteGroup& G,
                                     const std::vector<int>& A,
                                     const std::vector<int>& B) {
  std::vector<int> seed;
  for (int a : A)
    for (int b : B)
      seed.push_back(G.op(G.op(a, b), G.op(G.inverse(a), G.inverse(b))));
  return generated_subgroup(G, seed);
}

namespace {

std::vector<int> all_elements(const FiniteGroup& G) {
  std::vector<int> v(G.order());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

bool is_p_group(const FiniteGroup& G, int p) {
  int m = G.order();
  while (m % p == 0) m /= p;
  return m == 1;
}

bool is_solvable(const FiniteGroup& G) {
  auto cur = all_elements(G);
  while (cur.size() > 1) {
    auto next = commutator_subgroup(G, cur, cur);
    if (next.size() == cur.size()) return false;
    cur = std::move(next);
  }
  return true;
}

bool is_nilpotent(const FiniteGroup& G) {
  auto whole = all_elements(G);
  auto cur = whole;
  while (cur.size() > 1) {
    auto next = commutator_subgroup(G, whole, cur);
    if (next.size() == cur.size()) return false;
    cur = std::move(next);
  }
  return true;
}

}  // namespace

bool class_predicate(const std::string& name, const FiniteGroup& G) {
  if (name == "abelian") return G.is_abelian();
  if (name == "solvable") return is_solvable(G);
  if (name == "nilpotent") return is_nilpotent(G);
  int p = -1;
  if (auto pos = name.find("-group"); pos != std::string::npos &&
                                      pos + 6 == name.size() && pos > 0) {
    p = std::atoi(name.substr(0, pos).c_str());
  } else if (name.rfind("p-group(", 0) == 0 && name.back() == ')') {
    p = std::atoi(name.substr(8, name.size() - 9).c_str());
  }
  require(p > 0 && is_prime(p), Errc::UnknownClass, "unknown class " + name);
  return is_p_group(G, p);
}

std::vector<int> generating_sequence(const FiniteGroup& G) {
  std::vector<int> gens;
  auto have = generated_subgroup(G, gens);
  while (static_cast<int>(have.size()) < G.order()) {
    std::vector<char> in(G.order(), 0);
    for (int x : have) in[x] = 1;
    // prefer a high-order element outside the current subgroup
    int best = -1, best_ord = -1;
    for (int g = 0; g < G.order(); ++g)
      if (!in[g] && G.element_order(g) > best_ord) {
        best = g;
        best_ord = G.element_order(g);
      }
    gens.push_back(best);
    have = generated_subgroup(G, gens);
  }
  return gens;
}

namespace {

// Expression DAG: each element of G is reached from the identity or a
// generator by one product, giving a cheap way to transport generator
// images through any candidate homomorphism.
struct WordTable {
  std::vector<int> how_l, how_r;  // element = how_l * how_r (as elements)
  std::vector<int> gen_index;     // >=0 when element is a generator
  std::vector<int> bfs_order;
};

WordTable word_table(const FiniteGroup& G, const std::vector<int>& gens) {
  WordTable w;
  const int m = G.order();
  w.how_l.assign(m, -1);
  w.how_r.assign(m, -1);
  w.gen_index.assign(m, -1);
  std::vector<char> seen(m, 0);
  std::vector<int> queue;
  seen[G.identity()] = 1;
  queue.push_back(G.identity());
  for (size_t i = 0; i < gens.size(); ++i) {
    if (!seen[gens[i]]) {
      seen[gens[i]] = 1;
      w.gen_index[gens[i]] = static_cast<int>(i);
      queue.push_back(gens[i]);
    }
  }
  for (size_t head = 0; head < queue.size(); ++head) {
    int x = queue[head];
    w.bfs_order.push_back(x);
    for (int g : gens) {
      int y = G.op(x, g);
      if (!seen[y]) {
        seen[y] = 1;
        w.how_l[y] = x;
        w.how_r[y] = g;
        queue.push_back(y);
      }
    }
  }
  return w;
}

// Builds the full map determined by generator images; nullopt when the
// resulting map is not a homomorphism.
std::optional<std::vector<int>> extend_from_generators(
    const FiniteGroup& G, const FiniteGroup& H, const std::vector<int>& gens,
    const WordTable& w, const std::vector<int>& images) {
  std::vector<int> map(G.order(), -1);
  map[G.identity()] = H.identity();
  for (size_t i = 0; i < gens.size(); ++i) map[gens[i]] = images[i];
  for (int x : w.bfs_order) {
    if (map[x] < 0) map[x] = H.op(map[w.how_l[x]], map[w.how_r[x]]);
  }
  for (int x = 0; x < G.order(); ++x)
    for (int y = 0; y < G.order(); ++y)
      if (map[G.op(x, y)] != H.op(map[x], map[y])) return std::nullopt;
  return map;
}

}  // namespace

std::vector<std::vector<int>> enumerate_group_homs(const FiniteGroup& G,
                                                   const FiniteGroup& H) {
  std::vector<int> gens = generating_sequence(G);
  if (gens.empty()) return {std::vector<int>(G.order(), H.identity())};
  auto w = word_table(G, gens);
  std::vector<std::vector<int>> out;
  std::vector<int> images(gens.size(), 0);
  const int k = static_cast<int>(gens.size());
  while (true) {
    bool plausible = true;
    for (int i = 0; i < k && plausible; ++i)
      plausible = G.element_order(gens[i]) % H.element_order(images[i]) == 0;
    if (plausible) {
      if (auto map = extend_from_generators(G, H, gens, w, images))
        out.push_back(std::move(*map));
    }
    int pos = k - 1;
    while (pos >= 0 && images[pos] == H.order() - 1) images[pos--] = 0;
    if (pos < 0) break;
    ++images[pos];
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::vector<int>> find_group_isomorphism(const FiniteGroup& A,
                                                       const FiniteGroup& B) {
  if (A.order() != B.order()) return std::nullopt;
  std::vector<int> gens = generating_sequence(A);
  if (gens.empty()) return std::vector<int>{B.identity()};  // both trivial
  auto w = word_table(A, gens);
  const int k = static_cast<int>(gens.size());
  std::vector<std::vector<int>> candidates(k);
  for (int i = 0; i < k; ++i) {
    int ord = A.element_order(gens[i]);
    for (int h = 0; h < B.order(); ++h)
      if (B.element_order(h) == ord) candidates[i].push_back(h);
    if (candidates[i].empty()) return std::nullopt;
  }
  std::vector<int> pick(k, 0);
  while (true) {
    std::vector<int> images(k);
    for (int i = 0; i < k; ++i) images[i] = candidates[i][pick[i]];
    if (auto map = extend_from_generators(A, B, gens, w, images)) {
      std::vector<char> hit(B.order(), 0);
      bool bij = true;
      for (int v : *map) {
        if (hit[v]) {
          bij = false;
          break;
        }
        hit[v] = 1;
      }
      if (bij) return map;
    }
    int pos = k - 1;
    while (pos >= 0 &&
           pick[pos] == static_cast<int>(candidates[pos].size()) - 1)
      pick[pos--] = 0;
    if (pos < 0) break;
    ++pick[pos];
  }
  return std::nullopt;
}

std::vector<std::vector<int>> enumerate_automorphisms(const FiniteGroup& G) {
  std::vector<std::vector<int>> out;
  for (auto& h : enumerate_group_homs(G, G)) {
    std::vector<char> hit(G.order(), 0);
    bool bij = true;
    for (int v : h) {
      if (hit[v]) {
        bij = false;
        break;
      }
      hit[v] = 1;
    }
    if (bij) out.push_back(std::move(h));
  }
  return out;
}

}  // namespace polyadic
