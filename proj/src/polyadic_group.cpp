#include "polyadic/polyadic_group.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "polyadic/budget.hpp"

namespace polyadic {

const Budget& Budget::current() {
  static const Budget b = [] {
    Budget def;
    if (const char* env = std::getenv("POLYADIC_BUDGET")) {
      long long v = std::atoll(env);
      if (v > 0) {
        def.table_cells = v;
        def.assoc_tuples = v;
        def.product_size = v;
        def.map_count = v;
        def.carrier_caps_enforced = false;
      }
    }
    return def;
  }();
  return b;
}

namespace {

long long checked_pow(long long base, int exp, long long cap) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > cap / std::max<long long>(base, 1)) return cap + 1;
    r *= base;
  }
  return r;
}

}  // namespace

NAryTable::NAryTable(int arity, int order, std::vector<int> cells)
    : arity_(arity), order_(order), cells_(std::move(cells)) {
  require(arity_ >= 2, Errc::BadShape, "arity must be at least 2");
  require(order_ >= 1, Errc::BadShape, "order must be positive");
  long long expect = checked_pow(order_, arity_, (long long)1 << 62);
  require(static_cast<long long>(cells_.size()) == expect, Errc::BadShape,
          "cell count does not match order^arity");
  for (int v : cells_)
    require(0 <= v && v < order_, Errc::BadShape, "entry out of range");
}

int NAryTable::eval(std::span<const int> args) const {
  require(static_cast<int>(args.size()) == arity_, Errc::ArityMismatch,
          "expected " + std::to_string(arity_) + " arguments");
  long long idx = 0;
  for (int a : args) idx = idx * order_ + a;
  return cells_[idx];
}

std::string AxiomViolation::describe() const {
  std::string s;
  switch (kind) {
    case Kind::bad_shape:
      return "malformed table";
    case Kind::unique_solvability:
      s = "unique solvability fails: line along axis " +
          std::to_string(axis) + " at (";
      break;
    case Kind::associativity:
      s = "associativity fails for bracketing positions " +
          std::to_string(pos_i) + "," + std::to_string(pos_j) + " at (";
      break;
  }
  for (size_t i = 0; i < tuple.size(); ++i)
    s += (i ? "," : "") + std::to_string(tuple[i]);
  return s + ")";
}

namespace {

// Iterates tuples in lexicographic order: (0,..,0), (0,..,1), ...
bool next_tuple(std::vector<int>& t, int base) {
  int pos = static_cast<int>(t.size()) - 1;
  while (pos >= 0 && t[pos] == base - 1) t[pos--] = 0;
  if (pos < 0) return false;
  ++t[pos];
  return true;
}

}  // namespace

VerifyResult verify_polyadic(const NAryTable& table) {
  const int n = table.arity();
  const int m = table.order();

  // Axiom (ii) as the Latin-cube condition: for each axis, each line with
  // the other n-1 coordinates fixed must be a permutation of 0..m-1.
  {
    std::vector<int> fixed(n - 1, 0);
    std::vector<int> args(n);
    std::vector<char> seen(m);
    do {
      for (int axis = 0; axis < n; ++axis) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int v = 0; v < m; ++v) {
          int k = 0;
          for (int pos = 0; pos < n; ++pos)
            args[pos] = pos == axis ? v : fixed[k++];
          int val = table.eval(args);
          if (seen[val]) {
            AxiomViolation viol;
            viol.kind = AxiomViolation::Kind::unique_solvability;
            viol.axis = axis;
            viol.tuple = args;
            return {false, viol};
          }
          seen[val] = 1;
        }
      }
    } while (next_tuple(fixed, m));
  }

  // Axiom (i): all (2n-1)-tuples, all bracketing positions.
  {
    long long tuples = checked_pow(m, 2 * n - 1, Budget::current().assoc_tuples);
    require(tuples <= Budget::current().assoc_tuples, Errc::BudgetExceeded,
            "associativity scan too large");
    std::vector<int> t(2 * n - 1, 0);
    std::vector<int> inner(n), outer(n), vals(n);
    do {
      for (int i = 0; i < n; ++i) {
        // value of f(t_0^{i-1}, f(t_i^{n+i-1}), t_{n+i}^{2n-2})
        for (int k = 0; k < n; ++k) inner[k] = t[i + k];
        int mid = table.eval(inner);
        int k2 = 0;
        for (int k = 0; k < i; ++k) outer[k2++] = t[k];
        outer[k2++] = mid;
        for (int k = n + i; k < 2 * n - 1; ++k) outer[k2++] = t[k];
        vals[i] = table.eval(outer);
      }
      for (int i = 0; i + 1 < n; ++i) {
        if (vals[i] != vals[i + 1]) {
          AxiomViolation viol;
          viol.kind = AxiomViolation::Kind::associativity;
          viol.tuple = t;
          viol.pos_i = i + 1;  // 1-based bracketing positions
          viol.pos_j = i + 2;
          return {false, viol};
        }
      }
    } while (next_tuple(t, m));
  }

  return {true, std::nullopt};
}

namespace {

HGTriple make_hg(const FiniteGroup& G, std::vector<int> theta, int b,
                 int arity) {
  HGTriple hg;
  hg.base = G;
  hg.b = b;
  const int m = G.order();
  hg.theta_pow.resize(arity);
  std::vector<int> ident(m);
  for (int i = 0; i < m; ++i) ident[i] = i;
  hg.theta_pow[0] = ident;
  for (int k = 1; k < arity; ++k) {
    hg.theta_pow[k].resize(m);
    for (int i = 0; i < m; ++i) hg.theta_pow[k][i] = theta[hg.theta_pow[k - 1][i]];
  }
  hg.theta_inv.resize(m);
  for (int i = 0; i < m; ++i) hg.theta_inv[theta[i]] = i;
  hg.theta = std::move(theta);
  return hg;
}

int hg_eval(const HGTriple& hg, std::span<const int> args) {
  const FiniteGroup& G = hg.base;
  int acc = args[0];
  for (size_t k = 1; k < args.size(); ++k)
    acc = G.op(acc, hg.theta_pow[k][args[k]]);
  return G.op(acc, hg.b);
}

// theta(b) = b and theta^{n-1} = conjugation by b. Returns a description
// of the first failing condition, or empty when both hold.
std::string hg_condition_failure(const FiniteGroup& G,
                                 const std::vector<int>& theta, int b,
                                 int arity) {
  if (theta[b] != b)
    return "theta(b) != b (theta(" + std::to_string(b) +
           ") = " + std::to_string(theta[b]) + ")";
  for (int x = 0; x < G.order(); ++x) {
    int t = x;
    for (int k = 0; k < arity - 1; ++k) t = theta[t];
    if (t != G.conjugate(b, x))
      return "theta^" + std::to_string(arity - 1) +
             " is not conjugation by b at x = " + std::to_string(x);
  }
  return "";
}

}  // namespace

PolyadicGroup PolyadicGroup::from_table(NAryTable table, std::string name) {
  auto res = verify_polyadic(table);
  if (!res.ok) {
    auto code = res.violation->kind == AxiomViolation::Kind::associativity
                    ? Errc::NotAssociative
                    : Errc::NotLatin;
    fail(code, res.violation->describe());
  }
  PolyadicGroup p;
  p.arity_ = table.arity();
  p.order_ = table.order();
  p.table_ = std::move(table);
  p.name_ = std::move(name);
  return p;
}

PolyadicGroup PolyadicGroup::derived(const FiniteGroup& G, int arity) {
  std::vector<int> ident(G.order());
  for (int i = 0; i < G.order(); ++i) ident[i] = i;
  PolyadicGroup p;
  p.arity_ = arity;
  p.order_ = G.order();
  p.hg_ = make_hg(G, std::move(ident), G.identity(), arity);
  p.name_ = "der^" + std::to_string(arity) + "(" + G.name() + ")";
  require(arity >= 2, Errc::BadShape, "arity must be at least 2");
  if (checked_pow(p.order_, arity, Budget::current().table_cells) <=
      Budget::current().table_cells)
    p.table_ = p.materialized();
  return p;
}

PolyadicGroup PolyadicGroup::b_derived(const FiniteGroup& G, int b,
                                       int arity) {
  require(0 <= b && b < G.order(), Errc::BadShape, "b out of range");
  require(G.is_central(b), Errc::NotCentral,
          "b = " + std::to_string(b) + " is not central");
  std::vector<int> ident(G.order());
  for (int i = 0; i < G.order(); ++i) ident[i] = i;
  PolyadicGroup p;
  p.arity_ = arity;
  p.order_ = G.order();
  p.hg_ = make_hg(G, std::move(ident), b, arity);
  p.name_ = "der_b^" + std::to_string(arity) + "(" + G.name() + ",b=" +
            std::to_string(b) + ")";
  require(arity >= 2, Errc::BadShape, "arity must be at least 2");
  if (checked_pow(p.order_, arity, Budget::current().table_cells) <=
      Budget::current().table_cells)
    p.table_ = p.materialized();
  return p;
}

PolyadicGroup PolyadicGroup::theta_derived(const FiniteGroup& G,
                                           const Automorphism& theta, int b,
                                           int arity) {
  require(arity >= 2, Errc::BadShape, "arity must be at least 2");
  require(0 <= b && b < G.order(), Errc::BadShape, "b out of range");
  require(theta.degree() == G.order(), Errc::BadShape,
          "automorphism degree mismatch");
  std::string bad = hg_condition_failure(G, theta.map(), b, arity);
  require(bad.empty(), Errc::ConditionViolated, bad);
  PolyadicGroup p;
  p.arity_ = arity;
  p.order_ = G.order();
  p.hg_ = make_hg(G, theta.map(), b, arity);
  p.name_ = "der_{theta,b}^" + std::to_string(arity) + "(" + G.name() + ")";
  if (checked_pow(p.order_, arity, Budget::current().table_cells) <=
      Budget::current().table_cells)
    p.table_ = p.materialized();
  return p;
}

int PolyadicGroup::eval(std::span<const int> args) const {
  require(static_cast<int>(args.size()) == arity_, Errc::ArityMismatch,
          "expected " + std::to_string(arity_) + " arguments");
  for (int a : args)
    require(0 <= a && a < order_, Errc::BadShape, "argument out of range");
  if (table_) return table_->eval(args);
  return hg_eval(*hg_, args);
}

int PolyadicGroup::solve(int pos, std::span<const int> known, int rhs) const {
  require(0 <= pos && pos < arity_, Errc::BadShape, "position out of range");
  require(static_cast<int>(known.size()) == arity_ - 1, Errc::ArityMismatch,
          "expected n-1 known arguments");
  if (hg_) {
    // L * theta^pos(x) * R * b = rhs with L the prefix and R the suffix.
    const FiniteGroup& G = hg_->base;
    int left = G.identity();
    for (int k = 0; k < pos; ++k)
      left = G.op(left, hg_->theta_pow[k][known[k]]);
    int right = G.identity();
    for (int k = pos + 1; k < arity_; ++k)
      right = G.op(right, hg_->theta_pow[k][known[k - 1]]);
    right = G.op(right, hg_->b);
    int img = G.op(G.op(G.inverse(left), rhs), G.inverse(right));
    int x = img;
    for (int k = 0; k < pos; ++k) x = hg_->theta_inv[x];
    return x;
  }
  std::vector<int> args(known.begin(), known.begin() + pos);
  args.push_back(0);
  args.insert(args.end(), known.begin() + pos, known.end());
  for (int x = 0; x < order_; ++x) {
    args[pos] = x;
    if (table_->eval(args) == rhs) return x;
  }
  fail(Errc::ConstructionFailed, "no solution found in a valid table");
}

NAryTable PolyadicGroup::materialized() const {
  if (table_) return *table_;
  long long cells = checked_pow(order_, arity_, Budget::current().table_cells);
  require(cells <= Budget::current().table_cells, Errc::BudgetExceeded,
          "table materialization exceeds budget");
  std::vector<int> data(cells);
  std::vector<int> args(arity_, 0);
  long long idx = 0;
  do {
    data[idx++] = hg_eval(*hg_, args);
  } while (next_tuple(args, order_));
  return NAryTable(arity_, order_, std::move(data));
}

std::vector<int> skew_map(const PolyadicGroup& P) {
  const int n = P.arity();
  std::vector<int> out(P.order());
  std::vector<int> known(n - 1);
  for (int x = 0; x < P.order(); ++x) {
    std::fill(known.begin(), known.end(), x);
    out[x] = P.solve(n - 1, known, x);
  }
  return out;
}

DornteResult check_dornte(const PolyadicGroup& P) {
  const int n = P.arity();
  auto skew = skew_map(P);
  std::vector<int> args(n);
  for (int x = 0; x < P.order(); ++x) {
    for (int i = 2; i <= n; ++i) {
      for (int y = 0; y < P.order(); ++y) {
        int k = 0;
        for (int t = 0; t < i - 2; ++t) args[k++] = x;
        args[k++] = skew[x];
        for (int t = 0; t < n - i; ++t) args[k++] = x;
        args[k++] = y;
        if (P.eval(args) != y) return {false, x, y, i, true};
        k = 0;
        args[k++] = y;
        for (int t = 0; t < n - i; ++t) args[k++] = x;
        args[k++] = skew[x];
        for (int t = 0; t < i - 2; ++t) args[k++] = x;
        if (P.eval(args) != y) return {false, x, y, i, false};
      }
    }
  }
  return {};
}

std::optional<int> find_nary_identity(const PolyadicGroup& P) {
  const int n = P.arity();
  std::vector<int> args(n);
  for (int a = 0; a < P.order(); ++a) {
    bool ok = true;
    for (int i = 1; i <= n && ok; ++i)
      for (int x = 0; x < P.order() && ok; ++x) {
        for (int k = 0; k < n; ++k) args[k] = k == i - 1 ? x : a;
        ok = P.eval(args) == x;
      }
    if (ok) return a;
  }
  return std::nullopt;
}

PolyadicGroup polyadic_direct_product(const PolyadicGroup& A,
                                      const PolyadicGroup& B) {
  require(A.arity() == B.arity(), Errc::ArityMismatch,
          "factors have different arities");
  const int n = A.arity();
  if (A.hg() && B.hg()) {
    auto base = direct_product({A.hg()->base, B.hg()->base});
    const std::vector<int> orders{A.order(), B.order()};
    std::vector<int> theta(base.order());
    for (int i = 0; i < base.order(); ++i) {
      auto xs = product_decode(orders, i);
      theta[i] = product_encode(
          orders, {A.hg()->theta[xs[0]], B.hg()->theta[xs[1]]});
    }
    int b = product_encode(orders, {A.hg()->b, B.hg()->b});
    return PolyadicGroup::theta_derived(base, Automorphism(base, theta), b, n);
  }
  const int m = A.order() * B.order();
  const std::vector<int> orders{A.order(), B.order()};
  long long cells = checked_pow(m, n, Budget::current().table_cells);
  require(cells <= Budget::current().table_cells, Errc::BudgetExceeded,
          "product table exceeds budget");
  std::vector<int> data(cells);
  std::vector<int> args(n, 0), as(n), bs(n);
  long long idx = 0;
  do {
    for (int k = 0; k < n; ++k) {
      auto xs = product_decode(orders, args[k]);
      as[k] = xs[0];
      bs[k] = xs[1];
    }
    data[idx++] = product_encode(orders, {A.eval(as), B.eval(bs)});
  } while (next_tuple(args, m));
  return PolyadicGroup::from_table(NAryTable(n, m, std::move(data)),
                                   A.name() + "x" + B.name());
}

PolyadicGroup restrict_to_carrier(const PolyadicGroup& P,
                                  const std::vector<int>& carrier) {
  const int k = static_cast<int>(carrier.size());
  require(k >= 1, Errc::BadShape, "empty carrier");
  std::vector<int> index_of(P.order(), -1);
  for (int i = 0; i < k; ++i) index_of[carrier[i]] = i;
  const int n = P.arity();
  long long cells = checked_pow(k, n, Budget::current().table_cells);
  require(cells <= Budget::current().table_cells, Errc::BudgetExceeded,
          "carrier table exceeds budget");
  std::vector<int> data(cells);
  std::vector<int> sub(n, 0), args(n);
  long long idx = 0;
  do {
    for (int t = 0; t < n; ++t) args[t] = carrier[sub[t]];
    int v = P.eval(args);
    require(index_of[v] >= 0, Errc::NotASubgroup,
            "carrier is not closed under the operation");
    data[idx++] = index_of[v];
  } while (next_tuple(sub, k));
  return PolyadicGroup::from_table(NAryTable(n, k, std::move(data)));
}

std::vector<std::vector<int>> enumerate_subpolyadic_carriers(
    const PolyadicGroup& P) {
  // Closure-generated walk, mirroring the subgroup enumeration.
  const int n = P.arity();
  auto close = [&](std::vector<int> seed) {
    std::set<int> members(seed.begin(), seed.end());
    auto skew = skew_map(P);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> cur(members.begin(), members.end());
      std::vector<int> args(n);
      std::vector<int> pick(n, 0);
      const int c = static_cast<int>(cur.size());
      do {
        for (int t = 0; t < n; ++t) args[t] = cur[pick[t]];
        if (members.insert(P.eval(args)).second) grew = true;
      } while (next_tuple(pick, c));
      for (int x : cur)
        if (members.insert(skew[x]).second) grew = true;
    }
    return std::vector<int>(members.begin(), members.end());
  };
  std::set<std::vector<int>> known;
  std::vector<std::vector<int>> frontier;
  for (int x = 0; x < P.order(); ++x) {
    auto s = close({x});
    if (known.insert(s).second) frontier.push_back(s);
  }
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& S : frontier) {
      std::vector<char> in(P.order(), 0);
      for (int x : S) in[x] = 1;
      for (int g = 0; g < P.order(); ++g) {
        if (in[g]) continue;
        auto seed = S;
        seed.push_back(g);
        auto bigger = close(std::move(seed));
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

namespace {

bool polyadic_iso_backtrack(const PolyadicGroup& P, const PolyadicGroup& Q,
                            std::vector<int>& alpha, std::vector<char>& used,
                            int depth) {
  const int m = P.order();
  const int n = P.arity();
  // The per-level pruning only covers tuples whose value is already
  // assigned, so the leaf runs the full homomorphism check.
  if (depth == m) return is_polyadic_hom(P, Q, alpha);
  std::vector<int> args(n), mapped(n);
  for (int cand = 0; cand < m; ++cand) {
    if (used[cand]) continue;
    alpha[depth] = cand;
    used[cand] = 1;
    bool ok = true;
    std::vector<int> pick(n, 0);
    do {
      bool uses_depth = false;
      for (int t = 0; t < n; ++t)
        if (pick[t] == depth) uses_depth = true;
      if (!uses_depth) continue;
      for (int t = 0; t < n; ++t) {
        args[t] = pick[t];
        mapped[t] = alpha[pick[t]];
      }
      int v = P.eval(args);
      if (v <= depth && alpha[v] != Q.eval(mapped)) {
        ok = false;
        break;
      }
    } while (next_tuple(pick, depth + 1));
    if (ok && polyadic_iso_backtrack(P, Q, alpha, used, depth + 1)) return true;
    used[cand] = 0;
    alpha[depth] = -1;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> find_polyadic_isomorphism(
    const PolyadicGroup& P, const PolyadicGroup& Q) {
  if (P.order() != Q.order() || P.arity() != Q.arity()) return std::nullopt;
  std::vector<int> alpha(P.order(), -1);
  std::vector<char> used(P.order(), 0);
  if (polyadic_iso_backtrack(P, Q, alpha, used, 0)) return alpha;
  return std::nullopt;
}

bool is_polyadic_hom(const PolyadicGroup& P, const PolyadicGroup& Q,
                     const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != P.order()) return false;
  if (P.arity() != Q.arity()) return false;
  for (int v : map)
    if (v < 0 || v >= Q.order()) return false;
  const int n = P.arity();
  std::vector<int> args(n, 0), mapped(n);
  do {
    for (int t = 0; t < n; ++t) mapped[t] = map[args[t]];
    if (map[P.eval(args)] != Q.eval(mapped)) return false;
  } while (next_tuple(args, P.order()));
  return true;
}

}  // namespace polyadic
