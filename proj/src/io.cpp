#include "polyadic/io.hpp"

#include <filesystem>
#include <fstream>

namespace polyadic {

namespace {

json require_field(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key))
    fail(Errc::ParseError, "missing field '" + key + "'");
  return j.at(key);
}

std::vector<int> int_array(const json& j, const std::string& what) {
  if (!j.is_array()) fail(Errc::ParseError, what + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer())
      fail(Errc::ParseError, what + " must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

void flatten_nested(const json& j, int arity, int order,
                    std::vector<int>& out) {
  if (arity == 0) {
    if (!j.is_number_integer())
      fail(Errc::ParseError, "table cell is not an integer");
    out.push_back(j.get<int>());
    return;
  }
  if (!j.is_array() || static_cast<int>(j.size()) != order)
    fail(Errc::ParseError, "table nesting does not match arity/order");
  for (const auto& sub : j) flatten_nested(sub, arity - 1, order, out);
}

json nest_cells(const std::vector<int>& cells, int arity, int order,
                long long& pos) {
  if (arity == 0) return cells[pos++];
  json arr = json::array();
  for (int i = 0; i < order; ++i)
    arr.push_back(nest_cells(cells, arity - 1, order, pos));
  return arr;
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Errc::ParseError, std::string("invalid JSON in ") + path + ": " +
                               e.what());
  }
  return j;
}

FiniteGroup group_from_json(const json& j) {
  auto order = require_field(j, "order");
  auto table = require_field(j, "table");
  if (!order.is_number_integer() || !table.is_array())
    fail(Errc::ParseError, "group needs integer 'order' and array 'table'");
  const int m = order.get<int>();
  if (m <= 0 || static_cast<int>(table.size()) != m)
    fail(Errc::ParseError, "table row count differs from order");
  std::vector<std::vector<int>> rows;
  for (const auto& r : table) rows.push_back(int_array(r, "table row"));
  std::string name = j.value("name", "");
  return FiniteGroup::from_table(rows, name);
}

json group_to_json(const FiniteGroup& G) {
  json rows = json::array();
  for (int r = 0; r < G.order(); ++r) {
    json row = json::array();
    for (int c = 0; c < G.order(); ++c) row.push_back(G.op(r, c));
    rows.push_back(std::move(row));
  }
  json out{{"order", G.order()}, {"table", std::move(rows)}};
  if (!G.name().empty()) out["name"] = G.name();
  return out;
}

namespace {

json resolve_ref(const json& j, const std::string& base_dir) {
  if (j.is_string()) {
    auto path = std::filesystem::path(base_dir) / j.get<std::string>();
    return load_json_file(path.string());
  }
  return j;
}

}  // namespace

PolyadicGroup polyadic_from_json(const json& j, const std::string& base_dir) {
  auto arity_j = require_field(j, "arity");
  if (!arity_j.is_number_integer())
    fail(Errc::ParseError, "'arity' must be an integer");
  const int n = arity_j.get<int>();
  if (n < 2) fail(Errc::ParseError, "arity must be at least 2");

  if (j.contains("table")) {
    const auto& t = j.at("table");
    if (!t.is_array() || t.empty())
      fail(Errc::ParseError, "'table' must be a nonempty nested array");
    const int m = static_cast<int>(t.size());
    std::vector<int> cells;
    flatten_nested(t, n, m, cells);
    for (int v : cells)
      if (v < 0 || v >= m) fail(Errc::ParseError, "table entry out of range");
    return PolyadicGroup::from_table(NAryTable(n, m, std::move(cells)),
                                     j.value("name", ""));
  }
  if (j.contains("hg")) {
    const auto& hg = j.at("hg");
    auto G = group_from_json(resolve_ref(require_field(hg, "group"), base_dir));
    auto theta = int_array(require_field(hg, "theta"), "'theta'");
    auto b_j = require_field(hg, "b");
    if (!b_j.is_number_integer()) fail(Errc::ParseError, "'b' must be an index");
    return PolyadicGroup::theta_derived(G, Automorphism(G, theta),
                                        b_j.get<int>(), n);
  }
  fail(Errc::ParseError, "polyadic group needs 'table' or 'hg'");
}

json polyadic_to_json(const PolyadicGroup& P) {
  json out{{"arity", P.arity()}};
  if (!P.name().empty()) out["name"] = P.name();
  if (P.hg()) {
    out["hg"] = json{{"group", group_to_json(P.hg()->base)},
                     {"theta", P.hg()->theta},
                     {"b", P.hg()->b}};
  } else {
    auto table = P.materialized();
    long long pos = 0;
    out["table"] = nest_cells(table.cells(), P.arity(), P.order(), pos);
  }
  return out;
}

HomFile hom_from_json(const json& j, const std::string& base_dir) {
  HomFile h{
      polyadic_from_json(resolve_ref(require_field(j, "source"), base_dir),
                         base_dir),
      polyadic_from_json(resolve_ref(require_field(j, "target"), base_dir),
                         base_dir),
      int_array(require_field(j, "map"), "'map'")};
  if (static_cast<int>(h.map.size()) != h.source.order())
    fail(Errc::ParseError, "map length differs from the source order");
  return h;
}

Congruence congruence_from_json(const json& j, int order) {
  auto part = require_field(j, "partition");
  if (!part.is_array()) fail(Errc::ParseError, "'partition' must be an array");
  std::vector<std::vector<int>> blocks;
  for (const auto& b : part) blocks.push_back(int_array(b, "partition block"));
  try {
    return partition_from_blocks(order, blocks);
  } catch (const Error& e) {
    fail(Errc::ParseError, e.what());
  }
}

InverseSystem system_from_json(const json& j, const std::string& base_dir) {
  auto poset_j = require_field(j, "poset");
  auto size_j = require_field(poset_j, "size");
  if (!size_j.is_number_integer())
    fail(Errc::ParseError, "poset 'size' must be an integer");
  std::vector<std::pair<int, int>> pairs;
  for (const auto& p : require_field(poset_j, "pairs")) {
    auto pr = int_array(p, "poset pair");
    if (pr.size() != 2) fail(Errc::ParseError, "poset pair must have 2 items");
    pairs.emplace_back(pr[0], pr[1]);
  }
  InverseSystem S;
  try {
    S.poset = DirectedPoset::from_pairs(size_j.get<int>(), pairs);
  } catch (const Error& e) {
    fail(Errc::ParseError, e.what());
  }
  for (const auto& st : require_field(j, "stages"))
    S.stages.push_back(
        polyadic_from_json(resolve_ref(st, base_dir), base_dir));
  if (static_cast<int>(S.stages.size()) != S.poset.size())
    fail(Errc::ParseError, "stage count differs from poset size");
  for (const auto& mj : require_field(j, "maps")) {
    auto from = require_field(mj, "from");
    auto to = require_field(mj, "to");
    if (!from.is_number_integer() || !to.is_number_integer())
      fail(Errc::ParseError, "map endpoints must be stage indices");
    S.maps[{from.get<int>(), to.get<int>()}] =
        int_array(require_field(mj, "map"), "connecting map");
  }
  // Close under composition for comparable pairs without an explicit map.
  for (int i = 0; i < S.poset.size(); ++i)
    for (int mid = 0; mid < S.poset.size(); ++mid)
      for (int k = 0; k < S.poset.size(); ++k) {
        if (i == mid || mid == k || i == k) continue;
        if (!S.poset.leq(mid, i) || !S.poset.leq(k, mid)) continue;
        if (S.maps.count({i, k})) continue;
        auto hi = S.maps.find({i, mid});
        auto lo = S.maps.find({mid, k});
        if (hi == S.maps.end() || lo == S.maps.end()) continue;
        std::vector<int> comp(hi->second.size());
        for (size_t x = 0; x < comp.size(); ++x)
          comp[x] = lo->second[hi->second[x]];
        S.maps[{i, k}] = std::move(comp);
      }
  return S;
}

json system_to_json(const InverseSystem& S) {
  json poset{{"size", S.poset.size()}};
  json pairs = json::array();
  for (int a = 0; a < S.poset.size(); ++a)
    for (int b = 0; b < S.poset.size(); ++b)
      if (a != b && S.poset.leq(a, b)) pairs.push_back(json::array({a, b}));
  poset["pairs"] = std::move(pairs);
  json stages = json::array();
  for (const auto& st : S.stages) stages.push_back(polyadic_to_json(st));
  json maps = json::array();
  for (const auto& [key, map] : S.maps)
    maps.push_back(
        json{{"from", key.first}, {"to", key.second}, {"map", map}});
  return json{{"poset", std::move(poset)},
              {"stages", std::move(stages)},
              {"maps", std::move(maps)}};
}

void Report::add_check(const std::string& name, bool pass, json details) {
  json entry{{"pass", pass}};
  if (!details.is_null()) entry["details"] = std::move(details);
  checks.emplace_back(name, std::move(entry));
}

bool Report::all_pass() const {
  return failed_count() == 0;
}

int Report::failed_count() const {
  int n = 0;
  for (const auto& [name, entry] : checks)
    if (!entry.at("pass").get<bool>()) ++n;
  return n;
}

json Report::to_json() const {
  json checks_j = json::array();
  for (const auto& [name, entry] : checks) {
    json e = entry;
    e["name"] = name;
    checks_j.push_back(std::move(e));
  }
  json out{{"command", command},
           {"inputs", inputs},
           {"checks", std::move(checks_j)},
           {"summary",
            {{"total", checks.size()},
             {"failed", failed_count()},
             {"pass", all_pass()}}}};
  if (timing) out["timing_ms"] = elapsed_ms;
  return out;
}

}  // namespace polyadic
