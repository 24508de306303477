#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "polyadic/catalog.hpp"
#include "polyadic/congruence.hpp"
#include "polyadic/profinite.hpp"

namespace polyadic {

using nlohmann::json;

// File formats:
//   group:      {"order": m, "table": [[..]..], "name"?: str}
//   polyadic:   {"arity": n, "table": nested arrays}
//            or {"arity": n, "hg": {"group": <group|path>, "theta": [..],
//                "b": idx}}
//   hom:        {"source": <polyadic|path>, "target": <polyadic|path>,
//                "map": [..]}
//   congruence: {"partition": [[..]..]}
//   system:     {"poset": {"size": k, "pairs": [[lower, upper]..]},
//                "stages": [<polyadic|path>..],
//                "maps": [{"from": i, "to": j, "map": [..]}..]}
// Path references are resolved relative to the referencing file.

FiniteGroup group_from_json(const json& j);
json group_to_json(const FiniteGroup& G);

PolyadicGroup polyadic_from_json(const json& j, const std::string& base_dir);
json polyadic_to_json(const PolyadicGroup& P);

struct HomFile {
  PolyadicGroup source;
  PolyadicGroup target;
  std::vector<int> map;
};
HomFile hom_from_json(const json& j, const std::string& base_dir);

Congruence congruence_from_json(const json& j, int order);

InverseSystem system_from_json(const json& j, const std::string& base_dir);
json system_to_json(const InverseSystem& S);

json load_json_file(const std::string& path);

// Named-check report emitted by every command.
struct Report {
  std::string command;
  json inputs = json::object();
  std::vector<std::pair<std::string, json>> checks;  // insertion order kept
  bool timing = false;
  double elapsed_ms = 0;

  void add_check(const std::string& name, bool pass,
                 json details = json(nullptr));
  bool all_pass() const;
  int failed_count() const;
  json to_json() const;
};

}  // namespace polyadic
