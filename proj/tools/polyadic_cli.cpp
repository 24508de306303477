#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "polyadic/small_groups.hpp"
#include "polyadic/suites.hpp"

namespace {

using namespace polyadic;

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_input_error = 2;

void emit(const json& j, bool pretty, const std::string& out_path) {
  std::string text = pretty ? j.dump(2) : j.dump();
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    out << text << "\n";
    std::cout << "wrote " << out_path << "\n";
  }
}

std::string dir_of(const std::string& path) {
  auto p = std::filesystem::path(path).parent_path();
  return p.empty() ? "." : p.string();
}

json catalog_to_json(const Catalog& cat) {
  json entries = json::array();
  for (const auto& e : cat.entries) {
    json entry{{"order", e.group.order()},
               {"base", e.base_name},
               {"theta", e.theta},
               {"b", e.b},
               {"reducible", e.reducible()},
               {"group", polyadic_to_json(e.group)}};
    if (e.nary_identity) entry["nary_identity"] = *e.nary_identity;
    entries.push_back(std::move(entry));
  }
  return json{{"arity", cat.arity},
              {"max_order", cat.max_order},
              {"classes", cat.entries.size()},
              {"entries", std::move(entries)}};
}

// Dispatches on the file's fields: polyadic group ("arity"), ordinary
// group ("order"/"table"), homomorphism ("source"/"target"/"map"), or
// inverse system ("poset").
int run_verify(const std::string& path, bool pretty, bool timing) {
  auto t0 = std::chrono::steady_clock::now();
  json j;
  try {
    j = load_json_file(path);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_input_error;
  }
  Report rep;
  try {
    if (j.contains("arity")) {
      rep = verify_report(polyadic_from_json(j, dir_of(path)));
    } else if (j.contains("poset")) {
      auto S = system_from_json(j, dir_of(path));
      auto V = validate_system(S);
      rep.command = "verify";
      for (const auto& c : V.checks)
        rep.add_check(c.name, c.pass || c.name == "poset_directed",
                      c.detail.empty() ? json(nullptr)
                                       : json{{"detail", c.detail}});
    } else if (j.contains("map") && j.contains("source")) {
      auto H = hom_from_json(j, dir_of(path));
      rep.command = "verify";
      auto hc = hom_verify(H.source, H.target, H.map);
      rep.add_check("polyadic_hom", hc.ok,
                    hc.ok ? json(nullptr) : json{{"witness", hc.witness}});
      if (hc.ok) {
        auto F = hom_decompose(H.source, H.target, H.map);
        rep.add_check("factorization", F.phi_is_hom,
                      json{{"a", F.a},
                           {"phi", F.phi},
                           {"power_condition", F.cond_power},
                           {"twist_inner", F.cond_twist_inner},
                           {"twist_inverse", F.cond_twist_inverse}});
      }
    } else if (j.contains("order")) {
      auto G = group_from_json(j);
      rep.command = "verify";
      rep.add_check("group_axioms", true,
                    json{{"order", G.order()}, {"identity", G.identity()}});
    } else {
      fail(Errc::ParseError, "unrecognized file kind");
    }
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError || e.code() == Errc::BadShape ||
        e.code() == Errc::ArityMismatch) {
      std::cerr << e.what() << "\n";
      return exit_input_error;
    }
    // Axiom or derivation-condition failure: a structured check report.
    rep.command = "verify";
    rep.checks.clear();
    rep.add_check("axioms", false, json{{"witness", e.what()}});
  }
  rep.inputs["file"] = path;
  rep.timing = timing;
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  emit(rep.to_json(), pretty, "");
  return rep.all_pass() ? exit_ok : exit_check_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite polyadic group toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  bool pretty = false, timing = false;
  app.add_flag("--pretty", pretty, "indent JSON output");
  app.add_flag("--timing", timing,
               "include wall-clock timing in reports (breaks byte-identical "
               "output)");

  auto* verify = app.add_subcommand("verify", "check a polyadic group file");
  std::string verify_path;
  verify->add_option("file", verify_path, "polyadic group JSON file")
      ->required();

  auto* catalog = app.add_subcommand(
      "catalog", "classify derivable polyadic groups of small order");
  int cat_arity = 3, cat_max_order = 4;
  std::string cat_out;
  catalog->add_option("--arity", cat_arity, "operation arity (>= 3)");
  catalog->add_option("--max-order", cat_max_order, "largest carrier (<= 8)");
  catalog->add_option("--out", cat_out, "write the catalog to a file");

  auto* suite = app.add_subcommand("suite", "run a named check suite");
  std::string suite_name, suite_class = "abelian";
  std::vector<std::string> suite_inputs;
  int suite_arity = 3, suite_max_order = 4, suite_threads = 3;
  suite->add_option("name", suite_name, "suite name")->required();
  suite->add_option("--input", suite_inputs,
                    "input file(s); defaults to the built-in catalog or "
                    "tower");
  suite->add_option("--class", suite_class, "group class for pro-x/closure");
  suite->add_option("--arity", suite_arity, "catalog arity for defaults");
  suite->add_option("--max-order", suite_max_order,
                    "catalog order cap for defaults");
  suite->add_option("--threads", suite_threads,
                    "thread count for limit-retract");

  auto* tower = app.add_subcommand("tower", "build an inverse system");
  std::string tower_kind = "cyclic_pk", tower_out;
  int tower_p = 2, tower_depth = 3, tower_sign = -1, tower_arity = 3;
  long long tower_b = 0;
  tower->add_option("--kind", tower_kind, "tower kind (cyclic_pk)");
  tower->add_option("--p", tower_p, "prime base");
  tower->add_option("--depth", tower_depth, "number of stages");
  tower->add_option("--sign", tower_sign, "theta sign (+1 or -1)");
  tower->add_option("--b", tower_b, "shared b (reduced per stage)");
  tower->add_option("--arity", tower_arity, "operation arity");
  tower->add_option("--out", tower_out, "write the system to a file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) return run_verify(verify_path, pretty, timing);

    if (*catalog) {
      auto t0 = std::chrono::steady_clock::now();
      auto cat = build_catalog(cat_arity, cat_max_order);
      auto cross = catalog_cross_validate(cat);
      Report rep;
      rep.command = "catalog";
      rep.inputs = {{"arity", cat_arity}, {"max_order", cat_max_order}};
      for (const auto& c : cross)
        rep.add_check("cross_validation_order_" + std::to_string(c.order),
                      c.classes_match,
                      json{{"brute_classes", c.brute_class_count},
                           {"catalog_classes", c.catalog_class_count}});
      rep.timing = timing;
      rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
      json out = rep.to_json();
      out["catalog"] = catalog_to_json(cat);
      emit(out, pretty, cat_out);
      return rep.all_pass() ? exit_ok : exit_check_failed;
    }

    if (*suite) {
      auto t0 = std::chrono::steady_clock::now();
      const auto& names = suite_names();
      if (std::find(names.begin(), names.end(), suite_name) == names.end())
        fail(Errc::UnknownSuite, "unknown suite " + suite_name);

      std::vector<PolyadicGroup> samples;
      // congruence files attach to the polyadic input preceding them
      std::vector<std::vector<Congruence>> attached;
      std::optional<InverseSystem> system;
      for (const auto& in : suite_inputs) {
        auto j = load_json_file(in);
        if (j.contains("poset")) {
          system = system_from_json(j, dir_of(in));
        } else if (j.contains("partition")) {
          if (samples.empty())
            fail(Errc::ParseError,
                 "congruence file needs a preceding polyadic input");
          attached.back().push_back(
              congruence_from_json(j, samples.back().order()));
        } else {
          samples.push_back(polyadic_from_json(j, dir_of(in)));
          attached.emplace_back();
        }
      }

      Report rep;
      const bool needs_system = suite_name == "limit-retract" ||
                                suite_name == "der-commute" ||
                                suite_name == "pro-x";
      if (needs_system && !system)
        system = build_tower_cyclic_pk(2, 3, -1, 0, 3);
      if (!needs_system && samples.empty())
        samples = build_catalog(suite_arity, suite_max_order).groups();
      attached.resize(samples.size());

      if (suite_name == "hg-roundtrip") rep = suite_hg_roundtrip(samples);
      else if (suite_name == "post-cover") rep = suite_post_cover(samples);
      else if (suite_name == "hom-equivalence")
        rep = suite_hom_equivalence(samples);
      else if (suite_name == "congruence-quotient") {
        std::vector<std::pair<PolyadicGroup, std::vector<Congruence>>> with;
        for (size_t i = 0; i < samples.size(); ++i)
          with.emplace_back(samples[i], attached[i]);
        rep = suite_congruence_quotient_with(with);
      }
      else if (suite_name == "limit-retract")
        rep = suite_limit_retract(*system, suite_threads);
      else if (suite_name == "der-commute") rep = suite_der_commute(*system);
      else if (suite_name == "reconstruct") rep = suite_reconstruct(samples);
      else if (suite_name == "pro-x") rep = suite_pro_x(*system, suite_class);
      else if (suite_name == "poln-closure")
        rep = suite_poln_closure(suite_class, samples);

      rep.timing = timing;
      rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
      emit(rep.to_json(), pretty, "");
      return rep.all_pass() ? exit_ok : exit_check_failed;
    }

    if (*tower) {
      if (tower_kind != "cyclic_pk")
        fail(Errc::InvalidParams, "unknown tower kind " + tower_kind);
      auto S = build_tower_cyclic_pk(tower_p, tower_depth, tower_sign, tower_b,
                                     tower_arity);
      emit(system_to_json(S), pretty, tower_out);
      return exit_ok;
    }
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError || e.code() == Errc::UnknownSuite ||
        e.code() == Errc::InvalidParams || e.code() == Errc::BadShape) {
      std::cerr << e.what() << "\n";
      return exit_input_error;
    }
    std::cerr << e.what() << "\n";
    return exit_check_failed;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return exit_input_error;
  }
  return exit_ok;
}
