// Exercises the installed command-line binary end to end through its
// documented exit-code contract. The binary path arrives via POLYADIC_CLI.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

std::string cli() {
  const char* p = std::getenv("POLYADIC_CLI");
  REQUIRE(p != nullptr);
  return p;
}

int run(const std::string& args) {
  std::string cmd = cli() + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& body) {
  auto dir = std::filesystem::temp_directory_path() / "polyadic_cli_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("verify exit codes") {
  auto good = write_temp("good.json", R"({
    "arity": 3,
    "hg": {"group": {"order": 2, "table": [[0,1],[1,0]]},
           "theta": [0,1], "b": 1}
  })");
  CHECK(run("verify " + good.string()) == 0);

  // explicit sum table over Z2, then the same with one mutated cell
  auto base = write_temp("base.json", R"({
    "arity": 3,
    "table": [[[0,1],[1,0]],[[1,0],[0,1]]]
  })");
  auto mutated = write_temp("mutated.json", R"({
    "arity": 3,
    "table": [[[0,1],[1,0]],[[1,0],[0,0]]]
  })");
  CHECK(run("verify " + base.string()) == 0);
  CHECK(run("verify " + mutated.string()) == 1);

  // x - y - z mod 2: lines are permutations, bracketings disagree
  auto nonassoc = write_temp("nonassoc.json", R"({
    "arity": 3,
    "table": [[[0,1],[1,0]],[[1,0],[0,1]]]
  })");
  // overwrite with the genuinely nonassociative order-4 table
  {
    std::ofstream out(nonassoc);
    out << "{\"arity\": 3, \"table\": [";
    for (int x = 0; x < 4; ++x) {
      out << (x ? "," : "") << "[";
      for (int y = 0; y < 4; ++y) {
        out << (y ? "," : "") << "[";
        for (int z = 0; z < 4; ++z)
          out << (z ? "," : "") << (((x - y - z) % 4 + 4) % 4);
        out << "]";
      }
      out << "]";
    }
    out << "]}";
  }
  CHECK(run("verify " + nonassoc.string()) == 1);

  auto malformed = write_temp("malformed.json", "{ not json");
  CHECK(run("verify " + malformed.string()) == 2);
  CHECK(run("verify /nonexistent/file.json") == 2);

  auto wrong_shape = write_temp("shape.json", R"({"arity": 3})");
  CHECK(run("verify " + wrong_shape.string()) == 2);

  // well-formed file whose derivation conditions fail: a check failure
  auto bad_conditions = write_temp("bad_conditions.json", R"({
    "arity": 3,
    "hg": {"group": {"order": 4, "table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]},
           "theta": [0,3,2,1], "b": 1}
  })");
  CHECK(run("verify " + bad_conditions.string()) == 1);
}

TEST_CASE("verify dispatches on file kind") {
  auto group = write_temp("group.json", R"({
    "order": 2, "table": [[0,1],[1,0]], "name": "Z2"
  })");
  CHECK(run("verify " + group.string()) == 0);

  auto bad_group = write_temp("bad_group.json", R"({
    "order": 2, "table": [[0,1],[1,1]]
  })");
  CHECK(run("verify " + bad_group.string()) == 1);

  auto src = write_temp("hom_src.json", R"({
    "arity": 3,
    "hg": {"group": {"order": 4, "table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]},
           "theta": [0,3,2,1], "b": 0}
  })");
  auto dst = write_temp("hom_dst.json", R"({
    "arity": 3,
    "hg": {"group": {"order": 2, "table": [[0,1],[1,0]]},
           "theta": [0,1], "b": 0}
  })");
  auto hom = write_temp("hom.json", R"({
    "source": "hom_src.json", "target": "hom_dst.json", "map": [0,1,0,1]
  })");
  CHECK(run("verify " + hom.string()) == 0);
  auto nonhom = write_temp("nonhom.json", R"({
    "source": "hom_src.json", "target": "hom_dst.json", "map": [0,1,1,0]
  })");
  CHECK(run("verify " + nonhom.string()) == 1);

  auto sys = std::filesystem::temp_directory_path() /
             "polyadic_cli_tests/sys.json";
  REQUIRE(run("tower --kind cyclic_pk --p 2 --depth 2 --sign -1 --b 0 "
              "--arity 3 --out " + sys.string()) == 0);
  CHECK(run("verify " + sys.string()) == 0);
}

TEST_CASE("suite accepts congruence files") {
  auto poly = write_temp("cq_poly.json", R"({
    "arity": 3,
    "hg": {"group": {"order": 4, "table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]},
           "theta": [0,3,2,1], "b": 0}
  })");
  auto cong = write_temp("cq_cong.json", R"({"partition": [[0,2],[1,3]]})");
  CHECK(run("suite congruence-quotient --input " + poly.string() +
            " --input " + cong.string()) == 0);
  auto non_cong = write_temp("cq_bad.json", R"({"partition": [[0,1],[2,3]]})");
  CHECK(run("suite congruence-quotient --input " + poly.string() +
            " --input " + non_cong.string()) == 1);
}

TEST_CASE("budget override via the environment") {
  // a 9-element carrier exceeds the fixed congruence enumeration cap
  auto big = write_temp("z9.json", R"({
    "arity": 3,
    "hg": {"group": {"order": 9, "table": [
      [0,1,2,3,4,5,6,7,8],[1,2,3,4,5,6,7,8,0],[2,3,4,5,6,7,8,0,1],
      [3,4,5,6,7,8,0,1,2],[4,5,6,7,8,0,1,2,3],[5,6,7,8,0,1,2,3,4],
      [6,7,8,0,1,2,3,4,5],[7,8,0,1,2,3,4,5,6],[8,0,1,2,3,4,5,6,7]]},
           "theta": [0,8,7,6,5,4,3,2,1], "b": 0}
  })");
  CHECK(run("suite congruence-quotient --input " + big.string()) != 0);
  std::string env_cmd = "POLYADIC_BUDGET=100000000 " + cli() +
                        " suite congruence-quotient --input " + big.string() +
                        " > /dev/null 2>&1";
  int rc = std::system(env_cmd.c_str());
  CHECK(WEXITSTATUS(rc) == 0);
}

TEST_CASE("catalog command") {
  CHECK(run("catalog --arity 3 --max-order 2") == 0);
  CHECK(run("catalog --arity 2 --max-order 2") == 2);  // arity contract
}

TEST_CASE("suite command") {
  CHECK(run("suite hg-roundtrip --max-order 2") == 0);
  CHECK(run("suite hom-equivalence --max-order 2") == 0);
  CHECK(run("suite post-cover --max-order 2") == 0);
  CHECK(run("suite reconstruct --max-order 2") == 0);
  CHECK(run("suite poln-closure --class abelian --max-order 2") == 0);
  CHECK(run("suite limit-retract") == 0);
  CHECK(run("suite der-commute") == 0);
  CHECK(run("suite pro-x --class 2-group") == 0);
  CHECK(run("suite no-such-suite") == 2);
}

TEST_CASE("suites consume system files") {
  auto sys = std::filesystem::temp_directory_path() /
             "polyadic_cli_tests/sys_for_suite.json";
  REQUIRE(run("tower --kind cyclic_pk --p 2 --depth 2 --sign -1 --b 0 "
              "--arity 3 --out " + sys.string()) == 0);
  CHECK(run("suite pro-x --class 2-group --input " + sys.string()) == 0);
  CHECK(run("suite limit-retract --input " + sys.string()) == 0);
  CHECK(run("suite der-commute --input " + sys.string()) == 0);
}

TEST_CASE("tower command emits a loadable system") {
  auto out = std::filesystem::temp_directory_path() /
             "polyadic_cli_tests/tower.json";
  CHECK(run("tower --kind cyclic_pk --p 2 --depth 2 --sign -1 --b 0 "
            "--arity 3 --out " + out.string()) == 0);
  CHECK(std::filesystem::exists(out));
  CHECK(run("tower --kind cyclic_pk --p 2 --depth 2 --sign -1 --b 1 "
            "--arity 3") == 2);  // negation does not fix 1 mod 4
}

TEST_CASE("reports are byte-identical across runs") {
  auto good = write_temp("stable.json", R"({
    "arity": 3,
    "hg": {"group": {"order": 4, "table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]},
           "theta": [0,3,2,1], "b": 0}
  })");
  auto out1 = std::filesystem::temp_directory_path() /
              "polyadic_cli_tests/out1.json";
  auto out2 = std::filesystem::temp_directory_path() /
              "polyadic_cli_tests/out2.json";
  int rc1 = std::system(
      (cli() + " verify " + good.string() + " > " + out1.string()).c_str());
  int rc2 = std::system(
      (cli() + " verify " + good.string() + " > " + out2.string()).c_str());
  CHECK(WEXITSTATUS(rc1) == 0);
  CHECK(WEXITSTATUS(rc2) == 0);
  std::ifstream a(out1), b(out2);
  std::string sa((std::istreambuf_iterator<char>(a)),
                 std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)),
                 std::istreambuf_iterator<char>());
  CHECK(sa == sb);
  CHECK_FALSE(sa.empty());
}
