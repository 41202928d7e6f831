#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hk/commands.hpp"
#include "hk/document.hpp"

using hk::CommandResult;
using hk::run;

namespace {

std::string data(const std::string& name) { return std::string(HK_DATA_DIR) + "/" + name; }

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

// The value printed after "<prefix> = " on its own line.
std::string value_of(const std::string& out, const std::string& prefix) {
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(prefix + " = ", 0) == 0) return line.substr(prefix.size() + 3);
  }
  return "<missing>";
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hk0_test_" + name);
}

}  // namespace

TEST_CASE("validate") {
  const CommandResult ok = run({"validate", data("sl2.json")});
  CHECK(ok.exit_code == hk::exit_code::kOk);
  CHECK(contains(ok.out, "ok: poset instance, 3 objects, 2 non-identity morphisms"));
  CHECK(contains(ok.out, "assumed connected = true (not checked)"));
  CHECK(ok.err.empty());

  const CommandResult broken = run({"validate", data("broken_composition.json")});
  CHECK(broken.exit_code == hk::exit_code::kValidation);
  CHECK(contains(broken.err, "error[FUNCTORIALITY]: "));
  CHECK(broken.out.empty());

  const CommandResult missing = run({"validate", data("no_such_file.json")});
  CHECK(missing.exit_code == hk::exit_code::kIo);
  CHECK(contains(missing.err, "error[IO]: "));
}

TEST_CASE("homology") {
  const CommandResult all = run({"homology", "--all", data("simplex2_constant.json")});
  CHECK(all.exit_code == 0);
  CHECK(value_of(all.out, "H_0") == "Z");
  CHECK(value_of(all.out, "H_1") == "0");
  CHECK(value_of(all.out, "H_2") == "0");

  const CommandResult neg = run({"homology", "--degree", "-1", data("simplex2_constant.json")});
  CHECK(neg.exit_code == 0);
  CHECK(value_of(neg.out, "H_-1") == "0");

  const CommandResult wrong = run({"homology", "-n", "0", data("pgl3_recipe.json")});
  CHECK(wrong.exit_code == hk::exit_code::kWrongKind);
  CHECK(contains(wrong.err, "error[WRONG_KIND]: "));

  const CommandResult e2_wrong = run({"e2", data("pgl3_recipe.json")});
  CHECK(e2_wrong.exit_code == hk::exit_code::kWrongKind);
}

TEST_CASE("k0") {
  const CommandResult k = run({"-q", "k0", data("sl2.json")});
  const CommandResult h = run({"-q", "homology", "-n", "0", data("sl2.json")});
  CHECK(k.exit_code == 0);
  CHECK(value_of(k.out, "K_0") == "Z^2");
  CHECK(value_of(k.out, "K_0") == value_of(h.out, "H_0"));
  CHECK(value_of(k.out, "K_0 via recipe") == value_of(k.out, "K_0 via Bredon"));

  const CommandResult plain = run({"k0", data("central_m1.json")});
  const CommandResult var = run({"k0", "--variation", data("central_m1.json")});
  CHECK(var.exit_code == 0);
  CHECK(value_of(var.out, "K_0 via gamma") == value_of(var.out, "K_0 via delta+epsilon"));
  CHECK(value_of(var.out, "K_0") == value_of(plain.out, "K_0"));

  CHECK(value_of(run({"k0", data("pgl3_recipe.json")}).out, "K_0") == "Z");
  CHECK(value_of(run({"k0", "--variation", data("gl2_central.json")}).out, "K_0") == "Z");
  CHECK(run({"k0", data("exact_sequence.json")}).exit_code == hk::exit_code::kWrongKind);
}

TEST_CASE("colimit, mv and e2") {
  const CommandResult c = run({"colimit", data("constant_functor.json")});
  CHECK(c.exit_code == 0);
  CHECK(value_of(c.out, "colim") == "Z + Z/3");

  const CommandResult seq = run({"mv", data("exact_sequence.json")});
  CHECK(seq.exit_code == 0);
  CHECK(contains(seq.out, "sequence exact: yes"));

  const CommandResult sq = run({"-q", "mv", data("mv_sl2_square.json")});
  CHECK(value_of(sq.out, "K_0") == "Z^2");
  CHECK(contains(sq.out, "sequence exact: yes"));

  const CommandResult e2 = run({"-q", "e2", data("graded_interval.json")});
  CHECK(e2.exit_code == 0);
  CHECK(contains(e2.out, "E^2 page"));
  CHECK(contains(e2.out, "q=1   | Z + Z/2 + Z/4"));
  CHECK(contains(e2.out, "K_0: 0 -> Z^3 -> K_0 -> 0 -> 0"));
}

TEST_CASE("instance skeletons validate") {
  for (const char* family : {"sl", "pgl", "gl"}) {
    for (const char* n : {"2", "3", "5"}) {
      CAPTURE(family);
      CAPTURE(n);
      const CommandResult r = run({"instance", family, "--n", n, "--rank", "2"});
      REQUIRE(r.exit_code == 0);
      const auto path = temp_file(std::string(family) + n + ".json");
      std::ofstream(path) << r.out;
      const CommandResult v = run({"-q", "validate", path.string()});
      CHECK(v.exit_code == 0);
      const CommandResult k = run({"-q", "k0", path.string()});
      CHECK(k.exit_code == 0);
      CHECK(value_of(k.out, "K_0") == "Z^2");
      std::filesystem::remove(path);
    }
  }
  const hk::InstanceDocument gl = hk::parse_document(run({"instance", "gl", "--n", "4", "--rank", "1"}).out);
  CHECK(std::get<hk::CentralExtSpec>(gl.structure).m == 4);
  CHECK(run({"instance", "so", "--n", "3", "--rank", "1"}).exit_code == hk::exit_code::kValidation);
  CHECK(run({"instance", "pgl", "--n", "1", "--rank", "1"}).exit_code == hk::exit_code::kValidation);
}

TEST_CASE("usage errors, --output, --quiet and determinism") {
  CHECK(run({}).exit_code == hk::exit_code::kValidation);
  CHECK(run({"frobnicate"}).exit_code == hk::exit_code::kValidation);
  CHECK(run({"homology", "--all", "-n", "0", data("sl2.json")}).exit_code == hk::exit_code::kValidation);
  CHECK(run({"homology", data("sl2.json")}).out == run({"homology", "--all", data("sl2.json")}).out);
  CHECK(run({"--help"}).exit_code == 0);

  const auto path = temp_file("out.txt");
  const CommandResult r = run({"-o", path.string(), "colimit", data("constant_functor.json")});
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(contains(ss.str(), "colim = Z + Z/3"));
  std::filesystem::remove(path);

  const CommandResult bad_out = run({"-o", "/nonexistent/dir/x.txt", "colimit", data("constant_functor.json")});
  CHECK(bad_out.exit_code == hk::exit_code::kIo);

  const CommandResult loud = run({"validate", data("sl2.json")});
  const CommandResult quiet = run({"--quiet", "validate", data("sl2.json")});
  CHECK(contains(loud.out, "assumed"));
  CHECK_FALSE(contains(quiet.out, "assumed"));

  for (const char* cmd : {"k0", "homology", "e2", "mv"}) {
    const std::string file = std::string(cmd) == "mv" ? "mv_sl2_square.json" : "sl2.json";
    std::vector<std::string> args{cmd, data(file)};
    if (std::string(cmd) == "homology") args.insert(args.begin() + 1, "--all");
    const CommandResult a = run(args), b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
  }
}
