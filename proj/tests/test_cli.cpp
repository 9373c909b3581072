#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ordergrowth/cli.hpp"

namespace {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = og::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string quadrant_model() { return std::string("cone:") + OG_DATA_DIR + "/quadrant.txt"; }

}  // namespace

TEST_CASE("gamma on the integers emits the exact doubling table") {
  const auto r = run_cli({"gamma", "--model", "int", "--g", "16", "--h", "24", "--n", "16"});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK(r.out ==
        "n,gamma,quotient,lower,upper\n"
        "1,2,2,1.5,2\n"
        "2,3,1.5,1.5,1.5\n"
        "4,6,1.5,1.5,1.5\n"
        "8,12,1.5,1.5,1.5\n"
        "16,24,1.5,1.5,1.5\n");
}

TEST_CASE("gamma output is byte-identical across reruns") {
  const std::vector<std::string> args{"gamma", "--model", "int", "--g", "2", "--h", "3", "--n", "64"};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("gamma over a cone file reports the closed-form rate in every row") {
  const auto r = run_cli({"gamma", "--model", quadrant_model(), "--g", "1,1", "--h", "3,3",
                          "--n", "16"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "n,gamma,quotient,lower,upper");
  int rows = 0;
  while (std::getline(lines, line)) {
    CAPTURE(line);
    const size_t a = line.find(','), b = line.find(',', a + 1), c = line.find(',', b + 1);
    CHECK(line.substr(b + 1, c - b - 1) == "3");  // quotient column
    ++rows;
  }
  CHECK(rows == 5);
}

TEST_CASE("gamma on the lifted model converges to the mu ratio") {
  const auto r = run_cli({"gamma", "--model", "sl2", "--g", "deck:1", "--h",
                          "expJ:6.283185307179586", "--n", "256"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\n256,128,0.5,") != std::string::npos);
}

TEST_CASE("distance reproduces log 3 between 1 and 3") {
  const auto r = run_cli({"distance", "--model", "int", "--g", "1", "--h", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("value,lower,upper,n_max,certified\n") == 0);
  CHECK(r.out.find("1.09861229,1.09861229,1.09861229,512,true") != std::string::npos);
}

TEST_CASE("convergence shows quotients inside the certified envelope") {
  const auto r = run_cli({"convergence", "--model", "int", "--g", "2", "--h", "3", "--n", "64"});
  CHECK(r.code == 0);
  CHECK(r.out.find("n,quotient,lower,upper\n") == 0);
  CHECK(r.out.find("64,1.5,1.5,1.5234375") != std::string::npos);
}

TEST_CASE("convergence on a cone model is a domain error") {
  const auto r = run_cli({"convergence", "--model", quadrant_model(), "--g", "1,1", "--h", "2,2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("certificate") != std::string::npos);
}

TEST_CASE("mu prints the exact rational value and the datum reports") {
  const auto r = run_cli({"mu", "--family", "sp", "--rank", "2", "--x", "1,0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("field,value\n") == 0);
  CHECK(r.out.find("\nmu,1\n") != std::string::npos);
  CHECK(r.out.find("datum_ok,true") != std::string::npos);
  CHECK(r.out.find("weyl_order,2") != std::string::npos);
  CHECK(r.out.find("fixed_dim,1") != std::string::npos);
  CHECK(r.out.find("mu_invariant,true") != std::string::npos);
  CHECK(r.out.find("j_in_minimal_cone,true") != std::string::npos);

  const auto frac = run_cli({"mu", "--family", "su", "--p", "2", "--q", "1", "--x", "1,0,-1"});
  CHECK(frac.code == 0);
  CHECK(frac.out.find("\nmu,3/2\n") != std::string::npos);  // (2 + 1) / 2 cross roots

  const auto bad = run_cli({"mu", "--family", "sl", "--rank", "2"});
  CHECK(bad.code == 2);
}

TEST_CASE("sandwich reports a clean verdict on the integers") {
  const auto r = run_cli({"sandwich", "--model", "int", "--trials", "200"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "trials,uncertain,counterexamples,verdict\n"
        "200,0,0,no counterexamples\n");
}

TEST_CASE("sandwich with a broken threshold finds counterexamples but still exits 0") {
  // C1 = -500 wrongly promises every n >= -500 is positive; a quarter of the
  // sampled range violates that, so 200 trials cannot miss.
  const auto r = run_cli({"sandwich", "--model", "int", "--c1", "-500", "--trials", "200"});
  CHECK(r.code == 0);
  CHECK(r.out.find("counterexamples found") != std::string::npos);
}

TEST_CASE("json format carries typed cells") {
  const auto r = run_cli({"gamma", "--model", "int", "--g", "16", "--h", "24", "--n", "16",
                          "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"command\": \"gamma\"") != std::string::npos);
  CHECK(r.out.find("\"columns\": [\"n\", \"gamma\", \"quotient\", \"lower\", \"upper\"]") !=
        std::string::npos);
  CHECK(r.out.find("[16, 24, 1.5, 1.5, 1.5]") != std::string::npos);

  const auto sand = run_cli({"sandwich", "--model", "int", "--trials", "50", "--format", "json"});
  CHECK(sand.code == 0);
  CHECK(sand.out.find("\"no counterexamples\"") != std::string::npos);  // text cell is quoted
}

TEST_CASE("--out writes the same bytes to a file, honoring ORDERGROWTH_OUT_DIR") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ordergrowth_cli_test";
  fs::create_directories(dir);

  const std::vector<std::string> base{"gamma", "--model", "int", "--g", "16", "--h", "24",
                                      "--n", "16"};
  const auto direct = run_cli(base);

  setenv("ORDERGROWTH_OUT_DIR", dir.c_str(), 1);
  auto with_out = base;
  with_out.push_back("--out");
  with_out.push_back("table.csv");
  const auto r = run_cli(with_out);
  unsetenv("ORDERGROWTH_OUT_DIR");
  CHECK(r.code == 0);
  CHECK(r.out.empty());  // everything went to the file

  std::ifstream f(dir / "table.csv", std::ios::binary);
  REQUIRE(f.good());
  std::stringstream content;
  content << f.rdbuf();
  CHECK(content.str() == direct.out);

  // absolute paths bypass the environment entirely
  const fs::path abs = dir / "abs.csv";
  auto with_abs = base;
  with_abs.push_back("--out");
  with_abs.push_back(abs.string());
  CHECK(run_cli(with_abs).code == 0);
  CHECK(fs::exists(abs));
  fs::remove_all(dir);
}

TEST_CASE("exit codes separate usage errors from exhausted budgets") {
  CHECK(run_cli({"gamma", "--model", "int", "--g", "0", "--h", "1"}).code == 3);   // budget
  CHECK(run_cli({"gamma", "--model", "int", "--g", "-1", "--h", "1"}).code == 2);  // domain
  CHECK(run_cli({"gamma", "--model", "nope", "--g", "1", "--h", "1"}).code == 2);
  CHECK(run_cli({"gamma", "--model", "cone:/nonexistent.txt", "--g", "1", "--h", "1"}).code == 2);
  CHECK(run_cli({"gamma", "--model", "int", "--g", "x", "--h", "1"}).code == 2);
  CHECK(run_cli({"gamma", "--model", "int", "--g", "1"}).code == 2);  // missing --h
  CHECK(run_cli({"gamma", "--model", "int", "--g", "1", "--h", "1", "--format", "xml"}).code == 2);
  CHECK(run_cli({}).code == 2);  // a subcommand is required
  CHECK(run_cli({"frobnicate"}).code == 2);

  const auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("gamma") != std::string::npos);
}
