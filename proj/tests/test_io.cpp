#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <mapscat/io.hpp>

using namespace mapscat;
using nlohmann::json;

namespace {

const std::string kData = MAPSCAT_DATA_DIR;
const std::string kCli = MAPSCAT_CLI;

struct CliRun {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CliRun run_cli(const std::string& args) {
  static int counter = 0;
  auto dir = std::filesystem::temp_directory_path();
  auto stem = "mapscat_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter++);
  auto out = dir / (stem + ".out"), err = dir / (stem + ".err");
  std::string cmd = "'" + kCli + "' " + args + " > '" + out.string() + "' 2> '" + err.string() + "'";
  int status = std::system(cmd.c_str());
  CliRun r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  std::filesystem::remove(out);
  std::filesystem::remove(err);
  return r;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / ("mapscat_io_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << text;
  return p;
}

void expect_parse_error(const std::string& text, std::size_t line, std::size_t column, const std::string& fragment) {
  try {
    parse_algebra_text(text);
    ADD_FAILURE() << "no error for:\n" << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), column) << e.what();
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(Parser, LoadsTheBundledAlgebras) {
  AlgebraFile a2 = load_algebra_file(kData + "/a2.alg");
  EXPECT_EQ(a2.algebra->dimension(), 3u);
  EXPECT_EQ(a2.algebra->field().p(), 101u);
  ASSERT_NE(a2.find_module("P1"), nullptr);
  EXPECT_EQ(a2.find_module("P1")->dims(), (std::vector<std::size_t>{1, 1}));
  ASSERT_NE(a2.find_map("f"), nullptr);
  EXPECT_TRUE(a2.find_map("f")->f.is_mono());
  EXPECT_TRUE(a2.find_map("zeroS1")->f.is_zero());
  EXPECT_EQ(a2.find_map("nope"), nullptr);

  AlgebraFile rel = load_algebra_file(kData + "/a3_rel.alg");
  EXPECT_EQ(rel.algebra->dimension(), 5u);
  EXPECT_EQ(load_algebra_file(kData + "/a3_linear.alg").algebra->dimension(), 6u);
  EXPECT_EQ(load_algebra_file(kData + "/a3_alt.alg").algebra->dimension(), 5u);
}

TEST(Parser, PrimeOverride) {
  AlgebraFile a2 = load_algebra_file(kData + "/a2.alg", Scalar{5});
  EXPECT_EQ(a2.algebra->field().p(), 5u);
}

TEST(Parser, RelationsAreWrittenInCompositionOrder) {
  // beta.alpha is alpha followed by beta; writing alpha.beta is not a path for 1 -> 2 -> 3
  std::string head = "vertices 3\narrow alpha: 1 -> 2\narrow beta: 2 -> 3\n";
  EXPECT_EQ(parse_algebra_text(head + "relation beta.alpha = 0\n").algebra->dimension(), 5u);
  EXPECT_THROW(parse_algebra_text(head + "relation alpha.beta = 0\n"), ParseError);
}

TEST(Parser, ErrorsCarryLineAndColumn) {
  expect_parse_error("vertices 2\narrow a: 1 -> 3\n", 2, 14, "vertex out of range");
  expect_parse_error("field p=4\n", 1, 9, "prime");
  expect_parse_error("vertices 1\narrow l: 1 -> 1\nmodule X dims=[1]\n", 3, 1, "admissible ideal");
  expect_parse_error("vertices 2\narrow a: 1 -> 2\nmodule X dims=[1,1] a=[[1,2]]\n", 3, 23, "");
  expect_parse_error("vertices 2\nfrobnicate\n", 2, 1, "");
}

TEST(Parser, RejectsModulesViolatingRelations) {
  std::string text =
      "vertices 3\narrow alpha: 1 -> 2\narrow beta: 2 -> 3\nrelation beta.alpha = 0\n"
      "module M dims=[1,1,1] alpha=[[1]] beta=[[1]]\n";
  EXPECT_THROW(parse_algebra_text(text), ParseError);
}

TEST(Serialize, MatricesUseSignedRepresentatives) {
  Field f(101);
  json j = matrix_json(Mat::from_rows({{1, -1}, {0, 100}}, f));
  EXPECT_EQ(j, json::parse("[[1,-1],[0,-1]]"));
}

TEST(Cli, GoldenArQuivers) {
  for (const std::string side : {"lambda", "gamma", "functors"}) {
    CliRun r = run_cli("ar-quiver '" + kData + "/a2.alg' --side " + side);
    ASSERT_EQ(r.exit_code, 0) << r.err;
    json got = json::parse(r.out);
    EXPECT_EQ(got["command"], "ar-quiver");
    EXPECT_FALSE(got.contains("timing_seconds"));
    json golden = json::parse(slurp(kData + "/golden/a2_" + side + ".json"));
    EXPECT_EQ(got["results"], golden) << side;
  }
}

TEST(Cli, GammaQuiverOfTheExampleHasElevenVerticesAndFourProjectives) {
  json golden = json::parse(slurp(kData + "/golden/a2_gamma.json"));
  EXPECT_EQ(golden["vertex_count"], 11);
  EXPECT_EQ(golden["projective_count"], 4);
  EXPECT_EQ(golden["verified_sequences"], 7);
}

TEST(Cli, VerifyExamplePassesAtTwoPrimes) {
  CliRun r = run_cli("verify-example");
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out)["results"]["passed"].get<bool>());
  CliRun small = run_cli("verify-example --prime 5 --timing");
  EXPECT_EQ(small.exit_code, 0) << small.err;
  EXPECT_TRUE(json::parse(small.out).contains("timing_seconds"));
}

TEST(Cli, TiltingVerdictsAndExitCodes) {
  CliRun yes = run_cli("check-tilting '" + kData + "/a2.alg' --preset f-projectives");
  EXPECT_EQ(yes.exit_code, 0);
  json j = json::parse(yes.out);
  EXPECT_TRUE(j["results"]["agree"].get<bool>());
  CliRun no = run_cli("check-tilting '" + kData + "/a2.alg' --preset gamma-projectives");
  EXPECT_EQ(no.exit_code, 1);
  EXPECT_TRUE(json::parse(no.out)["results"]["agree"].get<bool>());
}

TEST(Cli, ApproximationWithTransport) {
  CliRun r = run_cli("approx '" + kData + "/a2.alg' --object g --corpus epimaps --transport");
  EXPECT_EQ(r.exit_code, 0) << r.err;
  CliRun named = run_cli("approx '" + kData + "/a2.alg' --object g --corpus f,idP1 --side left");
  EXPECT_EQ(named.exit_code, 0) << named.err;
  CliRun unknown = run_cli("approx '" + kData + "/a2.alg' --object nothing");
  EXPECT_EQ(unknown.exit_code, 2);
}

TEST(Cli, InputErrorsAndBounds) {
  auto bad = write_temp("bad.alg", "vertices 2\narrow a: 1 -> 3\n");
  CliRun r = run_cli("ar-quiver '" + bad.string() + "'");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("line 2, column 14"), std::string::npos) << r.err;
  std::filesystem::remove(bad);
  EXPECT_EQ(run_cli("ar-quiver '" + kData + "/missing.alg'").exit_code, 2);
  EXPECT_EQ(run_cli("ar-quiver '" + kData + "/a3_linear.alg' --dim-bound 2").exit_code, 3);
  EXPECT_EQ(run_cli("no-such-command").exit_code, 2);
}

TEST(Cli, JsonAndDotOutputFiles) {
  auto json_path = std::filesystem::temp_directory_path() / ("mapscat_io_" + std::to_string(::getpid()) + ".json");
  auto dot_path = std::filesystem::temp_directory_path() / ("mapscat_io_" + std::to_string(::getpid()) + ".dot");
  CliRun r = run_cli("ar-quiver '" + kData + "/a3_alt.alg' --side lambda --seed 3 --json '" + json_path.string() +
                     "' --dot '" + dot_path.string() + "'");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  json j = json::parse(slurp(json_path));
  EXPECT_EQ(j["seed"], 3);
  EXPECT_EQ(j["results"]["vertex_count"], 6);
  std::string dot = slurp(dot_path);
  EXPECT_EQ(dot.rfind("digraph ar_quiver {", 0), 0u);
  std::filesystem::remove(json_path);
  std::filesystem::remove(dot_path);
}
