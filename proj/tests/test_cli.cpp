#include "doctest_main.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fordsph/cli.hpp"

using namespace fordsph;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(const RunConfig& c) {
  std::ostringstream out, err;
  const int code = run(c, out, err);
  return {code, out.str(), err.str()};
}

RunConfig make(Command cmd, std::map<std::string, std::string> params = {}) {
  RunConfig c;
  c.command = cmd;
  c.parameters = std::move(params);
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "fordsph_cli_test";
  fs::create_directories(dir);
  return dir;
}

int error_code_of(const std::string& err) { return nlohmann::json::parse(err).at("error").at("exit_code").get<int>(); }

}  // namespace

TEST_CASE("enumerate prints one fraction per line") {
  const Result r = invoke(make(Command::enumerate, {{"S", "2"}}));
  CHECK(r.code == kExitOk);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 9);
  CHECK(r.out.find("0+1i/1+1i\n") != std::string::npos);
  const Result m = invoke(make(Command::enumerate, {{"S", "5"}, {"via", "mediants"}}));
  CHECK(m.out == invoke(make(Command::enumerate, {{"S", "5"}})).out);
}

TEST_CASE("constants prints JSON with C") {
  const Result r = invoke(make(Command::constants));
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::fabs(j.at("C").get<double>() - 0.68644) < 1e-4);
  CHECK(j.at("z2_estimate").is_null());
  CHECK(j.at("main_coeff").get<double>() == doctest::Approx(9.365).epsilon(1e-3));
}

TEST_CASE("area prints the four quantities") {
  const Result r = invoke(make(Command::area, {{"s", "-1+i"}, {"S", "4"}}));
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("s") == "1+1i");
  CHECK(j.at("lattice_count_coprime").get<std::int64_t>() <= j.at("lattice_count").get<std::int64_t>());
  CHECK(j.at("prediction").get<double>() == doctest::Approx(0.5 * j.at("area_closed_form").get<double>()));
}

TEST_CASE("distinct exit codes with a JSON error record") {
  Result r = invoke(make(Command::area, {{"s", "1+x"}, {"S", "4"}}));
  CHECK(r.code == kExitInvalidLiteral);
  CHECK(error_code_of(r.err) == kExitInvalidLiteral);

  r = invoke(make(Command::moment, {{"S", "13"}, {"method", "direct"}}));
  CHECK(r.code == kExitCapExceeded);
  CHECK(error_code_of(r.err) == kExitCapExceeded);

  r = invoke(make(Command::moment, {{"S", "4"}, {"method", "fast"}}));
  CHECK(r.code == kExitUsage);

  r = invoke(make(Command::moment, {{"S", "x"}}));
  CHECK(r.code == kExitUsage);

  r = invoke(make(Command::area, {{"s", "5"}, {"S", "2"}}));
  CHECK(r.code == kExitUsage);

  RunConfig bad = make(Command::constants);
  bad.output_path = "/nonexistent-dir/out.csv";
  r = invoke(bad);
  CHECK(r.code == kExitUnwritable);
  CHECK(error_code_of(r.err) == kExitUnwritable);

  r = invoke(make(Command::verify, {{"suite", "nope"}}));
  CHECK(r.code == kExitUsage);
}

TEST_CASE("a failed run leaves no artifact behind") {
  RunConfig c = make(Command::moment, {{"S", "13"}, {"method", "direct"}});
  c.output_path = (scratch_dir() / "refused.csv").string();
  fs::remove(*c.output_path);
  CHECK(invoke(c).code == kExitCapExceeded);
  CHECK_FALSE(fs::exists(*c.output_path));
}

TEST_CASE("environment overrides the method caps") {
  ::setenv("FORDSPH_DIRECT_CAP", "3", 1);
  CHECK(invoke(make(Command::moment, {{"S", "4"}, {"method", "direct"}})).code == kExitCapExceeded);
  ::setenv("FORDSPH_DIRECT_CAP", "junk", 1);
  CHECK(invoke(make(Command::moment, {{"S", "2"}, {"method", "direct"}})).code == kExitUsage);
  ::unsetenv("FORDSPH_DIRECT_CAP");
  ::setenv("FORDSPH_COUNTING_CAP", "8", 1);
  CHECK(invoke(make(Command::moment, {{"S", "9"}, {"method", "counting"}})).code == kExitCapExceeded);
  ::unsetenv("FORDSPH_COUNTING_CAP");
  CHECK(direct_cap_from_env() == kDefaultDirectCap);
}

TEST_CASE("moment artifacts round-trip and match the in-memory sweep") {
  SweepOptions opt;
  auto expected = report_sweep({2, 6}, {Method::direct, Method::counting, Method::main_term}, opt);
  for (auto& row : expected) row.report.elapsed_s = 0.0;
  for (OutputFormat format : {OutputFormat::csv, OutputFormat::json}) {
    RunConfig c = make(Command::moment, {{"S", "2,6"}, {"method", "direct,counting,main-term"}});
    c.output_format = format;
    c.output_path = (scratch_dir() / (format == OutputFormat::csv ? "m.csv" : "m.json")).string();
    REQUIRE(invoke(c).code == kExitOk);
    const std::string text = slurp(*c.output_path);
    const MomentArtifact a = parse_moment_artifact(text);
    REQUIRE(a.rows.size() == expected.size());
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
      CHECK(a.rows[k].report == expected[k].report);
      CHECK(a.rows[k].error == expected[k].error);
    }
    CHECK(a.metadata.at("tool") == std::string("fordsph ") + kToolVersion);
    CHECK(a.metadata.at("seed") == c.seed);
    CHECK(config_from_json(a.metadata.at("config")) == c);
    CHECK(a.metadata.at("constants").at("C").get<double>() == doctest::Approx(0.68644).epsilon(1e-4));
    CHECK(a.metadata.contains("calibration"));
    CHECK(write_moment_artifact(a, format) == text);
  }
}

TEST_CASE("identical configs give identical bytes for any thread count") {
  RunConfig c = make(Command::moment, {{"S", "3,7,11"}, {"method", "direct,counting"}, {"normalization", "omega-quarter"}});
  c.output_path = (scratch_dir() / "threads.csv").string();
  c.threads = 1;
  REQUIRE(invoke(c).code == kExitOk);
  const std::string one = slurp(*c.output_path);
  c.threads = 4;
  REQUIRE(invoke(c).code == kExitOk);
  CHECK(slurp(*c.output_path) == one);
  c.output_format = OutputFormat::json;
  c.threads = 1;
  REQUIRE(invoke(c).code == kExitOk);
  const std::string json_one = slurp(*c.output_path);
  c.threads = 3;
  REQUIRE(invoke(c).code == kExitOk);
  CHECK(slurp(*c.output_path) == json_one);
}

TEST_CASE("other artifacts carry the metadata header") {
  for (Command cmd : {Command::enumerate, Command::constants, Command::area}) {
    RunConfig c = make(cmd, {{"S", "3"}, {"s", "2+i"}});
    c.output_path = (scratch_dir() / "other.csv").string();
    REQUIRE(invoke(c).code == kExitOk);
    const std::string text = slurp(*c.output_path);
    CHECK(text.rfind("# ", 0) == 0);
    CHECK(text.find("# tool: \"fordsph ") != std::string::npos);
    c.output_format = OutputFormat::json;
    REQUIRE(invoke(c).code == kExitOk);
    const auto j = nlohmann::json::parse(slurp(*c.output_path));
    CHECK(j.at("metadata").at("command") == to_string(cmd));
    CHECK(j.contains("data"));
  }
}

TEST_CASE("verify suites pass on a clean build") {
  for (const char* suite : {"arith", "farey"}) {
    const Result r = invoke(make(Command::verify, {{"suite", suite}}));
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }
  const Result all = invoke(make(Command::verify, {{"suite", "all"}}));
  CHECK(all.code == kExitOk);
  CHECK(all.out.find("farey/mediant-closure") != std::string::npos);
  CHECK(all.out.find("moment/calibration") != std::string::npos);
}

TEST_CASE("config JSON round-trip") {
  RunConfig c = make(Command::report, {{"S", "1,2"}, {"epsilon", "0.2"}});
  c.seed = 99;
  c.output_format = OutputFormat::json;
  c.output_path = "x.json";
  CHECK(config_from_json(config_to_json(c)) == c);
}
