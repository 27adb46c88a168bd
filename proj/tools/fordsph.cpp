// fordsph: Ford-sphere first-moment toolkit.
//
//   fordsph enumerate --S 2
//   fordsph constants [--z2]
//   fordsph area --s 1+i --S 4
//   fordsph moment --S 32,64,128 --method counting --normalization omega-full --out csv --output m.csv
//   fordsph verify --suite all
//   fordsph report --output report.json --out json

#include <iostream>

#include "CLI11.hpp"
#include "fordsph/cli.hpp"

namespace {

struct Common {
  std::uint64_t seed = 20240611;
  unsigned threads = 1;
  std::string out = "csv";
  std::string output;
  bool timing = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Seed for Monte Carlo and randomized checks");
  sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out, "Artifact format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output", c.output, "Artifact path (no artifact when omitted)");
  sub->add_flag("--timing", c.timing, "Keep measured elapsed seconds in the artifact");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ford-sphere first moments over the Gaussian integers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fordsph::kToolVersion));

  Common common;
  std::map<std::string, std::string> params;
  auto param = [&](CLI::App* sub, const std::string& name, const std::string& help) {
    sub->add_option_function<std::string>("--" + name, [&params, name](const std::string& v) { params[name] = v; }, help);
  };
  auto list_param = [&](CLI::App* sub, const std::string& name, const std::string& help) {
    sub->add_option_function<std::vector<std::string>>(
           "--" + name,
           [&params, name](const std::vector<std::string>& v) {
             std::string joined;
             for (const auto& x : v) joined += (joined.empty() ? "" : ",") + x;
             params[name] = joined;
           },
           help)
        ->delimiter(',');
  };

  auto* enumerate = app.add_subcommand("enumerate", "List G_S, one fraction r/s per line");
  param(enumerate, "S", "Denominator bound");
  enumerate->add_option_function<std::string>("--via", [&](const std::string& v) { params["via"] = v; },
                                              "scan or mediants")
      ->check(CLI::IsMember({"scan", "mediants"}));

  auto* constants = app.add_subcommand("constants", "Print C, zeta_i(2), the main coefficient and z1");
  constants->add_flag_callback("--z2", [&] { params["z2"] = "true"; }, "Also fit the z2 estimate");

  auto* area = app.add_subcommand("area", "Area and lattice counts of the partner region");
  param(area, "s", "Gaussian integer, e.g. 1+i");
  param(area, "S", "Radius bound");

  auto* moment = app.add_subcommand("moment", "First moment by direct enumeration, counting or main term");
  list_param(moment, "S", "One or more values of S");
  list_param(moment, "method", "direct, counting, main-term");
  param(moment, "normalization", "omega-full or omega-quarter");
  param(moment, "epsilon", "Exponent for the B growth diagnostic");

  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  param(verify, "suite", "arith, farey, region, moment or all");

  auto* report = app.add_subcommand("report", "Full sweep with constants, calibration and supporting sums");
  list_param(report, "S", "Ladder of S values");
  param(report, "normalization", "omega-full or omega-quarter");
  param(report, "epsilon", "Exponent for the B growth diagnostic");

  for (CLI::App* sub : {enumerate, constants, area, moment, verify, report}) add_common(sub, common);
  moment->get_option("--S")->required();
  enumerate->get_option("--S")->required();
  area->get_option("--s")->required();
  area->get_option("--S")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    nlohmann::json j;
    j["error"] = {{"exit_code", fordsph::kExitUsage}, {"kind", "usage"}, {"message", e.what()}};
    std::cerr << j.dump() << "\n";
    return fordsph::kExitUsage;
  }

  fordsph::RunConfig config;
  config.command = fordsph::parse_command(app.get_subcommands().front()->get_name());
  config.parameters = params;
  config.seed = common.seed;
  config.threads = common.threads;
  config.output_format = fordsph::parse_output_format(common.out);
  if (!common.output.empty()) config.output_path = common.output;
  config.timing = common.timing;
  return fordsph::run(config, std::cout, std::cerr);
}
