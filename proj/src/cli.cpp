#include "fordsph/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "fordsph/arith.hpp"
#include "fordsph/errors.hpp"
#include "fordsph/farey.hpp"
#include "fordsph/region.hpp"
#include "fordsph/verify.hpp"

namespace fordsph {

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LiteralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WriteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvariantFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::int64_t to_int(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError("--" + key + " expects an integer, got '" + text + "'");
  return v;
}

double to_real(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError("--" + key + " expects a number, got '" + text + "'");
  return v;
}

const std::string* find_param(const RunConfig& c, const std::string& key) {
  auto it = c.parameters.find(key);
  return it == c.parameters.end() ? nullptr : &it->second;
}

std::string param_or(const RunConfig& c, const std::string& key, const std::string& fallback) {
  const std::string* v = find_param(c, key);
  return v ? *v : fallback;
}

std::string require_param(const RunConfig& c, const std::string& key) {
  const std::string* v = find_param(c, key);
  if (!v) throw UsageError(to_string(c.command) + " requires --" + key);
  return *v;
}

std::int64_t positive_S(const std::string& text) {
  const std::int64_t S = to_int("S", text);
  if (S < 1) throw UsageError("--S must be positive, got " + text);
  return S;
}

std::int64_t cap_from_env(const char* name, std::int64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  const std::int64_t cap = to_int(name, v);
  if (cap < 1) throw UsageError(std::string(name) + " must be positive");
  return cap;
}

json constants_json(bool with_z2) {
  const ConstantsBundle& k = constants();
  json j;
  j["C"] = k.C;
  j["C_by_parts"] = constant_C_by_parts();
  j["zeta_i_2"] = k.zeta_i_2;
  j["zeta_i_inv_2"] = k.zeta_i_inv_2;
  j["main_coeff"] = k.main_coeff;
  j["z1"] = k.z1;
  j["z2_estimate"] = nullptr;
  if (with_z2) j["z2_estimate"] = fit_phi_over_norm4({64, 128, 256, 512, 1024, 2048}).z2_estimate;
  j["zeta_radius"] = k.zeta_radius;
  j["zeta_tail_bound"] = k.zeta_tail_bound;
  j["boundary_surrogate_factor"] = kBoundarySurrogateFactor;
  return j;
}

json base_metadata(const RunConfig& config) {
  json m;
  m["tool"] = std::string("fordsph ") + kToolVersion;
  m["command"] = to_string(config.command);
  m["config"] = config_to_json(config);
  m["constants"] = constants_json(false);
  m["seed"] = config.seed;
  return m;
}

void write_file(const RunConfig& config, const std::string& content) {
  if (!config.output_path) return;
  std::ofstream f(*config.output_path, std::ios::binary | std::ios::trunc);
  if (!f) throw WriteError("cannot open '" + *config.output_path + "' for writing");
  f << content;
  f.flush();
  if (!f) throw WriteError("failed while writing '" + *config.output_path + "'");
}

std::string csv_metadata(const json& metadata) {
  std::string out;
  for (const auto& [key, value] : metadata.items()) out += "# " + key + ": " + value.dump() + "\n";
  return out;
}

json wrap(const json& metadata, const json& data) {
  json j;
  j["metadata"] = metadata;
  j["data"] = data;
  return j;
}

// ------------------------------------------------------------ commands

int run_enumerate(const RunConfig& config, std::ostream& out) {
  const std::int64_t S = positive_S(require_param(config, "S"));
  const std::string via = param_or(config, "via", "scan");
  if (S > 64) throw CapExceeded("enumerate: S = " + std::to_string(S) + " exceeds the listing cap 64");
  std::vector<GFraction> g;
  if (via == "scan")
    g = enumerate_gs(S);
  else if (via == "mediants")
    g = generate_gs_by_mediants(S);
  else
    throw UsageError("--via expects scan or mediants, got '" + via + "'");
  for (const GFraction& f : g) out << to_string(f) << "\n";
  if (!config.output_path) return kExitOk;
  json meta = base_metadata(config);
  meta["count"] = g.size();
  if (config.output_format == OutputFormat::csv) {
    std::string text = csv_metadata(meta) + "r,s\n";
    for (const GFraction& f : g) text += to_string(f.r) + "," + to_string(f.s.value()) + "\n";
    write_file(config, text);
  } else {
    json data = json::array();
    for (const GFraction& f : g) data.push_back({{"r", to_string(f.r)}, {"s", to_string(f.s.value())}});
    write_file(config, wrap(meta, data).dump(2) + "\n");
  }
  return kExitOk;
}

int run_constants(const RunConfig& config, std::ostream& out) {
  const json c = constants_json(param_or(config, "z2", "false") == "true");
  out << c.dump(2) << "\n";
  if (!config.output_path) return kExitOk;
  json meta = base_metadata(config);
  if (config.output_format == OutputFormat::csv) {
    std::string text = csv_metadata(meta) + "name,value\n";
    for (const auto& [key, value] : c.items()) text += key + "," + (value.is_null() ? "" : num(value.get<double>())) + "\n";
    write_file(config, text);
  } else {
    write_file(config, wrap(meta, c).dump(2) + "\n");
  }
  return kExitOk;
}

int run_area(const RunConfig& config, std::ostream& out) {
  const std::string literal = require_param(config, "s");
  GInt s;
  try {
    s = parse_gint(literal);
  } catch (const InputError& e) {
    throw LiteralError(e.what());
  }
  if (s.is_zero()) throw LiteralError("--s must be a nonzero Gaussian integer");
  const std::int64_t S = positive_S(require_param(config, "S"));
  const OmegaSpec spec = OmegaSpec::make(canonicalize(s).canonical, S);
  json r;
  r["s"] = to_string(spec.s.value());
  r["S"] = S;
  r["area_closed_form"] = omega_area(spec);
  r["lattice_count"] = omega_lattice_count(spec, false);
  r["lattice_count_coprime"] = omega_lattice_count(spec, true);
  r["prediction"] = coprime_count_prediction(spec);
  out << r.dump(2) << "\n";
  if (!config.output_path) return kExitOk;
  const json meta = base_metadata(config);
  if (config.output_format == OutputFormat::csv) {
    std::string text = csv_metadata(meta) + "s,S,area_closed_form,lattice_count,lattice_count_coprime,prediction\n";
    text += r["s"].get<std::string>() + "," + std::to_string(S) + "," + num(r["area_closed_form"].get<double>()) + "," +
            std::to_string(r["lattice_count"].get<std::int64_t>()) + "," +
            std::to_string(r["lattice_count_coprime"].get<std::int64_t>()) + "," + num(r["prediction"].get<double>()) + "\n";
    write_file(config, text);
  } else {
    write_file(config, wrap(meta, r).dump(2) + "\n");
  }
  return kExitOk;
}

void print_rows(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << std::left << std::setw(6) << "S" << std::setw(11) << "method" << std::setw(15) << "normalization"
      << std::right << std::setw(16) << "value" << std::setw(16) << "main_term" << std::setw(16) << "residual"
      << std::setw(12) << "value/S^2" << std::setw(12) << "calib" << std::setw(10) << "time_s" << "\n";
  for (const SweepRow& row : rows) {
    const MomentReport& r = row.report;
    out << std::left << std::setw(6) << r.S << std::setw(11) << to_string(r.method) << std::setw(15)
        << to_string(r.normalization) << std::right;
    if (!row.error.empty()) {
      out << "  error: " << row.error << "\n";
      continue;
    }
    const double s2 = static_cast<double>(r.S) * static_cast<double>(r.S);
    out << std::fixed << std::setprecision(6) << std::setw(16) << r.value << std::setw(16) << r.main_term
        << std::setw(16) << r.residual << std::setw(12) << (s2 > 0 ? r.value / s2 : 0.0) << std::setw(12);
    if (r.calibration)
      out << *r.calibration;
    else
      out << "-";
    out << std::setprecision(3) << std::setw(10) << r.elapsed_s << "\n";
    out << std::defaultfloat;
  }
}

json calibration_json(const Calibration& c) {
  json j;
  j["normalization"] = to_string(c.normalization);
  j["constant"] = c.constant;
  j["max_rel_deviation"] = c.max_rel_deviation;
  json rows = json::array();
  for (const CalibrationRow& r : c.rows)
    rows.push_back({{"S", r.S}, {"direct", r.direct}, {"counting", r.counting}, {"ratio", r.ratio}});
  j["rows"] = rows;
  return j;
}

struct SweepSetup {
  std::vector<std::int64_t> S_values;
  Normalization normalization = Normalization::omega_full;
  double epsilon = 0.1;
  SweepOptions options;
};

SweepSetup sweep_setup(const RunConfig& config, const std::string& default_S) {
  SweepSetup s;
  for (const std::string& item : split_list(param_or(config, "S", default_S))) s.S_values.push_back(positive_S(item));
  if (s.S_values.empty()) throw UsageError("--S needs at least one value");
  try {
    s.normalization = parse_normalization(param_or(config, "normalization", "omega-full"));
  } catch (const InputError& e) {
    throw UsageError(e.what());
  }
  if (s.normalization == Normalization::none) throw UsageError("--normalization expects omega-full or omega-quarter");
  s.epsilon = to_real("epsilon", param_or(config, "epsilon", "0.1"));
  if (!(s.epsilon > 0.0 && s.epsilon < 1.0)) throw UsageError("--epsilon must lie in (0, 1)");
  s.options.normalization = s.normalization;
  s.options.threads = config.threads;
  s.options.direct_cap = direct_cap_from_env();
  s.options.counting_cap = counting_cap_from_env();
  return s;
}

json sweep_metadata(const RunConfig& config, const SweepSetup& s, bool with_calibration) {
  json meta = base_metadata(config);
  meta["caps"] = {{"direct", s.options.direct_cap}, {"counting", s.options.counting_cap}};
  meta["epsilon"] = s.epsilon;
  json growth = json::array();
  for (std::int64_t S : s.S_values)
    growth.push_back({{"S", S}, {"B_over_S_pow", sum_B(S, s.epsilon) / std::pow(static_cast<double>(S), 1.0 + s.epsilon)}});
  meta["b_growth"] = growth;
  if (with_calibration) meta["calibration"] = calibration_json(default_calibration(s.normalization));
  return meta;
}

std::vector<SweepRow> finalize_rows(std::vector<SweepRow> rows, const RunConfig& config) {
  if (!config.timing)
    for (SweepRow& r : rows) r.report.elapsed_s = 0.0;
  return rows;
}

int rows_exit_code(const std::vector<SweepRow>& rows) {
  for (const SweepRow& r : rows)
    if (!r.error.empty()) return kExitNumeric;
  return kExitOk;
}

int run_moment(const RunConfig& config, std::ostream& out) {
  SweepSetup s = sweep_setup(config, "");
  std::vector<Method> methods;
  try {
    for (const std::string& m : split_list(param_or(config, "method", "counting"))) methods.push_back(parse_method(m));
  } catch (const InputError& e) {
    throw UsageError(e.what());
  }
  if (methods.empty()) throw UsageError("--method needs at least one value");
  // Refuse up front rather than emitting a partial artifact.
  for (std::int64_t S : s.S_values)
    for (Method m : methods) {
      if (m == Method::direct && S > s.options.direct_cap)
        throw CapExceeded("direct method: S = " + std::to_string(S) + " exceeds the cap " +
                          std::to_string(s.options.direct_cap) + " (set FORDSPH_DIRECT_CAP to raise it)");
      if (m == Method::counting && S > s.options.counting_cap)
        throw CapExceeded("counting method: S = " + std::to_string(S) + " exceeds the cap " +
                          std::to_string(s.options.counting_cap) + " (set FORDSPH_COUNTING_CAP to raise it)");
    }
  const bool has_counting = std::find(methods.begin(), methods.end(), Method::counting) != methods.end();
  s.options.with_calibration = has_counting;
  const auto raw = report_sweep(s.S_values, methods, s.options);
  print_rows(raw, out);
  const auto rows = finalize_rows(raw, config);
  if (config.output_path)
    write_file(config, write_moment_artifact({sweep_metadata(config, s, has_counting), rows}, config.output_format));
  return rows_exit_code(rows);
}

int run_report(const RunConfig& config, std::ostream& out) {
  SweepSetup s = sweep_setup(config, "1,2,4,8,12,16,32,64,128");
  s.options.with_calibration = true;
  std::vector<SweepRow> raw;
  for (std::int64_t S : s.S_values) {
    std::vector<Method> methods;
    if (S <= s.options.direct_cap) methods.push_back(Method::direct);
    if (S <= s.options.counting_cap) methods.push_back(Method::counting);
    methods.push_back(Method::main_term);
    for (SweepRow& r : report_sweep({S}, methods, s.options)) raw.push_back(std::move(r));
  }
  print_rows(raw, out);

  json meta = sweep_metadata(config, s, true);
  json a = json::array(), p2 = json::array();
  for (std::int64_t S : {32, 64, 128, 256, 512}) {
    const SumWithPrediction sa = sum_A(S), sp = sum_phi_over_norm2(S);
    a.push_back({{"S", S}, {"exact", sa.exact}, {"prediction", sa.prediction}});
    p2.push_back({{"S", S}, {"exact", sp.exact}, {"prediction", sp.prediction}});
  }
  const LogFit fit = fit_phi_over_norm4({64, 128, 256, 512, 1024, 2048});
  meta["sum_A"] = a;
  meta["sum_phi_over_norm2"] = p2;
  meta["sum_phi_over_norm4_fit"] = {{"ladder", fit.ladder},
                                    {"values", fit.values},
                                    {"slope", fit.slope},
                                    {"target_slope", 4.0 * constants().z1},
                                    {"intercept", fit.intercept},
                                    {"z2_estimate", fit.z2_estimate}};
  const Calibration& cal = default_calibration(s.normalization);
  out << "\ncalibration (" << to_string(cal.normalization) << ", S = 4..12): " << num(cal.constant) << " +- "
      << num(100.0 * cal.max_rel_deviation) << "%\n";
  out << "sum_A(512) / prediction = " << num(a.back()["exact"].get<double>() / a.back()["prediction"].get<double>())
      << "\n";
  out << "sum phi/|s|^4 log-slope = " << num(fit.slope) << " (target " << num(4.0 * constants().z1)
      << "), z2 estimate " << num(fit.z2_estimate) << "\n";
  const auto rows = finalize_rows(raw, config);
  if (config.output_path) write_file(config, write_moment_artifact({meta, rows}, config.output_format));
  return rows_exit_code(rows);
}

int run_verify_command(const RunConfig& config, std::ostream& out) {
  std::vector<CheckResult> results;
  try {
    results = run_verify(param_or(config, "suite", "all"), config.seed, config.threads);
  } catch (const InputError& e) {
    throw UsageError(e.what());
  }
  std::size_t failed = 0;
  for (const CheckResult& r : results) {
    out << (r.passed ? "PASS  " : "FAIL  ") << r.suite << "/" << r.name << "  [" << r.anchor << "]  " << r.detail
        << "\n";
    failed += !r.passed;
  }
  out << results.size() - failed << "/" << results.size() << " checks passed\n";
  if (config.output_path) {
    const json meta = base_metadata(config);
    if (config.output_format == OutputFormat::csv) {
      std::string text = csv_metadata(meta) + "suite,name,passed,anchor,detail\n";
      for (const CheckResult& r : results)
        text += r.suite + "," + r.name + "," + (r.passed ? "true" : "false") + "," + csv_field(r.anchor) + "," +
                csv_field(r.detail) + "\n";
      write_file(config, text);
    } else {
      json data = json::array();
      for (const CheckResult& r : results)
        data.push_back({{"suite", r.suite}, {"name", r.name}, {"passed", r.passed}, {"anchor", r.anchor}, {"detail", r.detail}});
      write_file(config, wrap(meta, data).dump(2) + "\n");
    }
  }
  if (failed != 0) throw InvariantFailure(std::to_string(failed) + " invariant check(s) failed");
  return kExitOk;
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

void error_record(std::ostream& err, int code, const char* kind, const std::string& message) {
  json j;
  j["error"] = {{"exit_code", code}, {"kind", kind}, {"message", message}};
  err << j.dump() << "\n";
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::enumerate: return "enumerate";
    case Command::constants: return "constants";
    case Command::area: return "area";
    case Command::moment: return "moment";
    case Command::verify: return "verify";
    case Command::report: return "report";
  }
  return "?";
}

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

Command parse_command(const std::string& text) {
  for (Command c : {Command::enumerate, Command::constants, Command::area, Command::moment, Command::verify, Command::report})
    if (text == to_string(c)) return c;
  throw InputError("unknown command '" + text + "'");
}

OutputFormat parse_output_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw InputError("unknown output format '" + text + "' (expected csv or json)");
}

nlohmann::json config_to_json(const RunConfig& config) {
  // threads and timing only change how fast the run is, not what it computes,
  // so they stay out of the echo and artifacts match across thread counts.
  json j;
  j["command"] = to_string(config.command);
  j["parameters"] = config.parameters;
  j["seed"] = config.seed;
  j["output_format"] = to_string(config.output_format);
  j["output_path"] = config.output_path ? json(*config.output_path) : json(nullptr);
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  c.command = parse_command(j.at("command").get<std::string>());
  c.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.output_format = parse_output_format(j.at("output_format").get<std::string>());
  if (!j.at("output_path").is_null()) c.output_path = j.at("output_path").get<std::string>();
  return c;
}

std::int64_t direct_cap_from_env() { return cap_from_env("FORDSPH_DIRECT_CAP", kDefaultDirectCap); }
std::int64_t counting_cap_from_env() { return cap_from_env("FORDSPH_COUNTING_CAP", kDefaultCountingCap); }

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const bool existed = config.output_path && std::filesystem::exists(*config.output_path);
  const int code = dispatch(config, out, err);
  if (code != kExitOk && code != kExitInvariant && config.output_path && !existed) {
    std::error_code ignored;
    std::filesystem::remove(*config.output_path, ignored);
  }
  return code;
}

namespace {

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.threads < 1) throw UsageError("--threads must be positive");
    if (config.output_path) {
      // Fail before any long computation rather than after it.
      std::ofstream probe(*config.output_path, std::ios::app);
      if (!probe) throw WriteError("cannot open '" + *config.output_path + "' for writing");
    }
    switch (config.command) {
      case Command::enumerate: return run_enumerate(config, out);
      case Command::constants: return run_constants(config, out);
      case Command::area: return run_area(config, out);
      case Command::moment: return run_moment(config, out);
      case Command::verify: return run_verify_command(config, out);
      case Command::report: return run_report(config, out);
    }
    throw UsageError("no command");
  } catch (const UsageError& e) {
    error_record(err, kExitUsage, "usage", e.what());
    return kExitUsage;
  } catch (const LiteralError& e) {
    error_record(err, kExitInvalidLiteral, "invalid_gint_literal", e.what());
    return kExitInvalidLiteral;
  } catch (const CapExceeded& e) {
    error_record(err, kExitCapExceeded, "cap_exceeded", e.what());
    return kExitCapExceeded;
  } catch (const WriteError& e) {
    error_record(err, kExitUnwritable, "unwritable_path", e.what());
    return kExitUnwritable;
  } catch (const InvariantFailure& e) {
    error_record(err, kExitInvariant, "invariant_failure", e.what());
    return kExitInvariant;
  } catch (const DomainError& e) {
    error_record(err, kExitUsage, "domain", e.what());
    return kExitUsage;
  } catch (const InputError& e) {
    error_record(err, kExitUsage, "input", e.what());
    return kExitUsage;
  } catch (const ArithmeticError& e) {
    error_record(err, kExitNumeric, "overflow", e.what());
    return kExitNumeric;
  } catch (const NumericalError& e) {
    error_record(err, kExitNumeric, "numerical", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    error_record(err, kExitInternal, "internal", e.what());
    return kExitInternal;
  }
}

}  // namespace

std::string write_moment_artifact(const MomentArtifact& artifact, OutputFormat format) {
  if (format == OutputFormat::csv) {
    std::string text = csv_metadata(artifact.metadata);
    text += "S,method,normalization,value,main_term,residual,elapsed_s,calibration,pairs,error\n";
    for (const SweepRow& row : artifact.rows) {
      const MomentReport& r = row.report;
      text += std::to_string(r.S) + "," + to_string(r.method) + "," + to_string(r.normalization) + "," + num(r.value) +
              "," + num(r.main_term) + "," + num(r.residual) + "," + num(r.elapsed_s) + "," +
              (r.calibration ? num(*r.calibration) : "") + "," + std::to_string(r.pairs) + "," + csv_field(row.error) + "\n";
    }
    return text;
  }
  json data = json::array();
  for (const SweepRow& row : artifact.rows) {
    const MomentReport& r = row.report;
    data.push_back({{"S", r.S},
                    {"method", to_string(r.method)},
                    {"normalization", to_string(r.normalization)},
                    {"value", r.value},
                    {"main_term", r.main_term},
                    {"residual", r.residual},
                    {"elapsed_s", r.elapsed_s},
                    {"calibration", r.calibration ? json(*r.calibration) : json(nullptr)},
                    {"pairs", r.pairs},
                    {"error", row.error}});
  }
  return wrap(artifact.metadata, data).dump(2) + "\n";
}

MomentArtifact parse_moment_artifact(const std::string& text) {
  MomentArtifact a;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const json j = json::parse(text);
    a.metadata = j.at("metadata");
    for (const json& d : j.at("data")) {
      SweepRow row;
      MomentReport& r = row.report;
      r.S = d.at("S").get<std::int64_t>();
      r.method = parse_method(d.at("method").get<std::string>());
      r.normalization = parse_normalization(d.at("normalization").get<std::string>());
      r.value = d.at("value").get<double>();
      r.main_term = d.at("main_term").get<double>();
      r.residual = d.at("residual").get<double>();
      r.elapsed_s = d.at("elapsed_s").get<double>();
      if (!d.at("calibration").is_null()) r.calibration = d.at("calibration").get<double>();
      r.pairs = d.at("pairs").get<std::int64_t>();
      row.error = d.at("error").get<std::string>();
      a.rows.push_back(std::move(row));
    }
    return a;
  }
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  a.metadata = json::object();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto colon = line.find(": ");
      if (colon == std::string::npos) throw InputError("malformed metadata line: " + line);
      a.metadata[line.substr(2, colon - 2)] = json::parse(line.substr(colon + 2));
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 10) throw InputError("malformed row: " + line);
    SweepRow row;
    MomentReport& r = row.report;
    r.S = std::stoll(f[0]);
    r.method = parse_method(f[1]);
    r.normalization = parse_normalization(f[2]);
    r.value = std::stod(f[3]);
    r.main_term = std::stod(f[4]);
    r.residual = std::stod(f[5]);
    r.elapsed_s = std::stod(f[6]);
    if (!f[7].empty()) r.calibration = std::stod(f[7]);
    r.pairs = std::stoll(f[8]);
    row.error = f[9];
    a.rows.push_back(std::move(row));
  }
  return a;
}

}  // namespace fordsph
