#pragma once

// Command dispatch behind the `fordsph` binary. A RunConfig fully describes a
// run; identical configs produce identical artifact bytes for any thread count.
// Human-readable output goes to `out`, the machine artifact to output_path.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fordsph/moment.hpp"
#include "json.hpp"

namespace fordsph {

inline constexpr const char* kToolVersion = "1.0.0";

enum class Command { enumerate, constants, area, moment, verify, report };
enum class OutputFormat { csv, json };

std::string to_string(Command c);
std::string to_string(OutputFormat f);
Command parse_command(const std::string& text);
OutputFormat parse_output_format(const std::string& text);

struct RunConfig {
  Command command = Command::constants;
  std::map<std::string, std::string> parameters;
  std::uint64_t seed = 20240611;
  unsigned threads = 1;
  OutputFormat output_format = OutputFormat::csv;
  std::optional<std::string> output_path;
  bool timing = false;  // keep measured elapsed_s in artifacts (otherwise 0)

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::json config_to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitNumeric = 3,
  kExitInvariant = 4,
  kExitInvalidLiteral = 5,
  kExitCapExceeded = 6,
  kExitUnwritable = 7,
};

// Writes the table to out and, on failure, one JSON error record to err:
// {"error": {"exit_code": n, "kind": "...", "message": "..."}}.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Reads FORDSPH_DIRECT_CAP / FORDSPH_COUNTING_CAP, falling back to the defaults.
std::int64_t direct_cap_from_env();
std::int64_t counting_cap_from_env();

struct MomentArtifact {
  nlohmann::json metadata;
  std::vector<SweepRow> rows;
};

// Serialized moment/report tables, parsed back for round-trip checks.
std::string write_moment_artifact(const MomentArtifact& artifact, OutputFormat format);
MomentArtifact parse_moment_artifact(const std::string& text);

}  // namespace fordsph
