#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geopump/result_table.hpp"

namespace geopump {

inline constexpr std::string_view kArtifactName = "geopump";
inline constexpr std::string_view kArtifactVersion = "1.0.0";

enum class Command { Simulate, Asymptote, PhaseDiagram, BandScan, Verify };

std::string_view command_name(Command c);
/// Throws ConfigError for an unknown name.
Command command_from_name(std::string_view name);

/// One fully resolved invocation.
///
/// `params` holds every command parameter (defaults filled in) keyed by
/// its snake_case name. `threads` and `output_path` never influence the
/// numbers written, so they are left out of the output metadata.
struct RunConfig {
  Command command = Command::Simulate;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::string output_path;
  OutputFormat format = OutputFormat::Csv;
  unsigned threads = 1;
};

struct ParamSpec {
  std::string name;  // snake_case; the flag is --name with '-' for '_'
  double default_value;
  bool integral;
  std::string help;
};

const std::vector<ParamSpec>& param_specs(Command c);

/// Fills defaults for missing params, rejects unknown ones and checks
/// ranges. Throws ConfigError.
RunConfig validated(RunConfig cfg);

/// Parses `geopump <command> [--flag value ...]` (argv[0] is skipped).
/// Values from --config PATH are applied first and explicit flags override
/// them. Returns std::nullopt after printing --help. Throws ConfigError.
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv);

/// Config as echoed into the output metadata; enough to re-run.
nlohmann::json config_echo(const RunConfig& cfg);

/// Dispatches to the owning module and returns the table to emit.
ResultTable run(const RunConfig& cfg);

/// Writes `table` to cfg.output_path ("-" for stdout) in cfg.format.
void emit(const ResultTable& table, const RunConfig& cfg);

}  // namespace geopump
