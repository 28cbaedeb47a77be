#include <cstdio>
#include <exception>
#include <iostream>

#include "geopump/errors.hpp"
#include "geopump/run.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitVerifyFailed = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace geopump;
  try {
    const auto cfg = parse_command_line(argc, argv);
    if (!cfg) return 0;
    const ResultTable table = run(*cfg);
    emit(table, *cfg);

    if (cfg->command == Command::Verify) {
      const auto& names = table.metadata.at("check_names");
      bool all = true;
      for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const bool passed = row[1] != 0.0;
        all = all && passed;
        std::fprintf(stderr, "%s %s measured=%s threshold=%s\n", passed ? "PASS" : "FAIL",
                     names[i].get<std::string>().c_str(), format_number(row[2]).c_str(),
                     format_number(row[3]).c_str());
      }
      return all ? 0 : kExitVerifyFailed;
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "geopump: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "geopump: " << e.what() << '\n';
    return kExitRuntime;
  }
}
