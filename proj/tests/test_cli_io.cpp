#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "geopump/errors.hpp"
#include "geopump/result_table.hpp"
#include "geopump/run.hpp"

using namespace geopump;

namespace {

std::optional<RunConfig> parse(std::vector<std::string> args) {
  args.insert(args.begin(), "geopump");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_command_line(static_cast<int>(argv.size()), argv.data());
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "geopump_unit";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("empty table writes header and metadata only") {
  ResultTable t;
  t.columns = {"x", "y"};
  t.metadata["artifact"] = "geopump";
  CHECK(to_csv(t) == "# artifact: \"geopump\"\nx,y\n");
}

TEST_CASE("add_row checks width") {
  ResultTable t;
  t.columns = {"x", "y"};
  t.add_row({1.0, 2.0});
  CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
}

TEST_CASE("csv number formatting") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_number(std::acos(-1.0))) == std::acos(-1.0));
  ResultTable t;
  t.columns = {"a"};
  t.add_row({0.25});
  CHECK(to_csv(t) == "a\n0.25\n");
}

TEST_CASE("json round trip is lossless") {
  ResultTable t;
  t.columns = {"theta", "p"};
  t.add_row({std::acos(-1.0) / 3.0, 0.1});
  t.add_row({1e-300, -2.5});
  t.metadata["seed"] = 7;
  const ResultTable back = table_from_json(to_json(t));
  CHECK(back.columns == t.columns);
  CHECK(back.rows == t.rows);
  CHECK(back.metadata == t.metadata);
  CHECK(to_json(back) == to_json(t));
}

TEST_CASE("write_table reports unwritable paths") {
  ResultTable t;
  t.columns = {"a"};
  CHECK_THROWS_AS(write_table(t, "/nonexistent-dir/x.csv", OutputFormat::Csv), IoError);
}

TEST_CASE("command names") {
  for (Command c : {Command::Simulate, Command::Asymptote, Command::PhaseDiagram,
                    Command::BandScan, Command::Verify}) {
    CHECK(command_from_name(command_name(c)) == c);
  }
  CHECK_THROWS_AS(command_from_name("fly"), ConfigError);
}

TEST_CASE("parse_command_line fills defaults") {
  const auto cfg = parse({"simulate", "--theta", "1.2", "--out", "-"});
  REQUIRE(cfg.has_value());
  CHECK(cfg->command == Command::Simulate);
  CHECK(cfg->params["theta"].get<double>() == 1.2);
  CHECK(cfg->params["cycles"].get<std::uint64_t>() == 10000);
  CHECK(cfg->output_path == "-");
  CHECK(cfg->format == OutputFormat::Csv);
}

TEST_CASE("parse_command_line rejects bad input") {
  CHECK_THROWS_AS(parse({"simulate"}), ConfigError);
  CHECK_THROWS_AS(parse({"simulate", "--out", "-", "--theta", "abc"}), ConfigError);
  CHECK_THROWS_AS(parse({"simulate", "--out", "-", "--theta", "4"}), ConfigError);
  CHECK_THROWS_AS(parse({"simulate", "--out", "-", "--cycles", "2.5"}), ConfigError);
  CHECK_THROWS_AS(parse({"simulate", "--out", "-", "--k-grid", "16"}), ConfigError);
  CHECK_THROWS_AS(parse({"band-scan", "--out", "-", "--k-grid", "4"}), ConfigError);
  CHECK_THROWS_AS(parse({"band-scan", "--out", "-", "--format", "xml"}), ConfigError);
  CHECK_THROWS_AS(parse({"simulate", "--out", "-", "--seed", "-3"}), ConfigError);
  CHECK_THROWS_AS(parse({"simulate", "--out", "-", "--threads", "0"}), ConfigError);
  CHECK_THROWS_AS(parse({"--out", "-"}), ConfigError);
  CHECK_THROWS_AS(parse({"simulate", "--out", "-", "--config", "/nonexistent.json"}),
                  ConfigError);
}

TEST_CASE("config file with flag override") {
  const auto path = scratch("cfg.json");
  {
    std::ofstream out(path);
    out << R"({"command": "band-scan", "a": 3, "k-grid": 32, "out": "-", "seed": 5})";
  }
  const auto cfg = parse({"band-scan", "--config", path.string(), "--a", "1"});
  REQUIRE(cfg.has_value());
  CHECK(cfg->command == Command::BandScan);
  CHECK(cfg->params["a"].get<double>() == 1.0);
  CHECK(cfg->params["k_grid"].get<std::uint64_t>() == 32);
  CHECK(cfg->seed == 5);

  {
    std::ofstream out(path);
    out << R"({"command": "band-scan", "bogus": 1, "out": "-"})";
  }
  CHECK_THROWS_AS(parse({"band-scan", "--config", path.string()}), ConfigError);

  {
    std::ofstream out(path);
    out << "{not json";
  }
  CHECK_THROWS_AS(parse({"band-scan", "--config", path.string()}), ConfigError);
}

TEST_CASE("run echoes config and writes deterministic files") {
  const auto path = scratch("scan.csv");
  const auto cfg = parse({"band-scan", "--a", "1", "--k-grid", "16", "--out", path.string()});
  REQUIRE(cfg.has_value());
  const ResultTable t = run(*cfg);
  CHECK(t.columns == std::vector<std::string>{"k", "theta_k", "p_g"});
  CHECK(t.rows.size() == 16);
  CHECK(t.metadata["artifact"] == "geopump");
  CHECK(t.metadata["config"]["params"]["a"] == 1.0);
  CHECK(t.metadata["tpt_count"] == 2);

  emit(t, *cfg);
  const std::string first = slurp(path);
  emit(run(*cfg), *cfg);
  CHECK(slurp(path) == first);
  CHECK(first.find('\r') == std::string::npos);

  RunConfig other = *cfg;
  other.threads = 4;
  other.output_path = scratch("scan4.csv").string();
  emit(run(other), other);
  CHECK(slurp(other.output_path) == first);
}

TEST_CASE("run commands produce their columns") {
  const auto sim = parse({"simulate", "--cycles", "8", "--out", "-"});
  CHECK(run(*sim).rows.size() == 8);

  const auto asym = parse({"asymptote", "--theta-grid", "4", "--phi-grid", "5", "--out", "-"});
  const ResultTable a = run(*asym);
  CHECK(a.rows.size() == 20);
  CHECK(a.columns.size() == 5);

  const auto sampled = parse({"asymptote", "--samples", "7", "--seed", "3", "--out", "-"});
  const ResultTable s1 = run(*sampled);
  CHECK(s1.rows.size() == 7);
  CHECK(run(*sampled).rows == s1.rows);

  const auto pd = parse({"phase-diagram", "--theta-grid", "6", "--phi-grid", "6", "--out", "-"});
  const ResultTable d = run(*pd);
  CHECK(d.rows.size() == 64);
  CHECK(d.metadata.contains("interior_stable_fraction"));
}
