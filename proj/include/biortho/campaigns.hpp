// Verification campaigns behind the `biortho` command line tool.
//
// Each campaign builds the configured system, runs randomized checks and
// returns metrics plus pass/fail checks. Reports are JSON documents
//   {subcommand, config, metrics, checks, witnesses, pass, generated_at}
// and optional CSV side files (grid functions as x,re,im; coefficient
// sequences as index,re,im; 17 significant digits).
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "biortho/fourier.hpp"
#include "biortho/lp.hpp"

namespace biortho::cli {

/// Bad configuration (unknown field, wrong type, out-of-range value) or an
/// I/O failure. Maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string system = "h-exponential";  // h-exponential | ionkin
  double h = 2.0;
  int n = 16;
  int panels = 64;
  int points = 8;
  double tol_biortho = 1e-9;
  double eps_spec = 1e-8;
  int trials = 0;  // 0: per-campaign default
  std::uint64_t seed = 1;
  std::string out;  // empty: no files written
  WeightNorm weight_norm = WeightNorm::intersection;
};

/// Overlay the fields present in `doc` (kebab-case keys) onto `cfg`.
void apply_json(RunConfig& cfg, const nlohmann::json& doc);
RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {});
void validate(const RunConfig& cfg);
nlohmann::json to_json(const RunConfig& cfg);

struct Check {
  std::string name;
  double value = 0.0;
  std::string relation;  // "<", "<=", ">=", "=="
  double limit = 0.0;
  bool pass = false;
};

struct CsvFile {
  std::string name;
  std::string content;
};

struct CampaignResult {
  std::string subcommand;
  nlohmann::json metrics = nlohmann::json::object();
  std::vector<Check> checks;
  nlohmann::json witnesses = nlohmann::json::array();
  std::vector<CsvFile> csv;
  bool pass() const;
};

const std::vector<std::string>& subcommands();

/// Throws ConfigError for an unknown subcommand or an inapplicable config.
CampaignResult run_campaign(const std::string& subcommand, const RunConfig& cfg);

nlohmann::json report_json(const CampaignResult& result, const RunConfig& cfg,
                           bool with_timestamp = true);

std::string grid_function_csv(const GridFunction& f);
std::string coefficients_csv(const CoefficientSequence& a);

/// Runs a subcommand, writes report files when cfg.out is set, prints a
/// summary to `log`. Returns 0 (all pass), 1 (a check failed) or 2 (config
/// or I/O error).
int run(const std::string& subcommand, const RunConfig& cfg, std::ostream& log);

}  // namespace biortho::cli
