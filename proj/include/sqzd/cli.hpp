// cli.hpp — scenario configs, presets, artifact writers and command drivers
//
// The CLI front end in tools/ is a thin wrapper over run_command(); tests
// drive the same entry points directly.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sqzd/qsl.hpp"

namespace sqzd::cli {

using json = nlohmann::json;

// Fully validated scenario. Unknown JSON keys are rejected during parsing.
struct Scenario {
    XStateParams state{0.0, 0.0, 0.0};
    SqueezedBathSpec bath;
    DephasingMethod method = DephasingMethod::AnalyticZeroT;
    double quad_rel_tol = 1e-10;
    double quad_abs_tol = 1e-15;

    std::vector<double> tau_grid;     // empty unless grid.tau given
    std::vector<double> c1_grid;      // empty unless grid.c1 given
    std::vector<double> theta_set;    // defaults to {bath.theta}
    std::vector<double> r_set;        // defaults to {bath.r}
    double drive_time = 1.0;
    double horizon = 3.0;
    RateConvention convention = RateConvention::TimeAverage;

    std::string output_path;
    std::string output_format = "csv";  // "csv" | "json"
    std::string dump_state_path;        // trace only; empty = off
    unsigned workers = 0;               // 0 = hardware concurrency

    // profile for one (r, theta) combination of the sweep sets
    DephasingProfile profile_at(double r, double theta) const;
};

/// Strict parse: every key must be known, every value well formed.
Scenario parse_scenario(const json& config);

/// FNV-1a over the canonical (sorted-key) dump of the config.
std::string config_hash(const json& config);

struct CommandResult {
    int exit_code = 0;
    std::vector<std::string> warnings;
};

/// command in {trace, critical, phase, amplify, qsl, validate};
/// config must already contain any flag overrides.
CommandResult run_command(const std::string& command, const json& config);

/// Named preset bundles; each regenerates one figure-style data set under
/// out_dir. Returns the emitted file paths.
std::vector<std::string> run_preset(const std::string& name, const std::string& out_dir,
                                    unsigned workers = 0);
std::vector<std::string> preset_names();

/// Oracle-equivalence and invariant suite; prints one line per check.
/// Returns the number of failed checks. fast trims the instance counts.
int run_validate(bool fast);

}  // namespace sqzd::cli
