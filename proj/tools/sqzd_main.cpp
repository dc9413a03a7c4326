// sqzd command-line front end; all real work happens in sqzd::cli.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sqzd/cli.hpp"
#include "sqzd/version.hpp"

namespace {

using sqzd::cli::json;

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sqzd::IoError("cannot read config file: " + path);
    json config;
    try {
        in >> config;
    } catch (const json::parse_error& e) {
        throw sqzd::ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!config.is_object()) throw sqzd::ConfigError("config root must be a JSON object");
    return config;
}

void set_path(json& config, std::initializer_list<const char*> keys, json value) {
    json* node = &config;
    auto it = keys.begin();
    for (std::size_t i = 0; i + 1 < keys.size(); ++i, ++it) node = &(*node)[*it];
    (*node)[*it] = std::move(value);
}

struct CommonFlags {
    std::string config_path;
    std::optional<double> c1, c2, c3, r, theta, beta, omega_c;
    std::optional<double> horizon, drive_time, rel_tol;
    std::optional<std::string> method, out, format, convention, dump_state;
    std::optional<unsigned> workers;

    json merged() const {
        json config = config_path.empty() ? json::object() : load_config_file(config_path);
        if (c1) set_path(config, {"state", "c1"}, *c1);
        if (c2) set_path(config, {"state", "c2"}, *c2);
        if (c3) set_path(config, {"state", "c3"}, *c3);
        if (r) set_path(config, {"bath", "r"}, *r);
        if (theta) set_path(config, {"bath", "theta"}, *theta);
        if (beta) set_path(config, {"bath", "beta"}, *beta);
        if (omega_c) set_path(config, {"bath", "omega_c"}, *omega_c);
        if (method) set_path(config, {"method", "kind"}, *method);
        if (rel_tol) set_path(config, {"method", "rel_tol"}, *rel_tol);
        if (horizon) config["horizon"] = *horizon;
        if (drive_time) config["drive_time"] = *drive_time;
        if (out) set_path(config, {"output", "path"}, *out);
        if (format) set_path(config, {"output", "format"}, *format);
        if (convention) config["convention"] = *convention;
        if (workers) config["workers"] = *workers;
        if (dump_state) config["dump_state"] = *dump_state;
        return config;
    }
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON scenario config; flags override keys");
    cmd->add_option("--c1", flags.c1, "initial-state parameter c1");
    cmd->add_option("--c2", flags.c2, "initial-state parameter c2");
    cmd->add_option("--c3", flags.c3, "initial-state parameter c3");
    cmd->add_option("--r", flags.r, "squeezing strength");
    cmd->add_option("--theta", flags.theta, "squeezing phase (radians)");
    cmd->add_option("--beta", flags.beta, "inverse temperature (omit for zero temperature)");
    cmd->add_option("--omega-c", flags.omega_c, "cutoff frequency");
    cmd->add_option("--method", flags.method, "gamma evaluation: analytic | quadrature");
    cmd->add_option("--rel-tol", flags.rel_tol, "quadrature relative tolerance");
    cmd->add_option("--horizon", flags.horizon, "amplification window in scaled time");
    cmd->add_option("--drive-time", flags.drive_time, "QSL drive time in scaled time");
    cmd->add_option("--out", flags.out, "output path (SQZD_OUT_DIR resolves relative paths)");
    cmd->add_option("--format", flags.format, "output format: csv | json");
    cmd->add_option("--convention", flags.convention,
                    "rate convention: time-average | plain-integral");
    cmd->add_option("--workers", flags.workers, "worker threads (0 = all cores)");
    cmd->add_option("--dump-state", flags.dump_state,
                    "write initial/final density matrices to this JSON file (trace)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dephasing dynamics, quantum correlations and speed limits for a "
                 "two-qubit pair in a common squeezed reservoir"};
    app.set_version_flag("--version", std::string(sqzd::kToolVersion));
    app.require_subcommand(1);

    const std::vector<std::string> commands = {"trace", "critical", "phase", "amplify", "qsl"};
    std::map<std::string, CommonFlags> flags;
    for (const std::string& name : commands) {
        CLI::App* cmd = app.add_subcommand(name, name + " scenario");
        add_common_flags(cmd, flags[name]);
    }

    bool fast = false;
    CLI::App* validate = app.add_subcommand("validate", "run the oracle and invariant checks");
    validate->add_flag("--fast", fast, "reduced instance counts");

    std::string preset_name, preset_out = ".";
    unsigned preset_workers = 0;
    CLI::App* preset = app.add_subcommand("preset", "regenerate a named figure data set");
    preset->add_option("name", preset_name, "preset name; see --list")->required(false);
    preset->add_option("--out-dir", preset_out, "directory for emitted files");
    preset->add_option("--workers", preset_workers, "worker threads (0 = all cores)");
    bool list_presets = false;
    preset->add_flag("--list", list_presets, "list preset names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (preset->parsed()) {
            if (list_presets) {
                for (const auto& name : sqzd::cli::preset_names()) std::cout << name << "\n";
                return 0;
            }
            if (preset_name.empty()) throw sqzd::ConfigError("preset: name required");
            for (const auto& file :
                 sqzd::cli::run_preset(preset_name, preset_out, preset_workers))
                std::cout << file << "\n";
            return 0;
        }
        if (validate->parsed()) {
            json config = json::object();
            if (fast) config["fast"] = true;
            return sqzd::cli::run_command("validate", config).exit_code;
        }
        for (const std::string& name : commands)
            if (app.get_subcommand(name)->parsed())
                return sqzd::cli::run_command(name, flags[name].merged()).exit_code;
        throw sqzd::ConfigError("no command given");
    } catch (const sqzd::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const sqzd::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const sqzd::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
