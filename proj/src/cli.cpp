#include "sqzd/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "sqzd/csv.hpp"
#include "sqzd/sweep.hpp"
#include "sqzd/version.hpp"

namespace sqzd::cli {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// ---------------------------- config parsing -------------------------------

void require_keys(const json& obj, const char* where,
                  std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError(std::string(where) + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) {
                known = true;
                break;
            }
        if (!known)
            throw ConfigError(std::string("unknown key '") + key + "' in " + where);
    }
}

double number_at(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number())
        throw ConfigError(std::string("config key '") + key + "' must be a number");
    return obj[key].get<double>();
}

std::vector<double> parse_grid_range(const json& spec, const char* where) {
    require_keys(spec, where, {"min", "max", "count"});
    if (!spec.contains("min") || !spec.contains("max") || !spec.contains("count"))
        throw ConfigError(std::string(where) + ": needs min, max and count");
    const int count = spec["count"].get<int>();
    return linear_grid(spec["min"].get<double>(), spec["max"].get<double>(), count);
}

std::vector<double> parse_value_list(const json& spec, const char* where) {
    if (!spec.is_array() || spec.empty())
        throw ConfigError(std::string(where) + ": expected a non-empty array of numbers");
    std::vector<double> out;
    for (const auto& v : spec) {
        if (!v.is_number()) throw ConfigError(std::string(where) + ": entries must be numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

// ------------------------------- output ------------------------------------

std::string resolve_output(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    const char* dir = std::getenv("SQZD_OUT_DIR");
    if (dir == nullptr || *dir == '\0') return path;
    return std::string(dir) + "/" + path;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

struct TaskTimer {
    std::vector<std::pair<std::string, double>> tasks;
    Clock::time_point wall_start = Clock::now();

    template <class Fn>
    auto run(const std::string& name, Fn&& fn) {
        const auto start = Clock::now();
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            tasks.emplace_back(name, ms_since(start));
        } else {
            auto result = fn();
            tasks.emplace_back(name, ms_since(start));
            return result;
        }
    }
};

void write_manifest(const std::string& artifact_path, const json& config,
                    const TaskTimer& timer, const std::vector<std::string>& warnings) {
    json manifest;
    manifest["tool"] = kToolName;
    manifest["version"] = kToolVersion;
    manifest["config_hash"] = config_hash(config);
    manifest["config"] = config;
    manifest["wall_ms"] = ms_since(timer.wall_start);
    manifest["tasks"] = json::array();
    for (const auto& [name, ms] : timer.tasks)
        manifest["tasks"].push_back({{"name", name}, {"ms", ms}});
    manifest["warnings"] = warnings;
    write_file(artifact_path + ".manifest.json", manifest.dump(2) + "\n");
}

json matrix_to_json(const DensityMatrix4& rho) {
    json out = json::array();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out.push_back({rho(i, j).real(), rho(i, j).imag()});
    return out;
}

const char* kind_name(CriticalKind kind) {
    switch (kind) {
        case CriticalKind::Finite: return "finite";
        case CriticalKind::Infinite: return "infinite";
        case CriticalKind::NoTransition: return "no_transition";
    }
    return "?";
}

}  // namespace

// ------------------------------ Scenario -----------------------------------

DephasingProfile Scenario::profile_at(double r, double theta) const {
    const SqueezedBathSpec spec =
        SqueezedBathSpec::make(r, theta, bath.beta, bath.omega_c, bath.spectral);
    if (method == DephasingMethod::AnalyticZeroT)
        return DephasingProfile::analytic_zero_t(spec);
    return DephasingProfile::quadrature(spec, quad_rel_tol, quad_abs_tol);
}

Scenario parse_scenario(const json& config) {
    require_keys(config, "config",
                 {"state", "bath", "method", "grid", "output", "convention", "horizon",
                  "drive_time", "workers", "dump_state"});
    Scenario sc;

    if (config.contains("state")) {
        const json& s = config["state"];
        require_keys(s, "state", {"c1", "c2", "c3"});
        sc.state = XStateParams::make(number_at(s, "c1", 0.0), number_at(s, "c2", 0.0),
                                      number_at(s, "c3", 0.0));
    }

    double beta = kZeroTemperature;
    double r = 0.0, theta = 0.0, omega_c = 1.0;
    if (config.contains("bath")) {
        const json& b = config["bath"];
        require_keys(b, "bath", {"r", "theta", "beta", "omega_c", "spectral"});
        r = number_at(b, "r", 0.0);
        theta = number_at(b, "theta", 0.0);
        omega_c = number_at(b, "omega_c", 1.0);
        if (b.contains("beta")) {
            if (b["beta"].is_string()) {
                if (b["beta"] != "inf")
                    throw ConfigError("bath.beta must be a positive number or \"inf\"");
            } else {
                beta = number_at(b, "beta", kZeroTemperature);
            }
        }
        if (b.contains("spectral") && b["spectral"] != "ohmic")
            throw ConfigError("bath.spectral: only \"ohmic\" is built in");
    }
    sc.bath = SqueezedBathSpec::make(r, theta, beta, omega_c);

    if (config.contains("method")) {
        const json& m = config["method"];
        require_keys(m, "method", {"kind", "rel_tol", "abs_tol"});
        const std::string kind = m.value("kind", "analytic");
        if (kind == "analytic")
            sc.method = DephasingMethod::AnalyticZeroT;
        else if (kind == "quadrature")
            sc.method = DephasingMethod::Quadrature;
        else
            throw ConfigError("method.kind must be \"analytic\" or \"quadrature\"");
        sc.quad_rel_tol = number_at(m, "rel_tol", 1e-10);
        sc.quad_abs_tol = number_at(m, "abs_tol", 1e-15);
    }

    if (config.contains("grid")) {
        const json& g = config["grid"];
        require_keys(g, "grid", {"tau", "c1", "theta", "theta_values", "r", "r_values"});
        if (g.contains("tau")) sc.tau_grid = parse_grid_range(g["tau"], "grid.tau");
        if (g.contains("c1")) sc.c1_grid = parse_grid_range(g["c1"], "grid.c1");
        if (g.contains("theta") && g.contains("theta_values"))
            throw ConfigError("grid: give either theta or theta_values, not both");
        if (g.contains("r") && g.contains("r_values"))
            throw ConfigError("grid: give either r or r_values, not both");
        if (g.contains("theta")) sc.theta_set = parse_grid_range(g["theta"], "grid.theta");
        if (g.contains("theta_values"))
            sc.theta_set = parse_value_list(g["theta_values"], "grid.theta_values");
        if (g.contains("r")) sc.r_set = parse_grid_range(g["r"], "grid.r");
        if (g.contains("r_values")) sc.r_set = parse_value_list(g["r_values"], "grid.r_values");
    }
    if (sc.theta_set.empty()) sc.theta_set = {sc.bath.theta};
    if (sc.r_set.empty()) sc.r_set = {sc.bath.r};

    if (config.contains("output")) {
        const json& o = config["output"];
        require_keys(o, "output", {"path", "format"});
        sc.output_path = o.value("path", "");
        sc.output_format = o.value("format", "csv");
        if (sc.output_format != "csv" && sc.output_format != "json")
            throw ConfigError("output.format must be \"csv\" or \"json\"");
    }

    if (config.contains("convention")) {
        const std::string c = config["convention"].get<std::string>();
        if (c == "time-average")
            sc.convention = RateConvention::TimeAverage;
        else if (c == "plain-integral")
            sc.convention = RateConvention::PlainIntegral;
        else
            throw ConfigError("convention must be \"time-average\" or \"plain-integral\"");
    }

    sc.horizon = number_at(config, "horizon", 3.0);
    if (!(sc.horizon > 0.0)) throw ConfigError("horizon must be > 0");
    sc.drive_time = number_at(config, "drive_time", 1.0);
    if (!(sc.drive_time > 0.0)) throw ConfigError("drive_time must be > 0");
    if (config.contains("workers")) {
        const long long w = config["workers"].get<long long>();
        if (w < 0) throw ConfigError("workers must be >= 0");
        sc.workers = static_cast<unsigned>(w);
    }
    if (config.contains("dump_state")) sc.dump_state_path = config["dump_state"].get<std::string>();
    return sc;
}

std::string config_hash(const json& config) {
    const std::string bytes = config.dump();  // nlohmann keeps keys sorted
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

// ------------------------------- commands ----------------------------------

namespace {

struct Curve {
    double r, theta;
};

std::vector<Curve> curve_set(const Scenario& sc) {
    std::vector<Curve> out;
    for (double r : sc.r_set)
        for (double theta : sc.theta_set) out.push_back({r, theta});
    return out;
}

CommandResult run_trace(const Scenario& sc, const json& config) {
    if (sc.tau_grid.empty()) throw ConfigError("trace: grid.tau is required");
    TaskTimer timer;
    const std::vector<Curve> curves = curve_set(sc);
    const bool multi = curves.size() > 1;

    std::vector<std::vector<CorrelationRecord>> results(curves.size());
    std::vector<std::string> warnings;
    timer.run("trace curves", [&] {
        parallel_for_ordered(curves.size(), sc.workers, [&](std::size_t i) {
            TraceRequest req{sc.state, sc.profile_at(curves[i].r, curves[i].theta),
                             sc.tau_grid};
            results[i] = trace(req);
        });
    });
    for (std::size_t i = 0; i < curves.size(); ++i) {
        for (std::size_t k = 1; k < results[i].size(); ++k) {
            if (results[i][k].gamma < results[i][k - 1].gamma - 1e-10) {
                std::ostringstream w;
                w << "Gamma not monotone at tau = " << results[i][k].tau << " (r = "
                  << curves[i].r << ", theta = " << curves[i].theta << ")";
                warnings.push_back(w.str());
            }
        }
    }

    const std::string path =
        resolve_output(sc.output_path.empty() ? "trace.csv" : sc.output_path);
    if (sc.output_format == "csv") {
        std::string csv = multi ? "r,theta,tau,gamma,alpha,I,C,chi,Q\n"
                                : "tau,gamma,alpha,I,C,chi,Q\n";
        for (std::size_t i = 0; i < curves.size(); ++i)
            for (const CorrelationRecord& rec : results[i]) {
                if (multi)
                    csv += format_double(curves[i].r) + "," + format_double(curves[i].theta) + ",";
                csv += format_double(rec.tau) + "," + format_double(rec.gamma) + "," +
                       format_double(rec.alpha) + "," + format_double(rec.mutual_info) + "," +
                       format_double(rec.classical) + "," + format_double(rec.chi) + "," +
                       format_double(rec.discord) + "\n";
            }
        write_file(path, csv);
    } else {
        json out;
        out["curves"] = json::array();
        for (std::size_t i = 0; i < curves.size(); ++i) {
            json curve;
            curve["r"] = curves[i].r;
            curve["theta"] = curves[i].theta;
            curve["records"] = json::array();
            for (const CorrelationRecord& rec : results[i])
                curve["records"].push_back({{"tau", rec.tau},
                                            {"gamma", rec.gamma},
                                            {"alpha", rec.alpha},
                                            {"I", rec.mutual_info},
                                            {"C", rec.classical},
                                            {"chi", rec.chi},
                                            {"Q", rec.discord}});
            out["curves"].push_back(std::move(curve));
        }
        write_file(path, out.dump(2) + "\n");
    }

    if (!sc.dump_state_path.empty()) {
        if (multi) throw ConfigError("trace: dump_state requires a single (r, theta) curve");
        const DephasingProfile profile = sc.profile_at(curves[0].r, curves[0].theta);
        json dump;
        dump["basis"] = "ee,eg,ge,gg";
        dump["initial"] = matrix_to_json(build_initial(sc.state));
        dump["final"] =
            matrix_to_json(evolve(sc.state, attenuation(profile, sc.tau_grid.back())));
        write_file(resolve_output(sc.dump_state_path), dump.dump(2) + "\n");
    }

    write_manifest(path, config, timer, warnings);
    return {0, warnings};
}

CommandResult run_critical(const Scenario& sc, const json& config) {
    TaskTimer timer;
    const std::vector<Curve> curves = curve_set(sc);
    const std::vector<double> c1_values =
        sc.c1_grid.empty() ? std::vector<double>{sc.state.c1} : sc.c1_grid;

    struct Row {
        double c1, r, theta;
        CriticalTimeResult result;
        std::optional<double> tau_c_closed;
        bool skipped = false;
        std::string skip_reason;
    };
    std::vector<Row> rows(curves.size() * c1_values.size());
    timer.run("critical sweep", [&] {
        parallel_for_ordered(rows.size(), sc.workers, [&](std::size_t idx) {
            const Curve& cv = curves[idx / c1_values.size()];
            const double c1 = c1_values[idx % c1_values.size()];
            Row& row = rows[idx];
            row.c1 = c1;
            row.r = cv.r;
            row.theta = cv.theta;
            XStateParams p;
            try {
                p = XStateParams::make(c1, sc.state.c2, sc.state.c3);
            } catch (const ConfigError& e) {
                row.skipped = true;
                row.skip_reason = e.what();
                return;
            }
            row.result = classify_critical_time(p, sc.profile_at(cv.r, cv.theta));
            // zero-squeezing closed form for the zero-T Ohmic bath:
            // tau_c = sqrt(k^(-pi/2) - 1)
            if (cv.r == 0.0 && row.result.kind == CriticalKind::Finite &&
                std::isinf(sc.bath.beta)) {
                const double k = *row.result.k_target;
                row.tau_c_closed = std::sqrt(std::pow(k, -kPi / 2.0) - 1.0);
            }
        });
    });

    const std::string default_name = sc.output_format == "csv" ? "critical.csv" : "critical.json";
    const std::string path =
        resolve_output(sc.output_path.empty() ? default_name : sc.output_path);
    if (sc.output_format == "csv") {
        std::string csv = "c1,r,theta,kind,tau_c,k_target,tau_c_closed\n";
        for (const Row& row : rows) {
            if (row.skipped) continue;
            csv += format_double(row.c1) + "," + format_double(row.r) + "," +
                   format_double(row.theta) + "," + kind_name(row.result.kind) + ",";
            csv += (row.result.tau_c ? format_double(*row.result.tau_c) : "") + ",";
            csv += (row.result.k_target ? format_double(*row.result.k_target) : "") + ",";
            csv += (row.tau_c_closed ? format_double(*row.tau_c_closed) : "") + "\n";
        }
        write_file(path, csv);
    } else {
        json out;
        out["results"] = json::array();
        for (const Row& row : rows) {
            json item;
            item["c1"] = row.c1;
            item["r"] = row.r;
            item["theta"] = row.theta;
            if (row.skipped) {
                item["kind"] = "unphysical";
                item["reason"] = row.skip_reason;
            } else {
                item["kind"] = kind_name(row.result.kind);
                if (row.result.tau_c) item["tau_c"] = *row.result.tau_c;
                if (row.result.k_target) item["k_target"] = *row.result.k_target;
                if (row.tau_c_closed) item["tau_c_closed"] = *row.tau_c_closed;
            }
            out["results"].push_back(std::move(item));
        }
        write_file(path, out.dump(2) + "\n");
    }
    write_manifest(path, config, timer, {});
    return {0, {}};
}

CommandResult run_phase(const Scenario& sc, const json& config) {
    if (sc.c1_grid.empty() || sc.tau_grid.empty())
        throw ConfigError("phase: grid.c1 and grid.tau are required");
    if (curve_set(sc).size() != 1)
        throw ConfigError("phase: provide a single (r, theta); run once per squeezing setting");

    PhaseDiagramRequest req;
    req.c1_min = sc.c1_grid.front();
    req.c1_max = sc.c1_grid.back();
    req.c1_count = static_cast<int>(sc.c1_grid.size());
    req.c2 = sc.state.c2;
    req.c3 = sc.state.c3;
    req.profile = sc.profile_at(sc.r_set[0], sc.theta_set[0]);
    req.tau_min = sc.tau_grid.front();
    req.tau_max = sc.tau_grid.back();
    req.tau_count = static_cast<int>(sc.tau_grid.size());

    TaskTimer timer;
    const PhaseDiagram grid =
        timer.run("phase grid", [&] { return phase_diagram(req, sc.workers); });

    std::vector<std::string> warnings;
    if (grid.invalid_cells > 0) {
        std::ostringstream w;
        w << grid.invalid_cells << " cells masked as physically invalid";
        warnings.push_back(w.str());
    }

    const std::string path =
        resolve_output(sc.output_path.empty() ? "phase.csv" : sc.output_path);
    if (sc.output_format == "csv") {
        std::string csv = "tau,c1,Q,valid\n";
        for (std::size_t i = 0; i < grid.c1.size(); ++i)
            for (std::size_t j = 0; j < grid.tau.size(); ++j) {
                const std::size_t cell = i * grid.tau.size() + j;
                csv += format_double(grid.tau[j]) + "," + format_double(grid.c1[i]) + "," +
                       format_double(grid.q[cell]) + "," +
                       (grid.valid[cell] ? "1" : "0") + "\n";
            }
        write_file(path, csv);
    } else {
        json out;
        out["c1"] = grid.c1;
        out["tau"] = grid.tau;
        out["q"] = grid.q;
        out["valid"] = grid.valid;
        out["invalid_cells"] = grid.invalid_cells;
        write_file(path, out.dump(2) + "\n");
    }
    write_manifest(path, config, timer, warnings);
    return {0, warnings};
}

CommandResult run_amplify(const Scenario& sc, const json& config) {
    TaskTimer timer;
    const std::vector<Curve> curves = curve_set(sc);
    const std::vector<double> c1_values =
        sc.c1_grid.empty() ? std::vector<double>{sc.state.c1} : sc.c1_grid;

    struct Cell {
        double rate = std::numeric_limits<double>::quiet_NaN();
        bool valid = false;
    };
    std::vector<Cell> cells(curves.size() * c1_values.size());
    timer.run("rate sweep", [&] {
        parallel_for_ordered(cells.size(), sc.workers, [&](std::size_t idx) {
            const Curve& cv = curves[idx / c1_values.size()];
            const double c1 = c1_values[idx % c1_values.size()];
            try {
                const XStateParams p = XStateParams::make(c1, sc.state.c2, sc.state.c3);
                cells[idx].rate = amplification_rate(p, sc.profile_at(cv.r, cv.theta),
                                                     sc.horizon, sc.convention);
                cells[idx].valid = true;
            } catch (const ConfigError&) {
                // unphysical c1 or zero initial discord; leave masked
            }
        });
    });

    const std::string path =
        resolve_output(sc.output_path.empty() ? "amplify.csv" : sc.output_path);
    std::string csv = "c1,r,theta,R\n";
    for (std::size_t i = 0; i < curves.size(); ++i)
        for (std::size_t j = 0; j < c1_values.size(); ++j) {
            const Cell& cell = cells[i * c1_values.size() + j];
            if (!cell.valid) continue;
            csv += format_double(c1_values[j]) + "," + format_double(curves[i].r) + "," +
                   format_double(curves[i].theta) + "," + format_double(cell.rate) + "\n";
        }
    write_file(path, csv);

    // crossings between curves differing in exactly one squeezing parameter
    json report = json::array();
    if (c1_values.size() >= 2 && curves.size() >= 2) {
        timer.run("intersections", [&] {
            for (std::size_t a = 0; a < curves.size(); ++a)
                for (std::size_t b = a + 1; b < curves.size(); ++b) {
                    const bool same_r = curves[a].r == curves[b].r;
                    const bool same_theta = curves[a].theta == curves[b].theta;
                    if (same_r == same_theta) continue;
                    json item;
                    item["curve_a"] = {{"r", curves[a].r}, {"theta", curves[a].theta}};
                    item["curve_b"] = {{"r", curves[b].r}, {"theta", curves[b].theta}};
                    try {
                        const RateIntersection hit = find_rate_intersection(
                            sc.state.c2, sc.state.c3,
                            sc.profile_at(curves[a].r, curves[a].theta),
                            sc.profile_at(curves[b].r, curves[b].theta), c1_values.front(),
                            c1_values.back(), sc.horizon, sc.convention);
                        item["c1"] = hit.c1;
                        item["R"] = hit.rate;
                    } catch (const NumericalError&) {
                        item["crossing"] = "none";
                    }
                    report.push_back(std::move(item));
                }
        });
        json wrapper;
        wrapper["intersections"] = report;
        write_file(path + ".intersections.json", wrapper.dump(2) + "\n");
    }
    write_manifest(path, config, timer, {});
    return {0, {}};
}

CommandResult run_qsl(const Scenario& sc, const json& config) {
    TaskTimer timer;
    const std::vector<Curve> curves = curve_set(sc);
    const std::vector<double> c1_values =
        sc.c1_grid.empty() ? std::vector<double>{sc.state.c1} : sc.c1_grid;

    struct Cell {
        QslRecord rec;
        bool valid = false;
    };
    std::vector<Cell> cells(curves.size() * c1_values.size());
    timer.run("qsl sweep", [&] {
        parallel_for_ordered(cells.size(), sc.workers, [&](std::size_t idx) {
            const Curve& cv = curves[idx / c1_values.size()];
            const double c1 = c1_values[idx % c1_values.size()];
            try {
                const XStateParams p = XStateParams::make(c1, sc.state.c2, sc.state.c3);
                cells[idx].rec = qsl_time(p, sc.profile_at(cv.r, cv.theta), sc.drive_time);
                cells[idx].valid = true;
            } catch (const ConfigError&) {
                // unphysical c1; leave masked
            }
        });
    });

    const std::string path = resolve_output(sc.output_path.empty() ? "qsl.csv" : sc.output_path);
    std::string csv = "c1,r,theta,tau,Theta,Lambda_op,tau_qsl\n";
    for (std::size_t i = 0; i < curves.size(); ++i)
        for (std::size_t j = 0; j < c1_values.size(); ++j) {
            const Cell& cell = cells[i * c1_values.size() + j];
            if (!cell.valid) continue;
            csv += format_double(c1_values[j]) + "," + format_double(curves[i].r) + "," +
                   format_double(curves[i].theta) + "," + format_double(cell.rec.drive_time) +
                   "," + format_double(cell.rec.theta_angle) + "," +
                   format_double(cell.rec.lambda_op) + "," + format_double(cell.rec.tau_qsl) +
                   "\n";
        }
    write_file(path, csv);

    // summary of the theta dependence, useful when sweeping the phase
    std::vector<std::string> warnings;
    if (sc.theta_set.size() >= 8 && sc.r_set.size() == 1 && c1_values.size() == 1) {
        double lo = cells[0].rec.tau_qsl, hi = lo;
        for (const Cell& cell : cells)
            if (cell.valid) {
                lo = std::min(lo, cell.rec.tau_qsl);
                hi = std::max(hi, cell.rec.tau_qsl);
            }
        std::ostringstream note;
        note << "qsl theta sweep spread max-min = " << format_double(hi - lo);
        if (hi - lo < 1e-9 * std::max(1.0, std::abs(hi)))
            note << " (constant within tolerance: symmetric about every axis)";
        std::cout << note.str() << "\n";
    }
    write_manifest(path, config, timer, warnings);
    return {0, warnings};
}

}  // namespace

// ------------------------------- validate ----------------------------------

namespace {

struct ValidateReport {
    int failures = 0;

    void check(const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "[ ok ] " : "[FAIL] ") << name;
        if (!detail.empty()) std::cout << " — " << detail;
        std::cout << "\n";
        if (!ok) ++failures;
    }
};

std::vector<XStateParams> random_states(int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<XStateParams> out;
    while (static_cast<int>(out.size()) < count) {
        const double c1 = dist(rng), c2 = dist(rng), c3 = dist(rng);
        if (1.0 + c3 >= std::abs(c1 - c2) && 1.0 - c3 >= std::abs(c1 + c2))
            out.push_back(XStateParams{c1, c2, c3});
    }
    return out;
}

}  // namespace

int run_validate(bool fast) {
    ValidateReport report;
    std::ostringstream detail;
    const int n_states = fast ? 20 : 100;
    BruteForceOptions bf;
    if (fast) {
        bf.grid_vartheta = 120;
        bf.grid_phi = 120;
    }

    // quadrature vs closed form
    {
        double worst = 0.0;
        for (double r : {0.0, 0.25, 0.5, 1.0})
            for (double theta : {0.0, kPi / 4, kPi / 2, kPi})
                for (double tau : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
                    const auto bath = SqueezedBathSpec::make(r, theta);
                    const auto quad = DephasingProfile::quadrature(bath);
                    worst = std::max(worst, std::abs(gamma_quadrature(quad, tau) -
                                                     gamma_analytic_zero_t(bath, tau)));
                }
        detail.str("");
        detail << "max |quadrature - analytic| = " << worst;
        report.check("dephasing quadrature vs closed form", worst < 1e-8, detail.str());
    }

    // closed spectrum vs dense eigensolver, discord closed vs brute force
    {
        double worst_spec = 0.0, worst_q = 0.0;
        std::mt19937 rng(20260810u);
        std::uniform_real_distribution<double> att_dist(0.05, 1.0);
        for (const XStateParams& p : random_states(n_states, 97531u)) {
            const double att = att_dist(rng);
            const DensityMatrix4 rho = evolve(p, att);
            const double alpha = (p.c1 - p.c2) * att;
            auto closed = eigenvalues_closed(p, alpha);
            auto dense = dense_spectrum(rho);
            std::array<double, 4> a = closed.mu, b = dense.mu;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            for (int i = 0; i < 4; ++i)
                worst_spec = std::max(worst_spec, std::abs(a[static_cast<std::size_t>(i)] -
                                                           b[static_cast<std::size_t>(i)]));
            worst_q = std::max(worst_q, std::abs(discord_closed(p, alpha).discord -
                                                 discord_bruteforce(rho, bf)));
        }
        detail.str("");
        detail << "max spectrum gap = " << worst_spec << " over " << n_states << " states";
        report.check("closed spectrum vs dense eigensolver", worst_spec < 1e-10, detail.str());
        detail.str("");
        detail << "max |Q_closed - Q_bruteforce| = " << worst_q;
        report.check("discord closed form vs measurement search", worst_q < 1e-6, detail.str());
    }

    // critical times: generic solver vs zero-squeezing closed form
    {
        double worst = 0.0, worst_residual = 0.0;
        const auto quiet = DephasingProfile::analytic_zero_t(SqueezedBathSpec::make(0.0, 0.0));
        const auto squeezed =
            DephasingProfile::analytic_zero_t(SqueezedBathSpec::make(0.5, kPi / 4));
        for (double c1 : linear_grid(0.35, 0.6, fast ? 4 : 10)) {
            const double lo = 0.5 * c1, hi = std::min(c1, 1.0 - c1);
            for (double s : linear_grid(0.1, 0.9, fast ? 4 : 10)) {
                const XStateParams p = XStateParams::make(c1, 0.0, lo + s * (hi - lo));
                const auto res = classify_critical_time(p, quiet);
                if (res.kind != CriticalKind::Finite) continue;
                const double closed = std::sqrt(std::pow(*res.k_target, -kPi / 2.0) - 1.0);
                worst = std::max(worst, std::abs(*res.tau_c - closed));
                const auto rs = classify_critical_time(p, squeezed);
                const double alpha_c =
                    std::abs(p.c1 - p.c2) * attenuation(squeezed, *rs.tau_c);
                worst_residual = std::max(
                    worst_residual,
                    std::abs(0.5 * (alpha_c + std::abs(p.c1 + p.c2)) - std::abs(p.c3)));
            }
        }
        detail.str("");
        detail << "max |solver - closed| = " << worst << ", max residual = " << worst_residual;
        report.check("critical-time solver vs closed form",
                     worst < 1e-8 && worst_residual < 1e-9, detail.str());
    }

    // steady state equals the long-time trace tail
    {
        double worst = 0.0;
        for (double r : {0.0, 0.5, 1.0})
            for (double theta : {0.0, kPi / 2, kPi}) {
                const auto profile =
                    DephasingProfile::analytic_zero_t(SqueezedBathSpec::make(r, theta));
                const XStateParams finite_family = XStateParams::make(0.5, 0.0, 0.3);
                const XStateParams infinite_family = XStateParams::make(0.9, 0.6, -0.6);
                auto tail = [&](const XStateParams& p, double tau) {
                    return trace({p, profile, {tau}}).front().discord;
                };
                worst = std::max(worst, std::abs(tail(finite_family, 200.0) -
                                                 steady_state_discord(finite_family)));
                // the infinite-critical-time family approaches its limit only
                // linearly in the attenuation, so probe further out
                worst = std::max(worst, std::abs(tail(infinite_family, 2000.0) -
                                                 steady_state_discord(infinite_family)));
            }
        detail.str("");
        detail << "max |Q(tail) - Q(steady)| = " << worst;
        report.check("steady-state discord vs trace tail", worst < 1e-4, detail.str());
    }

    // QSL identities
    {
        const XStateParams p = XStateParams::make(0.5, 0.0, 0.3);
        double worst_lambda = 0.0, worst_flat = 0.0;
        for (double r : {0.1, 0.5, 1.0})
            for (double theta : {0.0, kPi / 2, 2.76}) {
                const auto profile =
                    DephasingProfile::analytic_zero_t(SqueezedBathSpec::make(r, theta));
                const QslRecord rec = qsl_time(p, profile, 1.0);
                const double closed =
                    std::abs(p.c1 - p.c2) * (1.0 - attenuation(profile, 1.0)) / 4.0;
                worst_lambda = std::max(worst_lambda, std::abs(rec.lambda_op - closed));
                worst_flat = std::max(
                    worst_flat, std::abs(rec.tau_qsl - 0.5 * std::abs(p.c1 - p.c2)));
            }
        detail.str("");
        detail << "max |Lambda - closed| = " << worst_lambda
               << ", max |tau_qsl - tau |c1-c2|/2| = " << worst_flat;
        report.check("QSL operator-norm integral identities",
                     worst_lambda < 1e-8 && worst_flat < 1e-7, detail.str());
    }

    // stationary states
    {
        const XStateParams p = XStateParams::make(0.3, 0.3, 0.2);
        const auto profile = DephasingProfile::analytic_zero_t(SqueezedBathSpec::make(0.5, 0.0));
        const double r_avg = amplification_rate(p, profile, 3.0, RateConvention::TimeAverage);
        const double r_plain = amplification_rate(p, profile, 3.0, RateConvention::PlainIntegral);
        const QslRecord rec = qsl_time(p, profile, 1.0);
        detail.str("");
        detail << "R_avg = " << r_avg << ", R_plain = " << r_plain
               << ", tau_qsl = " << rec.tau_qsl;
        report.check("stationary-state conventions",
                     std::abs(r_avg - 1.0) < 1e-9 && std::abs(r_plain - 3.0) < 1e-9 &&
                         rec.stationary && rec.tau_qsl == 0.0,
                     detail.str());
    }

    std::cout << (report.failures == 0 ? "validate: all checks passed\n"
                                       : "validate: FAILURES present\n");
    return report.failures;
}

// ------------------------------- dispatch ----------------------------------

CommandResult run_command(const std::string& command, const json& config) {
    if (command == "validate") {
        require_keys(config, "config", {"fast"});
        const bool fast = config.value("fast", false);
        const int failures = run_validate(fast);
        CommandResult result;
        result.exit_code = failures == 0 ? 0 : 3;
        return result;
    }
    const Scenario sc = parse_scenario(config);
    if (command == "trace") return run_trace(sc, config);
    if (command == "critical") return run_critical(sc, config);
    if (command == "phase") return run_phase(sc, config);
    if (command == "amplify") return run_amplify(sc, config);
    if (command == "qsl") return run_qsl(sc, config);
    throw ConfigError("unknown command: " + command);
}

// -------------------------------- presets ----------------------------------

namespace {

struct PresetRun {
    std::string command;
    json config;
};

json grid_range(double lo, double hi, int count) {
    return {{"min", lo}, {"max", hi}, {"count", count}};
}

std::vector<PresetRun> preset_runs(const std::string& name, const std::string& out_dir) {
    auto out = [&](const std::string& file) {
        return json{{"path", out_dir + "/" + file}, {"format", "csv"}};
    };
    auto out_json = [&](const std::string& file) {
        return json{{"path", out_dir + "/" + file}, {"format", "json"}};
    };
    const json finite_state = {{"c1", 0.5}, {"c2", 0.0}, {"c3", 0.3}};
    const json infinite_state = {{"c1", 0.9}, {"c2", 0.6}, {"c3", -0.6}};
    const double pi = kPi;

    if (name == "fig1-theta")
        return {{"trace",
                 {{"state", finite_state},
                  {"bath", {{"r", 0.5}, {"theta", 0.0}}},
                  {"grid",
                   {{"tau", grid_range(0.0, 6.0, 601)},
                    {"theta_values", {0.0, pi / 4, pi / 2}},
                    {"r_values", {0.5}}}},
                  {"output", out("fig1_theta.csv")}}}};
    if (name == "fig1-r")
        return {{"trace",
                 {{"state", finite_state},
                  {"bath", {{"r", 0.5}, {"theta", pi / 2}}},
                  {"grid",
                   {{"tau", grid_range(0.0, 6.0, 601)},
                    {"theta_values", {pi / 2}},
                    {"r_values", {0.1, 0.5, 1.0}}}},
                  {"output", out("fig1_r.csv")}}}};
    if (name == "fig2")
        return {{"critical",
                 {{"state", finite_state},
                  {"bath", {{"r", 0.5}, {"theta", 0.0}}},
                  {"grid",
                   {{"c1", grid_range(0.305, 0.595, 59)},
                    {"theta_values", {0.0, pi / 4, pi / 2}},
                    {"r_values", {0.0, 0.1, 0.5, 1.0}}}},
                  {"output", out_json("fig2.json")}}}};
    if (name == "fig3" || name == "fig6") {
        const bool finite = name == "fig3";
        std::vector<PresetRun> runs;
        const std::vector<std::pair<double, double>> panels = {
            {0.5, 0.0}, {0.5, pi / 2}, {0.1, pi / 2}, {1.0, pi / 2}};
        for (const auto& [r, theta] : panels) {
            char file[64];
            std::snprintf(file, sizeof(file), "%s_r%.2f_th%.2f.csv", name.c_str(), r, theta);
            runs.push_back(
                {"phase",
                 {{"state", finite ? json{{"c1", 0.5}, {"c2", 0.0}, {"c3", 0.3}}
                                   : json{{"c1", 0.8}, {"c2", 0.6}, {"c3", -0.6}}},
                  {"bath", {{"r", r}, {"theta", theta}}},
                  {"grid",
                   {{"c1", finite ? grid_range(0.0, 0.7, 71) : grid_range(0.6, 1.0, 41)},
                    {"tau", grid_range(0.0, 3.0, 121)}}},
                  {"output", out(file)}}});
        }
        return runs;
    }
    if (name == "fig4")
        return {{"amplify",
                 {{"state", finite_state},
                  {"bath", {{"r", 0.5}, {"theta", 0.0}}},
                  {"grid",
                   {{"c1", grid_range(0.32, 0.68, 73)},
                    {"theta_values", {0.0, pi / 4, pi / 2}},
                    {"r_values", {0.1, 0.5, 1.0}}}},
                  {"horizon", 3.0},
                  {"output", out("fig4.csv")}}}};
    if (name == "fig5-theta")
        return {{"trace",
                 {{"state", infinite_state},
                  {"bath", {{"r", 0.5}, {"theta", 0.0}}},
                  {"grid",
                   {{"tau", grid_range(0.0, 8.0, 801)},
                    {"theta_values", {0.0, pi / 4, pi / 2}},
                    {"r_values", {0.5}}}},
                  {"output", out("fig5_theta.csv")}}}};
    if (name == "fig5-r")
        return {{"trace",
                 {{"state", infinite_state},
                  {"bath", {{"r", 0.5}, {"theta", pi / 2}}},
                  {"grid",
                   {{"tau", grid_range(0.0, 8.0, 801)},
                    {"theta_values", {pi / 2}},
                    {"r_values", {0.1, 0.5, 1.0}}}},
                  {"output", out("fig5_r.csv")}}}};
    if (name == "fig8")
        return {{"amplify",
                 {{"state", infinite_state},
                  {"bath", {{"r", 0.5}, {"theta", 0.0}}},
                  {"grid",
                   {{"c1", grid_range(0.61, 0.99, 39)},
                    {"theta_values", {0.0, pi / 4, pi / 2}},
                    {"r_values", {0.1, 0.5, 1.0}}}},
                  {"output", out("fig8.csv")}}},
                {"amplify",
                 {{"state", infinite_state},
                  {"bath", {{"r", 0.5}, {"theta", 0.0}}},
                  {"grid", {{"theta", grid_range(0.0, pi, 33)}, {"r_values", {0.5}}}},
                  {"output", out("fig8_inset_theta.csv")}}},
                {"amplify",
                 {{"state", infinite_state},
                  {"bath", {{"r", 0.5}, {"theta", pi / 2}}},
                  {"grid", {{"r", grid_range(0.01, 1.0, 34)}, {"theta_values", {pi / 2}}}},
                  {"output", out("fig8_inset_r.csv")}}}};
    if (name == "fig9a")
        return {{"qsl",
                 {{"state", finite_state},
                  {"bath", {{"r", 0.5}, {"theta", 0.0}}},
                  {"grid",
                   {{"c1", grid_range(0.05, 0.65, 61)},
                    {"theta", grid_range(0.0, 2.0 * pi, 65)},
                    {"r_values", {0.5}}}},
                  {"drive_time", 1.0},
                  {"output", out("fig9a.csv")}}}};
    if (name == "fig9b")
        return {{"qsl",
                 {{"state", finite_state},
                  {"bath", {{"r", 0.5}, {"theta", pi / 2}}},
                  {"grid",
                   {{"c1", grid_range(0.05, 0.65, 61)},
                    {"r", grid_range(0.01, 1.0, 50)},
                    {"theta_values", {pi / 2}}}},
                  {"drive_time", 1.0},
                  {"output", out("fig9b.csv")}}}};
    throw ConfigError("unknown preset: " + name);
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"fig1-theta", "fig1-r", "fig2", "fig3", "fig4",
            "fig5-theta", "fig5-r", "fig6", "fig8", "fig9a", "fig9b"};
}

std::vector<std::string> run_preset(const std::string& name, const std::string& out_dir,
                                    unsigned workers) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir + ": " + ec.message());
    std::vector<std::string> files;
    for (PresetRun& run : preset_runs(name, out_dir)) {
        if (workers != 0) run.config["workers"] = workers;
        run_command(run.command, run.config);
        files.push_back(run.config["output"]["path"].get<std::string>());
    }
    return files;
}

}  // namespace sqzd::cli
