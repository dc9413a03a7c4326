#include "sqzd/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "sqzd/quad.hpp"
#include "sqzd/rootfind.hpp"
#include "sqzd/sweep.hpp"

namespace sqzd {

namespace {

double discord_at(const XStateParams& p, const DephasingProfile& profile, double tau) {
    const double alpha = (p.c1 - p.c2) * attenuation(profile, tau);
    return discord_closed(p, alpha).discord;
}

}  // namespace

std::vector<double> linear_grid(double lo, double hi, int count) {
    if (count < 1) throw ConfigError("linear_grid: count must be >= 1");
    if (count == 1) return {lo};
    if (!(hi > lo)) throw ConfigError("linear_grid: max must exceed min");
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * (static_cast<double>(i) / (count - 1));
    out.back() = hi;
    return out;
}

CriticalTimeResult classify_critical_time(const XStateParams& p,
                                          const DephasingProfile& profile) {
    const double corner = std::abs(p.c1 - p.c2);
    const double inner = std::abs(p.c1 + p.c2);
    const double c3 = std::abs(p.c3);
    const double omega_0 = 0.5 * (corner + inner);
    const double omega_inf = 0.5 * inner;

    CriticalTimeResult result;
    if (corner > 0.0) result.k_target = (2.0 * c3 - inner) / corner;
    if (omega_0 <= c3) {
        result.kind = CriticalKind::NoTransition;
        return result;
    }
    if (omega_inf >= c3) {
        result.kind = CriticalKind::Infinite;
        return result;
    }
    // Finite: solve corner * exp(-4 Gamma(tau)) = 2|c3| - inner.
    const double k = *result.k_target;  // in (0, 1) here
    auto excess = [&](double tau) { return attenuation(profile, tau) - k; };
    std::pair<double, double> bracket;
    try {
        bracket = grow_bracket_up(excess, 0.0, 1.0);
    } catch (const NumericalError& e) {
        std::ostringstream msg;
        msg << "classify_critical_time: bracket failure for k = " << k
            << " (c1 = " << p.c1 << ", c2 = " << p.c2 << ", c3 = " << p.c3
            << "): " << e.what();
        throw NumericalError(msg.str());
    }
    RootOptions opt;
    opt.x_tol = 1e-10;
    result.kind = CriticalKind::Finite;
    result.tau_c = find_root(excess, bracket.first, bracket.second, opt);
    return result;
}

std::vector<CorrelationRecord> trace(const TraceRequest& request) {
    const auto& grid = request.tau_grid;
    if (grid.empty()) throw ConfigError("trace: tau grid is empty");
    if (!(grid.front() >= 0.0)) throw ConfigError("trace: tau grid must start at tau >= 0");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw ConfigError("trace: tau grid must be strictly increasing");

    std::vector<CorrelationRecord> records(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double tau = grid[i];
        const double g = gamma_factor(request.profile, tau);
        const double alpha =
            (request.params.c1 - request.params.c2) * std::exp(-4.0 * std::max(0.0, g));
        records[i] = discord_closed(request.params, alpha);
        records[i].tau = tau;
        records[i].gamma = g;
    }
    return records;
}

double steady_state_discord(const XStateParams& params) {
    return discord_closed(params, 0.0).discord;
}

double amplification_rate(const XStateParams& params, const DephasingProfile& profile,
                          double horizon, RateConvention convention) {
    if (!(horizon > 0.0)) throw std::domain_error("amplification_rate: horizon must be > 0");
    const double q0 = discord_closed(params, params.c1 - params.c2).discord;
    if (q0 <= 1e-12)
        throw ConfigError("amplification_rate: undefined rate, initial discord is zero");

    QuadOptions opt;
    opt.rel_tol = 1e-8;
    opt.abs_tol = 1e-12;
    auto integrand = [&](double tau) { return discord_at(params, profile, tau); };

    // Q has a kink at the critical time; integrate the two branches separately.
    double split = horizon;
    const CriticalTimeResult critical = classify_critical_time(params, profile);
    if (critical.kind == CriticalKind::Finite && *critical.tau_c < horizon)
        split = *critical.tau_c;
    double integral = integrate_or_throw(integrand, 0.0, split, opt, "amplification_rate");
    if (split < horizon)
        integral += integrate_or_throw(integrand, split, horizon, opt, "amplification_rate");

    if (convention == RateConvention::TimeAverage) integral /= horizon;
    return integral / q0;
}

RateIntersection find_rate_intersection(double c2, double c3, const DephasingProfile& a,
                                        const DephasingProfile& b, double c1_lo,
                                        double c1_hi, double horizon,
                                        RateConvention convention) {
    auto difference = [&](double c1) {
        const XStateParams p = XStateParams::make(c1, c2, c3);
        return amplification_rate(p, a, horizon, convention) -
               amplification_rate(p, b, horizon, convention);
    };
    RootOptions opt;
    opt.x_tol = 1e-8;
    const double c1_star = find_root(difference, c1_lo, c1_hi, opt);
    const XStateParams p = XStateParams::make(c1_star, c2, c3);
    return {c1_star, amplification_rate(p, a, horizon, convention)};
}

PhaseDiagram phase_diagram(const PhaseDiagramRequest& request, unsigned workers) {
    PhaseDiagram out;
    out.c1 = linear_grid(request.c1_min, request.c1_max, request.c1_count);
    out.tau = linear_grid(request.tau_min, request.tau_max, request.tau_count);
    for (double tau : out.tau)
        if (!(tau >= 0.0)) throw ConfigError("phase_diagram: tau grid must be nonnegative");

    const std::size_t n_c1 = out.c1.size();
    const std::size_t n_tau = out.tau.size();
    out.q.assign(n_c1 * n_tau, std::numeric_limits<double>::quiet_NaN());
    out.valid.assign(n_c1 * n_tau, 0);

    // validity depends only on c1 (c2, c3 fixed), so classify rows up front
    std::vector<std::optional<XStateParams>> row_params(n_c1);
    std::size_t valid_rows = 0;
    for (std::size_t i = 0; i < n_c1; ++i) {
        try {
            row_params[i] = XStateParams::make(out.c1[i], request.c2, request.c3);
            ++valid_rows;
        } catch (const ConfigError&) {
            row_params[i] = std::nullopt;
        }
    }
    if (valid_rows == 0)
        throw ConfigError("phase_diagram: no physically valid c1 in the requested range");
    out.invalid_cells = (n_c1 - valid_rows) * n_tau;

    parallel_for_ordered(n_c1, workers, [&](std::size_t i) {
        if (!row_params[i]) return;
        const XStateParams& p = *row_params[i];
        for (std::size_t j = 0; j < n_tau; ++j) {
            out.q[i * n_tau + j] = discord_at(p, request.profile, out.tau[j]);
            out.valid[i * n_tau + j] = 1;
        }
    });
    return out;
}

}  // namespace sqzd
