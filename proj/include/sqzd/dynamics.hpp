// dynamics.hpp — correlation time series, sudden-change critical times,
// steady-state discord, amplification rates, phase diagrams
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sqzd/bath.hpp"
#include "sqzd/correlations.hpp"

namespace sqzd {

enum class CriticalKind { Finite, Infinite, NoTransition };

// Finite: chi switches branch at tau_c. Infinite: the Omega branch stays
// active for all finite times. NoTransition: chi = |c3| from tau = 0.
struct CriticalTimeResult {
    CriticalKind kind = CriticalKind::NoTransition;
    std::optional<double> tau_c;     // present iff Finite
    std::optional<double> k_target;  // (2|c3| - |c1+c2|)/|c1-c2|, iff c1 != c2
};

struct TraceRequest {
    XStateParams params;
    DephasingProfile profile;
    std::vector<double> tau_grid;  // strictly increasing, first entry >= 0
};

CriticalTimeResult classify_critical_time(const XStateParams& params,
                                          const DephasingProfile& profile);

/// Correlation record per grid point, in grid order.
std::vector<CorrelationRecord> trace(const TraceRequest& request);

/// The alpha -> 0 limit of the discord; independent of the bath by construction.
double steady_state_discord(const XStateParams& params);

enum class RateConvention { TimeAverage, PlainIntegral };

/// Ratio of the (time-averaged) discord over [0, horizon] to the initial
/// discord. PlainIntegral omits the 1/horizon factor.
double amplification_rate(const XStateParams& params, const DephasingProfile& profile,
                          double horizon = 3.0,
                          RateConvention convention = RateConvention::TimeAverage);

struct RateIntersection {
    double c1 = 0.0;
    double rate = 0.0;
};

/// Crossing of the two R(c1) curves (profiles a and b share c2, c3) located by
/// root bracketing on their difference over [c1_lo, c1_hi].
RateIntersection find_rate_intersection(double c2, double c3, const DephasingProfile& a,
                                        const DephasingProfile& b, double c1_lo,
                                        double c1_hi, double horizon = 3.0,
                                        RateConvention convention = RateConvention::TimeAverage);

struct PhaseDiagramRequest {
    double c1_min = 0.0;
    double c1_max = 0.0;
    int c1_count = 1;
    double c2 = 0.0;
    double c3 = 0.0;
    DephasingProfile profile;
    double tau_min = 0.0;
    double tau_max = 0.0;
    int tau_count = 1;
};

// Row-major Q grid: q[i_c1 * tau_count + i_tau]. Physically invalid c1 rows
// are masked (valid = 0, q = NaN).
struct PhaseDiagram {
    std::vector<double> c1;
    std::vector<double> tau;
    std::vector<double> q;
    std::vector<std::uint8_t> valid;
    std::size_t invalid_cells = 0;
};

PhaseDiagram phase_diagram(const PhaseDiagramRequest& request, unsigned workers = 1);

/// Uniform grid helper: count points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, int count);

}  // namespace sqzd
