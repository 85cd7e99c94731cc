#pragma once

#include <optional>
#include <vector>

namespace kicked {

// Parameters a trace was produced with, kept alongside the data so output
// files and reports can embed the provenance.
struct TraceConfig {
    double K1 = 0.0;
    double K2 = 0.0;
    double tau = 0.0;
    double x0 = 0.0;
    double p0 = 0.0;
    double sigma_t = 0.0;
    std::optional<double> x_b;  // window edge, when a window was applied
};

// Per-kick fidelity S(t); values[k] is S after k kicks, values[0] = 1.
struct FidelityTrace {
    std::vector<double> values;
    TraceConfig config;
};

// Per-kick scattering record. left/right are cumulative flux through the
// window edges -x_b / +x_b; center is the directly measured probability
// inside |x| <= x_b, so left + right + center = 1 only up to the flux
// integration error (that agreement is the built-in cross-check).
struct ScatterTrace {
    std::vector<double> left, right, center;
    double x_b = 0.0;
    double max_continuity_error = 0.0;  // max over kicks of |1 - L - R - C|
};

}  // namespace kicked
