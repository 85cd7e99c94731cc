#include "kicked/classical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kicked/rng.hpp"

namespace kicked::classical {

double kick_impulse(double x, double K) {
    return K * x * std::exp(-0.5 * x * x);
}

double kick_impulse_slope(double x, double K) {
    return K * (1.0 - x * x) * std::exp(-0.5 * x * x);
}

PhaseState map_step(PhaseState s, const MapParams& params, double dt_noise) {
    const double p_next = s.p - kick_impulse(s.x, params.K);
    const double x_next = s.x + (1.0 + dt_noise) * p_next;
    return {x_next, p_next};
}

PhaseState inverse_map_step(PhaseState s, const MapParams& params, double dt_noise) {
    const double x_prev = s.x - (1.0 + dt_noise) * s.p;
    const double p_prev = s.p + kick_impulse(x_prev, params.K);
    return {x_prev, p_prev};
}

PhaseState involution_j1(PhaseState s) {
    // p -> -p followed by the x-update with the new momentum, x -> x + p'.
    return {s.x - s.p, -s.p};
}

PhaseState involution_j2(PhaseState s, double K) {
    // Closed form of M o J1; an involution because J1 reverses M.
    const double u = s.x - s.p;
    const double impulse = kick_impulse(u, K);
    return {u - s.p - impulse, -s.p - impulse};
}

TangentMatrix TangentMatrix::operator*(const TangentMatrix& rhs) const {
    return {m11 * rhs.m11 + m12 * rhs.m21, m11 * rhs.m12 + m12 * rhs.m22,
            m21 * rhs.m11 + m22 * rhs.m21, m21 * rhs.m12 + m22 * rhs.m22};
}

TangentMatrix tangent_map(PhaseState s, double K) {
    // dp' = dp - f'(x) dx, dx' = dx + dp'.
    const double slope = kick_impulse_slope(s.x, K);
    return {1.0 - slope, 1.0, -slope, 1.0};
}

double orbit_rotation_angle(double K) {
    if (!(K > 0.0 && K < 4.0)) {
        throw std::domain_error("orbit_rotation_angle: fixed point is elliptic only for 0 < K < 4");
    }
    return std::atan2(std::sqrt(K * (4.0 - K)), 2.0 - K);
}

namespace {

PhaseState iterate(PhaseState s, double K, int steps) {
    const MapParams params{K, 0.0, 0};
    for (int i = 0; i < steps; ++i) {
        s = map_step(s, params);
    }
    return s;
}

// p-component of M^r applied to (x, 0); roots mark symmetric periodic points.
double symmetry_line_residual(double x, double K, int r) {
    return iterate({x, 0.0}, K, r).p;
}

std::optional<double> elliptic_angle(double trace) {
    if (std::abs(trace) >= 2.0) {
        return std::nullopt;
    }
    return std::acos(std::clamp(0.5 * trace, -1.0, 1.0));
}

PeriodicOrbit build_orbit(double x_root, double K, int r) {
    PeriodicOrbit orbit;
    orbit.r = r;
    orbit.points.reserve(static_cast<std::size_t>(r));
    const MapParams params{K, 0.0, 0};
    PhaseState s{x_root, 0.0};
    TangentMatrix product;
    for (int i = 0; i < r; ++i) {
        orbit.points.push_back(s);
        product = tangent_map(s, K) * product;
        s = map_step(s, params);
    }
    orbit.trace = product.trace();
    orbit.omega = elliptic_angle(orbit.trace);
    return orbit;
}

}  // namespace

std::vector<PeriodicOrbit> find_periodic_orbits(double K, int r, const OrbitSearch& search) {
    if (r < 1) {
        throw std::invalid_argument("find_periodic_orbits: period must be >= 1");
    }
    if (!(search.x_hi > search.x_lo) || !(search.scan_step > 0.0)) {
        throw std::invalid_argument("find_periodic_orbits: bad search range");
    }

    std::vector<double> roots;
    double x_prev = search.x_lo;
    double g_prev = symmetry_line_residual(x_prev, K, r);
    const auto steps = static_cast<long>(std::ceil((search.x_hi - search.x_lo) / search.scan_step));
    for (long i = 1; i <= steps; ++i) {
        const double x = std::min(search.x_lo + static_cast<double>(i) * search.scan_step, search.x_hi);
        const double g = symmetry_line_residual(x, K, r);
        if (g_prev == 0.0) {
            roots.push_back(x_prev);
        } else if (g_prev * g < 0.0) {
            double lo = x_prev, hi = x, g_lo = g_prev;
            for (int iter = 0; iter < 200; ++iter) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) break;
                const double g_mid = symmetry_line_residual(mid, K, r);
                if (g_mid == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (g_lo * g_mid < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    g_lo = g_mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        x_prev = x;
        g_prev = g;
    }

    const double match_tol = 1e-6;
    std::vector<PeriodicOrbit> orbits;
    for (const double x_root : roots) {
        const PhaseState start{x_root, 0.0};
        const PhaseState back = iterate(start, K, r);
        if (std::abs(back.p) > std::max(search.tolerance, 1e-9) ||
            std::abs(back.x - start.x) > match_tol) {
            continue;  // on the symmetry line but not period r (e.g. period 2r)
        }

        // Fixed point of a proper divisor of r belongs to a shorter orbit.
        bool divisor_orbit = false;
        for (int d = 1; d < r && !divisor_orbit; ++d) {
            if (r % d != 0) continue;
            const PhaseState ret = iterate(start, K, d);
            divisor_orbit = std::abs(ret.x - start.x) < match_tol && std::abs(ret.p) < match_tol;
        }
        if (divisor_orbit) continue;

        PeriodicOrbit orbit = build_orbit(x_root, K, r);
        bool duplicate = false;
        for (const PeriodicOrbit& known : orbits) {
            for (const PhaseState& pt : known.points) {
                if (std::abs(pt.x - x_root) < match_tol && std::abs(pt.p) < match_tol) {
                    duplicate = true;
                    break;
                }
            }
            if (duplicate) break;
        }
        if (!duplicate) {
            orbits.push_back(std::move(orbit));
        }
    }
    std::sort(orbits.begin(), orbits.end(),
              [](const PeriodicOrbit& a, const PeriodicOrbit& b) { return a.points[0].x < b.points[0].x; });
    return orbits;
}

Ensemble sample_gaussian_ensemble(double x0, double p0, double dx, double dp,
                                  std::size_t n, std::uint64_t seed) {
    if (!(dx > 0.0) || !(dp > 0.0)) {
        throw std::invalid_argument("sample_gaussian_ensemble: widths must be positive");
    }
    if (n == 0) {
        throw std::invalid_argument("sample_gaussian_ensemble: need at least one sample");
    }
    rng::GaussianStream gauss(seed, 0);
    Ensemble e;
    e.states.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double gx = gauss.next();
        const double gp = gauss.next();
        e.states[i] = {x0 + dx * gx, p0 + dp * gp};
    }
    return e;
}

std::vector<double> noise_sequence(std::size_t kicks, double sigma_t,
                                   std::uint64_t seed, std::uint64_t stream) {
    if (sigma_t < 0.0) {
        throw std::invalid_argument("noise_sequence: sigma_t must be >= 0");
    }
    std::vector<double> noise(kicks, 0.0);
    if (sigma_t > 0.0) {
        rng::GaussianStream gauss(seed, stream + 1);
        for (double& dt : noise) {
            dt = sigma_t * gauss.next();
        }
    }
    return noise;
}

void evolve_ensemble_in_place(Ensemble& e, const MapParams& params, int kicks,
                              std::span<const double> noise) {
    if (kicks < 0) {
        throw std::invalid_argument("evolve_ensemble: negative kick count");
    }
    std::vector<double> generated;
    if (noise.empty() && params.sigma_t > 0.0) {
        generated = noise_sequence(static_cast<std::size_t>(kicks), params.sigma_t, params.seed);
        noise = generated;
    }
    if (!noise.empty() && noise.size() < static_cast<std::size_t>(kicks)) {
        throw std::invalid_argument("evolve_ensemble: noise sequence shorter than kick count");
    }
    for (PhaseState& s : e.states) {
        for (int k = 0; k < kicks; ++k) {
            s = map_step(s, params, noise.empty() ? 0.0 : noise[static_cast<std::size_t>(k)]);
        }
    }
}

Ensemble evolve_ensemble(const Ensemble& e, const MapParams& params, int kicks,
                         std::span<const double> noise) {
    Ensemble out = e;
    evolve_ensemble_in_place(out, params, kicks, noise);
    return out;
}

bool CoarseDensity::same_grid(const CoarseDensity& other) const {
    return cell_side == other.cell_side && x0 == other.x0 && p0 == other.p0 &&
           nx == other.nx && np == other.np;
}

CoarseDensity coarse_grain(const Ensemble& e, double tau, const PhaseBounds& bounds) {
    if (!(tau > 0.0)) {
        throw std::invalid_argument("coarse_grain: tau must be positive");
    }
    if (!(bounds.x_hi > bounds.x_lo) || !(bounds.p_hi > bounds.p_lo)) {
        throw std::invalid_argument("coarse_grain: empty bounds");
    }
    CoarseDensity d;
    d.cell_side = std::sqrt(tau);
    d.x0 = bounds.x_lo;
    d.p0 = bounds.p_lo;
    d.nx = static_cast<int>(std::ceil((bounds.x_hi - bounds.x_lo) / d.cell_side));
    d.np = static_cast<int>(std::ceil((bounds.p_hi - bounds.p_lo) / d.cell_side));
    d.counts.assign(static_cast<std::size_t>(d.nx) * static_cast<std::size_t>(d.np), 0.0);

    std::size_t inside = 0;
    for (const PhaseState& s : e.states) {
        const int ix = static_cast<int>(std::floor((s.x - d.x0) / d.cell_side));
        const int ip = static_cast<int>(std::floor((s.p - d.p0) / d.cell_side));
        if (ix < 0 || ix >= d.nx || ip < 0 || ip >= d.np) continue;
        d.counts[static_cast<std::size_t>(ip) * static_cast<std::size_t>(d.nx) +
                 static_cast<std::size_t>(ix)] += 1.0;
        ++inside;
    }
    if (inside == 0) {
        throw std::runtime_error("coarse_grain: no ensemble weight inside bounds");
    }
    const double inv_total = 1.0 / static_cast<double>(inside);
    for (double& c : d.counts) c *= inv_total;
    return d;
}

double classical_fidelity(const CoarseDensity& d1, const CoarseDensity& d2) {
    if (!d1.same_grid(d2)) {
        throw std::invalid_argument("classical_fidelity: density grids differ");
    }
    double dot = 0.0, n1 = 0.0, n2 = 0.0;
    for (std::size_t i = 0; i < d1.counts.size(); ++i) {
        dot += d1.counts[i] * d2.counts[i];
        n1 += d1.counts[i] * d1.counts[i];
        n2 += d2.counts[i] * d2.counts[i];
    }
    if (n1 == 0.0 || n2 == 0.0) {
        throw std::runtime_error("classical_fidelity: zero density");
    }
    return dot / std::sqrt(n1 * n2);
}

ClassicalScatterTrace classical_scatter(const Ensemble& e, const MapParams& params,
                                        int kicks, double x_b,
                                        std::span<const double> noise) {
    if (!(x_b > 0.0)) {
        throw std::invalid_argument("classical_scatter: x_b must be positive");
    }
    if (e.states.empty()) {
        throw std::invalid_argument("classical_scatter: empty ensemble");
    }
    std::vector<double> generated;
    if (noise.empty() && params.sigma_t > 0.0) {
        generated = noise_sequence(static_cast<std::size_t>(kicks), params.sigma_t, params.seed);
        noise = generated;
    }

    ClassicalScatterTrace trace;
    trace.x_b = x_b;
    trace.left.reserve(static_cast<std::size_t>(kicks) + 1);
    trace.right.reserve(static_cast<std::size_t>(kicks) + 1);
    trace.center.reserve(static_cast<std::size_t>(kicks) + 1);

    Ensemble current = e;
    const double inv_n = 1.0 / static_cast<double>(current.size());
    auto record = [&] {
        std::size_t n_left = 0, n_right = 0;
        for (const PhaseState& s : current.states) {
            if (s.x < -x_b) {
                ++n_left;
            } else if (s.x > x_b) {
                ++n_right;
            }
        }
        const double l = static_cast<double>(n_left) * inv_n;
        const double r = static_cast<double>(n_right) * inv_n;
        trace.left.push_back(l);
        trace.right.push_back(r);
        trace.center.push_back(1.0 - l - r);
    };

    record();
    for (int k = 0; k < kicks; ++k) {
        const double dt = noise.empty() ? 0.0 : noise[static_cast<std::size_t>(k)];
        for (PhaseState& s : current.states) {
            s = map_step(s, params, dt);
        }
        record();
    }
    return trace;
}

}  // namespace kicked::classical
