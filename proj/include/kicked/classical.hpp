#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace kicked::classical {

// Phase-space point of the kicked-Gaussian map, sampled just before a kick.
struct PhaseState {
    double x = 0.0;
    double p = 0.0;
};

struct MapParams {
    double K = 1.0;        // kick strength
    double sigma_t = 0.0;  // std deviation of the kick-interval jitter
    std::uint64_t seed = 0;
};

// Impulse delivered by one kick at position x: K x exp(-x^2/2).
double kick_impulse(double x, double K);
// d/dx of the impulse: K (1 - x^2) exp(-x^2/2).
double kick_impulse_slope(double x, double K);

// One map step: p' = p - K x exp(-x^2/2), x' = x + (1 + dt_noise) p'.
PhaseState map_step(PhaseState s, const MapParams& params, double dt_noise = 0.0);
PhaseState inverse_map_step(PhaseState s, const MapParams& params, double dt_noise = 0.0);

// Involution factorization M = J2 o J1. J1 fixes the symmetry line p = 0
// pointwise, so symmetric periodic orbits can be searched on that line.
PhaseState involution_j1(PhaseState s);
PhaseState involution_j2(PhaseState s, double K);

// 2x2 Jacobian in (dx, dp) ordering; row i is the gradient of the i-th output.
struct TangentMatrix {
    double m11 = 1.0, m12 = 0.0;
    double m21 = 0.0, m22 = 1.0;

    double trace() const { return m11 + m22; }
    double det() const { return m11 * m22 - m12 * m21; }
    TangentMatrix operator*(const TangentMatrix& rhs) const;
};

// One-kick Jacobian of the noiseless map at s.
TangentMatrix tangent_map(PhaseState s, double K);

// Rotation angle of the elliptic fixed point at the origin, 0 < K < 4.
// Quadrant-correct: omega in (0, pi), equal to the argument of the
// eigenvalue (2-K)/2 + i sqrt(K(4-K))/2. Throws std::domain_error otherwise.
double orbit_rotation_angle(double K);

struct PeriodicOrbit {
    int r = 1;                       // period in kicks
    std::vector<PhaseState> points;  // the r orbit points, starting on p = 0
    double trace = 0.0;              // trace of the tangent map of M^r
    std::optional<double> omega;     // rotation angle, present iff |trace| < 2

    bool elliptic() const { return omega.has_value(); }
};

struct OrbitSearch {
    double x_lo = 0.0;
    double x_hi = 1.0;
    double scan_step = 1e-3;   // sign-change scan resolution on p = 0
    double tolerance = 1e-12;  // bisection target for the return residual
};

// All period-r orbits with a point on the symmetry line p = 0 inside
// [x_lo, x_hi]: roots of g(x) = p-component of M^r(x, 0). Roots that do not
// return in x as well, belong to an orbit already found, or are fixed points
// of a proper divisor of r are discarded.
std::vector<PeriodicOrbit> find_periodic_orbits(double K, int r, const OrbitSearch& search);

struct Ensemble {
    std::vector<PhaseState> states;  // equally weighted; index order is preserved

    std::size_t size() const { return states.size(); }
};

// n independent draws from the Gaussian density centered at (x0, p0) with
// widths (dx, dp). Deterministic for a given seed.
Ensemble sample_gaussian_ensemble(double x0, double p0, double dx, double dp,
                                  std::size_t n, std::uint64_t seed);

// Kick-interval jitter dt_n ~ N(0, sigma_t), one entry per kick, shared by
// every trajectory (the noise is temporal). sigma_t = 0 gives exact zeros.
std::vector<double> noise_sequence(std::size_t kicks, double sigma_t,
                                   std::uint64_t seed, std::uint64_t stream = 0);

// Iterate every trajectory `kicks` times. `noise` must have `kicks` entries
// or be empty; empty with sigma_t > 0 generates the sequence from params.
void evolve_ensemble_in_place(Ensemble& e, const MapParams& params, int kicks,
                              std::span<const double> noise = {});
Ensemble evolve_ensemble(const Ensemble& e, const MapParams& params, int kicks,
                         std::span<const double> noise = {});

struct PhaseBounds {
    double x_lo, x_hi;
    double p_lo, p_hi;
};

// Liouville density coarse-grained to square cells of side sqrt(tau).
struct CoarseDensity {
    double cell_side = 0.0;
    double x0 = 0.0, p0 = 0.0;  // lower-left corner of cell (0, 0)
    int nx = 0, np = 0;
    std::vector<double> counts;  // row-major [ip * nx + ix], sums to 1

    bool same_grid(const CoarseDensity& other) const;
};

// Histogram of the ensemble on cells of area tau; counts are normalized to
// the weight falling inside `bounds`. Throws if nothing lands inside.
CoarseDensity coarse_grain(const Ensemble& e, double tau, const PhaseBounds& bounds);

// Cosine overlap sum(p1 p2) / sqrt(sum p1^2 sum p2^2) in [0, 1].
double classical_fidelity(const CoarseDensity& d1, const CoarseDensity& d2);

// Per-kick fractions of trajectories left of -x_b, right of +x_b, and in
// between. Entry k corresponds to the state after k kicks (entry 0 = initial).
struct ClassicalScatterTrace {
    std::vector<double> left, right, center;
    double x_b = 0.0;
};

ClassicalScatterTrace classical_scatter(const Ensemble& e, const MapParams& params,
                                        int kicks, double x_b,
                                        std::span<const double> noise = {});

}  // namespace kicked::classical
