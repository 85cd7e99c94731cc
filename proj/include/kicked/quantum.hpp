#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "kicked/fft.hpp"
#include "kicked/traces.hpp"

namespace kicked::quantum {

// Raised when an evolution leaves its numerical validity domain
// (norm drift, probability reaching the grid boundary).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Uniform periodic spatial grid with effective Planck constant tau,
// so p = -i tau d/dx and the momentum values are p_j = tau k_j.
struct Grid {
    double x_min = -40.0;
    double x_max = 40.0;
    std::size_t n = 1 << 14;  // power of two
    double tau = 0.01;

    double length() const { return x_max - x_min; }
    double dx() const { return length() / static_cast<double>(n); }
    double x(std::size_t j) const { return x_min + static_cast<double>(j) * dx(); }
    // Signed spatial frequency of spectrum bin j (standard FFT layout).
    double k(std::size_t j) const {
        const auto half = n / 2;
        const double m = j < half ? static_cast<double>(j)
                                  : static_cast<double>(j) - static_cast<double>(n);
        return 2.0 * M_PI * m / length();
    }
    double p(std::size_t j) const { return tau * k(j); }
    double p_max() const { return tau * M_PI / dx(); }

    bool operator==(const Grid&) const = default;

    static Grid make(double x_min, double x_max, std::size_t n, double tau);
};

struct Wavefunction {
    Grid grid;
    fft::cvector amps;

    double norm() const;  // sum |psi|^2 dx
};

// Minimal-uncertainty Gaussian packet, numerically normalized to 1.
// Default width sqrt(tau/2) gives dx_width = dp_width. Throws if the
// packet (x0 +- 6 width) does not fit inside the grid.
Wavefunction gaussian_packet(const Grid& grid, double x0, double p0);
Wavefunction gaussian_packet(const Grid& grid, double x0, double p0, double width);

std::complex<double> overlap(const Wavefunction& a, const Wavefunction& b);
double mean_x(const Wavefunction& psi);
double var_x(const Wavefunction& psi);
double mean_p(const Wavefunction& psi);
double mean_p2(const Wavefunction& psi);

// Riemann window integrals over |x| <= x_b.
double window_mass(const Wavefunction& psi, double x_b);
std::complex<double> window_overlap(const Wavefunction& a, const Wavefunction& b, double x_b);

// One-kick propagator U1 = exp(-i p^2 (1+dt)/(2 tau)) exp(i (K/tau) e^{-x^2/2}):
// kick phase in position space first, then the free flight spectrally.
class Propagator {
  public:
    Propagator(const Grid& grid, double K);

    const Grid& grid() const { return grid_; }
    double kick_strength() const { return K_; }
    void kick(Wavefunction& psi, double dt_noise = 0.0) const;

  private:
    Grid grid_;
    double K_;
    std::shared_ptr<const fft::Transform> transform_;
    fft::cvector kick_phase_;
    std::vector<double> kinetic_angle_;  // -tau k^2 / 2, per unit flight time
    fft::cvector kinetic_factor_;        // exp(i angle) / n for noiseless flight
};

Wavefunction kick_step(const Wavefunction& psi, double K, double dt_noise = 0.0);

// S(t) = |<psi1(t)|psi2(t)>|^2 per kick, both evolutions from phi0.
// noise2 empty means the pair shares noise1 (one jitter realization).
FidelityTrace fidelity_trace(const Wavefunction& phi0, double K1, double K2, int kicks,
                             std::span<const double> noise1 = {},
                             std::span<const double> noise2 = {});

// Window-normalized fidelity: all three integrals restricted to |x| <= x_b.
FidelityTrace windowed_fidelity_trace(const Wavefunction& phi0, double K1, double K2,
                                      int kicks, double x_b,
                                      std::span<const double> noise1 = {},
                                      std::span<const double> noise2 = {});

struct WignerGrid {
    std::vector<double> x, p;
    double dx = 0.0, dp = 0.0;  // uniform spacings, for quadrature

    // x sampled every x_stride grid points; p on a uniform grid of p_count
    // points covering exactly one period pi*tau/dx of the discrete transform
    // (that choice makes the p-marginal reproduce |psi(x)|^2).
    static WignerGrid sample(const Grid& grid, std::size_t x_stride, std::size_t p_count);
};

struct WignerField {
    WignerGrid grid;
    double tau = 0.0;
    std::vector<double> values;  // row-major [ix * np + ip]

    double at(std::size_t ix, std::size_t ip) const { return values[ix * grid.p.size() + ip]; }
};

WignerField wigner(const Wavefunction& psi, const WignerGrid& sample_grid);

// 2 pi tau integral of W1 W2 over the common sample grid; equals
// |<psi1|psi2>|^2 up to discretization error.
double wigner_overlap(const WignerField& a, const WignerField& b);

struct QuasiEnergySpectrum {
    std::vector<double> energies;  // peak positions in (-pi, pi], sorted
    std::vector<double> weights;   // peak magnitudes
    double resolution = 0.0;       // 2 pi / N_kicks
    std::optional<double> beta;    // ladder offset, when fitted
    std::optional<double> nu;      // island harmonic frequency, when known
};

// Fourier transform of the return amplitude c(N) = <phi0|psi(N)> over
// N = 0..kicks-1. Peaks are local maxima above `threshold` times the
// largest peak, refined by parabolic interpolation.
QuasiEnergySpectrum quasienergy_spectrum(const Wavefunction& phi0, double K, int kicks,
                                         double threshold = 1e-3);

struct ScatterOptions {
    double x_b = 4.0;
    int substeps = 32;  // Simpson nodes per kick for the flux time integral
    std::optional<double> absorber_start;  // cosine-ramp mask from here outward
};

// Cumulative probability flux through -x_b (left) and +x_b (right), with the
// window mass as center. Throws NumericalError if probability reaches the
// grid boundary (wraparound).
ScatterTrace scatter_trace(const Wavefunction& phi0, double K, int kicks,
                           const ScatterOptions& options);

}  // namespace kicked::quantum
