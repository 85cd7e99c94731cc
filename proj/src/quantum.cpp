#include "kicked/quantum.hpp"

#include <algorithm>
#include <cmath>

namespace kicked::quantum {

namespace {

constexpr std::complex<double> kImag{0.0, 1.0};

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

double wrap_to_pi(double angle) {
    angle = std::fmod(angle, 2.0 * M_PI);
    if (angle > M_PI) angle -= 2.0 * M_PI;
    if (angle <= -M_PI) angle += 2.0 * M_PI;
    return angle;
}

}  // namespace

Grid Grid::make(double x_min, double x_max, std::size_t n, double tau) {
    if (!(x_max > x_min)) throw std::invalid_argument("Grid: x_max must exceed x_min");
    if (!is_power_of_two(n)) throw std::invalid_argument("Grid: n must be a power of two >= 2");
    if (!(tau > 0.0)) throw std::invalid_argument("Grid: tau must be positive");
    return Grid{x_min, x_max, n, tau};
}

double Wavefunction::norm() const {
    double sum = 0.0;
    for (const auto& a : amps) sum += std::norm(a);
    return sum * grid.dx();
}

Wavefunction gaussian_packet(const Grid& grid, double x0, double p0) {
    return gaussian_packet(grid, x0, p0, std::sqrt(grid.tau / 2.0));
}

Wavefunction gaussian_packet(const Grid& grid, double x0, double p0, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("gaussian_packet: width must be positive");
    if (x0 - 6.0 * width < grid.x_min || x0 + 6.0 * width > grid.x_max) {
        throw std::invalid_argument("gaussian_packet: packet tails clipped by the grid domain");
    }
    Wavefunction psi{grid, fft::cvector(grid.n)};
    const double inv_four_w2 = 1.0 / (4.0 * width * width);
    const double k0 = p0 / grid.tau;
    const double prefactor = std::pow(2.0 * M_PI * width * width, -0.25);
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double x = grid.x(j);
        const double d = x - x0;
        const double envelope = prefactor * std::exp(-d * d * inv_four_w2);
        psi.amps[j] = envelope * std::exp(kImag * (k0 * x));
    }
    const double scale = 1.0 / std::sqrt(psi.norm());
    for (auto& a : psi.amps) a *= scale;
    return psi;
}

std::complex<double> overlap(const Wavefunction& a, const Wavefunction& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("overlap: grids differ");
    std::complex<double> sum = 0.0;
    for (std::size_t j = 0; j < a.amps.size(); ++j) {
        sum += std::conj(a.amps[j]) * b.amps[j];
    }
    return sum * a.grid.dx();
}

double mean_x(const Wavefunction& psi) {
    double sum = 0.0, total = 0.0;
    for (std::size_t j = 0; j < psi.amps.size(); ++j) {
        const double w = std::norm(psi.amps[j]);
        sum += w * psi.grid.x(j);
        total += w;
    }
    return sum / total;
}

double var_x(const Wavefunction& psi) {
    const double mu = mean_x(psi);
    double sum = 0.0, total = 0.0;
    for (std::size_t j = 0; j < psi.amps.size(); ++j) {
        const double w = std::norm(psi.amps[j]);
        const double d = psi.grid.x(j) - mu;
        sum += w * d * d;
        total += w;
    }
    return sum / total;
}

namespace {

// Momentum-space weights |spectrum|^2, shared by the p-moment helpers.
std::vector<double> momentum_weights(const Wavefunction& psi) {
    fft::Transform transform(psi.grid.n);
    fft::cvector spectrum = psi.amps;
    transform.forward(spectrum);
    std::vector<double> weights(psi.grid.n);
    for (std::size_t j = 0; j < psi.grid.n; ++j) weights[j] = std::norm(spectrum[j]);
    return weights;
}

}  // namespace

double mean_p(const Wavefunction& psi) {
    const auto weights = momentum_weights(psi);
    double sum = 0.0, total = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        sum += weights[j] * psi.grid.p(j);
        total += weights[j];
    }
    return sum / total;
}

double mean_p2(const Wavefunction& psi) {
    const auto weights = momentum_weights(psi);
    double sum = 0.0, total = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        const double p = psi.grid.p(j);
        sum += weights[j] * p * p;
        total += weights[j];
    }
    return sum / total;
}

double window_mass(const Wavefunction& psi, double x_b) {
    double sum = 0.0;
    for (std::size_t j = 0; j < psi.amps.size(); ++j) {
        if (std::abs(psi.grid.x(j)) <= x_b) sum += std::norm(psi.amps[j]);
    }
    return sum * psi.grid.dx();
}

std::complex<double> window_overlap(const Wavefunction& a, const Wavefunction& b, double x_b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("window_overlap: grids differ");
    std::complex<double> sum = 0.0;
    for (std::size_t j = 0; j < a.amps.size(); ++j) {
        if (std::abs(a.grid.x(j)) <= x_b) sum += std::conj(a.amps[j]) * b.amps[j];
    }
    return sum * a.grid.dx();
}

Propagator::Propagator(const Grid& grid, double K)
    : grid_(Grid::make(grid.x_min, grid.x_max, grid.n, grid.tau)),
      K_(K),
      transform_(std::make_shared<fft::Transform>(grid.n)),
      kick_phase_(grid.n),
      kinetic_angle_(grid.n),
      kinetic_factor_(grid.n) {
    const double inv_n = 1.0 / static_cast<double>(grid_.n);
    for (std::size_t j = 0; j < grid_.n; ++j) {
        const double x = grid_.x(j);
        kick_phase_[j] = std::exp(kImag * ((K_ / grid_.tau) * std::exp(-0.5 * x * x)));
        const double k = grid_.k(j);
        kinetic_angle_[j] = -0.5 * grid_.tau * k * k;  // == -p^2 / (2 tau)
        kinetic_factor_[j] = std::exp(kImag * kinetic_angle_[j]) * inv_n;
    }
}

void Propagator::kick(Wavefunction& psi, double dt_noise) const {
    if (!(psi.grid == grid_)) throw std::invalid_argument("Propagator::kick: grid mismatch");
    for (std::size_t j = 0; j < psi.amps.size(); ++j) psi.amps[j] *= kick_phase_[j];
    transform_->forward(psi.amps);
    if (dt_noise == 0.0) {
        for (std::size_t j = 0; j < psi.amps.size(); ++j) psi.amps[j] *= kinetic_factor_[j];
    } else {
        const double inv_n = 1.0 / static_cast<double>(grid_.n);
        const double stretch = 1.0 + dt_noise;
        for (std::size_t j = 0; j < psi.amps.size(); ++j) {
            psi.amps[j] *= std::exp(kImag * (kinetic_angle_[j] * stretch)) * inv_n;
        }
    }
    transform_->backward(psi.amps);
}

Wavefunction kick_step(const Wavefunction& psi, double K, double dt_noise) {
    Propagator propagator(psi.grid, K);
    Wavefunction out = psi;
    propagator.kick(out, dt_noise);
    return out;
}

namespace {

void check_noise_length(std::span<const double> noise, int kicks, const char* who) {
    if (!noise.empty() && noise.size() < static_cast<std::size_t>(kicks)) {
        throw std::invalid_argument(std::string(who) + ": noise sequence shorter than kick count");
    }
}

void check_norm(const Wavefunction& psi, const char* who) {
    const double drift = std::abs(psi.norm() - 1.0);
    if (drift > 1e-6) {
        throw NumericalError(std::string(who) + ": norm drift " + std::to_string(drift));
    }
}

}  // namespace

FidelityTrace fidelity_trace(const Wavefunction& phi0, double K1, double K2, int kicks,
                             std::span<const double> noise1, std::span<const double> noise2) {
    if (kicks < 0) throw std::invalid_argument("fidelity_trace: negative kick count");
    check_noise_length(noise1, kicks, "fidelity_trace");
    if (noise2.empty()) noise2 = noise1;
    check_noise_length(noise2, kicks, "fidelity_trace");

    const Propagator prop1(phi0.grid, K1);
    const Propagator prop2(phi0.grid, K2);
    Wavefunction psi1 = phi0;
    Wavefunction psi2 = phi0;

    FidelityTrace trace;
    trace.config.K1 = K1;
    trace.config.K2 = K2;
    trace.config.tau = phi0.grid.tau;
    trace.values.reserve(static_cast<std::size_t>(kicks) + 1);
    trace.values.push_back(std::norm(overlap(psi1, psi2)));
    for (int k = 0; k < kicks; ++k) {
        prop1.kick(psi1, noise1.empty() ? 0.0 : noise1[static_cast<std::size_t>(k)]);
        prop2.kick(psi2, noise2.empty() ? 0.0 : noise2[static_cast<std::size_t>(k)]);
        trace.values.push_back(std::norm(overlap(psi1, psi2)));
    }
    check_norm(psi1, "fidelity_trace");
    check_norm(psi2, "fidelity_trace");
    return trace;
}

FidelityTrace windowed_fidelity_trace(const Wavefunction& phi0, double K1, double K2,
                                      int kicks, double x_b,
                                      std::span<const double> noise1,
                                      std::span<const double> noise2) {
    if (kicks < 0) throw std::invalid_argument("windowed_fidelity_trace: negative kick count");
    if (!(x_b > 0.0) || x_b > std::min(-phi0.grid.x_min, phi0.grid.x_max)) {
        throw std::invalid_argument("windowed_fidelity_trace: window must lie inside the grid");
    }
    check_noise_length(noise1, kicks, "windowed_fidelity_trace");
    if (noise2.empty()) noise2 = noise1;
    check_noise_length(noise2, kicks, "windowed_fidelity_trace");

    const Propagator prop1(phi0.grid, K1);
    const Propagator prop2(phi0.grid, K2);
    Wavefunction psi1 = phi0;
    Wavefunction psi2 = phi0;

    FidelityTrace trace;
    trace.config.K1 = K1;
    trace.config.K2 = K2;
    trace.config.tau = phi0.grid.tau;
    trace.config.x_b = x_b;
    trace.values.reserve(static_cast<std::size_t>(kicks) + 1);

    auto record = [&] {
        const double m1 = window_mass(psi1, x_b);
        const double m2 = window_mass(psi2, x_b);
        if (m1 < 1e-12 || m2 < 1e-12) {
            throw NumericalError("windowed_fidelity_trace: wavepacket escaped the window");
        }
        const auto cross = window_overlap(psi1, psi2, x_b);
        trace.values.push_back(std::norm(cross) / (m1 * m2));
    };

    record();
    for (int k = 0; k < kicks; ++k) {
        prop1.kick(psi1, noise1.empty() ? 0.0 : noise1[static_cast<std::size_t>(k)]);
        prop2.kick(psi2, noise2.empty() ? 0.0 : noise2[static_cast<std::size_t>(k)]);
        record();
    }
    return trace;
}

WignerGrid WignerGrid::sample(const Grid& grid, std::size_t x_stride, std::size_t p_count) {
    if (x_stride == 0 || p_count == 0) {
        throw std::invalid_argument("WignerGrid: stride and p_count must be positive");
    }
    WignerGrid out;
    for (std::size_t j = 0; j < grid.n; j += x_stride) out.x.push_back(grid.x(j));
    out.dx = grid.dx() * static_cast<double>(x_stride);
    const double period = M_PI * grid.tau / grid.dx();
    out.dp = period / static_cast<double>(p_count);
    for (std::size_t j = 0; j < p_count; ++j) {
        out.p.push_back(-0.5 * period + static_cast<double>(j) * out.dp);
    }
    return out;
}

WignerField wigner(const Wavefunction& psi, const WignerGrid& sample_grid) {
    const Grid& grid = psi.grid;
    WignerField field;
    field.grid = sample_grid;
    field.tau = grid.tau;
    field.values.assign(sample_grid.x.size() * sample_grid.p.size(), 0.0);

    const double dx = grid.dx();
    const double prefactor = dx / (M_PI * grid.tau);  // (1/(2 pi tau)) * ds, ds = 2 dx
    for (std::size_t ix = 0; ix < sample_grid.x.size(); ++ix) {
        const auto j0 = static_cast<std::size_t>(
            std::llround((sample_grid.x[ix] - grid.x_min) / dx));
        if (j0 >= grid.n) continue;
        const std::size_t m_max = std::min(j0, grid.n - 1 - j0);

        for (std::size_t ip = 0; ip < sample_grid.p.size(); ++ip) {
            const double p = sample_grid.p[ip];
            // W = (ds/(2 pi tau)) [c_0 + 2 Re sum_m c_m e^{-2 i p m dx / tau}],
            // c_m = psi(x + m dx) conj(psi(x - m dx)).
            const std::complex<double> step = std::exp(kImag * (-2.0 * p * dx / grid.tau));
            std::complex<double> phase = step;
            double sum = std::norm(psi.amps[j0]);
            for (std::size_t m = 1; m <= m_max; ++m) {
                const std::complex<double> corr =
                    psi.amps[j0 + m] * std::conj(psi.amps[j0 - m]);
                sum += 2.0 * std::real(corr * phase);
                phase *= step;
            }
            field.values[ix * sample_grid.p.size() + ip] = prefactor * sum;
        }
    }
    return field;
}

double wigner_overlap(const WignerField& a, const WignerField& b) {
    if (a.values.size() != b.values.size() || a.tau != b.tau ||
        a.grid.dx != b.grid.dx || a.grid.dp != b.grid.dp) {
        throw std::invalid_argument("wigner_overlap: sample grids differ");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) sum += a.values[i] * b.values[i];
    return 2.0 * M_PI * a.tau * sum * a.grid.dx * a.grid.dp;
}

namespace {

// Parabolic refinement of a magnitude peak at bin k (circular neighbors).
double parabolic_offset(const std::vector<double>& mag, std::size_t k) {
    const std::size_t n = mag.size();
    const double ym = mag[(k + n - 1) % n];
    const double y0 = mag[k];
    const double yp = mag[(k + 1) % n];
    const double denom = ym - 2.0 * y0 + yp;
    if (denom == 0.0) return 0.0;
    return std::clamp(0.5 * (ym - yp) / denom, -0.5, 0.5);
}

}  // namespace

QuasiEnergySpectrum quasienergy_spectrum(const Wavefunction& phi0, double K, int kicks,
                                         double threshold) {
    if (kicks < 2) throw std::invalid_argument("quasienergy_spectrum: need at least 2 kicks");
    const auto m = static_cast<std::size_t>(kicks);

    const Propagator prop(phi0.grid, K);
    Wavefunction psi = phi0;
    fft::cvector c(m);
    for (std::size_t N = 0; N < m; ++N) {
        c[N] = overlap(phi0, psi);
        prop.kick(psi);
    }
    check_norm(psi, "quasienergy_spectrum");

    // Hann window keeps Dirichlet sidelobes of strong off-bin peaks below the
    // detection threshold.
    for (std::size_t N = 0; N < m; ++N) {
        c[N] *= 0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(N) / static_cast<double>(m)));
    }
    fft::Transform transform(m);
    transform.forward(c);
    std::vector<double> mag(m);
    for (std::size_t j = 0; j < m; ++j) mag[j] = std::abs(c[j]) / static_cast<double>(m);

    const double peak_floor = threshold * *std::max_element(mag.begin(), mag.end());

    QuasiEnergySpectrum spectrum;
    spectrum.resolution = 2.0 * M_PI / static_cast<double>(m);
    std::vector<std::pair<double, double>> peaks;  // (energy, weight)
    for (std::size_t j = 0; j < m; ++j) {
        if (mag[j] < peak_floor) continue;
        bool local_max = true;
        for (long d = -2; d <= 2 && local_max; ++d) {
            if (d == 0) continue;
            const std::size_t idx =
                static_cast<std::size_t>((static_cast<long>(j) + static_cast<long>(m) + d)) % m;
            if (mag[idx] > mag[j]) local_max = false;
        }
        if (!local_max) continue;
        const double bin = static_cast<double>(j) + parabolic_offset(mag, j);
        // Forward transform: a component e^{-i E N} shows up at bin E*m/(2 pi),
        // so the reported energy is the negative eigenphase of U1, mod 2 pi.
        peaks.emplace_back(wrap_to_pi(2.0 * M_PI * bin / static_cast<double>(m)), mag[j]);
    }
    std::sort(peaks.begin(), peaks.end());
    for (const auto& [energy, weight] : peaks) {
        spectrum.energies.push_back(energy);
        spectrum.weights.push_back(weight);
    }
    return spectrum;
}

// ---------------------------------------------------------------------------
// Scattering

namespace {

// Exact integral of |psi|^2 over |x| <= x_b for the band-limited interpolant:
// the spectrum is zero-padded to 2n (so |psi|^2 is alias-free on the fine
// grid) and integrated against precomputed window weights. Plain Riemann sums
// over a partial window cannot reach the 1e-6 continuity budget.
class WindowMassIntegrator {
  public:
    WindowMassIntegrator(const Grid& grid, double x_b)
        : grid_(grid), fine_(2 * grid.n), pad_(2 * grid.n), weights_(2 * grid.n) {
        const std::size_t n2 = 2 * grid_.n;
        fft::cvector s(n2);
        for (std::size_t j = 0; j < n2; ++j) {
            // Signed frequency of the fine grid bin, same layout as Grid::k.
            const double m = j < n2 / 2 ? static_cast<double>(j)
                                        : static_cast<double>(j) - static_cast<double>(n2);
            const double k = 2.0 * M_PI * m / grid_.length();
            if (k == 0.0) {
                s[j] = 2.0 * x_b;
            } else {
                const std::complex<double> hi = std::exp(kImag * (k * (x_b - grid_.x_min)));
                const std::complex<double> lo = std::exp(kImag * (k * (-x_b - grid_.x_min)));
                s[j] = (hi - lo) / (kImag * k);
            }
        }
        fine_.forward(s);
        const double inv_n2 = 1.0 / static_cast<double>(n2);
        for (std::size_t j = 0; j < n2; ++j) weights_[j] = std::real(s[j]) * inv_n2;
    }

    // `spectrum` is the unnormalized forward transform of the n samples.
    double mass(const fft::cvector& spectrum) {
        const std::size_t n = grid_.n;
        const std::size_t n2 = 2 * n;
        std::fill(pad_.begin(), pad_.end(), std::complex<double>(0.0));
        for (std::size_t m = 0; m < n; ++m) {
            const std::size_t dest = m < n / 2 ? m : m + n;
            pad_[dest] = spectrum[m];
        }
        fine_.backward(pad_);
        const double inv_n = 1.0 / static_cast<double>(n);
        double sum = 0.0;
        for (std::size_t j = 0; j < n2; ++j) {
            sum += std::norm(pad_[j] * inv_n) * weights_[j];
        }
        return sum;
    }

  private:
    Grid grid_;
    fft::Transform fine_;
    fft::cvector pad_;
    std::vector<double> weights_;
};

// Probability current j = tau Im(conj(psi) dpsi/dx) evaluated at one point
// from the momentum spectrum.
class EdgeProbe {
  public:
    EdgeProbe(const Grid& grid, double x0) : eval_(grid.n), deriv_(grid.n), inv_n_(1.0 / static_cast<double>(grid.n)), tau_(grid.tau) {
        for (std::size_t j = 0; j < grid.n; ++j) {
            const double k = grid.k(j);
            eval_[j] = std::exp(kImag * (k * (x0 - grid.x_min)));
            deriv_[j] = kImag * k * eval_[j];
        }
    }

    double current(const fft::cvector& spectrum) const {
        std::complex<double> value = 0.0;
        std::complex<double> slope = 0.0;
        for (std::size_t j = 0; j < spectrum.size(); ++j) {
            value += spectrum[j] * eval_[j];
            slope += spectrum[j] * deriv_[j];
        }
        value *= inv_n_;
        slope *= inv_n_;
        return tau_ * std::imag(std::conj(value) * slope);
    }

  private:
    fft::cvector eval_;
    fft::cvector deriv_;
    double inv_n_;
    double tau_;
};

}  // namespace

ScatterTrace scatter_trace(const Wavefunction& phi0, double K, int kicks,
                           const ScatterOptions& options) {
    const Grid& grid = phi0.grid;
    const double edge = std::min(-grid.x_min, grid.x_max);
    if (!(options.x_b > 0.0) || options.x_b >= edge) {
        throw std::invalid_argument("scatter_trace: x_b must lie inside the grid");
    }
    if (options.substeps < 2 || options.substeps % 2 != 0) {
        throw std::invalid_argument("scatter_trace: substeps must be a positive even count");
    }
    if (options.absorber_start && (*options.absorber_start <= options.x_b ||
                                   *options.absorber_start >= edge)) {
        throw std::invalid_argument("scatter_trace: absorber must start between x_b and the boundary");
    }

    const EdgeProbe left_probe(grid, -options.x_b);
    const EdgeProbe right_probe(grid, options.x_b);
    WindowMassIntegrator window(grid, options.x_b);

    fft::cvector kick_phase(grid.n);
    fft::cvector substep_factor(grid.n);  // flight factor for 1/substeps of a kick
    const double dt = 1.0 / static_cast<double>(options.substeps);
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double x = grid.x(j);
        kick_phase[j] = std::exp(kImag * ((K / grid.tau) * std::exp(-0.5 * x * x)));
        const double k = grid.k(j);
        substep_factor[j] = std::exp(kImag * (-0.5 * grid.tau * k * k * dt));
    }

    // Absorbing mask: cos^2 ramp from absorber_start to the domain edge.
    std::vector<double> mask;
    if (options.absorber_start) {
        mask.resize(grid.n, 1.0);
        const double a = *options.absorber_start;
        for (std::size_t j = 0; j < grid.n; ++j) {
            const double ax = std::abs(grid.x(j));
            if (ax > a) {
                const double ramp = std::min(1.0, (ax - a) / (edge - a));
                const double c = std::cos(0.5 * M_PI * ramp);
                mask[j] = c * c;
            }
        }
    }

    const std::size_t guard = std::max<std::size_t>(2, grid.n / 128);

    ScatterTrace trace;
    trace.x_b = options.x_b;
    trace.left.reserve(static_cast<std::size_t>(kicks) + 1);
    trace.right.reserve(static_cast<std::size_t>(kicks) + 1);
    trace.center.reserve(static_cast<std::size_t>(kicks) + 1);

    Wavefunction psi = phi0;
    fft::cvector spectrum(grid.n);

    double left_total = 0.0, right_total = 0.0;

    auto record = [&](double center) {
        trace.left.push_back(left_total);
        trace.right.push_back(right_total);
        trace.center.push_back(center);
        trace.max_continuity_error = std::max(
            trace.max_continuity_error, std::abs(1.0 - left_total - right_total - center));
    };

    fft::Transform transform(grid.n);
    spectrum = psi.amps;
    transform.forward(spectrum);
    record(window.mass(spectrum));

    const double inv_n = 1.0 / static_cast<double>(grid.n);
    for (int kick = 0; kick < kicks; ++kick) {
        for (std::size_t j = 0; j < grid.n; ++j) psi.amps[j] *= kick_phase[j];
        spectrum = psi.amps;
        transform.forward(spectrum);

        // Composite Simpson over the unit flight: nodes at i/substeps.
        double left_integral = 0.0, right_integral = 0.0;
        for (int node = 0; node <= options.substeps; ++node) {
            if (node > 0) {
                for (std::size_t j = 0; j < grid.n; ++j) spectrum[j] *= substep_factor[j];
            }
            const double weight =
                (node == 0 || node == options.substeps) ? 1.0 : (node % 2 == 1 ? 4.0 : 2.0);
            left_integral += weight * left_probe.current(spectrum);
            right_integral += weight * right_probe.current(spectrum);
        }
        const double simpson = dt / 3.0;
        left_total += -left_integral * simpson;   // outward flux at -x_b is -j
        right_total += right_integral * simpson;  // outward flux at +x_b is +j

        const double center = window.mass(spectrum);
        for (std::size_t j = 0; j < grid.n; ++j) psi.amps[j] = spectrum[j] * inv_n;
        transform.backward(psi.amps);

        if (!mask.empty()) {
            for (std::size_t j = 0; j < grid.n; ++j) psi.amps[j] *= mask[j];
        }
        for (std::size_t j = 0; j < guard; ++j) {
            if (std::abs(psi.amps[j]) > 1e-6 || std::abs(psi.amps[grid.n - 1 - j]) > 1e-6) {
                throw NumericalError("scatter_trace: probability reached the grid boundary");
            }
        }
        record(center);
    }
    return trace;
}

}  // namespace kicked::quantum
