#include "kicked/fft.hpp"

#include <mutex>
#include <stdexcept>

namespace kicked::fft {

namespace {
// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

Transform::Transform(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("Transform: size must be positive");
    cvector scratch(n);
    auto* raw = reinterpret_cast<fftw_complex*>(scratch.data());
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_1d(static_cast<int>(n), raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(static_cast<int>(n), raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!fwd_ || !bwd_) throw std::runtime_error("Transform: FFTW planning failed");
}

Transform::~Transform() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
}

void Transform::forward(cvector& data) const {
    if (data.size() != n_) throw std::invalid_argument("Transform::forward: size mismatch");
    auto* raw = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(fwd_, raw, raw);
}

void Transform::backward(cvector& data) const {
    if (data.size() != n_) throw std::invalid_argument("Transform::backward: size mismatch");
    auto* raw = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(bwd_, raw, raw);
}

}  // namespace kicked::fft
