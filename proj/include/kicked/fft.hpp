#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <vector>

#include <fftw3.h>

namespace kicked::fft {

// Allocator backed by fftw_malloc so every buffer satisfies FFTW's SIMD
// alignment and plans can be reused across arrays (new-array execute).
template <typename T>
struct FftwAllocator {
    using value_type = T;

    FftwAllocator() = default;
    template <typename U>
    FftwAllocator(const FftwAllocator<U>&) {}

    T* allocate(std::size_t n) {
        void* ptr = fftw_malloc(n * sizeof(T));
        if (!ptr) throw std::bad_alloc();
        return static_cast<T*>(ptr);
    }
    void deallocate(T* ptr, std::size_t) { fftw_free(ptr); }

    bool operator==(const FftwAllocator&) const { return true; }
    bool operator!=(const FftwAllocator&) const { return false; }
};

using cvector = std::vector<std::complex<double>, FftwAllocator<std::complex<double>>>;

// In-place 1D transform pair for a fixed size. Plans are created with
// FFTW_ESTIMATE: plan choice is then deterministic, which keeps outputs
// byte-identical between runs.
class Transform {
  public:
    explicit Transform(std::size_t n);
    ~Transform();
    Transform(const Transform&) = delete;
    Transform& operator=(const Transform&) = delete;

    std::size_t size() const { return n_; }
    void forward(cvector& data) const;   // unnormalized
    void backward(cvector& data) const;  // unnormalized (scale by 1/n yourself)

  private:
    std::size_t n_;
    fftw_plan fwd_;
    fftw_plan bwd_;
};

}  // namespace kicked::fft
