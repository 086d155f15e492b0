#include "gf/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace gf {

namespace {

// FFTW plan creation is not thread-safe; execution on disjoint buffers is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    fftw_complex* p = nullptr;
    explicit FftwBuffer(std::size_t n)
        : p(static_cast<fftw_complex*>(fftw_malloc(n * sizeof(fftw_complex)))) {
        if (!p) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(p); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};

std::vector<std::complex<double>> run_plan(const std::vector<std::complex<double>>& in,
                                           std::size_t n0, std::size_t n1, int sign) {
    const std::size_t n = n0 * n1;
    if (in.size() != n) throw std::invalid_argument("fft: size mismatch");
    FftwBuffer a(n), b(n);
    std::memcpy(a.p, in.data(), n * sizeof(fftw_complex));

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        // FFTW_ESTIMATE picks the plan deterministically (no runtime
        // measurement), which keeps outputs bit-identical across runs and
        // thread counts.
        plan = (n1 == 1)
                   ? fftw_plan_dft_1d(static_cast<int>(n0), a.p, b.p, sign,
                                      FFTW_ESTIMATE)
                   : fftw_plan_dft_2d(static_cast<int>(n1), static_cast<int>(n0),
                                      a.p, b.p, sign, FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("fft: plan creation failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }

    std::vector<std::complex<double>> out(n);
    std::memcpy(out.data(), b.p, n * sizeof(fftw_complex));
    return out;
}

}  // namespace

std::vector<std::complex<double>> fft_forward_1d(
    const std::vector<std::complex<double>>& in) {
    return run_plan(in, in.size(), 1, FFTW_FORWARD);
}

std::vector<std::complex<double>> fft_forward_2d(
    const std::vector<std::complex<double>>& in, std::size_t n0, std::size_t n1) {
    return run_plan(in, n0, n1, FFTW_FORWARD);
}

std::vector<std::complex<double>> fft_inverse_1d(
    const std::vector<std::complex<double>>& in) {
    return run_plan(in, in.size(), 1, FFTW_BACKWARD);
}

std::vector<std::complex<double>> fft_inverse_2d(
    const std::vector<std::complex<double>>& in, std::size_t n0, std::size_t n1) {
    return run_plan(in, n0, n1, FFTW_BACKWARD);
}

}  // namespace gf
