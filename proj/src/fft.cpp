#include "qgp/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>
#include <vector>

#include "qgp/errors.hpp"

namespace qgp {
namespace {

struct PlanPair {
    fftw_plan forward;
    fftw_plan inverse;
};

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

PlanPair plans_for(std::size_t n) {
    static std::map<std::size_t, PlanPair> cache;
    std::lock_guard lock(planner_mutex());
    if (auto it = cache.find(n); it != cache.end()) return it->second;

    const int len = static_cast<int>(n);
    double* real = fftw_alloc_real(n);
    fftw_complex* c = fftw_alloc_complex(n / 2 + 1);
    PlanPair p{fftw_plan_dft_r2c_1d(len, real, c, FFTW_ESTIMATE),
               fftw_plan_dft_c2r_1d(len, c, real, FFTW_ESTIMATE)};
    fftw_free(real);
    fftw_free(c);
    if (p.forward == nullptr || p.inverse == nullptr) {
        throw NumericalError("FFTW failed to create a plan of length " + std::to_string(n));
    }
    cache.emplace(n, p);
    return p;
}

// Plans are made on SIMD-aligned arrays; data passes through per-thread aligned
// scratch so the same codelets run whatever the caller's alignment.
struct Scratch {
    double* real = nullptr;
    fftw_complex* cplx = nullptr;
    std::size_t n = 0;

    ~Scratch() {
        fftw_free(real);
        fftw_free(cplx);
    }

    void reserve(std::size_t len) {
        if (len <= n) return;
        fftw_free(real);
        fftw_free(cplx);
        real = fftw_alloc_real(len);
        cplx = fftw_alloc_complex(len / 2 + 1);
        if (real == nullptr || cplx == nullptr) throw NumericalError("FFT scratch allocation failed");
        n = len;
    }
};

Scratch& scratch(std::size_t n) {
    thread_local Scratch s;
    s.reserve(n);
    return s;
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
    if (n < 2 || n % 2 != 0) throw ValidationError("FFT length must be even and >= 2");
    auto p = plans_for(n);
    forward_plan_ = p.forward;
    inverse_plan_ = p.inverse;
}

void Fft::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
    Scratch& s = scratch(n_);
    std::copy(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(n_), s.real);
    fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), s.real, s.cplx);
    std::copy_n(reinterpret_cast<const std::complex<double>*>(s.cplx), spectrum_size(), out.begin());
}

void Fft::inverse_destroy(std::span<std::complex<double>> in, std::span<double> out) const {
    Scratch& s = scratch(n_);
    std::copy_n(in.begin(), spectrum_size(), reinterpret_cast<std::complex<double>*>(s.cplx));
    fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), s.cplx, s.real);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t j = 0; j < n_; ++j) out[j] = s.real[j] * scale;
}

void apply_derivative_symbol(std::span<std::complex<double>> spectrum, std::size_t n, double period,
                             int order) {
    if (order < 1 || order > 3) throw ValidationError("derivative order must be 1, 2 or 3");
    const double k0 = 2.0 * std::numbers::pi / period;
    const std::size_t nyquist = n / 2;
    auto* z = reinterpret_cast<double*>(spectrum.data());
    for (std::size_t m = 0; m < spectrum.size(); ++m) {
        const double k = k0 * static_cast<double>(m);
        const double re = z[2 * m];
        const double im = z[2 * m + 1];
        switch (order) {
            case 1:
                z[2 * m] = -k * im;
                z[2 * m + 1] = k * re;
                break;
            case 2:
                z[2 * m] = -k * k * re;
                z[2 * m + 1] = -k * k * im;
                break;
            default:
                z[2 * m] = k * k * k * im;
                z[2 * m + 1] = -k * k * k * re;
                break;
        }
    }
    if (order % 2 == 1 && nyquist < spectrum.size()) spectrum[nyquist] = 0.0;
}

}  // namespace qgp
