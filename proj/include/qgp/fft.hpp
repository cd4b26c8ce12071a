#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace qgp {

// Real-to-complex FFT of fixed length. Plans are shared across instances of
// the same length and execution is re-entrant, so an Fft may be used from
// several threads at once.
class Fft {
public:
    explicit Fft(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    std::size_t spectrum_size() const noexcept { return n_ / 2 + 1; }

    void forward(std::span<const double> in, std::span<std::complex<double>> out) const;

    // Normalised inverse (divides by n). `in` is used as scratch and is
    // clobbered.
    void inverse_destroy(std::span<std::complex<double>> in, std::span<double> out) const;

private:
    std::size_t n_;
    void* forward_plan_;
    void* inverse_plan_;
};

// Multiplies the half spectrum by (i k)^order on a periodic box of length
// `period`. The Nyquist coefficient is dropped for odd orders.
void apply_derivative_symbol(std::span<std::complex<double>> spectrum, std::size_t n, double period,
                             int order);

}  // namespace qgp
