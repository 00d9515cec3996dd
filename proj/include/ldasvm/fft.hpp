#ifndef LDASVM_FFT_HPP
#define LDASVM_FFT_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ldasvm {

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 decimation-in-time FFT, X_k = sum_n x_n e^{-j2pi kn/N}.
/// Throws Errc::BadLength unless the length is a power of two.
void fft_inplace(std::span<std::complex<double>> data);

/// |X_k|^2 for k = 0..N/2 of a real frame of power-of-two length N.
std::vector<double> power_spectrum(std::span<const double> frame);

}  // namespace ldasvm

#endif  // LDASVM_FFT_HPP
