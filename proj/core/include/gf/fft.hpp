#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace gf {

/// Forward complex DFT (negative exponent, unnormalized) of a 1-d array.
/// Deterministic: planning uses estimated plans only, so repeated calls
/// produce bit-identical output. Thread-safe; planning is serialized
/// internally.
std::vector<std::complex<double>> fft_forward_1d(
    const std::vector<std::complex<double>>& in);

/// Forward complex DFT of a 2-d array stored axis-0 fastest
/// (flat index i1 * n0 + i0). The output uses the same layout.
std::vector<std::complex<double>> fft_forward_2d(
    const std::vector<std::complex<double>>& in, std::size_t n0, std::size_t n1);

/// Inverse complex DFT (positive exponent, unnormalized: divide by the
/// element count to invert fft_forward_1d).
std::vector<std::complex<double>> fft_inverse_1d(
    const std::vector<std::complex<double>>& in);

/// Inverse complex DFT of a 2-d array, same layout and normalization
/// convention as the 1-d case.
std::vector<std::complex<double>> fft_inverse_2d(
    const std::vector<std::complex<double>>& in, std::size_t n0, std::size_t n1);

}  // namespace gf
