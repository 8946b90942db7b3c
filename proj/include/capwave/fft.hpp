#pragma once

#include <complex>
#include <span>

namespace capwave::fft {

// Real-to-half-complex transform normalised so that
//   out[m] = (1/n) * sum_j in[j] * exp(-i m t_j),  t_j = 2 pi j / n,
// for m = 0..n/2. `in.size()` must be even and `out.size() == n/2 + 1`.
void forward(std::span<const double> in, std::span<std::complex<double>> out);

// Inverse of `forward`: in[m] for m = 0..n/2 -> n real samples.
void inverse(std::span<const std::complex<double>> in, std::span<double> out);

}  // namespace capwave::fft
