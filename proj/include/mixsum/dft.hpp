#pragma once

#include <complex>
#include <span>
#include <vector>

namespace mixsum {

// out[j] = sum_t in[t] e(sign * j t / n) for any length n (FFTW, O(n log n)).
std::vector<std::complex<double>> dft(std::span<const std::complex<double>> in, int sign);

}  // namespace mixsum
