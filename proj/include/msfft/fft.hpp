#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace msfft {

using cplx = std::complex<double>;

inline bool is_pow2(uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place radix-2 decimation-in-time transform, unnormalized.
// sign = -1: sum_j a_j e^{-2pi i jk/n}   (forward kernel)
// sign = +1: sum_j a_j e^{+2pi i jk/n}   (inverse kernel)
// n must be a power of two. Twiddle tables are cached per size.
void fft_radix2(std::vector<cplx>& a, int sign);

}  // namespace msfft
