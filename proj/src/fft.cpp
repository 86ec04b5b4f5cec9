#include "msfft/fft.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace msfft {

namespace {

// Half-size table of e^{-2pi i k/n}, k in [0, n/2), shared across calls.
std::shared_ptr<const std::vector<cplx>> twiddle_table(size_t n) {
    static std::mutex mu;
    static std::map<size_t, std::shared_ptr<const std::vector<cplx>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto table = std::make_shared<std::vector<cplx>>(n / 2);
    const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
    for (size_t k = 0; k < n / 2; ++k) {
        const double a = step * static_cast<double>(k);
        (*table)[k] = cplx(std::cos(a), std::sin(a));
    }
    cache[n] = table;
    return table;
}

}  // namespace

void fft_radix2(std::vector<cplx>& a, int sign) {
    const size_t n = a.size();
    if (n <= 1) return;
    if (!is_pow2(n)) throw std::invalid_argument("fft_radix2: size must be a power of two");

    int levels = 0;
    while ((size_t{1} << levels) < n) ++levels;

    // Bit-reversed addressing permutation.
    for (size_t i = 0; i < n; ++i) {
        size_t j = 0, m = i;
        for (int k = 0; k < levels; ++k) {
            j = (j << 1) | (m & 1);
            m >>= 1;
        }
        if (j > i) std::swap(a[i], a[j]);
    }

    const auto table = twiddle_table(n);
    const auto& tw = *table;

    for (size_t size = 2; size <= n; size <<= 1) {
        const size_t half = size / 2;
        const size_t step = n / size;
        for (size_t i = 0; i < n; i += size) {
            for (size_t j = i, k = 0; j < i + half; ++j, k += step) {
                cplx w = tw[k];
                if (sign > 0) w = std::conj(w);
                const cplx t = a[j + half] * w;
                a[j + half] = a[j] - t;
                a[j] += t;
            }
        }
    }
}

}  // namespace msfft
