#include "msfft/window.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace msfft {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Suffix masses of the normalized discrete Gaussian: tail[d] = sum_{m>=d} g(m)
// with sum over all integers of g = 1. Entries beyond max_d are zero.
std::vector<double> gaussian_tails(double sigma, int64_t max_d) {
    const int64_t reach = std::min<int64_t>(max_d, static_cast<int64_t>(sigma * 42.0) + 2);
    std::vector<double> density(reach + 1, 0.0);
    for (int64_t m = 0; m <= reach; ++m)
        density[m] = std::exp(-0.5 * static_cast<double>(m) * static_cast<double>(m) /
                              (sigma * sigma));
    double total = density[0];
    for (int64_t m = 1; m <= reach; ++m) total += 2.0 * density[m];

    std::vector<double> tail(max_d + 2, 0.0);
    double acc = 0.0;
    for (int64_t d = std::min(reach, max_d + 1); d >= 0; --d) {
        acc += density[d];
        if (d <= max_d + 1) tail[d] = acc / total;
    }
    return tail;
}

// Worst-case deviation of the untruncated response from the ideal bands:
// the pass band is worst at its edge L/2, the stop band at its edge L.
double ideal_ripple(double sigma, int64_t l_width, int64_t c) {
    const int64_t half = l_width / 2;
    const auto tail = gaussian_tails(sigma, l_width + c + 2);
    const double pass_dev = tail[c - half + 1] + tail[c + half + 1];
    const double stop_max = tail[l_width - c];
    return std::max(pass_dev, stop_max);
}

struct BandScan {
    double pass_dev = 0.0;   // max | |G|-1 | over |i| <= L/2
    double stop_max = 0.0;   // max |G| over |i| >= L
    double trans_max = 0.0;  // max |G| over the transition band
};

BandScan scan_bands(const std::vector<cplx>& response, int64_t l_width) {
    const int64_t n = static_cast<int64_t>(response.size());
    BandScan s;
    for (int64_t i = 0; i < n; ++i) {
        const int64_t d = std::min(i, n - i);
        const double mag = std::abs(response[i]);
        if (d <= l_width / 2)
            s.pass_dev = std::max(s.pass_dev, std::abs(mag - 1.0));
        else if (d >= l_width)
            s.stop_max = std::max(s.stop_max, mag);
        else
            s.trans_max = std::max(s.trans_max, mag);
    }
    return s;
}

// Truncates the full-length filter to odd support w, transforms, and
// checks the three bands at tolerance delta.
bool truncation_passes(const std::vector<double>& g_full, int64_t n, int64_t w,
                       int64_t l_width, double delta) {
    const int64_t h = (w - 1) / 2;
    std::vector<cplx> padded(n, cplx(0.0, 0.0));
    padded[0] = g_full[0];
    for (int64_t t = 1; t <= h; ++t) {
        padded[t] = g_full[t];
        padded[n - t] = g_full[n - t];
    }
    fft_radix2(padded, -1);
    const double scale = 1.0 / static_cast<double>(n);
    for (cplx& v : padded) v *= scale;
    const BandScan s = scan_bands(padded, l_width);
    return s.pass_dev <= delta && s.stop_max <= delta && s.trans_max <= 1.0 + delta;
}

}  // namespace

double FlatWindow::response_at(int64_t i) const {
    const int64_t h = (w - 1) / 2;
    int64_t i0 = i % n;
    if (i0 < 0) i0 += n;
    double acc = g_time[h];
    for (int64_t t = 1; t <= h; ++t) {
        const double a = kTwoPi * static_cast<double>((i0 * t) % n) / static_cast<double>(n);
        acc += 2.0 * g_time[h + t] * std::cos(a);
    }
    return acc / static_cast<double>(n);
}

cplx window_response(const FlatWindow& win, int64_t i) {
    return cplx(win.response_at(i), 0.0);
}

FlatWindow design_flat_window(int64_t n, int64_t b, double delta) {
    if (n < 16 || !is_pow2(static_cast<uint64_t>(n)))
        throw std::invalid_argument("design_flat_window: n must be a power of two >= 16");
    if (b < 4 || b > n / 4 || !is_pow2(static_cast<uint64_t>(b)))
        throw std::invalid_argument("design_flat_window: need b a power of two, 4 <= b <= n/4");
    if (!(delta > 0.0 && delta < 0.1))
        throw std::invalid_argument("design_flat_window: delta must be in (0, 0.1)");

    const int64_t l_width = n / b;
    const int64_t c = 3 * l_width / 4;  // boxcar half-width, centered margins

    // Largest smoothing sigma whose untruncated response stays within
    // delta/2; the rest of the budget absorbs truncation error.
    double lo = static_cast<double>(l_width) / 80.0, hi = static_cast<double>(l_width);
    if (ideal_ripple(lo, l_width, c) > 0.5 * delta)
        throw std::invalid_argument("design_flat_window: infeasible (n, b, delta)");
    for (int iter = 0; iter < 64; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (ideal_ripple(mid, l_width, c) <= 0.5 * delta)
            lo = mid;
        else
            hi = mid;
    }
    const double sigma = lo;

    // Full-length time filter for the ideal response.
    const auto tail = gaussian_tails(sigma, n / 2 + c + 2);
    std::vector<cplx> ideal(n);
    for (int64_t i = 0; i < n; ++i) {
        const int64_t d = std::min(i, n - i);
        const double v = d <= c ? 1.0 - tail[c - d + 1] - tail[c + d + 1]
                                : tail[d - c] - tail[d + c + 1];
        ideal[i] = cplx(v, 0.0);
    }
    fft_radix2(ideal, +1);
    std::vector<double> g_full(n);
    for (int64_t j = 0; j < n; ++j) g_full[j] = ideal[j].real();
    // The response is real and even, so the taps are too; make that exact.
    for (int64_t t = 1; t < n - t; ++t)
        g_full[t] = g_full[n - t] = 0.5 * (g_full[t] + g_full[n - t]);

    // Smallest odd support that passes the full check.
    int64_t w_hi = n - 1;
    if (!truncation_passes(g_full, n, w_hi, l_width, delta))
        throw std::invalid_argument("design_flat_window: no support w <= n-1 passes the band check");
    int64_t w_lo = 1;
    while (w_lo < w_hi) {
        int64_t mid = w_lo + (w_hi - w_lo) / 2;
        if (mid % 2 == 0) --mid;  // keep odd, round down so the bracket shrinks
        if (truncation_passes(g_full, n, mid, l_width, delta))
            w_hi = mid;
        else
            w_lo = mid + 2;
    }
    const int64_t w = w_hi;

    FlatWindow win;
    win.n = n;
    win.b = b;
    win.l_width = l_width;
    win.w = w;
    win.delta = delta;
    win.eps = static_cast<double>(l_width) / static_cast<double>(n);
    win.eps_prime = win.eps / 2.0;
    const int64_t h = (w - 1) / 2;
    win.g_time.resize(w);
    win.g_time[h] = g_full[0];
    for (int64_t t = 1; t <= h; ++t) {
        win.g_time[h + t] = g_full[t];
        win.g_time[h - t] = g_full[n - t];
    }
    return win;
}

std::shared_ptr<const FlatWindow> get_flat_window(int64_t n, int64_t b, double delta) {
    using Key = std::tuple<int64_t, int64_t, double>;
    static std::mutex mu;
    static std::map<Key, std::shared_ptr<const FlatWindow>> cache;
    const Key key{n, b, delta};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto win = std::make_shared<const FlatWindow>(design_flat_window(n, b, delta));
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, win);
    return it->second;
}

}  // namespace msfft
