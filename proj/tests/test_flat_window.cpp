#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "msfft/rng.hpp"
#include "msfft/signal.hpp"
#include "msfft/window.hpp"

using namespace msfft;

namespace {

// Independent scan: dense transform of the zero-padded taps.
std::vector<cplx> padded_response(const FlatWindow& win) {
    ComplexSignal padded;
    padded.n = win.n;
    padded.samples.assign(static_cast<size_t>(win.n), cplx(0, 0));
    const int64_t h = (win.w - 1) / 2;
    padded.samples[0] = win.g_time[static_cast<size_t>(h)];
    for (int64_t t = 1; t <= h; ++t) {
        padded.samples[static_cast<size_t>(t)] = win.g_time[static_cast<size_t>(h + t)];
        padded.samples[static_cast<size_t>(win.n - t)] = win.g_time[static_cast<size_t>(h - t)];
    }
    return dft_dense(padded);
}

void check_three_bands(const FlatWindow& win) {
    const auto resp = padded_response(win);
    for (int64_t i = 0; i < win.n; ++i) {
        const int64_t d = std::min(i, win.n - i);
        const double mag = std::abs(resp[static_cast<size_t>(i)]);
        if (d <= win.l_width / 2) {
            CHECK(mag >= 1.0 - win.delta);
            CHECK(mag <= 1.0 + win.delta);
        } else if (d >= win.l_width) {
            CHECK(mag <= win.delta);
        } else {
            CHECK(mag <= 1.0 + win.delta);
        }
    }
}

}  // namespace

TEST_CASE("window meets the band bounds, n=8192 b=256 delta=1e-6") {
    const auto win = design_flat_window(8192, 256, 1e-6);
    CHECK(win.l_width == 32);
    CHECK(win.w % 2 == 1);
    CHECK(std::abs(win.response_at(0) - 1.0) <= win.delta);
    double stop_max = 0.0;
    for (int64_t i = 32; i <= 8192 - 32; ++i)
        stop_max = std::max(stop_max, std::abs(win.response_at(i)));
    CHECK(stop_max <= 1e-6);
}

TEST_CASE("window taps are real-symmetric; response is even and periodic") {
    const auto win = design_flat_window(4096, 64, 1e-6);
    const int64_t h = (win.w - 1) / 2;
    for (int64_t t = 0; t <= h; ++t)
        CHECK(win.g_time[static_cast<size_t>(h + t)] ==
              doctest::Approx(win.g_time[static_cast<size_t>(h - t)]).epsilon(1e-14));
    for (int64_t i : {1L, 5L, 17L, 100L, 2000L}) {
        CHECK(win.response_at(i) == doctest::Approx(win.response_at(-i)).epsilon(1e-12));
        CHECK(win.response_at(i) == doctest::Approx(win.response_at(i + win.n)).epsilon(1e-12));
    }
    CHECK(win.response_at(win.n) == doctest::Approx(win.response_at(0)).epsilon(1e-12));
}

TEST_CASE("support grows about linearly in the bucket count") {
    const auto w256 = design_flat_window(65536, 256, 1e-6);
    const auto w512 = design_flat_window(65536, 512, 1e-6);
    const double ratio = static_cast<double>(w512.w) / static_cast<double>(w256.w);
    CHECK(ratio >= 1.7);
    CHECK(ratio <= 2.3);
}

TEST_CASE("full three-band verification at both default tolerances") {
    check_three_bands(design_flat_window(8192, 64, 1e-8));
    check_three_bands(design_flat_window(8192, 256, 1e-6));
    check_three_bands(design_flat_window(16384, 128, 1e-8));
}

TEST_CASE("response matches the dense oracle on a random grid, n=4096") {
    const auto win = design_flat_window(4096, 64, 1e-8);
    const auto resp = padded_response(win);
    Rng rng(123);
    for (int trial = 0; trial < 250; ++trial) {
        const int64_t i = static_cast<int64_t>(rng.below(4096));
        CHECK(std::abs(window_response(win, i) - resp[static_cast<size_t>(i)]) < 1e-10);
    }
}

TEST_CASE("infeasible geometry is reported as parameter misuse") {
    CHECK_THROWS_AS(design_flat_window(8192, 256, 1e-8), std::invalid_argument);
    CHECK_THROWS_AS(design_flat_window(8192, 2048, 1e-6), std::invalid_argument);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(design_flat_window(8192, 3, 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(design_flat_window(8192, 64, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(design_flat_window(8192, 64, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(design_flat_window(1000, 10, 1e-6), std::invalid_argument);
}

TEST_CASE("window cache hands back one instance per key") {
    const auto a = get_flat_window(4096, 64, 1e-6);
    const auto b = get_flat_window(4096, 64, 1e-6);
    CHECK(a.get() == b.get());
    const auto c = get_flat_window(4096, 64, 1e-8);
    CHECK(a.get() != c.get());
}
