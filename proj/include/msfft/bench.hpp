#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msfft/locate.hpp"
#include "msfft/sfft4.hpp"
#include "msfft/signal.hpp"

namespace msfft {

// One benchmark measurement; one CSV row. samples_used is a double so
// appended median rows stay exact.
struct BenchRecord {
    std::string algo;  // "sfft4" or "dense"
    int64_t n = 0, k = 0;
    int64_t l = 16;
    double q = 1.0;
    double snr_db = std::numeric_limits<double>::infinity();  // +inf = exact
    int64_t trial = 0;  // -1 marks a median summary row
    uint64_t seed = 0;
    double runtime_ms = 0.0;
    double samples_used = 0.0;
    double sample_fraction = 0.0;
    double l0_err = 0.0;
    double l1_err = 0.0;
    double l2_err = 0.0;
    std::string status = "ok";
};

std::string bench_csv_header();
std::string to_csv_row(const BenchRecord& r);
BenchRecord parse_csv_row(const std::string& line);

struct CellSpec {
    std::string algo = "sfft4";
    int64_t n = 1 << 17;
    int64_t k = 50;
    int64_t l = 16;
    double q = 1.0;
    double snr_db = std::numeric_limits<double>::infinity();
};

// Generate -> add noise -> transform -> score against the known truth.
// Failures are reported through the status column, not exceptions.
BenchRecord run_cell(const CellSpec& cell, int64_t trial, uint64_t seed);

// Transform a caller-supplied signal; no ground truth, so error columns
// are NaN.
BenchRecord run_cell_on_signal(const CellSpec& cell, const ComplexSignal& x, uint64_t seed);

struct SweepSpec {
    std::string axis = "size";  // size | sparsity | snr | params
    std::vector<int64_t> n_list{1 << 17};
    std::vector<int64_t> k_list{50};
    std::vector<int64_t> l_list{16};
    std::vector<double> q_list{1.0};
    std::vector<double> snr_list{std::numeric_limits<double>::infinity()};
    int64_t trials = 1;
    uint64_t seed = 1;
    int threads = 0;  // 0: use MSFFT_THREADS or hardware default
};

std::vector<CellSpec> sweep_cells(const SweepSpec& spec);

// Runs every (cell, trial), rows ordered by (cell, trial) regardless of
// scheduling, with per-cell median rows appended.
std::vector<BenchRecord> run_sweep(const SweepSpec& spec);

// Per-cell medians of the numeric columns over the ok rows.
std::vector<BenchRecord> median_rows(const std::vector<BenchRecord>& raw);

void write_csv(const std::string& path, const std::vector<BenchRecord>& rows);

// gnuplot companion referencing the CSV's median rows.
void write_plot_script(const std::string& path, const std::string& csv_path,
                       const std::string& axis);

}  // namespace msfft
