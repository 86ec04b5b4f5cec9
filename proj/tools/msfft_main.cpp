// Command-line harness: single measurements, parameter sweeps, the
// phase-error Monte Carlo and signal-file generation.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "msfft/bench.hpp"
#include "msfft/io.hpp"
#include "msfft/phase_mc.hpp"

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Accepts "2^13", "8192", comma lists, and "A..B" (doubling for sizes).
std::vector<int64_t> parse_size_list(const std::string& text) {
    const auto parse_one = [](const std::string& s) -> int64_t {
        const auto caret = s.find('^');
        if (caret != std::string::npos)
            return int64_t{1} << std::stoll(s.substr(caret + 1));
        return std::stoll(s);
    };
    std::vector<int64_t> out;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const int64_t lo = parse_one(text.substr(0, dots));
        const int64_t hi = parse_one(text.substr(dots + 2));
        for (int64_t v = lo; v <= hi; v *= 2) out.push_back(v);
        return out;
    }
    size_t pos = 0;
    while (pos < text.size()) {
        const size_t comma = text.find(',', pos);
        const size_t end = comma == std::string::npos ? text.size() : comma;
        out.push_back(parse_one(text.substr(pos, end - pos)));
        pos = end + 1;
    }
    return out;
}

// Accepts "0.5,1,2" and "A..B" with an additive step.
std::vector<double> parse_double_list(const std::string& text, double step) {
    std::vector<double> out;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const double lo = std::stod(text.substr(0, dots));
        const double hi = std::stod(text.substr(dots + 2));
        for (double v = lo; v <= hi + 1e-9; v += step) out.push_back(v);
        return out;
    }
    size_t pos = 0;
    while (pos < text.size()) {
        const size_t comma = text.find(',', pos);
        const size_t end = comma == std::string::npos ? text.size() : comma;
        out.push_back(std::stod(text.substr(pos, end - pos)));
        pos = end + 1;
    }
    return out;
}

void print_rows(const std::vector<msfft::BenchRecord>& rows) {
    std::cout << msfft::bench_csv_header() << '\n';
    for (const auto& r : rows) std::cout << msfft::to_csv_row(r) << '\n';
}

int cmd_run(const std::string& algo, int64_t n, int64_t k, int64_t l, double q,
            bool exact, double snr, uint64_t seed, const std::string& signal_path,
            const std::string& csv_path) {
    msfft::CellSpec cell;
    cell.algo = algo;
    cell.n = n;
    cell.k = k;
    cell.l = l;
    cell.q = q;
    cell.snr_db = exact ? kInf : snr;

    msfft::BenchRecord row;
    if (!signal_path.empty()) {
        msfft::ComplexSignal x;
        try {
            x = msfft::read_signal_file(signal_path);
        } catch (const std::exception& e) {
            std::cerr << "signal file error: " << e.what() << '\n';
            return 3;
        }
        cell.n = x.n;
        row = msfft::run_cell_on_signal(cell, x, seed);
    } else {
        row = msfft::run_cell(cell, 0, seed);
    }

    const std::vector<msfft::BenchRecord> rows{row};
    print_rows(rows);
    if (!csv_path.empty()) msfft::write_csv(csv_path, rows);
    if (row.status != "ok") {
        std::cerr << row.status << '\n';
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiscale sparse FFT workbench"};
    app.require_subcommand(1);

    // ---- run ----
    auto* run = app.add_subcommand("run", "one transform measurement");
    std::string run_algo = "sfft4";
    int64_t run_n = 1 << 17, run_k = 50, run_l = 16;
    double run_q = 1.0, run_snr = 20.0;
    bool run_exact = false;
    uint64_t run_seed = 1;
    std::string run_signal, run_csv;
    run->add_option("--algo", run_algo)->check(CLI::IsMember({"sfft4", "dense"}));
    run->add_option("--n", run_n);
    run->add_option("--k", run_k);
    run->add_option("--l", run_l);
    run->add_option("--q", run_q);
    run->add_flag("--exact", run_exact, "noiseless input");
    run->add_option("--snr", run_snr, "SNR in dB");
    run->add_option("--seed", run_seed);
    run->add_option("--signal", run_signal, "transform a signal file instead of generating");
    run->add_option("--csv", run_csv);

    // ---- bench ----
    auto* bench = app.add_subcommand("bench", "sweep one axis, emit CSV");
    std::string bench_axis = "size";
    std::string bench_n = "2^17", bench_k = "50", bench_l = "16", bench_q = "1";
    std::string bench_snr;
    double bench_snr_step = 10.0;
    int64_t bench_trials = 1;
    uint64_t bench_seed = 1;
    std::string bench_csv = "bench.csv", bench_plot;
    bench->add_option("--axis", bench_axis)
        ->check(CLI::IsMember({"size", "sparsity", "snr", "params"}));
    bench->add_option("--n", bench_n, "size or range, e.g. 2^13..2^20");
    bench->add_option("--k", bench_k, "sparsity list");
    bench->add_option("--l", bench_l, "multiscale parameter list");
    bench->add_option("--q", bench_q, "extension parameter list");
    bench->add_option("--snr", bench_snr, "SNR list or range, e.g. -20..40");
    bench->add_option("--snr-step", bench_snr_step);
    bench->add_option("--trials", bench_trials);
    bench->add_option("--seed", bench_seed);
    bench->add_option("--csv", bench_csv);
    bench->add_option("--plot-script", bench_plot);

    // ---- phase-mc ----
    auto* pmc = app.add_subcommand("phase-mc", "phase-error Monte Carlo, emit CSV");
    std::string pmc_panel;
    int64_t pmc_n = 1 << 17, pmc_k = 50, pmc_L = 2048;
    std::string pmc_snr = "-20,-10,0,20";
    int64_t pmc_trials = 200;
    uint64_t pmc_seed = 1;
    std::string pmc_csv = "phase_mc.csv";
    pmc->add_option("--panel", pmc_panel, "geometry preset a|b|c|d")
        ->check(CLI::IsMember({"a", "b", "c", "d"}));
    pmc->add_option("--n", pmc_n);
    pmc->add_option("--k", pmc_k);
    pmc->add_option("--L", pmc_L, "bucket width");
    pmc->add_option("--snr-list", pmc_snr);
    pmc->add_option("--trials", pmc_trials);
    pmc->add_option("--seed", pmc_seed);
    pmc->add_option("--csv", pmc_csv);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "write a signal file plus truth sidecar");
    int64_t gen_n = 8192, gen_k = 50;
    uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--n", gen_n);
    gen->add_option("--k", gen_k);
    gen->add_option("--seed", gen_seed);
    gen->add_option("-o,--out", gen_out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run)
            return cmd_run(run_algo, run_n, run_k, run_l, run_q, run_exact, run_snr,
                           run_seed, run_signal, run_csv);

        if (*bench) {
            if (bench_trials < 1) {
                std::cerr << "bench: --trials must be >= 1\n";
                return 2;
            }
            msfft::SweepSpec spec;
            spec.axis = bench_axis;
            spec.n_list = parse_size_list(bench_n);
            spec.k_list = parse_size_list(bench_k);
            spec.l_list = parse_size_list(bench_l);
            spec.q_list = parse_double_list(bench_q, 0.5);
            spec.snr_list = bench_snr.empty()
                                ? std::vector<double>{kInf}
                                : parse_double_list(bench_snr, bench_snr_step);
            spec.trials = bench_trials;
            spec.seed = bench_seed;
            const auto rows = msfft::run_sweep(spec);
            msfft::write_csv(bench_csv, rows);
            if (!bench_plot.empty()) msfft::write_plot_script(bench_plot, bench_csv, bench_axis);
            int failures = 0;
            for (const auto& r : rows)
                if (r.trial >= 0 && r.status != "ok") ++failures;
            std::cout << rows.size() << " rows -> " << bench_csv << '\n';
            if (failures) std::cerr << failures << " cells failed (see status column)\n";
            return failures ? 1 : 0;
        }

        if (*pmc) {
            if (pmc_trials < 1) {
                std::cerr << "phase-mc: --trials must be >= 1\n";
                return 2;
            }
            if (pmc_panel == "a") pmc_n = 8192, pmc_k = 50, pmc_L = 32;
            if (pmc_panel == "b") pmc_n = 131072, pmc_k = 50, pmc_L = 2048;
            if (pmc_panel == "c") pmc_n = 1048576, pmc_k = 50, pmc_L = 2048;
            if (pmc_panel == "d") pmc_n = 4194304, pmc_k = 50, pmc_L = 8192;
            const int64_t b = pmc_n / pmc_L;
            const auto hists = msfft::run_phase_experiment(
                pmc_n, pmc_k, b, parse_double_list(pmc_snr, 10.0), pmc_trials, pmc_seed);
            std::ofstream out(pmc_csv, std::ios::trunc);
            if (!out) throw std::runtime_error("cannot open " + pmc_csv);
            out << "snr_db,bin_center,mass,p50,p99,trials\n";
            char buf[160];
            for (const auto& h : hists)
                for (int i = 0; i < msfft::PhaseErrorHistogram::kBinCount; ++i) {
                    std::snprintf(buf, sizeof(buf), "%.17g,%.3f,%.17g,%.17g,%.17g,%lld\n",
                                  h.snr_db, msfft::PhaseErrorHistogram::bin_center(i),
                                  h.bin_mass[static_cast<size_t>(i)], h.p50, h.p99,
                                  static_cast<long long>(h.trials));
                    out << buf;
                }
            std::cout << hists.size() << " histograms -> " << pmc_csv << '\n';
            return 0;
        }

        if (*gen) {
            const auto [x, truth] = msfft::generate_test_signal(gen_n, gen_k, gen_seed);
            msfft::write_signal_file(gen_out, x);
            msfft::write_truth_csv(gen_out + ".truth.csv", truth);
            std::cout << gen_out << " (" << 16 + 16 * gen_n << " bytes), truth sidecar "
                      << gen_out << ".truth.csv\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
