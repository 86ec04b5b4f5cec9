#include "msfft/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace msfft {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double median_of(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Top-k magnitudes of a dense spectrum as a sparse estimate.
SparseSpectrum top_k_spectrum(const std::vector<cplx>& spectrum, int64_t n, int64_t k) {
    std::vector<int64_t> idx(spectrum.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int64_t>(i);
    const size_t keep = std::min<size_t>(static_cast<size_t>(k), idx.size());
    std::nth_element(idx.begin(), idx.begin() + keep, idx.end(), [&](int64_t a, int64_t b) {
        return std::abs(spectrum[static_cast<size_t>(a)]) >
               std::abs(spectrum[static_cast<size_t>(b)]);
    });
    SparseSpectrum out;
    out.n = n;
    for (size_t i = 0; i < keep; ++i)
        out.entries[idx[i]] = spectrum[static_cast<size_t>(idx[i])];
    return out;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MSFFT_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

}  // namespace

std::string bench_csv_header() {
    return "algo,n,k,l,q,snr_db,trial,seed,runtime_ms,samples_used,sample_fraction,"
           "l0_err,l1_err,l2_err,status";
}

std::string to_csv_row(const BenchRecord& r) {
    std::string row;
    row += r.algo;
    row += ',';
    row += std::to_string(r.n) + ',' + std::to_string(r.k) + ',' + std::to_string(r.l) + ',';
    row += fmt_double(r.q) + ',' + fmt_double(r.snr_db) + ',';
    row += std::to_string(r.trial) + ',' + std::to_string(r.seed) + ',';
    row += fmt_double(r.runtime_ms) + ',' + fmt_double(r.samples_used) + ',' +
           fmt_double(r.sample_fraction) + ',';
    row += fmt_double(r.l0_err) + ',' + fmt_double(r.l1_err) + ',' + fmt_double(r.l2_err) + ',';
    row += r.status;
    return row;
}

BenchRecord parse_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (fields.size() != 15) throw std::runtime_error("parse_csv_row: expected 15 fields");
    BenchRecord r;
    r.algo = fields[0];
    r.n = std::stoll(fields[1]);
    r.k = std::stoll(fields[2]);
    r.l = std::stoll(fields[3]);
    r.q = std::stod(fields[4]);
    r.snr_db = std::stod(fields[5]);
    r.trial = std::stoll(fields[6]);
    r.seed = std::stoull(fields[7]);
    r.runtime_ms = std::stod(fields[8]);
    r.samples_used = std::stod(fields[9]);
    r.sample_fraction = std::stod(fields[10]);
    r.l0_err = std::stod(fields[11]);
    r.l1_err = std::stod(fields[12]);
    r.l2_err = std::stod(fields[13]);
    r.status = fields[14];
    return r;
}

BenchRecord run_cell(const CellSpec& cell, int64_t trial, uint64_t seed) {
    BenchRecord r;
    r.algo = cell.algo;
    r.n = cell.n;
    r.k = cell.k;
    r.l = cell.l;
    r.q = cell.q;
    r.snr_db = cell.snr_db;
    r.trial = trial;
    r.seed = seed;
    try {
        const uint64_t sig_seed = splitmix64(seed ^ 0x51ull);
        const uint64_t noise_seed = splitmix64(seed ^ 0x52ull);
        const uint64_t algo_seed = splitmix64(seed ^ 0x53ull);

        auto [x, truth] = generate_test_signal(cell.n, cell.k, sig_seed);
        if (std::isfinite(cell.snr_db)) x = add_awgn(x, cell.snr_db, noise_seed);

        SparseSpectrum estimate;
        if (cell.algo == "sfft4") {
            const double delta = std::isfinite(cell.snr_db) ? 1e-6 : 1e-8;
            MultiscaleConfig cfg{cell.l, cell.q};
            const SfftResult res = sfft4(x, cell.k, cfg, algo_seed, delta);
            estimate = res.spectrum;
            r.runtime_ms = res.stats.runtime_ms;
            r.samples_used = static_cast<double>(res.stats.samples_used);
            r.sample_fraction = res.stats.sample_fraction;
        } else if (cell.algo == "dense") {
            const auto t0 = std::chrono::steady_clock::now();
            const auto spectrum = dft_dense(x);
            const auto t1 = std::chrono::steady_clock::now();
            estimate = top_k_spectrum(spectrum, cell.n, cell.k);
            r.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            r.samples_used = static_cast<double>(cell.n);
            r.sample_fraction = 1.0;
        } else {
            throw std::invalid_argument("unknown algo: " + cell.algo);
        }

        const EvalMetrics m = error_metrics(truth, estimate, cell.k);
        r.l0_err = static_cast<double>(m.l0_err);
        r.l1_err = m.l1_err;
        r.l2_err = m.l2_err;
        r.status = "ok";
    } catch (const std::exception& e) {
        r.status = std::string("error:") + e.what();
    }
    return r;
}

BenchRecord run_cell_on_signal(const CellSpec& cell, const ComplexSignal& x, uint64_t seed) {
    BenchRecord r;
    r.algo = cell.algo;
    r.n = x.n;
    r.k = cell.k;
    r.l = cell.l;
    r.q = cell.q;
    r.snr_db = cell.snr_db;
    r.trial = 0;
    r.seed = seed;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.l0_err = r.l1_err = r.l2_err = nan;
    try {
        if (cell.algo == "sfft4") {
            const double delta = std::isfinite(cell.snr_db) ? 1e-6 : 1e-8;
            MultiscaleConfig cfg{cell.l, cell.q};
            const SfftResult res = sfft4(x, cell.k, cfg, splitmix64(seed ^ 0x53ull), delta);
            r.runtime_ms = res.stats.runtime_ms;
            r.samples_used = static_cast<double>(res.stats.samples_used);
            r.sample_fraction = res.stats.sample_fraction;
        } else if (cell.algo == "dense") {
            const auto t0 = std::chrono::steady_clock::now();
            const auto spectrum = dft_dense(x);
            const auto t1 = std::chrono::steady_clock::now();
            (void)spectrum;
            r.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            r.samples_used = static_cast<double>(x.n);
            r.sample_fraction = 1.0;
        } else {
            throw std::invalid_argument("unknown algo: " + cell.algo);
        }
        r.status = "ok";
    } catch (const std::exception& e) {
        r.status = std::string("error:") + e.what();
    }
    return r;
}

std::vector<CellSpec> sweep_cells(const SweepSpec& spec) {
    std::vector<CellSpec> cells;
    CellSpec base;
    base.n = spec.n_list.at(0);
    base.k = spec.k_list.at(0);
    base.l = spec.l_list.at(0);
    base.q = spec.q_list.at(0);
    base.snr_db = spec.snr_list.at(0);

    const auto push_both = [&](CellSpec c) {
        c.algo = "sfft4";
        cells.push_back(c);
        c.algo = "dense";
        cells.push_back(c);
    };

    if (spec.axis == "size") {
        for (int64_t n : spec.n_list) {
            CellSpec c = base;
            c.n = n;
            push_both(c);
        }
    } else if (spec.axis == "sparsity") {
        for (int64_t k : spec.k_list) {
            CellSpec c = base;
            c.k = k;
            push_both(c);
        }
    } else if (spec.axis == "snr") {
        for (double snr : spec.snr_list) {
            CellSpec c = base;
            c.snr_db = snr;
            push_both(c);
        }
    } else if (spec.axis == "params") {
        for (int64_t l : spec.l_list)
            for (double q : spec.q_list) {
                CellSpec c = base;
                c.algo = "sfft4";
                c.l = l;
                c.q = q;
                cells.push_back(c);
            }
    } else {
        throw std::invalid_argument("sweep axis must be size, sparsity, snr or params");
    }
    if (cells.empty()) throw std::invalid_argument("empty sweep");
    return cells;
}

std::vector<BenchRecord> run_sweep(const SweepSpec& spec) {
    if (spec.trials < 1) throw std::invalid_argument("run_sweep: trials must be >= 1");
    const std::vector<CellSpec> cells = sweep_cells(spec);

    struct Task {
        size_t cell;
        int64_t trial;
    };
    std::vector<Task> tasks;
    for (size_t c = 0; c < cells.size(); ++c)
        for (int64_t t = 0; t < spec.trials; ++t) tasks.push_back({c, t});

    std::vector<BenchRecord> rows(tasks.size());
    std::atomic<size_t> next{0};
    const int threads = std::min<int>(resolve_threads(spec.threads),
                                      static_cast<int>(tasks.size()));
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& task = tasks[i];
            const uint64_t seed =
                splitmix64(spec.seed ^ splitmix64((static_cast<uint64_t>(task.cell) << 20) +
                                                  static_cast<uint64_t>(task.trial)));
            rows[i] = run_cell(cells[task.cell], task.trial, seed);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    const auto med = median_rows(rows);
    rows.insert(rows.end(), med.begin(), med.end());
    return rows;
}

std::vector<BenchRecord> median_rows(const std::vector<BenchRecord>& raw) {
    // Group key: everything that identifies a cell.
    const auto key = [](const BenchRecord& r) {
        std::ostringstream k;
        k << r.algo << '|' << r.n << '|' << r.k << '|' << r.l << '|' << r.q << '|' << r.snr_db;
        return k.str();
    };
    std::vector<std::string> order;
    std::vector<std::vector<const BenchRecord*>> groups;
    for (const BenchRecord& r : raw) {
        if (r.trial < 0) continue;
        const std::string k = key(r);
        auto it = std::find(order.begin(), order.end(), k);
        if (it == order.end()) {
            order.push_back(k);
            groups.emplace_back();
            it = order.end() - 1;
        }
        groups[static_cast<size_t>(it - order.begin())].push_back(&r);
    }

    std::vector<BenchRecord> out;
    for (const auto& group : groups) {
        BenchRecord m = *group.front();
        m.trial = -1;
        m.seed = 0;
        m.status = "median";
        const auto collect = [&](auto getter) {
            std::vector<double> v;
            for (const BenchRecord* r : group)
                if (r->status == "ok") v.push_back(getter(*r));
            return median_of(std::move(v));
        };
        m.runtime_ms = collect([](const BenchRecord& r) { return r.runtime_ms; });
        m.samples_used = collect([](const BenchRecord& r) { return r.samples_used; });
        m.sample_fraction = collect([](const BenchRecord& r) { return r.sample_fraction; });
        m.l0_err = collect([](const BenchRecord& r) { return r.l0_err; });
        m.l1_err = collect([](const BenchRecord& r) { return r.l1_err; });
        m.l2_err = collect([](const BenchRecord& r) { return r.l2_err; });
        out.push_back(std::move(m));
    }
    return out;
}

void write_csv(const std::string& path, const std::vector<BenchRecord>& rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    out << bench_csv_header() << '\n';
    for (const BenchRecord& r : rows) out << to_csv_row(r) << '\n';
    if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

void write_plot_script(const std::string& path, const std::string& csv_path,
                       const std::string& axis) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("write_plot_script: cannot open " + path);
    std::string xcol = "2", xlabel = "signal size N";
    if (axis == "sparsity") xcol = "3", xlabel = "sparsity K";
    if (axis == "snr") xcol = "6", xlabel = "SNR (dB)";
    if (axis == "params") xcol = "4", xlabel = "multiscale parameter l";
    out << "# gnuplot script; median rows of " << csv_path << "\n"
        << "set datafile separator ','\n"
        << "set xlabel '" << xlabel << "'\n"
        << "set ylabel 'runtime (ms)'\n"
        << "set logscale y\n";
    if (axis == "size") out << "set logscale x 2\n";
    out << "plot '< grep \",median$\" " << csv_path
        << " | grep \"^sfft4\"' using " << xcol << ":9 with linespoints title 'sfft4', \\\n"
        << "     '< grep \",median$\" " << csv_path
        << " | grep \"^dense\"' using " << xcol << ":9 with linespoints title 'dense'\n";
    if (!out) throw std::runtime_error("write_plot_script: write failed for " + path);
}

}  // namespace msfft
