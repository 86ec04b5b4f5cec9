#include "msfft/io.hpp"

#include <array>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace msfft {

namespace {
constexpr std::array<char, 8> kMagic = {'M', 'S', 'F', 'T', 0, 0, 0, 0};
}

void write_signal_file(const std::string& path, const ComplexSignal& x) {
    x.validate();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_signal_file: cannot open " + path);
    out.write(kMagic.data(), kMagic.size());
    const uint64_t n = static_cast<uint64_t>(x.n);
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
    for (const cplx& v : x.samples) {
        const double re = v.real(), im = v.imag();
        out.write(reinterpret_cast<const char*>(&re), sizeof(re));
        out.write(reinterpret_cast<const char*>(&im), sizeof(im));
    }
    if (!out) throw std::runtime_error("write_signal_file: write failed for " + path);
}

ComplexSignal read_signal_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_signal_file: cannot open " + path);
    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    if (!in || std::memcmp(magic.data(), kMagic.data(), 4) != 0)
        throw std::runtime_error("read_signal_file: bad magic in " + path);
    uint64_t n = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    if (!in || !is_pow2(n) || n < 4 || n > (uint64_t{1} << 30))
        throw std::runtime_error("read_signal_file: bad length field in " + path);
    ComplexSignal x;
    x.n = static_cast<int64_t>(n);
    x.samples.resize(n);
    for (uint64_t j = 0; j < n; ++j) {
        double re = 0, im = 0;
        in.read(reinterpret_cast<char*>(&re), sizeof(re));
        in.read(reinterpret_cast<char*>(&im), sizeof(im));
        x.samples[j] = cplx(re, im);
    }
    if (!in) throw std::runtime_error("read_signal_file: truncated file " + path);
    x.validate();
    return x;
}

void write_truth_csv(const std::string& path, const SparseSpectrum& truth) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("write_truth_csv: cannot open " + path);
    out << "position,re,im\n";
    char buf[96];
    for (const auto& [f, c] : truth.entries) {
        std::snprintf(buf, sizeof(buf), "%" PRId64 ",%.17g,%.17g\n", f, c.real(), c.imag());
        out << buf;
    }
    if (!out) throw std::runtime_error("write_truth_csv: write failed for " + path);
}

SparseSpectrum read_truth_csv(const std::string& path, int64_t n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_truth_csv: cannot open " + path);
    SparseSpectrum truth;
    truth.n = n;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::getline(row, field, ',');
        const int64_t f = std::stoll(field);
        std::getline(row, field, ',');
        const double re = std::stod(field);
        std::getline(row, field, ',');
        const double im = std::stod(field);
        truth.entries[f] = cplx(re, im);
    }
    truth.validate();
    return truth;
}

}  // namespace msfft
