#pragma once

#include <string>

#include "msfft/signal.hpp"

namespace msfft {

// Binary signal file: 8-byte magic ("MSFT" + zero padding), u64 n,
// then n interleaved (re, im) float64 pairs. Little-endian throughout.
void write_signal_file(const std::string& path, const ComplexSignal& x);
ComplexSignal read_signal_file(const std::string& path);

// Sidecar ground truth: CSV rows "position,re,im".
void write_truth_csv(const std::string& path, const SparseSpectrum& truth);
SparseSpectrum read_truth_csv(const std::string& path, int64_t n);

}  // namespace msfft
