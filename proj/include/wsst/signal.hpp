#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace wsst {

// Uniformly sampled real waveform.
struct SampledSignal {
    std::vector<double> samples;
    double sample_rate = 0.0;  // Hz
    std::string label;

    std::size_t size() const { return samples.size(); }
    double dt() const { return 1.0 / sample_rate; }
    double duration() const { return (samples.size() - 1) / sample_rate; }
};

// Validates finiteness, length >= 2 and a positive rate.
SampledSignal make_signal(std::vector<double> samples, double sample_rate,
                          std::string label = {});

// CSV with header `time_s,value`.
void save_signal_csv(const SampledSignal& sig, const std::string& path);

// Loads a CSV; if a time column is present it must be uniform within 1e-6 s
// and defines the rate, otherwise `fallback_rate` is used.
SampledSignal load_signal_csv(const std::string& path, double fallback_rate);

// Raw little-endian f64 samples behind a 16-byte header
// (magic "WSST", version u32, sample_rate f64).
void save_signal_bin(const SampledSignal& sig, const std::string& path);
SampledSignal load_signal_bin(const std::string& path);

}  // namespace wsst
