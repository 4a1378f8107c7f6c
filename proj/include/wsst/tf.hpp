#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "wsst/signal.hpp"

namespace wsst {

enum class TFKind { STFT, SST };

// Complex matrix over a uniform time x frequency grid.
struct TFRepresentation {
    Eigen::MatrixXcd values;  // n_frames x n_bins
    double frame_dt = 0.0;    // seconds per frame (hop / fs)
    double freq_step = 0.0;   // Hz per bin, grid starts at 0 Hz
    TFKind kind = TFKind::STFT;
    double window_sigma = 0.5;
    int hop = 1;
    double sample_rate = 0.0;
    std::vector<std::uint8_t> boundary;  // frames within the window half-width of an edge

    int n_frames() const { return static_cast<int>(values.rows()); }
    int n_bins() const { return static_cast<int>(values.cols()); }
    double freq_at(int k) const { return k * freq_step; }
    double time_at(int m) const { return m * frame_dt; }
};

// Per-cell reassignment frequency; cells with |V| <= threshold are invalid.
struct ReassignMap {
    Eigen::MatrixXd omega;  // Hz
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> valid;
    double freq_step = 0.0;
    double threshold = 0.0;
};

struct TFParams {
    double sigma = 0.5;              // Gaussian bandwidth, seconds
    int hop = 1;                     // samples
    int n_bins = 512;                // bins over [0, freq_max]
    double freq_max = 10.0;          // Hz
    double half_width_sigmas = 4.0;  // window truncation
    double gamma_thresh_rel = 1e-8;  // relative to max |V|
};

// Samples of h(t) = (2*pi*sigma)^{-1/2} exp(-t^2/sigma^2) on [-k*sigma, k*sigma],
// odd length, center index holds h(0).
std::vector<double> gaussian_window(double sigma, double sample_rate,
                                    double half_width_sigmas = 4.0);

// Gaussian-window STFT on the grid defined by `params`.
TFRepresentation stft(const SampledSignal& signal, const TFParams& params);

// Reassignment frequency omega = eta + Im(V^{(h')}/V) / (2*pi), computed with
// the analytic derivative window (never finite differences across frames).
ReassignMap reassign_freq(const SampledSignal& signal, const TFParams& params);

// Collects STFT coefficients into the bin nearest their reassignment frequency.
TFRepresentation synchrosqueeze(const TFRepresentation& stft_out, const ReassignMap& rmap);

}  // namespace wsst
