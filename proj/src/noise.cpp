#include "wsst/noise.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "wsst/errors.hpp"

namespace wsst {

namespace {

constexpr std::size_t kBurnIn = 200;  // |pole| = 0.5 -> transient < 1e-50

double stddev(const double* x, std::size_t n) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += x[i];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) ss += (x[i] - mean) * (x[i] - mean);
    return std::sqrt(ss / static_cast<double>(n));
}

}  // namespace

std::vector<double> gen_arma_t_noise(std::size_t n, std::uint64_t seed, double dof,
                                     double ar_coeff, double ma_coeff) {
    if (n < 1) throw TooFewSamples("n must be >= 1");
    if (!(dof > 2.0)) throw BadDof("dof must exceed 2 for a finite variance");

    std::mt19937_64 rng(seed);
    std::student_t_distribution<double> t_dist(dof);

    // a(B)x = b(B)w with a(z) = ar*z + 1, b(z) = ma*z + 1:
    //   x_t = -ar * x_{t-1} + w_t + ma * w_{t-1}
    std::vector<double> out(n);
    double x_prev = 0.0, w_prev = 0.0;
    for (std::size_t t = 0; t < kBurnIn + n; ++t) {
        double w = t_dist(rng);
        double x = -ar_coeff * x_prev + w + ma_coeff * w_prev;
        if (t >= kBurnIn) out[t - kBurnIn] = x;
        x_prev = x;
        w_prev = w;
    }
    return out;
}

SampledSignal mix_at_snr(const SampledSignal& signal, const std::vector<double>& noise,
                         double snr_db, SampleRange range) {
    if (std::isinf(snr_db) && snr_db > 0.0) return signal;  // no-noise sentinel

    if (range.end > signal.samples.size() || range.begin >= range.end)
        throw DimensionMismatch("interval outside the signal extent");
    if (noise.size() != range.length())
        throw DimensionMismatch("noise length must equal the interval length");

    double sig_std = stddev(signal.samples.data() + range.begin, range.length());
    double noise_std = stddev(noise.data(), noise.size());
    if (!(sig_std > 0.0) || !(noise_std > 0.0))
        throw ZeroVariance("signal or noise has zero variance over the interval");

    // 20*log10(sig_std / (k*noise_std)) = snr_db
    double k = sig_std / (noise_std * std::pow(10.0, snr_db / 20.0));

    SampledSignal out = signal;
    for (std::size_t i = 0; i < noise.size(); ++i) out.samples[range.begin + i] += k * noise[i];
    return out;
}

}  // namespace wsst
