#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "wsst/errors.hpp"
#include "wsst/imt.hpp"
#include "wsst/ridge.hpp"

using namespace wsst;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SampledSignal tone(double f0, double fs = 100.0, double dur = 10.0) {
    std::vector<double> s(static_cast<std::size_t>(fs * dur) + 1);
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = std::cos(kTwoPi * f0 * k / fs);
    return make_signal(std::move(s), fs, "tone");
}

TFRepresentation sst_of(const SampledSignal& sig, const TFParams& p) {
    return synchrosqueeze(stft(sig, p), reassign_freq(sig, p));
}

// Tiny synthetic SST carrier for DP oracle tests.
TFRepresentation toy_sst(const Eigen::MatrixXd& mag, double freq_step) {
    TFRepresentation tf;
    tf.values = mag.cast<std::complex<double>>();
    tf.freq_step = freq_step;
    tf.frame_dt = 0.01;
    tf.kind = TFKind::SST;
    tf.boundary.assign(static_cast<std::size_t>(mag.rows()), 0);
    return tf;
}

// Exhaustive path maximization of the DP objective.
std::vector<int> brute_force_ridge(const Eigen::MatrixXd& mag, double freq_step,
                                   double penalty) {
    const int frames = static_cast<int>(mag.rows());
    const int bins = static_cast<int>(mag.cols());
    const double floor_val = 1e-12 * mag.array().square().maxCoeff();

    std::vector<int> best, path(frames, 0);
    double best_score = -1e300;
    std::function<void(int, double)> rec = [&](int m, double score) {
        if (m == frames) {
            if (score > best_score) {
                best_score = score;
                best = path;
            }
            return;
        }
        for (int k = 0; k < bins; ++k) {
            double s = score + std::log(mag(m, k) * mag(m, k) + floor_val);
            if (m > 0) {
                double df = (k - path[m - 1]) * freq_step;
                s -= penalty * df * df;
            }
            path[m] = k;
            rec(m + 1, s);
        }
    };
    rec(0, 0.0);
    return best;
}

}  // namespace

TEST_CASE("ridge on a pure tone is constant at the tone bin") {
    SampledSignal sig = tone(1.2);
    TFParams p;
    TFRepresentation sst = sst_of(sig, p);
    int expect = static_cast<int>(std::lround(1.2 / sst.freq_step));
    for (double lambda : {0.0, 1.0, 10.0}) {
        Ridge r = extract_ridge(sst, lambda, std::make_pair(0.5, 3.0));
        for (int m = 0; m < sst.n_frames(); ++m) {
            if (sst.boundary[m]) continue;
            CHECK(r.bin_index[m] == expect);
        }
    }
}

TEST_CASE("DP equals exhaustive search on random small instances (property)") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        int frames = 2 + static_cast<int>(rng() % 4);  // [2,5]
        int bins = 3 + static_cast<int>(rng() % 4);    // [3,6]
        Eigen::MatrixXd mag(frames, bins);
        for (int m = 0; m < frames; ++m)
            for (int k = 0; k < bins; ++k) mag(m, k) = unif(rng);
        double penalty = unif(rng) * 5.0;
        double step = 0.1;

        TFRepresentation tf = toy_sst(mag, step);
        Ridge r = extract_ridge(tf, penalty);
        std::vector<int> oracle = brute_force_ridge(mag, step, penalty);
        for (int m = 0; m < frames; ++m) CHECK(r.bin_index[m] == oracle[m]);
    }
}

TEST_CASE("hand-worked 3x3 oracle") {
    Eigen::MatrixXd mag(3, 3);
    mag << 0.9, 0.5, 0.1,
           0.2, 0.8, 0.3,
           0.1, 0.4, 0.95;
    TFRepresentation tf = toy_sst(mag, 0.5);
    Ridge r = extract_ridge(tf, 1.0);
    std::vector<int> oracle = brute_force_ridge(mag, 0.5, 1.0);
    CHECK(r.bin_index == oracle);
}

TEST_CASE("huge penalty forces a constant ridge") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    Eigen::MatrixXd mag(20, 8);
    for (int m = 0; m < 20; ++m)
        for (int k = 0; k < 8; ++k) mag(m, k) = unif(rng);
    TFRepresentation tf = toy_sst(mag, 0.1);
    Ridge r = extract_ridge(tf, 1e12);
    for (int m = 1; m < 20; ++m) CHECK(r.bin_index[m] == r.bin_index[0]);

    // and it is the best constant bin
    const double floor_val = 1e-12 * mag.array().square().maxCoeff();
    int best = 0;
    double best_score = -1e300;
    for (int k = 0; k < 8; ++k) {
        double s = 0.0;
        for (int m = 0; m < 20; ++m) s += std::log(mag(m, k) * mag(m, k) + floor_val);
        if (s > best_score) {
            best_score = s;
            best = k;
        }
    }
    CHECK(r.bin_index[0] == best);
}

TEST_CASE("ridge errors: empty band and zero energy") {
    Eigen::MatrixXd mag = Eigen::MatrixXd::Zero(5, 4);
    TFRepresentation tf = toy_sst(mag, 0.1);
    CHECK_THROWS_AS(extract_ridge(tf, 1.0), AllBelowFloor);
    mag(0, 0) = 1.0;
    TFRepresentation tf2 = toy_sst(mag, 0.1);
    CHECK_THROWS_AS(extract_ridge(tf2, 1.0, std::make_pair(10.0, 20.0)), EmptyBand);
}

TEST_CASE("scale invariance of the optimal path") {
    SampledSignal sig = tone(1.7, 100.0, 6.0);
    SampledSignal big = sig;
    for (double& v : big.samples) v *= 25.0;
    TFParams p;
    Ridge a = extract_ridge(sst_of(sig, p), 1.0, std::make_pair(0.5, 3.0));
    Ridge b = extract_ridge(sst_of(big, p), 1.0, std::make_pair(0.5, 3.0));
    CHECK(a.bin_index == b.bin_index);
}

TEST_CASE("ridge energy dominates the band median") {
    SampledSignal sig = tone(1.2);
    TFParams p;
    TFRepresentation sst = sst_of(sig, p);
    Ridge r = extract_ridge(sst, 1.0, std::make_pair(0.5, 3.0));
    int lo = static_cast<int>(std::ceil(0.5 / sst.freq_step));
    int hi = static_cast<int>(std::floor(3.0 / sst.freq_step));
    for (int m = 0; m < sst.n_frames(); ++m) {
        if (sst.boundary[m]) continue;
        std::vector<double> mags;
        for (int k = lo; k <= hi; ++k) mags.push_back(std::abs(sst.values(m, k)));
        std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
        CHECK(r.energy[m] >= mags[mags.size() / 2]);
    }
}

TEST_CASE("quadratic refinement recovers an off-grid tone frequency") {
    TFParams p;
    p.n_bins = 101;  // 0.1 Hz spacing over [0, 10]
    SampledSignal sig = tone(1.25);

    // the windowed magnitude peak is smooth across bins, so the 3-point
    // interpolation lands well inside the bin
    TFRepresentation spec = stft(sig, p);
    Ridge rv = extract_ridge(spec, 1.0, std::make_pair(0.5, 3.0));
    std::vector<double> coarse = ridge_to_if(rv, spec, false);
    CHECK(coarse == rv.freq_hz);  // pass-through equals bin centers
    std::vector<double> fine = ridge_to_if(rv, spec, true);
    for (int m = 0; m < spec.n_frames(); ++m) {
        if (spec.boundary[m]) continue;
        CHECK(std::abs(fine[static_cast<std::size_t>(m)] - 1.25) < 0.02);
    }

    // the squeezed transform concentrates into single bins, so refinement can
    // do no better than half the bin width there
    TFRepresentation sst = sst_of(sig, p);
    Ridge rs = extract_ridge(sst, 1.0, std::make_pair(0.5, 3.0));
    std::vector<double> fs = ridge_to_if(rs, sst, true);
    for (int m = 0; m < sst.n_frames(); ++m) {
        if (sst.boundary[m]) continue;
        CHECK(std::abs(fs[static_cast<std::size_t>(m)] - 1.25) <= 0.055);
    }
}

TEST_CASE("elongated cycle dips the IF to about 0.87 Hz") {
    // One beat stretched to 1.15 s in the middle of a 1.2 Hz rhythm.
    const double fs = 100.0;
    const std::size_t n = 1601;
    std::vector<double> amp(n, 1.0), inst(n);
    for (std::size_t k = 0; k < n; ++k) {
        double t = k / fs;
        // smooth dip centered at t=8 s reaching 1/1.15 Hz; wide relative to
        // the analysis window so its minimum is not smeared
        double dip = std::exp(-(t - 8.0) * (t - 8.0) / 2.0);
        inst[k] = 1.2 + (1.0 / 1.15 - 1.2) * dip;
    }
    IMTComponent comp = make_imt(amp, inst, fs);
    SampledSignal sig = synthesize_imt(make_wave_shape({0.0, std::numbers::sqrt2}, {0.0}, 0.1),
                                       comp);
    TFParams p;
    TFRepresentation sst = sst_of(sig, p);
    Ridge r = extract_ridge(sst, 1.0, std::make_pair(0.5, 3.0));
    std::vector<double> f = ridge_to_if(r, sst, true);
    int m_dip = static_cast<int>(std::lround(8.0 / sst.frame_dt));
    CHECK(std::abs(f[static_cast<std::size_t>(m_dip)] - 1.0 / 1.15) < 0.05);
}
