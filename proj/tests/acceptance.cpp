// End-to-end acceptance checks for the toolkit. Each criterion prints a
// single PASS/FAIL line; the exit status is non-zero when anything fails.
#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "wsst/classify.hpp"
#include "wsst/imt.hpp"
#include "wsst/noise.hpp"
#include "wsst/pipeline.hpp"
#include "wsst/recover.hpp"
#include "wsst/ridge.hpp"
#include "wsst/shape.hpp"
#include "wsst/signal.hpp"
#include "wsst/sps.hpp"
#include "wsst/tf.hpp"

using namespace wsst;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
int g_failures = 0;

void report(const char* name, bool ok, const std::string& detail) {
    std::printf("%s - %s (%s)\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    if (!ok) ++g_failures;
}

SampledSignal tone(double f0, double seconds, double fs) {
    int n = static_cast<int>(seconds * fs) + 1;
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) y[i] = std::cos(kTwoPi * f0 * i / fs);
    return make_signal(std::move(y), fs, "tone");
}

struct TFRun {
    TFRepresentation spec;
    TFRepresentation sst;
    Ridge ridge;
};

TFRun run_tf(const SampledSignal& sig, const TFParams& tp, double penalty = 1.0) {
    TFRun r;
    r.spec = stft(sig, tp);
    ReassignMap rmap = reassign_freq(sig, tp);
    r.sst = synchrosqueeze(r.spec, rmap);
    r.ridge = extract_ridge(r.sst, penalty, std::make_pair(0.5, 3.0));
    return r;
}

SampledSignal imt_signal(const WaveShape& shape, const std::vector<double>& amp,
                         const std::vector<double>& inst, double fs) {
    return synthesize_imt(shape, make_imt(amp, inst, fs));
}

// Exact SPS of a generator shape, via regression on a dense exact track.
SPSVector shape_sps(const WaveShape& shape) {
    const int n = 4000;
    Eigen::VectorXd amp = Eigen::VectorXd::Ones(n), phase(n);
    for (int i = 0; i < n; ++i) phase(i) = 1.2 * i / 100.0;
    DesignMatrix d = build_design(amp, phase, shape.cap_d);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = eval_wave_shape(shape, phase(i));
    return align_phase(estimate_sps(y, d));
}

// L2 distance between two unit-normalized SPS vectors in shape space.
double shape_l2_error(const SPSVector& a, const SPSVector& b) {
    SPSVector u = normalize_energy(a), v = normalize_energy(b);
    double e = (u.gamma(0) - v.gamma(0)) * (u.gamma(0) - v.gamma(0));
    for (int l = 1; l <= u.cap_d; ++l) {
        double da = u.gamma(l) - v.gamma(l);
        double db = u.gamma(u.cap_d + l) - v.gamma(v.cap_d + l);
        e += (da * da + db * db) / 2.0;
    }
    return std::sqrt(e);
}

std::vector<double> wander_if(int n, double fs) {
    std::vector<double> inst(n);
    for (int i = 0; i < n; ++i) inst[i] = 1.2 + 0.15 * std::sin(kTwoPi * 0.08 * i / fs);
    return inst;
}

void criterion_1_and_2() {
    const double fs = 100.0;
    TFParams tp;
    auto start = std::chrono::steady_clock::now();
    SampledSignal sig = tone(1.2, 10.0, fs);
    TFRun r = run_tf(sig, tp);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    int target = static_cast<int>(std::lround(1.2 / r.sst.freq_step));
    int interior = 0, within = 0;
    for (int m = 0; m < r.sst.n_frames(); ++m) {
        if (r.sst.boundary[m]) continue;
        ++interior;
        if (std::abs(r.ridge.bin_index[m] - target) <= 1) ++within;
    }
    double frac = static_cast<double>(within) / interior;
    report("ridge accuracy on a pure 1.2 Hz tone", frac >= 0.99 && secs < 5.0,
           "within 1 bin at " + std::to_string(100.0 * frac) + "% of interior frames, " +
               std::to_string(secs) + " s");

    // concentration of energy around the ridge, SST vs plain STFT
    double min_sst = 1.0, sum_sst = 0.0, sum_stft = 0.0;
    bool framewise = true;
    int count = 0;
    for (int m = 0; m < r.sst.n_frames(); ++m) {
        if (r.sst.boundary[m]) continue;
        int c = r.ridge.bin_index[m];
        auto conc = [&](const TFRepresentation& tf) {
            double band = 0.0, total = 0.0;
            for (int k = 0; k < tf.n_bins(); ++k) {
                double e = std::norm(tf.values(m, k));
                total += e;
                if (std::abs(k - c) <= 2) band += e;
            }
            return total > 0.0 ? band / total : 0.0;
        };
        double cs = conc(r.sst), cv = conc(r.spec);
        min_sst = std::min(min_sst, cs);
        sum_sst += cs;
        sum_stft += cv;
        framewise = framewise && (cs >= cv - 1e-12);
        ++count;
    }
    report("sharpened transform concentrates energy at the ridge",
           min_sst >= 0.95 && framewise,
           "band share: sharpened mean " + std::to_string(sum_sst / count) + " (min " +
               std::to_string(min_sst) + "), windowed mean " + std::to_string(sum_stft / count));
}

void criterion_3() {
    const double fs = 100.0;
    TFParams tp;
    SampledSignal clean = tone(1.2, 10.0, fs);
    double worst = 1.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        std::vector<double> noise = gen_arma_t_noise(300, seed, 3.0);
        SampledSignal noisy = mix_at_snr(clean, noise, 0.0, SampleRange{250, 550});
        TFRun r = run_tf(noisy, tp);
        int target = static_cast<int>(std::lround(1.2 / r.sst.freq_step));
        int interior = 0, within = 0;
        for (int m = 0; m < r.sst.n_frames(); ++m) {
            if (r.sst.boundary[m]) continue;
            ++interior;
            if (std::abs(r.ridge.bin_index[m] - target) <= 3) ++within;
        }
        worst = std::min(worst, static_cast<double>(within) / interior);
    }
    report("ridge survives heavy-tailed interval noise at 0 dB (20 seeds)", worst >= 0.90,
           "worst seed: within 3 bins at " + std::to_string(100.0 * worst) + "% of frames");
}

void criterion_4() {
    const double fs = 100.0;
    TFParams tp;
    WaveShape cosine = make_wave_shape({0.0, std::numbers::sqrt2}, {0.0}, 0.1);

    // slow sinusoidal frequency wander
    int n = 2001;
    std::vector<double> inst = wander_if(n, fs);
    SampledSignal sig = imt_signal(cosine, std::vector<double>(n, 1.0), inst, fs);
    TFRun r = run_tf(sig, tp);
    std::vector<double> track = ridge_to_if(r.ridge, r.sst, true);
    double max_err = 0.0;
    for (int m = 0; m < r.sst.n_frames(); ++m) {
        if (r.sst.boundary[m]) continue;
        max_err = std::max(max_err, std::abs(track[m] - inst[m * tp.hop]));
    }

    // transient slow-down reaching 0.87 Hz, wide relative to the window
    int nd = 1601;
    std::vector<double> dip(nd);
    for (int i = 0; i < nd; ++i) {
        double t = i / fs;
        dip[i] = 1.2 + (1.0 / 1.15 - 1.2) * std::exp(-(t - 8.0) * (t - 8.0) / 2.0);
    }
    SampledSignal dsig = imt_signal(cosine, std::vector<double>(nd, 1.0), dip, fs);
    TFRun rd = run_tf(dsig, tp);
    std::vector<double> dtrack = ridge_to_if(rd.ridge, rd.sst, true);
    double dip_err = 0.0, track_min = 1e9;
    for (int m = 0; m < rd.sst.n_frames(); ++m) {
        if (rd.sst.boundary[m]) continue;
        dip_err = std::max(dip_err, std::abs(dtrack[m] - dip[m * tp.hop]));
        track_min = std::min(track_min, dtrack[m]);
    }
    bool ok = max_err <= 0.05 && dip_err <= 0.05 && std::abs(track_min - 0.87) <= 0.05;
    report("instantaneous-frequency tracking under wander and a 0.87 Hz dip", ok,
           "wander max err " + std::to_string(max_err) + " Hz, dip max err " +
               std::to_string(dip_err) + " Hz, tracked minimum " + std::to_string(track_min) +
               " Hz");
}

void criteria_5_and_7() {
    const double fs = 100.0;
    WaveShape shape = pulse_like_shape();
    PipelineConfig cfg;
    cfg.cap_d = shape.cap_d;
    // a longer window separates harmonics 1.2 Hz apart; with the 0.5 s
    // default their spectral tails overlap and modulate the recovered
    // envelope at the beat rate
    cfg.window_sigma = 1.0;

    // slow modulations: the IF wanders and the envelope swings +-10%, both
    // well inside the slowly-varying regime the model assumes
    int n = 4001;
    std::vector<double> inst(n), amp(n);
    for (int i = 0; i < n; ++i) {
        double t = i / fs;
        inst[i] = 1.2 + 0.08 * std::sin(kTwoPi * 0.02 * t);
        amp[i] = 1.0 + 0.1 * std::sin(kTwoPi * 0.015 * t);
    }
    SampledSignal clean = imt_signal(shape, amp, inst, fs);

    SPSVector truth = shape_sps(shape);
    SignalAnalysis noiseless = analyze_signal(clean, cfg);
    if (!noiseless.ok) {
        report("waveform shape recovered through the full pipeline", false,
               "noiseless run failed: " + noiseless.error);
        report("recovered harmonic powers match the generator", false, "no noiseless result");
        return;
    }
    double err_clean = shape_l2_error(noiseless.sps, truth);

    std::vector<SampledSignal> noisy;
    for (std::uint64_t seed = 101; seed <= 120; ++seed) {
        std::vector<double> noise = gen_arma_t_noise(300, seed, 3.0);
        noisy.push_back(mix_at_snr(clean, noise, 0.0, SampleRange{250, 550}));
    }
    auto results = run_analyze(noisy, cfg);
    std::vector<double> errs;
    for (const auto& r : results)
        errs.push_back(r.ok ? shape_l2_error(r.sps, truth) : 2.0);
    std::nth_element(errs.begin(), errs.begin() + errs.size() / 2, errs.end());
    double err_median = errs[errs.size() / 2];

    report("waveform shape recovered through the full pipeline",
           err_clean <= 0.05 && err_median <= 0.15,
           "relative L2 error: noiseless " + std::to_string(err_clean) + ", noisy median " +
               std::to_string(err_median));

    SPSVector unit = normalize_energy(noiseless.sps);
    double worst_rel = 0.0;
    for (int l = 1; l <= shape.cap_d; ++l) {
        double want = shape.harmonic_amp(l) * shape.harmonic_amp(l);
        double got = unit.harmonic_power(l - 1);
        worst_rel = std::max(worst_rel, std::abs(got - want) / want);
    }
    report("recovered harmonic powers match the generator", worst_rel <= 0.02,
           "worst relative power error " + std::to_string(worst_rel));
}

void criterion_6() {
    WaveShape shape = pulse_like_shape();
    const int n = 1500;
    Eigen::VectorXd amp(n), phase(n);
    for (int k = 0; k < n; ++k) {
        double t = k / 100.0;
        amp(k) = 1.0 + 0.1 * std::sin(kTwoPi * 0.05 * t);
        phase(k) = 1.2 * t + 0.03 * std::sin(kTwoPi * 0.08 * t);
    }
    DesignMatrix d = build_design(amp, phase, shape.cap_d);
    Eigen::VectorXd gamma(2 * shape.cap_d + 1);
    gamma(0) = shape.alpha[0];
    for (int l = 1; l <= shape.cap_d; ++l) {
        gamma(l) = shape.alpha[l];
        gamma(shape.cap_d + l) = shape.beta[l - 1];
    }
    Eigen::VectorXd y = d.rows.transpose() * gamma;

    SPSVector sps = estimate_sps(y, d);
    double rel = (sps.gamma - gamma).norm() / gamma.norm();
    Eigen::VectorXd resid = y - reconstruct_fit(sps, d);
    double ortho = 0.0;
    for (int r = 0; r < d.rows.rows(); ++r)
        ortho = std::max(ortho, std::abs(d.rows.row(r).dot(resid)) /
                                    (d.rows.row(r).norm() * y.norm()));
    report("regression recovers exact coefficients with orthogonal residual",
           rel <= 1e-8 && ortho <= 1e-8,
           "coefficient error " + std::to_string(rel) + ", residual projection " +
               std::to_string(ortho));
}

void criterion_8() {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> gauss;
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> bucket(0, 2);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 4 + static_cast<int>(rng() % 9);  // 4..12
        std::vector<double> scores(n);
        std::vector<int> labels(n);
        for (int i = 0; i < n; ++i) {
            scores[i] = (trial % 3 == 0) ? bucket(rng) * 1.0 : gauss(rng);
            labels[i] = coin(rng);
        }
        labels[0] = 0;
        labels[1] = 1;

        double wins = 0.0;
        long pairs = 0;
        for (int i = 0; i < n; ++i) {
            if (labels[i] != 1) continue;
            for (int j = 0; j < n; ++j) {
                if (labels[j] != 0) continue;
                ++pairs;
                wins += scores[i] > scores[j] ? 1.0 : (scores[i] == scores[j] ? 0.5 : 0.0);
            }
        }
        double oracle = wins / static_cast<double>(pairs);
        worst = std::max(worst, std::abs(roc_analyze(scores, labels).auc - oracle));
    }
    report("AUC equals the exhaustive pair-count statistic (1000 trials)", worst <= 1e-12,
           "max deviation " + std::to_string(worst));
}

void criterion_9() {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    const int n = 60, p = 4;
    Eigen::MatrixXd x(n, p);
    std::vector<int> y(n);
    for (int i = 0; i < n; ++i) {
        y[i] = i < n / 2 ? 0 : 1;
        for (int j = 0; j < p; ++j) x(i, j) = gauss(rng) + 0.8 * y[i];
    }
    ClassifierModel m = fit_pls(x, y, p);

    Eigen::MatrixXd z(n, p + 1);
    z.col(0).setOnes();
    z.rightCols(p) = x;
    Eigen::VectorXd yv(n);
    for (int i = 0; i < n; ++i) yv(i) = y[i];
    Eigen::VectorXd ols = (z.transpose() * z).ldlt().solve(z.transpose() * yv);

    double rel = (m.coeffs - ols).norm() / ols.norm();
    report("full-rank partial least squares matches ordinary least squares", rel <= 1e-8,
           "relative coefficient difference " + std::to_string(rel));
}

void criterion_10() {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> gauss;
    auto draw = [&](int rows, int cols, double shift) {
        Eigen::MatrixXd g(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) g(i, j) = gauss(rng) + shift;
        return g;
    };

    int rejections = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Eigen::MatrixXd> groups{draw(10, 4, 0.0), draw(10, 4, 0.0)};
        if (permutation_functional_anova(groups, 199, 1000 + trial) < 0.05) ++rejections;
    }
    std::vector<Eigen::MatrixXd> separated{draw(12, 4, 0.0), draw(12, 4, 5.0)};
    double p_power = permutation_functional_anova(separated, 999, 55);

    report("permutation test: calibrated null, decisive under separation",
           rejections <= 10 && p_power <= 0.01,
           std::to_string(rejections) + "/100 null rejections at 0.05, separated p = " +
               std::to_string(p_power));
}

void criterion_11() {
    const double fs = 100.0;
    PipelineConfig cfg;
    cfg.cap_d = 5;
    cfg.workers = 4;
    cfg.n_boot = 200;
    cfg.n_perm = 199;

    auto make_batch = [&] {
        std::vector<SampledSignal> batch;
        int n = 1501;
        for (int i = 0; i < 8; ++i) {
            WaveShape s = pulse_like_shape(i < 4 ? 0.0 : 0.12);
            std::vector<double> inst(n, 1.1 + 0.05 * i);
            SampledSignal sig = imt_signal(s, std::vector<double>(n, 1.0), inst, fs);
            std::vector<double> noise = gen_arma_t_noise(1100, 7000 + i, 3.0);
            sig = mix_at_snr(sig, noise, 10.0, SampleRange{200, 1300});
            sig.label = "s" + std::to_string(i);
            batch.push_back(std::move(sig));
        }
        return batch;
    };

    auto run_once = [&] {
        auto results = run_analyze(make_batch(), cfg);
        std::string out = analyze_report(results, cfg).dump();
        Eigen::MatrixXd feats(results.size(), 2 * cfg.cap_d + 1);
        std::vector<int> labels;
        for (std::size_t i = 0; i < results.size(); ++i) {
            if (!results[i].ok) return std::string("analysis failed: ") + results[i].error;
            feats.row(static_cast<Eigen::Index>(i)) = normalize_energy(results[i].sps).gamma;
            labels.push_back(i < 4 ? 0 : 1);
        }
        return out + run_classify(feats, labels, cfg).dump();
    };

    std::string a = run_once();
    std::string b = run_once();
    report("identical config and seed give byte-identical reports", !a.empty() && a == b,
           a == b ? std::to_string(a.size()) + " bytes compared equal" : "reports differ");
}

}  // namespace

int main() {
    criterion_1_and_2();
    criterion_3();
    criterion_4();
    criteria_5_and_7();
    criterion_6();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::printf("%s\n", g_failures == 0 ? "ALL ACCEPTANCE CHECKS PASSED"
                                        : "ACCEPTANCE FAILURES PRESENT");
    return g_failures == 0 ? 0 : 1;
}
