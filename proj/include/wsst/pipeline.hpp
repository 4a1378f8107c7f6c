#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "wsst/classify.hpp"
#include "wsst/sps.hpp"
#include "wsst/tf.hpp"

namespace wsst {

// Batch parameters; every field maps to a CLI flag of the same name.
struct PipelineConfig {
    double window_sigma = 0.5;      // seconds
    int hop = 1;                    // samples
    int n_bins = 512;
    double freq_max = 10.0;         // Hz
    double ridge_band_lo = 0.5;     // Hz
    double ridge_band_hi = 3.0;     // Hz
    double ridge_penalty = 1.0;
    double recon_band = 0.3;        // Hz
    int cap_d = 6;
    double gamma_thresh_rel = 1e-8;
    int n_components = 0;           // 0 -> min(5, p, n-1)
    int n_boot = 1000;
    int n_perm = 1000;
    std::uint64_t seed = 42;
    int workers = 0;                // 0 -> hardware concurrency

    TFParams tf_params() const;
};

nlohmann::json config_to_json(const PipelineConfig& cfg);
PipelineConfig config_from_json(const nlohmann::json& j);
PipelineConfig load_config(const std::string& path);  // applies WSST_SEED override

// Per-signal result of the analyze stage.
struct SignalAnalysis {
    std::string source;
    std::string label;
    bool ok = false;
    std::string error;  // error type name when !ok
    SPSVector sps;      // aligned
    SPSVector sps_raw;  // as estimated
    double ridge_mean_hz = 0.0;
    double ridge_min_hz = 0.0;
    double ridge_max_hz = 0.0;
    std::vector<std::string> flags;  // boundary/interpolation events
};

// stft -> reassign -> synchrosqueeze -> ridge -> reconstruct -> regression.
SignalAnalysis analyze_signal(const SampledSignal& signal, const PipelineConfig& cfg);

// Batch version: per-signal failures are recorded, not propagated; output
// order follows input order regardless of worker count.
std::vector<SignalAnalysis> run_analyze(const std::vector<SampledSignal>& signals,
                                        const PipelineConfig& cfg);

nlohmann::json analyze_report(const std::vector<SignalAnalysis>& results,
                              const PipelineConfig& cfg);

// Dataset stage: PLS + GPS + ROC/AUC/CI + LOOCV + permutation ANOVA.
nlohmann::json run_classify(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                            const PipelineConfig& cfg);

// SPS dataset CSV: header `signal,a0,a1..aD,b1..bD`, one row per recording.
void save_sps_csv(const std::vector<SignalAnalysis>& results, const std::string& path);
Eigen::MatrixXd load_sps_csv(const std::string& path, std::vector<std::string>* names = nullptr);
std::vector<int> load_labels(const std::string& path);

nlohmann::json sps_to_json(const SPSVector& sps);

// TF export: row-major complex64 (f32 re/im pairs) plus a JSON sidecar, and a
// magnitude CSV for plotting.
void export_tf(const TFRepresentation& tf, const std::string& base_path);

nlohmann::json model_to_json(const ClassifierModel& model);
ClassifierModel model_from_json(const nlohmann::json& j);

void save_roc_csv(const ROCResult& roc, const std::string& path);

}  // namespace wsst
