#include "wsst/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "wsst/errors.hpp"
#include "wsst/recover.hpp"
#include "wsst/ridge.hpp"

namespace wsst {

using nlohmann::json;

TFParams PipelineConfig::tf_params() const {
    TFParams p;
    p.sigma = window_sigma;
    p.hop = hop;
    p.n_bins = n_bins;
    p.freq_max = freq_max;
    p.gamma_thresh_rel = gamma_thresh_rel;
    return p;
}

json config_to_json(const PipelineConfig& c) {
    return json{{"window_sigma", c.window_sigma},
                {"hop", c.hop},
                {"n_bins", c.n_bins},
                {"freq_max", c.freq_max},
                {"ridge_band_lo", c.ridge_band_lo},
                {"ridge_band_hi", c.ridge_band_hi},
                {"ridge_penalty", c.ridge_penalty},
                {"recon_band", c.recon_band},
                {"cap_d", c.cap_d},
                {"gamma_thresh_rel", c.gamma_thresh_rel},
                {"n_components", c.n_components},
                {"n_boot", c.n_boot},
                {"n_perm", c.n_perm},
                {"seed", c.seed},
                {"workers", c.workers}};
}

PipelineConfig config_from_json(const json& j) {
    static const char* known[] = {"window_sigma", "hop", "n_bins", "freq_max",
                                  "ridge_band_lo", "ridge_band_hi", "ridge_penalty",
                                  "recon_band", "cap_d", "gamma_thresh_rel", "n_components",
                                  "n_boot", "n_perm", "seed", "workers"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw ParseError("unknown configuration key: " + it.key());
    }
    PipelineConfig c;
    c.window_sigma = j.value("window_sigma", c.window_sigma);
    c.hop = j.value("hop", c.hop);
    c.n_bins = j.value("n_bins", c.n_bins);
    c.freq_max = j.value("freq_max", c.freq_max);
    c.ridge_band_lo = j.value("ridge_band_lo", c.ridge_band_lo);
    c.ridge_band_hi = j.value("ridge_band_hi", c.ridge_band_hi);
    c.ridge_penalty = j.value("ridge_penalty", c.ridge_penalty);
    c.recon_band = j.value("recon_band", c.recon_band);
    c.cap_d = j.value("cap_d", c.cap_d);
    c.gamma_thresh_rel = j.value("gamma_thresh_rel", c.gamma_thresh_rel);
    c.n_components = j.value("n_components", c.n_components);
    c.n_boot = j.value("n_boot", c.n_boot);
    c.n_perm = j.value("n_perm", c.n_perm);
    c.seed = j.value("seed", c.seed);
    c.workers = j.value("workers", c.workers);
    if (!(c.window_sigma > 0.0) || c.hop < 1 || c.n_bins < 2 || !(c.freq_max > 0.0) ||
        !(c.recon_band > 0.0) || c.cap_d < 1 || c.cap_d > 12)
        throw ParseError("invalid pipeline configuration");
    return c;
}

PipelineConfig load_config(const std::string& path) {
    PipelineConfig c;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open config " + path);
        json j;
        in >> j;
        c = config_from_json(j);
    }
    if (const char* env = std::getenv("WSST_SEED")) c.seed = std::strtoull(env, nullptr, 10);
    return c;
}

SignalAnalysis analyze_signal(const SampledSignal& signal, const PipelineConfig& cfg) {
    SignalAnalysis out;
    out.source = signal.label;
    out.label = signal.label;
    try {
        TFParams tp = cfg.tf_params();
        TFRepresentation spec = stft(signal, tp);
        ReassignMap rmap = reassign_freq(signal, tp);
        TFRepresentation sst = synchrosqueeze(spec, rmap);

        Ridge ridge = extract_ridge(sst, cfg.ridge_penalty,
                                    std::make_pair(cfg.ridge_band_lo, cfg.ridge_band_hi));
        std::vector<double> if_track = ridge_to_if(ridge, sst, true);
        RecoveredComponent rc = reconstruct(sst, if_track, cfg.recon_band);
        if (!rc.interpolated.empty())
            out.flags.push_back("interpolated_frames=" + std::to_string(rc.interpolated.size()));

        // Boundary frames stay out of the regression.
        std::vector<Eigen::Index> keep;
        for (int m = 0; m < sst.n_frames(); ++m)
            if (!sst.boundary[m]) keep.push_back(m);
        if (keep.empty()) throw TooShort("every frame is a boundary frame");
        out.flags.push_back("boundary_frames=" +
                            std::to_string(sst.n_frames() - static_cast<int>(keep.size())));

        Eigen::VectorXd amp(keep.size()), phase(keep.size()), y(keep.size());
        double rmin = 1e300, rmax = -1e300, rsum = 0.0;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            Eigen::Index m = keep[i];
            amp(static_cast<Eigen::Index>(i)) = rc.amp[m];
            phase(static_cast<Eigen::Index>(i)) = rc.phase[m];
            y(static_cast<Eigen::Index>(i)) = signal.samples[m * cfg.hop];
            double f = ridge.freq_hz[m];
            rmin = std::min(rmin, f);
            rmax = std::max(rmax, f);
            rsum += f;
        }
        out.ridge_min_hz = rmin;
        out.ridge_max_hz = rmax;
        out.ridge_mean_hz = rsum / static_cast<double>(keep.size());

        DesignMatrix design = build_design(amp, phase, cfg.cap_d);
        out.sps_raw = estimate_sps(y, design);
        out.sps = align_phase(out.sps_raw);
        out.ok = true;
    } catch (const Error& e) {
        out.error = e.what();
    }
    return out;
}

std::vector<SignalAnalysis> run_analyze(const std::vector<SampledSignal>& signals,
                                        const PipelineConfig& cfg) {
    std::vector<SignalAnalysis> results(signals.size());
    unsigned workers = cfg.workers > 0 ? static_cast<unsigned>(cfg.workers)
                                       : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(signals.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < signals.size(); ++i)
            results[i] = analyze_signal(signals[i], cfg);
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= signals.size()) return;
                results[i] = analyze_signal(signals[i], cfg);
            }
        });
    for (auto& t : pool) t.join();
    return results;
}

json sps_to_json(const SPSVector& sps) {
    return json{{"D", sps.cap_d},
                {"gamma", std::vector<double>(sps.gamma.data(), sps.gamma.data() + sps.gamma.size())},
                {"power", std::vector<double>(sps.harmonic_power.data(),
                                              sps.harmonic_power.data() + sps.harmonic_power.size())},
                {"phase", std::vector<double>(sps.harmonic_phase.data(),
                                              sps.harmonic_phase.data() + sps.harmonic_phase.size())},
                {"aligned", sps.aligned},
                {"condition_number", sps.condition_number}};
}

json analyze_report(const std::vector<SignalAnalysis>& results, const PipelineConfig& cfg) {
    json signals = json::array();
    for (const auto& r : results) {
        json entry{{"source", r.source}, {"ok", r.ok}, {"flags", r.flags}};
        if (r.ok) {
            entry["sps"] = sps_to_json(r.sps);
            entry["sps_raw"] = sps_to_json(r.sps_raw);
            entry["ridge"] = json{{"mean_hz", r.ridge_mean_hz},
                                  {"min_hz", r.ridge_min_hz},
                                  {"max_hz", r.ridge_max_hz}};
        } else {
            entry["error"] = r.error;
        }
        signals.push_back(entry);
    }
    return json{{"schema_version", 1}, {"config", config_to_json(cfg)}, {"signals", signals}};
}

json run_classify(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                  const PipelineConfig& cfg) {
    if (features.rows() != static_cast<Eigen::Index>(labels.size()))
        throw DimensionMismatch("feature rows must align with labels");

    const Eigen::Index n = features.rows();
    const Eigen::Index p = features.cols();
    int nc = cfg.n_components > 0
                 ? cfg.n_components
                 : static_cast<int>(std::min<Eigen::Index>({5, p, n - 1}));

    ClassifierModel model = fit_pls(features, labels, nc);
    std::vector<double> scores = gps_scores(model, features);
    ROCResult roc = roc_analyze(scores, labels);
    roc.ci = bootstrap_auc_ci(scores, labels, cfg.n_boot, cfg.seed);
    double loocv = loocv_accuracy(features, labels, nc);

    json anova = nullptr;
    Eigen::Index n1 = 0;
    for (int v : labels) n1 += (v == 1);
    if (n1 >= 3 && n - n1 >= 3) {
        Eigen::MatrixXd g0(n - n1, p), g1(n1, p);
        Eigen::Index i0 = 0, i1 = 0;
        for (Eigen::Index i = 0; i < n; ++i)
            (labels[i] == 1 ? g1.row(i1++) : g0.row(i0++)) = features.row(i);
        anova = permutation_functional_anova({g0, g1}, cfg.n_perm, cfg.seed);
    }

    json scores0 = json::array(), scores1 = json::array();
    for (std::size_t i = 0; i < scores.size(); ++i)
        (labels[i] == 1 ? scores1 : scores0).push_back(scores[i]);

    return json{{"schema_version", 1},
                {"model", model_to_json(model)},
                {"gps", json{{"class0", scores0}, {"class1", scores1}}},
                {"roc", json{{"auc", roc.auc},
                             {"ci_lo", roc.ci.first},
                             {"ci_hi", roc.ci.second},
                             {"optimal_threshold", roc.optimal_threshold},
                             {"accuracy_at_optimal", roc.accuracy_at_optimal},
                             {"thresholds", roc.thresholds},
                             {"sens", roc.sens},
                             {"spec", roc.spec}}},
                {"loocv_accuracy", loocv},
                {"anova_p", anova}};
}

void save_sps_csv(const std::vector<SignalAnalysis>& results, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    out.precision(17);
    int d = 0;
    for (const auto& r : results)
        if (r.ok) {
            d = r.sps.cap_d;
            break;
        }
    out << "signal";
    for (int l = 0; l <= d; ++l) out << ",a" << l;
    for (int l = 1; l <= d; ++l) out << ",b" << l;
    out << '\n';
    for (const auto& r : results) {
        if (!r.ok) continue;
        out << r.source;
        for (Eigen::Index i = 0; i < r.sps.gamma.size(); ++i) out << ',' << r.sps.gamma(i);
        out << '\n';
    }
}

Eigen::MatrixXd load_sps_csv(const std::string& path, std::vector<std::string>* names) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw EmptyFile(path + " is empty");

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');
        if (names) names->push_back(cell);
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ParseError("bad numeric cell in " + path);
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw EmptyFile(path + " has no data rows");

    Eigen::MatrixXd m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw ParseError("ragged rows in " + path);
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return m;
}

std::vector<int> load_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::vector<int> labels;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            labels.push_back(std::stoi(line));
        } catch (const std::exception&) {
            throw ParseError("bad label line in " + path + ": " + line);
        }
    }
    if (labels.empty()) throw EmptyFile(path + " has no labels");
    return labels;
}

void export_tf(const TFRepresentation& tf, const std::string& base_path) {
    {
        std::ofstream out(base_path + ".bin", std::ios::binary);
        if (!out) throw ParseError("cannot open " + base_path + ".bin for writing");
        for (Eigen::Index m = 0; m < tf.values.rows(); ++m)
            for (Eigen::Index k = 0; k < tf.values.cols(); ++k) {
                float re = static_cast<float>(tf.values(m, k).real());
                float im = static_cast<float>(tf.values(m, k).imag());
                out.write(reinterpret_cast<const char*>(&re), 4);
                out.write(reinterpret_cast<const char*>(&im), 4);
            }
    }
    {
        json side{{"kind", tf.kind == TFKind::SST ? "SST" : "STFT"},
                  {"sample_rate", tf.sample_rate},
                  {"sigma", tf.window_sigma},
                  {"hop", tf.hop},
                  {"n_frames", tf.n_frames()},
                  {"n_bins", tf.n_bins()},
                  {"freq_step", tf.freq_step},
                  {"frame_dt", tf.frame_dt},
                  {"dtype", "complex64"},
                  {"layout", "row-major frames x bins"}};
        std::ofstream out(base_path + ".json");
        out << side.dump(2) << '\n';
    }
    {
        std::ofstream out(base_path + "_mag.csv");
        out.precision(9);
        for (Eigen::Index m = 0; m < tf.values.rows(); ++m) {
            for (Eigen::Index k = 0; k < tf.values.cols(); ++k)
                out << (k ? "," : "") << std::abs(tf.values(m, k));
            out << '\n';
        }
    }
}

json model_to_json(const ClassifierModel& model) {
    return json{{"coeffs", std::vector<double>(model.coeffs.data(),
                                               model.coeffs.data() + model.coeffs.size())},
                {"n_components", model.n_components},
                {"feat_mean", std::vector<double>(model.feat_mean.data(),
                                                  model.feat_mean.data() + model.feat_mean.size())},
                {"feat_scale", std::vector<double>(model.feat_scale.data(),
                                                   model.feat_scale.data() + model.feat_scale.size())},
                {"n_samples", model.n_samples},
                {"seed", model.seed}};
}

ClassifierModel model_from_json(const json& j) {
    ClassifierModel m;
    auto coeffs = j.at("coeffs").get<std::vector<double>>();
    auto mean = j.at("feat_mean").get<std::vector<double>>();
    auto scale = j.at("feat_scale").get<std::vector<double>>();
    m.coeffs = Eigen::Map<Eigen::VectorXd>(coeffs.data(), static_cast<Eigen::Index>(coeffs.size()));
    m.feat_mean = Eigen::Map<Eigen::VectorXd>(mean.data(), static_cast<Eigen::Index>(mean.size()));
    m.feat_scale =
        Eigen::Map<Eigen::VectorXd>(scale.data(), static_cast<Eigen::Index>(scale.size()));
    m.n_components = j.at("n_components").get<int>();
    m.n_samples = j.at("n_samples").get<int>();
    m.seed = j.at("seed").get<std::uint64_t>();
    return m;
}

void save_roc_csv(const ROCResult& roc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    out.precision(17);
    out << "threshold,sens,spec\n";
    for (std::size_t i = 0; i < roc.thresholds.size(); ++i)
        out << roc.thresholds[i] << ',' << roc.sens[i] << ',' << roc.spec[i] << '\n';
}

}  // namespace wsst
