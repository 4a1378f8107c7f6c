// Batch driver for the pulse-shape analysis pipeline.
//
// Subcommands:
//   generate   synthetic IMT signals (optionally noisy)
//   analyze    signals -> SPS rows + per-signal report
//   classify   SPS dataset + labels -> PLS/GPS/ROC/LOOCV report
//   export-tf  STFT or SST matrices for plotting
//   report     merge analyze and classify reports
//
// Exit codes: 0 success, 1 partial (some signals failed), 2 fatal or usage error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>

#include "CLI11.hpp"
#include "json.hpp"
#include "wsst/errors.hpp"
#include "wsst/imt.hpp"
#include "wsst/noise.hpp"
#include "wsst/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

wsst::SampledSignal load_any(const std::string& path, double fallback_rate) {
    if (path.size() > 4 && path.substr(path.size() - 4) == ".bin")
        return wsst::load_signal_bin(path);
    return wsst::load_signal_csv(path, fallback_rate);
}

struct GenerateOpts {
    std::string out_dir = ".";
    int count = 1;
    std::uint64_t seed = 42;
    double duration = 10.0;
    double rate = 100.0;
    std::string shape = "pulse";  // pulse | cosine
    double family_shift = 0.0;
    double family_shift_b = std::numeric_limits<double>::quiet_NaN();
    double if_base = 1.2;
    double if_wander_amp = 0.1;
    double if_wander_freq = 0.08;
    double am_ramp = 0.1;
    double snr_db = std::numeric_limits<double>::infinity();
    double noise_from = 2.5;
    double noise_to = 5.5;
    double noise_dof = 3.0;
    std::string format = "csv";
};

int run_generate(const GenerateOpts& o) {
    fs::create_directories(o.out_dir);
    wsst::WaveShape shape =
        o.shape == "cosine"
            ? wsst::make_wave_shape({0.0, std::numbers::sqrt2}, {0.0}, 1.0)
            : wsst::pulse_like_shape(o.family_shift);
    // With --family-shift-b the second half of the batch gets a second shape
    // family and label 1, giving classify a ready-made two-class dataset.
    const bool two_family = std::isfinite(o.family_shift_b) && o.shape != "cosine";
    wsst::WaveShape shape_b = two_family ? wsst::pulse_like_shape(o.family_shift_b) : shape;

    std::ofstream labels(o.out_dir + "/labels.csv");
    const std::size_t n = static_cast<std::size_t>(o.duration * o.rate) + 1;
    for (int i = 0; i < o.count; ++i) {
        const int label = two_family && i >= o.count / 2 ? 1 : 0;
        labels << label << '\n';
        std::vector<double> amp(n), inst(n);
        for (std::size_t k = 0; k < n; ++k) {
            double t = k / o.rate;
            amp[k] = 1.0 + o.am_ramp * t / o.duration;
            inst[k] = o.if_base +
                      o.if_wander_amp * std::sin(2.0 * std::numbers::pi * o.if_wander_freq * t);
        }
        wsst::IMTComponent comp = wsst::make_imt(amp, inst, o.rate);
        wsst::SampledSignal sig = wsst::synthesize_imt(label == 1 ? shape_b : shape, comp);

        if (std::isfinite(o.snr_db)) {
            auto a = static_cast<std::size_t>(o.noise_from * o.rate);
            auto b = static_cast<std::size_t>(o.noise_to * o.rate);
            auto noise = wsst::gen_arma_t_noise(b - a, o.seed + static_cast<std::uint64_t>(i),
                                                o.noise_dof);
            sig = wsst::mix_at_snr(sig, noise, o.snr_db, {a, b});
        }

        std::string base = o.out_dir + "/signal_" + std::to_string(i);
        if (o.format == "bin")
            wsst::save_signal_bin(sig, base + ".bin");
        else
            wsst::save_signal_csv(sig, base + ".csv");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synchrosqueezing-based pulse wave-shape analysis"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "Pipeline config JSON")->capture_default_str();

    // --- generate ---
    GenerateOpts gen;
    auto* cmd_gen = app.add_subcommand("generate", "Write synthetic signals");
    cmd_gen->add_option("--out-dir", gen.out_dir);
    cmd_gen->add_option("--count", gen.count);
    cmd_gen->add_option("--seed", gen.seed);
    cmd_gen->add_option("--duration", gen.duration);
    cmd_gen->add_option("--rate", gen.rate);
    cmd_gen->add_option("--shape", gen.shape)->check(CLI::IsMember({"pulse", "cosine"}));
    cmd_gen->add_option("--family-shift", gen.family_shift);
    cmd_gen->add_option("--family-shift-b", gen.family_shift_b,
                        "Second pulse family for the latter half of the batch (label 1)");
    cmd_gen->add_option("--if-base", gen.if_base);
    cmd_gen->add_option("--if-wander-amp", gen.if_wander_amp);
    cmd_gen->add_option("--if-wander-freq", gen.if_wander_freq);
    cmd_gen->add_option("--am-ramp", gen.am_ramp);
    cmd_gen->add_option("--snr-db", gen.snr_db);
    cmd_gen->add_option("--noise-from", gen.noise_from);
    cmd_gen->add_option("--noise-to", gen.noise_to);
    cmd_gen->add_option("--noise-dof", gen.noise_dof);
    cmd_gen->add_option("--format", gen.format)->check(CLI::IsMember({"csv", "bin"}));

    // --- analyze ---
    std::vector<std::string> inputs;
    std::string out_path = "report.json", sps_out, rate_note;
    double fallback_rate = 100.0;
    auto* cmd_an = app.add_subcommand("analyze", "Signals -> SPS");
    cmd_an->add_option("inputs", inputs, "Signal files (.csv or .bin)")->required();
    cmd_an->add_option("--out", out_path);
    cmd_an->add_option("--sps-out", sps_out);
    cmd_an->add_option("--rate", fallback_rate, "Rate for CSVs without a time column");

    // --- classify ---
    std::string sps_path, labels_path, roc_out, gps_out, model_out;
    auto* cmd_cl = app.add_subcommand("classify", "SPS + labels -> stats");
    cmd_cl->add_option("--sps", sps_path)->required();
    cmd_cl->add_option("--labels", labels_path)->required();
    cmd_cl->add_option("--out", out_path);
    cmd_cl->add_option("--roc-out", roc_out);
    cmd_cl->add_option("--gps-out", gps_out);
    cmd_cl->add_option("--model-out", model_out);

    // --- export-tf ---
    std::string tf_input, tf_kind = "sst", tf_out = "tf";
    auto* cmd_tf = app.add_subcommand("export-tf", "Export TF matrices");
    cmd_tf->add_option("input", tf_input)->required();
    cmd_tf->add_option("--kind", tf_kind)->check(CLI::IsMember({"stft", "sst"}));
    cmd_tf->add_option("--out", tf_out, "Output base path");
    cmd_tf->add_option("--rate", fallback_rate);

    // --- report ---
    std::string analyze_json, classify_json;
    auto* cmd_rep = app.add_subcommand("report", "Merge stage reports");
    cmd_rep->add_option("--analyze", analyze_json);
    cmd_rep->add_option("--classify", classify_json);
    cmd_rep->add_option("--out", out_path);

    // Config overrides, one flag per field.
    wsst::PipelineConfig cfg;
    for (auto* cmd : {cmd_an, cmd_cl, cmd_tf}) {
        cmd->add_option("--window_sigma", cfg.window_sigma);
        cmd->add_option("--hop", cfg.hop);
        cmd->add_option("--n_bins", cfg.n_bins);
        cmd->add_option("--freq_max", cfg.freq_max);
        cmd->add_option("--ridge_band_lo", cfg.ridge_band_lo);
        cmd->add_option("--ridge_band_hi", cfg.ridge_band_hi);
        cmd->add_option("--ridge_penalty", cfg.ridge_penalty);
        cmd->add_option("--recon_band", cfg.recon_band);
        cmd->add_option("--cap_d", cfg.cap_d);
        cmd->add_option("--gamma_thresh_rel", cfg.gamma_thresh_rel);
        cmd->add_option("--n_components", cfg.n_components);
        cmd->add_option("--n_boot", cfg.n_boot);
        cmd->add_option("--n_perm", cfg.n_perm);
        cmd->add_option("--seed", cfg.seed);
        cmd->add_option("--workers", cfg.workers);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // app.exit prints help/errors; map usage failures onto exit code 2.
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        {
            // Flag values override the config file; collect file values first.
            wsst::PipelineConfig file_cfg = wsst::load_config(config_path);
            wsst::PipelineConfig defaults;
            auto pick = [](auto flag, auto file, auto def) { return flag != def ? flag : file; };
            file_cfg.window_sigma = pick(cfg.window_sigma, file_cfg.window_sigma, defaults.window_sigma);
            file_cfg.hop = pick(cfg.hop, file_cfg.hop, defaults.hop);
            file_cfg.n_bins = pick(cfg.n_bins, file_cfg.n_bins, defaults.n_bins);
            file_cfg.freq_max = pick(cfg.freq_max, file_cfg.freq_max, defaults.freq_max);
            file_cfg.ridge_band_lo = pick(cfg.ridge_band_lo, file_cfg.ridge_band_lo, defaults.ridge_band_lo);
            file_cfg.ridge_band_hi = pick(cfg.ridge_band_hi, file_cfg.ridge_band_hi, defaults.ridge_band_hi);
            file_cfg.ridge_penalty = pick(cfg.ridge_penalty, file_cfg.ridge_penalty, defaults.ridge_penalty);
            file_cfg.recon_band = pick(cfg.recon_band, file_cfg.recon_band, defaults.recon_band);
            file_cfg.cap_d = pick(cfg.cap_d, file_cfg.cap_d, defaults.cap_d);
            file_cfg.gamma_thresh_rel = pick(cfg.gamma_thresh_rel, file_cfg.gamma_thresh_rel, defaults.gamma_thresh_rel);
            file_cfg.n_components = pick(cfg.n_components, file_cfg.n_components, defaults.n_components);
            file_cfg.n_boot = pick(cfg.n_boot, file_cfg.n_boot, defaults.n_boot);
            file_cfg.n_perm = pick(cfg.n_perm, file_cfg.n_perm, defaults.n_perm);
            file_cfg.seed = pick(cfg.seed, file_cfg.seed, defaults.seed);
            file_cfg.workers = pick(cfg.workers, file_cfg.workers, defaults.workers);
            cfg = file_cfg;
        }

        if (cmd_gen->parsed()) return run_generate(gen);

        if (cmd_an->parsed()) {
            std::vector<wsst::SampledSignal> signals;
            for (const auto& path : inputs) {
                auto sig = load_any(path, fallback_rate);
                sig.label = path;
                signals.push_back(std::move(sig));
            }
            auto results = wsst::run_analyze(signals, cfg);
            json report = wsst::analyze_report(results, cfg);
            std::ofstream(out_path) << report.dump(2) << '\n';
            if (!sps_out.empty()) wsst::save_sps_csv(results, sps_out);
            std::size_t failed = 0;
            for (const auto& r : results)
                if (!r.ok) {
                    std::cerr << r.source << ": " << r.error << '\n';
                    ++failed;
                }
            if (failed == results.size()) return 2;
            return failed > 0 ? 1 : 0;
        }

        if (cmd_cl->parsed()) {
            std::vector<std::string> names;
            Eigen::MatrixXd features = wsst::load_sps_csv(sps_path, &names);
            std::vector<int> labels = wsst::load_labels(labels_path);
            if (features.rows() != static_cast<Eigen::Index>(labels.size()))
                throw wsst::DimensionMismatch("label file length mismatch");
            json report = wsst::run_classify(features, labels, cfg);
            std::ofstream(out_path) << report.dump(2) << '\n';
            if (!roc_out.empty()) {
                std::ofstream out(roc_out);
                out << "threshold,sens,spec\n";
                const auto& roc = report["roc"];
                for (std::size_t i = 0; i < roc["thresholds"].size(); ++i)
                    out << roc["thresholds"][i].get<double>() << ','
                        << roc["sens"][i].get<double>() << ',' << roc["spec"][i].get<double>()
                        << '\n';
            }
            if (!gps_out.empty()) {
                std::ofstream out(gps_out);
                out << "gps,label\n";
                for (const auto& v : report["gps"]["class0"]) out << v.get<double>() << ",0\n";
                for (const auto& v : report["gps"]["class1"]) out << v.get<double>() << ",1\n";
            }
            if (!model_out.empty()) std::ofstream(model_out) << report["model"].dump(2) << '\n';
            return 0;
        }

        if (cmd_tf->parsed()) {
            auto sig = load_any(tf_input, fallback_rate);
            auto spec = wsst::stft(sig, cfg.tf_params());
            if (tf_kind == "sst") {
                auto rmap = wsst::reassign_freq(sig, cfg.tf_params());
                wsst::export_tf(wsst::synchrosqueeze(spec, rmap), tf_out);
            } else {
                wsst::export_tf(spec, tf_out);
            }
            return 0;
        }

        if (cmd_rep->parsed()) {
            json merged{{"schema_version", 1}};
            if (!analyze_json.empty()) {
                json j;
                std::ifstream(analyze_json) >> j;
                merged["analyze"] = j;
            }
            if (!classify_json.empty()) {
                json j;
                std::ifstream(classify_json) >> j;
                merged["classify"] = j;
            }
            std::ofstream(out_path) << merged.dump(2) << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "fatal: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
