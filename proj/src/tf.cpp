#include "wsst/tf.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "wsst/errors.hpp"

namespace wsst {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// h(t) = (2*pi*sigma)^{-1/2} exp(-t^2 / sigma^2)
double gauss(double t, double sigma) {
    return std::exp(-t * t / (sigma * sigma)) / std::sqrt(kTwoPi * sigma);
}

double gauss_deriv(double t, double sigma) {
    return -2.0 * t / (sigma * sigma) * gauss(t, sigma);
}

int half_taps(const TFParams& p, double fs) {
    return static_cast<int>(std::floor(p.half_width_sigmas * p.sigma * fs + 1e-9));
}

// V[m,k] = sum_s f(s) w(t_m - t_s) exp(i*2*pi*eta_k*(t_m - t_s)) * dt.
// The exponent sign is the one under which d/dt V = V^{(h')} + i*2*pi*eta*V
// holds, so the reassignment frequency of a positive tone comes out positive.
Eigen::MatrixXcd stft_core(const SampledSignal& signal, const TFParams& p,
                           bool derivative_window) {
    const int n = static_cast<int>(signal.samples.size());
    if (n == 0) throw EmptySignal("empty signal");
    if (p.n_bins < 2) throw DimensionMismatch("n_bins must be >= 2");
    if (p.hop < 1) throw DimensionMismatch("hop must be >= 1");
    if (!(p.sigma > 0.0)) throw NonFiniteInput("sigma must be positive");
    const double fs = signal.sample_rate;
    if (p.freq_max > fs / 2.0 + 1e-12) throw AliasingRisk("freq_max exceeds Nyquist");

    const int half = half_taps(p, fs);
    const int taps = 2 * half + 1;
    const double dt = 1.0 / fs;
    const double dfreq = p.freq_max / (p.n_bins - 1);

    // Kernel over the window taps: tau_j = t_m - t_s = -(j - half) / fs.
    Eigen::MatrixXd k_re(p.n_bins, taps), k_im(p.n_bins, taps);
    for (int j = 0; j < taps; ++j) {
        double tau = -(j - half) * dt;
        double w = derivative_window ? gauss_deriv(tau, p.sigma) : gauss(tau, p.sigma);
        for (int k = 0; k < p.n_bins; ++k) {
            double ang = kTwoPi * (k * dfreq) * tau;
            k_re(k, j) = w * std::cos(ang) * dt;
            k_im(k, j) = w * std::sin(ang) * dt;
        }
    }

    const int n_frames = (n - 1) / p.hop + 1;
    Eigen::MatrixXcd v(n_frames, p.n_bins);
    Eigen::VectorXd seg(taps);
    for (int m = 0; m < n_frames; ++m) {
        const int center = m * p.hop;
        for (int j = 0; j < taps; ++j) {
            int s = center + j - half;
            seg(j) = (s >= 0 && s < n) ? signal.samples[s] : 0.0;
        }
        Eigen::VectorXd re = k_re * seg;
        Eigen::VectorXd im = k_im * seg;
        for (int k = 0; k < p.n_bins; ++k) v(m, k) = std::complex<double>(re(k), im(k));
    }
    return v;
}

std::vector<std::uint8_t> boundary_flags(const SampledSignal& signal, const TFParams& p,
                                         int n_frames) {
    const double half_width = p.half_width_sigmas * p.sigma;
    const double total = signal.duration();
    std::vector<std::uint8_t> flags(n_frames);
    for (int m = 0; m < n_frames; ++m) {
        double t = m * p.hop / signal.sample_rate;
        flags[m] = (t < half_width || t > total - half_width) ? 1 : 0;
    }
    return flags;
}

}  // namespace

std::vector<double> gaussian_window(double sigma, double sample_rate,
                                    double half_width_sigmas) {
    if (!(sigma > 0.0)) throw NonFiniteInput("sigma must be positive");
    int half = static_cast<int>(std::floor(half_width_sigmas * sigma * sample_rate + 1e-9));
    std::vector<double> h(2 * half + 1);
    for (int j = -half; j <= half; ++j) h[j + half] = gauss(j / sample_rate, sigma);
    return h;
}

TFRepresentation stft(const SampledSignal& signal, const TFParams& params) {
    TFRepresentation tf;
    tf.values = stft_core(signal, params, false);
    tf.frame_dt = params.hop / signal.sample_rate;
    tf.freq_step = params.freq_max / (params.n_bins - 1);
    tf.kind = TFKind::STFT;
    tf.window_sigma = params.sigma;
    tf.hop = params.hop;
    tf.sample_rate = signal.sample_rate;
    tf.boundary = boundary_flags(signal, params, tf.n_frames());
    return tf;
}

ReassignMap reassign_freq(const SampledSignal& signal, const TFParams& params) {
    Eigen::MatrixXcd v = stft_core(signal, params, false);
    Eigen::MatrixXcd vd = stft_core(signal, params, true);

    ReassignMap map;
    map.freq_step = params.freq_max / (params.n_bins - 1);
    map.threshold = params.gamma_thresh_rel * v.cwiseAbs().maxCoeff();
    map.omega.resize(v.rows(), v.cols());
    map.valid.resize(v.rows(), v.cols());

    for (Eigen::Index m = 0; m < v.rows(); ++m) {
        for (Eigen::Index k = 0; k < v.cols(); ++k) {
            if (std::abs(v(m, k)) > map.threshold) {
                // omega = Re[-i*dV/dt / (2*pi*V)] with dV/dt = V_h' + i*2*pi*eta*V
                double eta = static_cast<double>(k) * map.freq_step;
                std::complex<double> ratio = vd(m, k) / v(m, k);
                map.omega(m, k) = eta + ratio.imag() / kTwoPi;
                map.valid(m, k) = std::isfinite(map.omega(m, k));
            } else {
                map.omega(m, k) = 0.0;  // the paper's -inf branch; cell is dead
                map.valid(m, k) = false;
            }
        }
    }
    return map;
}

TFRepresentation synchrosqueeze(const TFRepresentation& stft_out, const ReassignMap& rmap) {
    if (stft_out.kind != TFKind::STFT) throw GridMismatch("input must be an STFT");
    if (rmap.omega.rows() != stft_out.values.rows() ||
        rmap.omega.cols() != stft_out.values.cols() ||
        std::abs(rmap.freq_step - stft_out.freq_step) > 1e-12 * stft_out.freq_step)
        throw GridMismatch("reassignment map grid does not match the STFT grid");

    TFRepresentation out = stft_out;
    out.kind = TFKind::SST;
    out.values.setZero();

    const double deta = stft_out.freq_step;
    const int n_bins = stft_out.n_bins();
    for (Eigen::Index m = 0; m < stft_out.values.rows(); ++m) {
        for (Eigen::Index k = 0; k < stft_out.values.cols(); ++k) {
            if (!rmap.valid(m, k)) continue;
            long j = std::lround(rmap.omega(m, k) / deta);
            if (j < 0 || j >= n_bins) continue;  // out-of-range omega discarded
            // input and output grids share the step, so the density transfers
            // without a bin-width factor; reconstruction integrates with dxi
            out.values(m, j) += stft_out.values(m, k);
        }
    }
    return out;
}

}  // namespace wsst
