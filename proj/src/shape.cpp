#include "wsst/shape.hpp"

#include <cmath>
#include <numbers>

#include "wsst/errors.hpp"

namespace wsst {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double WaveShape::harmonic_amp(int l) const {
    return std::sqrt(alpha[l] * alpha[l] + beta[l - 1] * beta[l - 1]) / 2.0;
}

double WaveShape::harmonic_phase(int l) const {
    // alpha_l = 2 a_l cos(theta_l), beta_l = -2 a_l sin(theta_l)
    double th = std::atan2(-beta[l - 1], alpha[l]);
    if (th < 0.0) th += kTwoPi;
    return th;
}

double shape_energy(const WaveShape& shape) {
    double e = shape.alpha[0] * shape.alpha[0];
    for (int l = 1; l <= shape.cap_d; ++l)
        e += (shape.alpha[l] * shape.alpha[l] + shape.beta[l - 1] * shape.beta[l - 1]) / 2.0;
    return e;
}

WaveShape make_wave_shape(std::vector<double> alpha, std::vector<double> beta, double delta,
                          bool normalize) {
    if (alpha.size() < 2 || beta.size() + 1 != alpha.size())
        throw DimensionMismatch("alpha must have length D+1 >= 2 and beta length D");
    for (double v : alpha)
        if (!std::isfinite(v)) throw NonFiniteInput("non-finite alpha coefficient");
    for (double v : beta)
        if (!std::isfinite(v)) throw NonFiniteInput("non-finite beta coefficient");
    if (!(delta >= 0.0)) throw NonFiniteInput("delta must be >= 0");

    WaveShape s;
    s.alpha = std::move(alpha);
    s.beta = std::move(beta);
    s.delta = delta;
    s.cap_d = static_cast<int>(s.beta.size());
    s.theta_tail = 0.0;

    if (normalize) {
        double e = shape_energy(s);
        if (!(e > 0.0)) throw ZeroFundamental("cannot normalize a zero shape");
        double k = 1.0 / std::sqrt(e);
        for (double& v : s.alpha) v *= k;
        for (double& v : s.beta) v *= k;
    } else if (std::abs(shape_energy(s) - 1.0) > 1e-9) {
        throw Error("shape is not unit energy; pass normalize");
    }

    double a1 = s.harmonic_amp(1);
    if (a1 == 0.0) throw ZeroFundamental("fundamental mode a_1 is zero");
    for (int l = 2; l <= s.cap_d; ++l) {
        if (s.harmonic_amp(l) > s.delta * a1 * (1.0 + 1e-12))
            throw DominanceViolation("harmonic " + std::to_string(l) +
                                     " exceeds delta * a_1");
    }
    return s;
}

WaveShape pulse_like_shape(double variant) {
    // Complex-mode magnitudes and phases; a_2/a_1 = 0.59 pins the dominance
    // bound, the later harmonics roll off like a tonometer pulse.
    const double a[5] = {1.0, 0.59, 0.35 + variant, 0.20, 0.12};
    const double th[5] = {0.0, 0.55, 1.10, 1.80, 2.50};
    std::vector<double> alpha(6), beta(5);
    alpha[0] = 0.15;
    for (int l = 1; l <= 5; ++l) {
        alpha[l] = 2.0 * a[l - 1] * std::cos(th[l - 1]);
        beta[l - 1] = -2.0 * a[l - 1] * std::sin(th[l - 1]);
    }
    return make_wave_shape(std::move(alpha), std::move(beta), 0.59, true);
}

double eval_wave_shape(const WaveShape& shape, double t) {
    if (!std::isfinite(t)) throw NonFiniteInput("non-finite t");
    double v = shape.alpha[0];
    for (int l = 1; l <= shape.cap_d; ++l) {
        double a = kTwoPi * l * t;
        v += shape.alpha[l] * std::cos(a) + shape.beta[l - 1] * std::sin(a);
    }
    return v;
}

}  // namespace wsst
