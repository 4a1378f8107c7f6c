#pragma once

#include <vector>

namespace wsst {

// 1-periodic unit-energy shape stored as truncated Fourier coefficients.
//
//   s(t) = alpha[0] + sum_{l=1..D} alpha[l] cos(2*pi*l*t) + beta[l-1] sin(2*pi*l*t)
//
// Complex-mode magnitude a_l = sqrt(alpha_l^2 + beta_l^2) / 2; every a_l with
// l >= 2 must be bounded by delta * a_1.
struct WaveShape {
    std::vector<double> alpha;  // length D+1, alpha[0] is the mean
    std::vector<double> beta;   // length D
    double delta = 1.0;
    int cap_d = 1;
    double theta_tail = 0.0;  // tail budget; zero for truncated shapes

    double harmonic_amp(int l) const;    // a_l, l in 1..D
    double harmonic_phase(int l) const;  // theta_l in [0, 2*pi)
};

// Validates (or first rescales to unit energy when `normalize` is set).
WaveShape make_wave_shape(std::vector<double> alpha, std::vector<double> beta,
                          double delta, bool normalize = false);

double eval_wave_shape(const WaveShape& shape, double t);

// alpha_0^2 + sum (alpha_l^2 + beta_l^2)/2
double shape_energy(const WaveShape& shape);

// Pulse-like unit-energy shape (D=5, delta=0.59): a sharp systolic peak with a
// secondary bump. `variant` perturbs the third harmonic, giving distinct
// shape families for synthetic classification runs.
WaveShape pulse_like_shape(double variant = 0.0);

}  // namespace wsst
