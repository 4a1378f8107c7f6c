#pragma once

#include <Eigen/Core>

#include "wsst/recover.hpp"

namespace wsst {

// Functional regression design: rows c_0, c_1..c_D, d_1..d_D with
// c_l[k] = A[k] cos(2*pi*l*phi[k]) and d_l[k] = A[k] sin(2*pi*l*phi[k]).
struct DesignMatrix {
    Eigen::MatrixXd rows;  // (2D+1) x N
    int cap_d = 0;
};

DesignMatrix build_design(const Eigen::VectorXd& amp, const Eigen::VectorXd& phase_cycles,
                          int cap_d);
DesignMatrix build_design(const RecoveredComponent& comp, int cap_d);

// Spectral pulse signature: gamma = [a0, a1..aD, b1..bD] plus derived
// harmonic powers (a_l^2+b_l^2)/4 and phases theta_l.
struct SPSVector {
    Eigen::VectorXd gamma;           // length 2D+1
    Eigen::VectorXd harmonic_power;  // length D
    Eigen::VectorXd harmonic_phase;  // length D, in [0, 2*pi)
    bool aligned = false;
    double condition_number = 0.0;  // of the Gram matrix c c^T
    int cap_d = 0;

    double alpha(int l) const { return gamma(l); }
    double beta(int l) const { return gamma(cap_d + l); }
};

// gamma = (Y c^T)(c c^T)^{-1}, solved by a stable decomposition.
SPSVector estimate_sps(const Eigen::VectorXd& y, const DesignMatrix& design);

// Rotates theta_l <- theta_l - l*theta_1 (mod 2*pi) so theta_1 = 0; harmonic
// powers are unchanged.
SPSVector align_phase(const SPSVector& sps);

// Fitted signal gamma^T c.
Eigen::VectorXd reconstruct_fit(const SPSVector& sps, const DesignMatrix& design);

// Evaluates the shape the SPS encodes at t (cycles).
double eval_sps(const SPSVector& sps, double t);

// Rescales gamma to unit shape energy; used when comparing SPS across
// recordings, where the overall scale is not identifiable.
SPSVector normalize_energy(const SPSVector& sps);

}  // namespace wsst
