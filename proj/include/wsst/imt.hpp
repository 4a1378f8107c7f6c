#pragma once

#include <vector>

#include "wsst/shape.hpp"
#include "wsst/signal.hpp"

namespace wsst {

// Discretized intrinsic-mode-type component: amplitude track A, phase track
// phi (cycles, strictly increasing) and instantaneous frequency phi' (Hz).
struct IMTComponent {
    std::vector<double> amp;
    std::vector<double> phase;      // cycles
    std::vector<double> inst_freq;  // Hz
    double eps = 0.05;              // regularity budget
    double sample_rate = 0.0;       // Hz
};

// Builds a component from amplitude and IF tracks; the phase is the
// trapezoidal integral of inst_freq starting at phase0 cycles.
IMTComponent make_imt(std::vector<double> amp, std::vector<double> inst_freq,
                      double sample_rate, double eps = 0.05, double phase0 = 0.0);

struct RegularityReport {
    double max_am_ratio = 0.0;  // max |dA/dt| / phi'
    double max_if_ratio = 0.0;  // max |dphi'/dt| / phi'
    bool pass = false;
};

// Forward-difference check of |A'| <= eps*phi' and |phi''| <= eps*phi'.
RegularityReport check_imt_regularity(const IMTComponent& comp);

// samples[n] = A[n] * s(phase[n]); throws AliasingRisk when the highest
// harmonic exceeds Nyquist.
SampledSignal synthesize_imt(const WaveShape& shape, const IMTComponent& comp);

}  // namespace wsst
