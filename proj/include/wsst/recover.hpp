#pragma once

#include <complex>
#include <vector>

#include "wsst/tf.hpp"

namespace wsst {

// Complex component recovered from the SST around the ridge.
struct RecoveredComponent {
    std::vector<std::complex<double>> complex_track;
    std::vector<double> amp;
    std::vector<double> phase;      // cycles, unwrapped
    std::vector<double> inst_freq;  // Hz, from the differentiated phase
    std::vector<int> interpolated;  // frames where the band was empty
    double frame_dt = 0.0;
};

// R[m] = 2 * h(0)^{-1} * sum_{|f_j - if[m]| <= band_hz} S[m,j] * dxi.
// The factor 2 converts the positive-frequency content of a real signal into
// its real amplitude. Empty-band frames are flagged and interpolated from
// the nearest valid neighbors. The phase is anchored so that its value at the
// first non-boundary frame lies in [0, 1).
RecoveredComponent reconstruct(const TFRepresentation& sst,
                               const std::vector<double>& if_track, double band_hz);

// Central differences interior, one-sided at the edges; units Hz.
std::vector<double> differentiate_phase(const std::vector<double>& phase_cycles,
                                        double frame_dt);

}  // namespace wsst
