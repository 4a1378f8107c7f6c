#include "wsst/recover.hpp"

#include <cmath>
#include <numbers>

#include "wsst/errors.hpp"

namespace wsst {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::vector<double> differentiate_phase(const std::vector<double>& phase_cycles,
                                        double frame_dt) {
    const std::size_t n = phase_cycles.size();
    if (n < 3) throw TooShort("need at least 3 phase samples");
    std::vector<double> out(n);
    out[0] = (phase_cycles[1] - phase_cycles[0]) / frame_dt;
    for (std::size_t i = 1; i + 1 < n; ++i)
        out[i] = (phase_cycles[i + 1] - phase_cycles[i - 1]) / (2.0 * frame_dt);
    out[n - 1] = (phase_cycles[n - 1] - phase_cycles[n - 2]) / frame_dt;
    return out;
}

RecoveredComponent reconstruct(const TFRepresentation& sst,
                               const std::vector<double>& if_track, double band_hz) {
    if (sst.kind != TFKind::SST) throw GridMismatch("input must be an SST");
    if (if_track.size() != static_cast<std::size_t>(sst.n_frames()))
        throw DimensionMismatch("IF track length must equal n_frames");
    if (!(band_hz > 0.0)) throw EmptyBand("band_hz must be positive");

    const int n_frames = sst.n_frames();
    const int n_bins = sst.n_bins();
    const double dxi = sst.freq_step;
    // h(0) = (2*pi*sigma)^{-1/2}; the factor 2 restores the real amplitude
    // from the positive-frequency content.
    const double h0 = 1.0 / std::sqrt(kTwoPi * sst.window_sigma);
    const double scale = 2.0 / h0;

    RecoveredComponent rc;
    rc.frame_dt = sst.frame_dt;
    rc.complex_track.resize(n_frames);
    std::vector<bool> valid(n_frames, false);

    for (int m = 0; m < n_frames; ++m) {
        int j0 = static_cast<int>(std::ceil((if_track[m] - band_hz) / dxi - 1e-12));
        int j1 = static_cast<int>(std::floor((if_track[m] + band_hz) / dxi + 1e-12));
        j0 = std::max(j0, 0);
        j1 = std::min(j1, n_bins - 1);
        if (j0 > j1) {
            rc.interpolated.push_back(m);
            continue;
        }
        std::complex<double> sum = 0.0;
        for (int j = j0; j <= j1; ++j) sum += sst.values(m, j);
        rc.complex_track[m] = scale * sum * dxi;
        valid[m] = true;
    }

    // Fill flagged frames linearly from the nearest valid neighbors.
    if (!rc.interpolated.empty()) {
        int first_valid = -1, last_valid = -1;
        for (int m = 0; m < n_frames; ++m)
            if (valid[m]) {
                if (first_valid < 0) first_valid = m;
                last_valid = m;
            }
        if (first_valid < 0) throw EmptyBand("no frame has bins inside the band");
        for (int m = 0; m < n_frames; ++m) {
            if (valid[m]) continue;
            if (m < first_valid) {
                rc.complex_track[m] = rc.complex_track[first_valid];
            } else if (m > last_valid) {
                rc.complex_track[m] = rc.complex_track[last_valid];
            } else {
                int lo = m, hi = m;
                while (!valid[lo]) --lo;
                while (!valid[hi]) ++hi;
                double w = static_cast<double>(m - lo) / (hi - lo);
                rc.complex_track[m] =
                    (1.0 - w) * rc.complex_track[lo] + w * rc.complex_track[hi];
            }
        }
    }

    rc.amp.resize(n_frames);
    rc.phase.resize(n_frames);
    double prev_raw = 0.0, accum = 0.0;
    for (int m = 0; m < n_frames; ++m) {
        rc.amp[m] = std::abs(rc.complex_track[m]);
        double raw = std::atan2(rc.complex_track[m].imag(), rc.complex_track[m].real()) / kTwoPi;
        if (m == 0) {
            accum = raw;
        } else {
            double step = raw - prev_raw;
            step -= std::round(step);  // into (-0.5, 0.5]
            accum += step;
        }
        rc.phase[m] = accum;
        prev_raw = raw;
    }

    // Anchor: phase at the first non-boundary frame in [0, 1).
    int anchor = 0;
    for (int m = 0; m < n_frames; ++m)
        if (m >= static_cast<int>(sst.boundary.size()) || !sst.boundary[m]) {
            anchor = m;
            break;
        }
    double shift = -std::floor(rc.phase[anchor]);
    for (double& p : rc.phase) p += shift;

    rc.inst_freq = differentiate_phase(rc.phase, rc.frame_dt);
    return rc;
}

}  // namespace wsst
