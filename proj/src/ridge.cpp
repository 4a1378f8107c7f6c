#include "wsst/ridge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wsst/errors.hpp"

namespace wsst {

Ridge extract_ridge(const TFRepresentation& sst, double smooth_penalty,
                    std::optional<std::pair<double, double>> band_hz) {
    const int n_frames = sst.n_frames();
    const int n_bins = sst.n_bins();

    int b0 = 0, b1 = n_bins - 1;
    if (band_hz) {
        b0 = static_cast<int>(std::ceil(band_hz->first / sst.freq_step - 1e-9));
        b1 = static_cast<int>(std::floor(band_hz->second / sst.freq_step + 1e-9));
        b0 = std::max(b0, 0);
        b1 = std::min(b1, n_bins - 1);
        if (b0 > b1) throw EmptyBand("band contains no frequency bins");
    }
    const int nb = b1 - b0 + 1;

    Eigen::MatrixXd mag2(n_frames, nb);
    for (int m = 0; m < n_frames; ++m)
        for (int k = 0; k < nb; ++k) mag2(m, k) = std::norm(sst.values(m, b0 + k));

    const double peak = mag2.maxCoeff();
    if (!(peak > 0.0)) throw AllBelowFloor("no energy anywhere in the band");
    const double floor_val = 1e-12 * peak;

    // dp(m,k): best score of a path ending at bin k in frame m.
    Eigen::MatrixXd dp(n_frames, nb);
    Eigen::MatrixXi back(n_frames, nb);
    for (int k = 0; k < nb; ++k) dp(0, k) = std::log(mag2(0, k) + floor_val);
    back.row(0).setZero();

    for (int m = 1; m < n_frames; ++m) {
        for (int k = 0; k < nb; ++k) {
            double best = -std::numeric_limits<double>::infinity();
            int arg = 0;
            for (int j = 0; j < nb; ++j) {
                double df = (k - j) * sst.freq_step;
                double cand = dp(m - 1, j) - smooth_penalty * df * df;
                if (cand > best) {  // ties keep the lower bin index
                    best = cand;
                    arg = j;
                }
            }
            dp(m, k) = std::log(mag2(m, k) + floor_val) + best;
            back(m, k) = arg;
        }
    }

    int tail = 0;
    for (int k = 1; k < nb; ++k)
        if (dp(n_frames - 1, k) > dp(n_frames - 1, tail)) tail = k;

    Ridge ridge;
    ridge.freq_hz.resize(n_frames);
    ridge.bin_index.resize(n_frames);
    ridge.energy.resize(n_frames);
    int k = tail;
    for (int m = n_frames - 1; m >= 0; --m) {
        ridge.bin_index[m] = b0 + k;
        ridge.freq_hz[m] = (b0 + k) * sst.freq_step;
        ridge.energy[m] = std::abs(sst.values(m, b0 + k));
        if (m > 0) k = back(m, k);
    }
    return ridge;
}

std::vector<double> ridge_to_if(const Ridge& ridge, const TFRepresentation& sst, bool refine) {
    std::vector<double> out(ridge.freq_hz);
    if (!refine) return out;

    const int n_bins = sst.n_bins();
    for (std::size_t m = 0; m < out.size(); ++m) {
        int k = ridge.bin_index[m];
        if (k <= 0 || k >= n_bins - 1) continue;
        double ym = std::abs(sst.values(static_cast<Eigen::Index>(m), k - 1));
        double y0 = std::abs(sst.values(static_cast<Eigen::Index>(m), k));
        double yp = std::abs(sst.values(static_cast<Eigen::Index>(m), k + 1));
        double denom = ym - 2.0 * y0 + yp;
        if (std::abs(denom) < 1e-300) continue;
        double offset = 0.5 * (ym - yp) / denom;
        offset = std::clamp(offset, -0.5, 0.5);
        out[m] = (k + offset) * sst.freq_step;
    }
    return out;
}

}  // namespace wsst
