#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "wsst/tf.hpp"

namespace wsst {

// Dominant per-frame frequency curve of an SST representation.
struct Ridge {
    std::vector<double> freq_hz;
    std::vector<int> bin_index;
    std::vector<double> energy;  // |S| at the ridge
};

// Penalized dynamic programming: maximizes
//   sum_m log(|S[m,c_m]|^2 + floor) - penalty * sum_m (f_{c_{m+1}} - f_{c_m})^2
// exactly over all bin paths; ties broken toward the lower bin index.
Ridge extract_ridge(const TFRepresentation& sst, double smooth_penalty,
                    std::optional<std::pair<double, double>> band_hz = std::nullopt);

// Ridge frequencies, optionally refined by quadratic interpolation of |S|
// across the 3 bins centered at the ridge.
std::vector<double> ridge_to_if(const Ridge& ridge, const TFRepresentation& sst,
                                bool refine = true);

}  // namespace wsst
