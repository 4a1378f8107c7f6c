#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wsst/signal.hpp"

namespace wsst {

// ARMA(1,1) driven by i.i.d. Student-t innovations.
//
// Lag polynomials a(z) = ar_coeff*z + 1 and b(z) = ma_coeff*z + 1 under the
// convention a(B)x = b(B)w, i.e.
//
//   x_t = -ar_coeff * x_{t-1} + w_t + ma_coeff * w_{t-1}
//
// A 200-sample burn-in is discarded; the output is a pure function of the
// arguments.
std::vector<double> gen_arma_t_noise(std::size_t n, std::uint64_t seed, double dof,
                                     double ar_coeff = 0.5, double ma_coeff = -0.3);

// Half-open sample range [begin, end).
struct SampleRange {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t length() const { return end - begin; }
};

// Rescales `noise` so that 20*log10(std(signal over range)/std(noise)) equals
// snr_db and adds it over the range only. snr_db = +infinity is the no-noise
// sentinel.
SampledSignal mix_at_snr(const SampledSignal& signal, const std::vector<double>& noise,
                         double snr_db, SampleRange range);

}  // namespace wsst
