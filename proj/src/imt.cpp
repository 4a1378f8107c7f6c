#include "wsst/imt.hpp"

#include <algorithm>
#include <cmath>

#include "wsst/errors.hpp"

namespace wsst {

namespace {

void validate(const IMTComponent& c) {
    std::size_t n = c.amp.size();
    if (n < 2 || c.phase.size() != n || c.inst_freq.size() != n)
        throw DimensionMismatch("IMT tracks must share their length (>= 2)");
    if (!(c.sample_rate > 0.0)) throw NonFiniteInput("sample rate must be positive");
    if (!(c.eps > 0.0)) throw NonFiniteInput("eps must be positive");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(c.amp[i] > 0.0)) throw NonFiniteInput("amplitude track must stay positive");
        if (!(c.inst_freq[i] > 0.0)) throw NonFiniteInput("IF track must stay positive");
        if (i > 0 && !(c.phase[i] > c.phase[i - 1]))
            throw NonFiniteInput("phase track must be strictly increasing");
    }
}

}  // namespace

IMTComponent make_imt(std::vector<double> amp, std::vector<double> inst_freq,
                      double sample_rate, double eps, double phase0) {
    IMTComponent c;
    c.sample_rate = sample_rate;
    c.eps = eps;
    c.amp = std::move(amp);
    c.inst_freq = std::move(inst_freq);
    c.phase.resize(c.inst_freq.size());
    double ph = phase0;
    double dt = 1.0 / sample_rate;
    for (std::size_t i = 0; i < c.inst_freq.size(); ++i) {
        if (i > 0) ph += 0.5 * (c.inst_freq[i - 1] + c.inst_freq[i]) * dt;
        c.phase[i] = ph;
    }
    validate(c);
    return c;
}

RegularityReport check_imt_regularity(const IMTComponent& comp) {
    validate(comp);
    RegularityReport r;
    double fs = comp.sample_rate;
    for (std::size_t i = 0; i + 1 < comp.amp.size(); ++i) {
        double am = std::abs(comp.amp[i + 1] - comp.amp[i]) * fs / comp.inst_freq[i];
        double ifr = std::abs(comp.inst_freq[i + 1] - comp.inst_freq[i]) * fs / comp.inst_freq[i];
        r.max_am_ratio = std::max(r.max_am_ratio, am);
        r.max_if_ratio = std::max(r.max_if_ratio, ifr);
    }
    r.pass = r.max_am_ratio <= comp.eps && r.max_if_ratio <= comp.eps;
    return r;
}

SampledSignal synthesize_imt(const WaveShape& shape, const IMTComponent& comp) {
    validate(comp);
    double nyquist = comp.sample_rate / 2.0;
    double f_top = *std::max_element(comp.inst_freq.begin(), comp.inst_freq.end()) * shape.cap_d;
    if (f_top >= nyquist)
        throw AliasingRisk("highest harmonic at " + std::to_string(f_top) +
                           " Hz exceeds Nyquist");

    std::vector<double> y(comp.amp.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = comp.amp[i] * eval_wave_shape(shape, comp.phase[i]);
    return make_signal(std::move(y), comp.sample_rate, "imt");
}

}  // namespace wsst
