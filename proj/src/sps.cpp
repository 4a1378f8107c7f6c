#include "wsst/sps.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "wsst/errors.hpp"

namespace wsst {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void derive_power_phase(SPSVector& sps) {
    const int d = sps.cap_d;
    sps.harmonic_power.resize(d);
    sps.harmonic_phase.resize(d);
    for (int l = 1; l <= d; ++l) {
        double a = sps.gamma(l);
        double b = sps.gamma(d + l);
        sps.harmonic_power(l - 1) = (a * a + b * b) / 4.0;
        double th = std::atan2(-b, a);
        if (th < 0.0) th += kTwoPi;
        sps.harmonic_phase(l - 1) = th;
    }
}

}  // namespace

DesignMatrix build_design(const Eigen::VectorXd& amp, const Eigen::VectorXd& phase_cycles,
                          int cap_d) {
    if (cap_d < 1) throw DimensionMismatch("cap_d must be >= 1");
    const Eigen::Index n = amp.size();
    if (phase_cycles.size() != n) throw DimensionMismatch("amp/phase length mismatch");
    if (n < 4 * (2 * cap_d + 1))
        throw TooShort("regression needs at least 4*(2D+1) samples");

    DesignMatrix d;
    d.cap_d = cap_d;
    d.rows.resize(2 * cap_d + 1, n);
    d.rows.row(0) = amp.transpose();
    for (int l = 1; l <= cap_d; ++l) {
        for (Eigen::Index k = 0; k < n; ++k) {
            double ang = kTwoPi * l * phase_cycles(k);
            d.rows(l, k) = amp(k) * std::cos(ang);
            d.rows(cap_d + l, k) = amp(k) * std::sin(ang);
        }
    }
    return d;
}

DesignMatrix build_design(const RecoveredComponent& comp, int cap_d) {
    Eigen::VectorXd amp = Eigen::Map<const Eigen::VectorXd>(comp.amp.data(),
                                                            static_cast<Eigen::Index>(comp.amp.size()));
    Eigen::VectorXd phase = Eigen::Map<const Eigen::VectorXd>(
        comp.phase.data(), static_cast<Eigen::Index>(comp.phase.size()));
    return build_design(amp, phase, cap_d);
}

SPSVector estimate_sps(const Eigen::VectorXd& y, const DesignMatrix& design) {
    if (y.size() != design.rows.cols())
        throw DimensionMismatch("Y length must equal the design column count");

    const Eigen::MatrixXd gram = design.rows * design.rows.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    const double cond = (lo > 0.0) ? hi / lo : std::numeric_limits<double>::infinity();
    if (!(cond < 1e8))
        throw IllConditioned("Gram matrix condition number " + std::to_string(cond));

    SPSVector sps;
    sps.cap_d = design.cap_d;
    sps.gamma = gram.ldlt().solve(design.rows * y);
    sps.condition_number = cond;
    sps.aligned = false;
    derive_power_phase(sps);
    return sps;
}

SPSVector align_phase(const SPSVector& sps) {
    const int d = sps.cap_d;
    double a1 = std::sqrt(sps.gamma(1) * sps.gamma(1) + sps.gamma(d + 1) * sps.gamma(d + 1)) / 2.0;
    if (!(a1 > 0.0)) throw ZeroFundamental("cannot align with a zero fundamental");

    SPSVector out = sps;
    const double theta1 = sps.harmonic_phase(0);
    for (int l = 1; l <= d; ++l) {
        double a_l = std::sqrt(sps.gamma(l) * sps.gamma(l) +
                               sps.gamma(d + l) * sps.gamma(d + l)) / 2.0;
        double th = std::fmod(sps.harmonic_phase(l - 1) - l * theta1, kTwoPi);
        if (th < 0.0) th += kTwoPi;
        out.gamma(l) = 2.0 * a_l * std::cos(th);
        out.gamma(d + l) = -2.0 * a_l * std::sin(th);
    }
    out.aligned = true;
    derive_power_phase(out);
    return out;
}

Eigen::VectorXd reconstruct_fit(const SPSVector& sps, const DesignMatrix& design) {
    if (sps.gamma.size() != design.rows.rows())
        throw DimensionMismatch("SPS dimension does not match the design");
    return design.rows.transpose() * sps.gamma;
}

double eval_sps(const SPSVector& sps, double t) {
    double v = sps.gamma(0);
    for (int l = 1; l <= sps.cap_d; ++l) {
        double ang = kTwoPi * l * t;
        v += sps.gamma(l) * std::cos(ang) + sps.gamma(sps.cap_d + l) * std::sin(ang);
    }
    return v;
}

SPSVector normalize_energy(const SPSVector& sps) {
    double e = sps.gamma(0) * sps.gamma(0);
    for (int l = 1; l <= sps.cap_d; ++l)
        e += (sps.gamma(l) * sps.gamma(l) +
              sps.gamma(sps.cap_d + l) * sps.gamma(sps.cap_d + l)) / 2.0;
    if (!(e > 0.0)) throw ZeroFundamental("cannot normalize a zero SPS");
    SPSVector out = sps;
    out.gamma /= std::sqrt(e);
    derive_power_phase(out);
    return out;
}

}  // namespace wsst
