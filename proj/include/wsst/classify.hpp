#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <utility>
#include <vector>

namespace wsst {

// Linear model collapsed from PLS1 regression; coeffs[0] is the intercept,
// the remainder act on the raw (unstandardized) features.
struct ClassifierModel {
    Eigen::VectorXd coeffs;  // length p + 1
    int n_components = 0;    // components actually extracted
    Eigen::VectorXd feat_mean;
    Eigen::VectorXd feat_scale;
    int n_samples = 0;
    std::uint64_t seed = 0;
};

// PLS1 via NIPALS deflation on standardized features; labels in {0, 1}.
// Stops early (RankDeficient is not thrown) when a weight vector vanishes.
ClassifierModel fit_pls(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                        int n_components);

// GPS index: [1, x] . coeffs.
double gps_score(const ClassifierModel& model, const Eigen::VectorXd& features);
std::vector<double> gps_scores(const ClassifierModel& model, const Eigen::MatrixXd& features);

struct ROCResult {
    std::vector<double> thresholds;  // ascending, the distinct scores
    std::vector<double> sens;
    std::vector<double> spec;
    double auc = 0.0;                             // trapezoidal / Mann-Whitney half-credit
    std::pair<double, double> ci{0.0, 0.0};       // filled by bootstrap_auc_ci
    double optimal_threshold = 0.0;               // maximizes Youden's J
    double accuracy_at_optimal = 0.0;
};

// Classification rule: score >= threshold predicts class 1.
ROCResult roc_analyze(const std::vector<double>& scores, const std::vector<int>& labels);

// Percentile 95% CI over stratified resamples; deterministic given seed.
std::pair<double, double> bootstrap_auc_ci(const std::vector<double>& scores,
                                           const std::vector<int>& labels, int n_boot,
                                           std::uint64_t seed);

enum class ThresholdRule { Youden };

// Leave-one-out: fit on n-1, pick the training threshold by the rule, classify
// the held-out sample; returns the fraction correct.
double loocv_accuracy(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                      int n_components, ThresholdRule rule = ThresholdRule::Youden);

// Permutation test on the sum over coordinates of the pointwise one-way
// ANOVA F statistic; p = (1 + #{perm >= observed}) / (1 + n_perm).
double permutation_functional_anova(const std::vector<Eigen::MatrixXd>& groups, int n_perm,
                                    std::uint64_t seed);

}  // namespace wsst
