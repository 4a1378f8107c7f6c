#include "wsst/classify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "wsst/errors.hpp"

namespace wsst {

namespace {

void check_two_classes(const std::vector<int>& labels) {
    bool has0 = false, has1 = false;
    for (int v : labels) (v == 0 ? has0 : has1) = true;
    if (!has0 || !has1) throw SingleClass("both classes must be present");
}

double auc_midrank(const std::vector<double>& scores, const std::vector<int>& labels) {
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Mid-ranks over ties; AUC = (sum of positive ranks - n1(n1+1)/2) / (n1*n0).
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
        i = j + 1;
    }

    double n1 = 0.0, n0 = 0.0, rank_sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (labels[k] == 1) {
            n1 += 1.0;
            rank_sum += rank[k];
        } else {
            n0 += 1.0;
        }
    }
    return (rank_sum - n1 * (n1 + 1.0) / 2.0) / (n1 * n0);
}

uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 step over seed + stream index
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

ClassifierModel fit_pls(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                        int n_components) {
    const Eigen::Index n = features.rows();
    const Eigen::Index p = features.cols();
    if (n < 4) throw TooFewSamples("need at least 4 samples");
    if (labels.size() != static_cast<std::size_t>(n))
        throw DimensionMismatch("labels length mismatch");
    if (!features.allFinite()) throw NonFiniteInput("non-finite feature value");
    check_two_classes(labels);
    if (n_components < 1 || n_components > std::min<Eigen::Index>(p, n - 1))
        throw DimensionMismatch("n_components out of range");

    ClassifierModel model;
    model.n_samples = static_cast<int>(n);
    model.feat_mean = features.colwise().mean();
    Eigen::MatrixXd xc = features.rowwise() - model.feat_mean.transpose();
    model.feat_scale.resize(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        double sd = std::sqrt(xc.col(j).squaredNorm() / static_cast<double>(n - 1));
        model.feat_scale(j) = (sd > 1e-12) ? sd : 1.0;
        xc.col(j) /= model.feat_scale(j);
    }

    Eigen::VectorXd yv(n);
    for (Eigen::Index i = 0; i < n; ++i) yv(i) = static_cast<double>(labels[i]);
    const double y_mean = yv.mean();
    Eigen::VectorXd yc = yv.array() - y_mean;

    // NIPALS PLS1 deflation.
    Eigen::MatrixXd w_mat(p, n_components), p_mat(p, n_components);
    Eigen::VectorXd q_vec(n_components);
    Eigen::MatrixXd x = xc;
    Eigen::VectorXd y = yc;
    int a = 0;
    for (; a < n_components; ++a) {
        Eigen::VectorXd w = x.transpose() * y;
        double wn = w.norm();
        if (wn < 1e-12) break;  // rank exhausted; keep the components found
        w /= wn;
        Eigen::VectorXd t = x * w;
        double tt = t.squaredNorm();
        if (tt < 1e-24) break;
        Eigen::VectorXd pv = x.transpose() * t / tt;
        double q = y.dot(t) / tt;
        w_mat.col(a) = w;
        p_mat.col(a) = pv;
        q_vec(a) = q;
        x -= t * pv.transpose();
        y -= q * t;
    }
    if (a == 0) throw RankDeficient("no PLS component could be extracted");
    model.n_components = a;

    Eigen::MatrixXd w_used = w_mat.leftCols(a);
    Eigen::MatrixXd p_used = p_mat.leftCols(a);
    Eigen::VectorXd q_used = q_vec.head(a);
    Eigen::VectorXd beta_std =
        w_used * (p_used.transpose() * w_used).colPivHouseholderQr().solve(q_used);

    model.coeffs.resize(p + 1);
    for (Eigen::Index j = 0; j < p; ++j) model.coeffs(j + 1) = beta_std(j) / model.feat_scale(j);
    model.coeffs(0) = y_mean - model.feat_mean.dot(model.coeffs.tail(p));
    return model;
}

double gps_score(const ClassifierModel& model, const Eigen::VectorXd& features) {
    if (features.size() + 1 != model.coeffs.size())
        throw DimensionMismatch("feature dimension does not match the model");
    return model.coeffs(0) + model.coeffs.tail(features.size()).dot(features);
}

std::vector<double> gps_scores(const ClassifierModel& model, const Eigen::MatrixXd& features) {
    std::vector<double> out(features.rows());
    for (Eigen::Index i = 0; i < features.rows(); ++i)
        out[i] = gps_score(model, features.row(i).transpose());
    return out;
}

ROCResult roc_analyze(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size()) throw DimensionMismatch("scores/labels mismatch");
    check_two_classes(labels);

    ROCResult r;
    r.thresholds = scores;
    std::sort(r.thresholds.begin(), r.thresholds.end());
    r.thresholds.erase(std::unique(r.thresholds.begin(), r.thresholds.end()),
                       r.thresholds.end());

    double n1 = 0.0, n0 = 0.0;
    for (int v : labels) (v == 1 ? n1 : n0) += 1.0;

    r.sens.resize(r.thresholds.size());
    r.spec.resize(r.thresholds.size());
    double best_j = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < r.thresholds.size(); ++t) {
        double tp = 0.0, tn = 0.0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            bool pred = scores[i] >= r.thresholds[t];
            if (pred && labels[i] == 1) tp += 1.0;
            if (!pred && labels[i] == 0) tn += 1.0;
        }
        r.sens[t] = tp / n1;
        r.spec[t] = tn / n0;
        double j = r.sens[t] + r.spec[t] - 1.0;
        if (j > best_j) {
            best_j = j;
            r.optimal_threshold = r.thresholds[t];
            r.accuracy_at_optimal = (tp + tn) / (n1 + n0);
        }
    }
    r.auc = auc_midrank(scores, labels);
    return r;
}

std::pair<double, double> bootstrap_auc_ci(const std::vector<double>& scores,
                                           const std::vector<int>& labels, int n_boot,
                                           std::uint64_t seed) {
    if (n_boot < 100) throw TooFewSamples("n_boot must be >= 100");
    check_two_classes(labels);

    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < labels.size(); ++i)
        (labels[i] == 1 ? pos : neg).push_back(i);

    std::vector<double> aucs(n_boot);
    std::vector<double> s(labels.size());
    std::vector<int> l(labels.size());
    for (int b = 0; b < n_boot; ++b) {
        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
        std::uniform_int_distribution<std::size_t> dpos(0, pos.size() - 1);
        std::uniform_int_distribution<std::size_t> dneg(0, neg.size() - 1);
        std::size_t k = 0;
        for (std::size_t i = 0; i < pos.size(); ++i, ++k) {
            s[k] = scores[pos[dpos(rng)]];
            l[k] = 1;
        }
        for (std::size_t i = 0; i < neg.size(); ++i, ++k) {
            s[k] = scores[neg[dneg(rng)]];
            l[k] = 0;
        }
        aucs[b] = auc_midrank(s, l);
    }
    std::sort(aucs.begin(), aucs.end());
    auto at = [&](double q) {
        std::size_t idx = static_cast<std::size_t>(
            std::clamp<long>(std::lround(std::ceil(q * n_boot)) - 1, 0, n_boot - 1));
        return aucs[idx];
    };
    return {at(0.025), at(0.975)};
}

double loocv_accuracy(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                      int n_components, ThresholdRule rule) {
    (void)rule;  // Youden is the only rule
    const Eigen::Index n = features.rows();
    if (n < 5) throw TooFewSamples("LOOCV needs at least 5 samples");
    check_two_classes(labels);

    int correct = 0, evaluated = 0;
    Eigen::MatrixXd train_x(n - 1, features.cols());
    std::vector<int> train_y(n - 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index r = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            train_x.row(r) = features.row(j);
            train_y[r] = labels[j];
            ++r;
        }
        try {
            int nc = std::min<int>(n_components, static_cast<int>(std::min<Eigen::Index>(
                                                     features.cols(), n - 2)));
            ClassifierModel m = fit_pls(train_x, train_y, nc);
            ROCResult roc = roc_analyze(gps_scores(m, train_x), train_y);
            double score = gps_score(m, features.row(i).transpose());
            int pred = score >= roc.optimal_threshold ? 1 : 0;
            if (pred == labels[i]) ++correct;
            ++evaluated;
        } catch (const SingleClass&) {
            // fold skipped: removing the sample emptied one class
        }
    }
    if (evaluated == 0) throw SingleClass("every fold degenerated to a single class");
    return static_cast<double>(correct) / evaluated;
}

double permutation_functional_anova(const std::vector<Eigen::MatrixXd>& groups, int n_perm,
                                    std::uint64_t seed) {
    if (groups.size() < 2) throw TooFewSamples("need at least 2 groups");
    const Eigen::Index p = groups[0].cols();
    Eigen::Index n = 0;
    for (const auto& g : groups) {
        if (g.rows() < 3) throw TooFewSamples("each group needs at least 3 members");
        if (g.cols() != p) throw DimensionMismatch("group feature dimensions differ");
        n += g.rows();
    }

    Eigen::MatrixXd pool(n, p);
    std::vector<int> assign(n);
    Eigen::Index r = 0;
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (Eigen::Index i = 0; i < groups[g].rows(); ++i, ++r) {
            pool.row(r) = groups[g].row(i);
            assign[r] = static_cast<int>(g);
        }

    const int k = static_cast<int>(groups.size());
    auto statistic = [&](const std::vector<int>& who) {
        // Sum over coordinates of the pointwise one-way F statistic.
        double total = 0.0;
        Eigen::MatrixXd means = Eigen::MatrixXd::Zero(k, p);
        Eigen::VectorXd counts = Eigen::VectorXd::Zero(k);
        for (Eigen::Index i = 0; i < n; ++i) {
            means.row(who[i]) += pool.row(i);
            counts(who[i]) += 1.0;
        }
        for (int g = 0; g < k; ++g) means.row(g) /= counts(g);
        Eigen::RowVectorXd grand = pool.colwise().mean();
        for (Eigen::Index c = 0; c < p; ++c) {
            double ssb = 0.0, ssw = 0.0;
            for (int g = 0; g < k; ++g) {
                double d = means(g, c) - grand(c);
                ssb += counts(g) * d * d;
            }
            for (Eigen::Index i = 0; i < n; ++i) {
                double d = pool(i, c) - means(who[i], c);
                ssw += d * d;
            }
            double msb = ssb / (k - 1);
            double msw = ssw / static_cast<double>(n - k);
            if (msw > 0.0)
                total += msb / msw;
            else if (msb > 0.0)
                total += 1e30;
        }
        return total;
    };

    const double observed = statistic(assign);
    std::mt19937_64 rng(seed);
    int exceed = 0;
    std::vector<int> perm = assign;
    for (int t = 0; t < n_perm; ++t) {
        std::shuffle(perm.begin(), perm.end(), rng);
        if (statistic(perm) >= observed - 1e-12) ++exceed;
    }
    return (1.0 + exceed) / (1.0 + n_perm);
}

}  // namespace wsst
