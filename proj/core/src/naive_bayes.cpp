#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "awe/learners.hpp"

namespace awe {

namespace {

struct Moments {
    std::size_t count = 0;
    std::vector<double> sum;
    std::vector<double> sum_sq;

    explicit Moments(std::size_t d) : sum(d, 0.0), sum_sq(d, 0.0) {}

    void add(std::span<const double> x) {
        ++count;
        for (std::size_t f = 0; f < x.size(); ++f) {
            sum[f] += x[f];
            sum_sq[f] += x[f] * x[f];
        }
    }

    void fill(NaiveBayesModel::ClassStats& out) const {
        const std::size_t d = sum.size();
        const auto n = static_cast<double>(count);
        out.mean.resize(d);
        out.variance.resize(d);
        for (std::size_t f = 0; f < d; ++f) {
            const double mean = sum[f] / n;
            const double var = sum_sq[f] / n - mean * mean;
            out.mean[f] = mean;
            out.variance[f] = std::max(var, kVarianceFloor);
        }
    }
};

}  // namespace

NaiveBayesModel::NaiveBayesModel(std::vector<ClassStats> stats) : stats_(std::move(stats)) {
    if (stats_.empty()) {
        throw std::invalid_argument("naive Bayes model over zero classes");
    }
}

NaiveBayesModel naive_bayes_fit(const Chunk& chunk) {
    validate_chunk(chunk);
    const std::size_t d = chunk.num_features();
    if (d == 0) {
        throw std::invalid_argument("naive Bayes needs at least one feature");
    }
    const std::size_t k = chunk.num_classes;

    Moments pooled(d);
    std::vector<Moments> per_class(k, Moments(d));
    for (const Instance& inst : chunk.instances) {
        pooled.add(inst.features);
        per_class[*inst.label].add(inst.features);
    }

    const auto n = static_cast<double>(chunk.size());
    std::vector<NaiveBayesModel::ClassStats> stats(k);
    for (std::size_t c = 0; c < k; ++c) {
        const Moments& m = per_class[c];
        stats[c].prior = (static_cast<double>(m.count) + kLaplaceSmoothing) /
                         (n + kLaplaceSmoothing * static_cast<double>(k));
        // Absent classes fall back on the pooled statistics; only the prior then
        // separates them from the rest.
        (m.count > 0 ? m : pooled).fill(stats[c]);
    }
    return NaiveBayesModel(std::move(stats));
}

ClassDistribution NaiveBayesModel::predict(std::span<const double> features) const {
    const std::size_t d = stats_.front().mean.size();
    if (features.size() != d) {
        throw std::invalid_argument("feature vector length does not match the model");
    }
    const std::size_t k = stats_.size();
    std::vector<double> log_post(k);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
        const ClassStats& s = stats_[c];
        double lp = std::log(s.prior);
        for (std::size_t f = 0; f < d; ++f) {
            const double diff = features[f] - s.mean[f];
            lp -= 0.5 * (std::log(2.0 * std::numbers::pi * s.variance[f]) + diff * diff / s.variance[f]);
        }
        log_post[c] = lp;
        best = std::max(best, lp);
    }

    std::vector<double> probs(k);
    double total = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        probs[c] = std::exp(log_post[c] - best);
        total += probs[c];
    }
    double floored_total = 0.0;
    for (double& p : probs) {
        p = std::max(p / total, kProbabilityFloor);
        floored_total += p;
    }
    for (double& p : probs) {
        p /= floored_total;
    }
    return ClassDistribution(std::move(probs));
}

}  // namespace awe
