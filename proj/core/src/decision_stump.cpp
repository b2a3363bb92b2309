#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "awe/learners.hpp"

namespace awe {

namespace {

double entropy(std::span<const std::size_t> counts, std::size_t total) {
    if (total == 0) {
        return 0.0;
    }
    const auto n = static_cast<double>(total);
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c > 0) {
            const double p = static_cast<double>(c) / n;
            h -= p * std::log2(p);
        }
    }
    return h;
}

std::vector<double> smoothed(std::span<const std::size_t> counts, std::size_t total) {
    const double denom = static_cast<double>(total) + kLaplaceSmoothing * static_cast<double>(counts.size());
    std::vector<double> out(counts.size());
    for (std::size_t c = 0; c < counts.size(); ++c) {
        out[c] = (static_cast<double>(counts[c]) + kLaplaceSmoothing) / denom;
    }
    return out;
}

constexpr double kMinGain = 1e-12;

}  // namespace

DecisionStumpModel::DecisionStumpModel(std::optional<Split> split, std::vector<double> left,
                                       std::vector<double> right)
    : split_(split), left_(std::move(left)), right_(std::move(right)) {
    if (left_.empty() || left_.size() != right_.size()) {
        throw std::invalid_argument("stump leaves must cover the same non-empty class set");
    }
}

ClassDistribution DecisionStumpModel::predict(std::span<const double> features) const {
    if (!split_) {
        return ClassDistribution(left_);
    }
    if (split_->feature >= features.size()) {
        throw std::invalid_argument("feature vector too short for the stump split");
    }
    return ClassDistribution(features[split_->feature] <= split_->threshold ? left_ : right_);
}

DecisionStumpModel decision_stump_fit(const Chunk& chunk) {
    validate_chunk(chunk);
    const std::size_t n = chunk.size();
    const std::size_t k = chunk.num_classes;
    const std::size_t d = chunk.num_features();

    std::vector<std::size_t> all(k, 0);
    for (const Instance& inst : chunk.instances) {
        ++all[*inst.label];
    }
    const double parent = entropy(all, n);

    std::optional<DecisionStumpModel::Split> best;
    std::vector<std::size_t> order(n);
    std::vector<std::size_t> left(k);
    std::vector<std::size_t> right(k);
    for (std::size_t f = 0; f < d; ++f) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            return chunk.instances[x].features[f] < chunk.instances[y].features[f];
        });
        std::fill(left.begin(), left.end(), 0);
        right = all;
        for (std::size_t pos = 0; pos + 1 < n; ++pos) {
            const Instance& cur = chunk.instances[order[pos]];
            ++left[*cur.label];
            --right[*cur.label];
            const double v = cur.features[f];
            const double next = chunk.instances[order[pos + 1]].features[f];
            if (!(v < next)) {
                continue;
            }
            const std::size_t n_left = pos + 1;
            const std::size_t n_right = n - n_left;
            const double children = (static_cast<double>(n_left) * entropy(left, n_left) +
                                     static_cast<double>(n_right) * entropy(right, n_right)) /
                                    static_cast<double>(n);
            const double gain = parent - children;
            if (gain > kMinGain && (!best || gain > best->gain + kMinGain)) {
                double threshold = v + (next - v) / 2.0;
                if (!(threshold < next)) {
                    threshold = v;  // adjacent doubles
                }
                best = DecisionStumpModel::Split{f, threshold, gain};
            }
        }
    }

    if (!best) {
        auto leaf = smoothed(all, n);
        return DecisionStumpModel(std::nullopt, leaf, leaf);
    }
    std::fill(left.begin(), left.end(), 0);
    std::size_t n_left = 0;
    for (const Instance& inst : chunk.instances) {
        if (inst.features[best->feature] <= best->threshold) {
            ++left[*inst.label];
            ++n_left;
        }
    }
    for (std::size_t c = 0; c < k; ++c) {
        right[c] = all[c] - left[c];
    }
    return DecisionStumpModel(best, smoothed(left, n_left), smoothed(right, n - n_left));
}

}  // namespace awe
