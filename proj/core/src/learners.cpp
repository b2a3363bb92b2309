#include "awe/learners.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace awe {

ClassDistribution::ClassDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) {
        throw std::invalid_argument("class distribution over zero classes");
    }
    double total = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("class probability outside [0,1]");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("class probabilities do not sum to 1");
    }
}

ClassDistribution ClassDistribution::from_scores(std::vector<double> scores) {
    double total = 0.0;
    for (double s : scores) {
        if (!(s >= 0.0)) {
            throw std::invalid_argument("negative class score");
        }
        total += s;
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("all class scores are zero");
    }
    for (double& s : scores) {
        s /= total;
    }
    return ClassDistribution(std::move(scores));
}

ClassIndex ClassDistribution::argmax() const noexcept {
    return static_cast<ClassIndex>(std::max_element(probs_.begin(), probs_.end()) - probs_.begin());
}

std::string_view to_string(LearnerKind kind) noexcept {
    switch (kind) {
        case LearnerKind::naive_bayes:
            return "nb";
        case LearnerKind::decision_stump:
            return "stump";
    }
    return "unknown";
}

std::optional<LearnerKind> parse_learner_kind(std::string_view text) noexcept {
    if (text == "nb" || text == "naive_bayes") {
        return LearnerKind::naive_bayes;
    }
    if (text == "stump" || text == "decision_stump") {
        return LearnerKind::decision_stump;
    }
    return std::nullopt;
}

std::shared_ptr<const Classifier> fit(LearnerKind kind, const Chunk& chunk) {
    switch (kind) {
        case LearnerKind::naive_bayes:
            return std::make_shared<const NaiveBayesModel>(naive_bayes_fit(chunk));
        case LearnerKind::decision_stump:
            return std::make_shared<const DecisionStumpModel>(decision_stump_fit(chunk));
    }
    throw std::invalid_argument("unknown learner kind");
}

}  // namespace awe
