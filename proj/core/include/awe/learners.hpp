#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "awe/types.hpp"

namespace awe {

/// Per-class probabilities f_c(x); entries in [0,1] summing to 1 within 1e-9.
class ClassDistribution {
  public:
    /// Throws std::invalid_argument on an empty vector, an entry outside
    /// [0,1], or a sum off by more than 1e-9.
    explicit ClassDistribution(std::vector<double> probs);

    /// Normalizes non-negative scores. Throws when every score is zero.
    static ClassDistribution from_scores(std::vector<double> scores);

    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](ClassIndex c) const { return probs_.at(c); }
    std::span<const double> probs() const noexcept { return probs_; }
    /// Lowest index among the maxima.
    ClassIndex argmax() const noexcept;

  private:
    std::vector<double> probs_;
};

/// A trained, frozen base classifier. Safe for concurrent predict calls.
class Classifier {
  public:
    virtual ~Classifier() = default;
    virtual std::size_t num_classes() const noexcept = 0;
    virtual ClassDistribution predict(std::span<const double> features) const = 0;
};

inline constexpr double kLaplaceSmoothing = 1.0;
inline constexpr double kVarianceFloor = 1e-9;
/// Lower bound applied to every posterior so that no class probability is 0 or 1.
inline constexpr double kProbabilityFloor = 1e-12;

/// Gaussian naive Bayes with Laplace-smoothed priors.
class NaiveBayesModel final : public Classifier {
  public:
    struct ClassStats {
        double prior = 0.0;
        std::vector<double> mean;
        std::vector<double> variance;
    };

    explicit NaiveBayesModel(std::vector<ClassStats> stats);

    std::size_t num_classes() const noexcept override { return stats_.size(); }
    ClassDistribution predict(std::span<const double> features) const override;
    const std::vector<ClassStats>& stats() const noexcept { return stats_; }

  private:
    std::vector<ClassStats> stats_;
};

/// Throws std::invalid_argument on an empty chunk or zero features.
NaiveBayesModel naive_bayes_fit(const Chunk& chunk);

/// One threshold split (`feature <= threshold` goes left) or a single leaf.
class DecisionStumpModel final : public Classifier {
  public:
    struct Split {
        std::size_t feature = 0;
        double threshold = 0.0;
        double gain = 0.0;
    };

    DecisionStumpModel(std::optional<Split> split, std::vector<double> left, std::vector<double> right);

    std::size_t num_classes() const noexcept override { return left_.size(); }
    ClassDistribution predict(std::span<const double> features) const override;
    const std::optional<Split>& split() const noexcept { return split_; }

  private:
    std::optional<Split> split_;
    std::vector<double> left_;
    std::vector<double> right_;
};

/// Best single-feature split by information gain. Thresholds are midpoints
/// between consecutive distinct values; ties keep the lowest feature and then
/// the lowest threshold. A split must gain more than 1e-12 bits, otherwise the
/// stump is one prior leaf. Throws std::invalid_argument on an empty chunk.
DecisionStumpModel decision_stump_fit(const Chunk& chunk);

enum class LearnerKind { naive_bayes, decision_stump };

std::string_view to_string(LearnerKind kind) noexcept;
std::optional<LearnerKind> parse_learner_kind(std::string_view text) noexcept;

std::shared_ptr<const Classifier> fit(LearnerKind kind, const Chunk& chunk);

}  // namespace awe
