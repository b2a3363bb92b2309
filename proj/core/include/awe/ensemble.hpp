#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "awe/learners.hpp"
#include "awe/types.hpp"

namespace awe {

/// Cost-sensitive gains b_{c,c'}(x). Only predicting the positive ("fraud")
/// class earns or costs anything:
///
///                      predict positive   predict other
///   actual positive    t(x) - cost        0
///   actual other       -cost              0
struct BenefitMatrix {
    double cost = 0.0;
    ClassIndex positive_class = 1;

    double gain(ClassIndex actual, ClassIndex predicted, double amount) const noexcept {
        if (predicted != positive_class) {
            return 0.0;
        }
        return actual == positive_class ? amount - cost : -cost;
    }
};

enum class WeightingMode { mse, benefit };

std::string_view to_string(WeightingMode mode) noexcept;
std::optional<WeightingMode> parse_weighting_mode(std::string_view text) noexcept;

struct EnsembleConfig {
    std::size_t capacity = 5;  ///< K, members retained after pruning
    std::size_t chunk_size = 500;
    WeightingMode weighting = WeightingMode::mse;
    std::optional<BenefitMatrix> benefit;
    LearnerKind learner = LearnerKind::naive_bayes;

    /// Throws std::invalid_argument: capacity < 2, chunk_size == 0, negative
    /// cost, or benefit weighting without a matrix.
    void validate() const;
};

struct EnsembleMember {
    std::shared_ptr<const Classifier> model;
    double weight = 0.0;
    double mse = 0.0;
    std::optional<double> benefit;
    std::size_t origin_chunk = 0;
    std::uint64_t id = 0;
};

struct MemberScore {
    std::uint64_t id = 0;
    std::size_t origin_chunk = 0;
    double mse = 0.0;
    std::optional<double> benefit;
    double weight = 0.0;
};

/// Outcome of one reweighting round against the newest chunk.
struct WeightReport {
    std::size_t chunk_index = 0;
    double mse_random = 0.0;
    std::optional<double> benefit_random;
    std::vector<MemberScore> scores;    ///< every member scored this round, pruned ones included
    std::vector<std::uint64_t> pruned;  ///< ids dropped this round
};

/// Class frequencies of the chunk (unsmoothed).
ClassDistribution class_priors(const Chunk& chunk);

/// Mean over the chunk of (1 - f_c(x))^2 for the true class c.
double mse_of_classifier(const Classifier& model, const Chunk& chunk);

/// Error of a classifier that answers with the prior p(c) everywhere:
/// sum_c p(c) (1 - p(c))^2.
double mse_random(const ClassDistribution& priors);

/// sum over the chunk of sum_c' b_{c,c'}(x) f_{c'}(x). Throws
/// std::invalid_argument when an instance has no amount.
double benefit_of_classifier(const Classifier& model, const Chunk& chunk, const BenefitMatrix& matrix);

/// Benefit of the prior-guessing classifier on the chunk.
double benefit_random(const ClassDistribution& priors, const Chunk& chunk, const BenefitMatrix& matrix);

/// Recomputes every weight against `chunk`, then prunes: members with weight
/// <= 0 are dropped (except `keep`), and of the rest the top `capacity` by
/// weight survive, ties going to the newer origin chunk. Throws
/// std::invalid_argument on an empty chunk or empty member list.
WeightReport reweight(std::vector<EnsembleMember>& members, const Chunk& chunk,
                      const EnsembleConfig& config, std::optional<std::uint64_t> keep = std::nullopt);

/// Raised by predict when no member carries positive weight.
class NoVotingMembers : public std::runtime_error {
  public:
    NoVotingMembers() : std::runtime_error("ensemble has no member with positive weight") {}
};

struct Prediction {
    ClassIndex label = 0;
    ClassDistribution distribution;
};

/// Chunk-trained accuracy-weighted ensemble. One writer (process_chunk);
/// predict is safe for concurrent readers between chunk updates.
class AccuracyWeightedEnsemble {
  public:
    explicit AccuracyWeightedEnsemble(EnsembleConfig config);

    /// Trains a member on `chunk`, reweights all members against it, prunes.
    WeightReport process_chunk(const Chunk& chunk);

    /// Weighted vote with weights clamped at 0; ties go to the lowest class
    /// index. Throws NoVotingMembers on cold start.
    Prediction predict(std::span<const double> features) const;

    const std::vector<EnsembleMember>& members() const noexcept { return members_; }
    const EnsembleConfig& config() const noexcept { return config_; }
    bool has_voters() const noexcept;
    /// Incremented whenever the member set changes.
    std::uint64_t membership_version() const noexcept { return version_; }

  private:
    EnsembleConfig config_;
    std::vector<EnsembleMember> members_;
    std::uint64_t next_id_ = 0;
    std::uint64_t version_ = 0;
};

Prediction predict_weighted(const AccuracyWeightedEnsemble& ensemble, const Instance& instance);

/// Weighted vote over arbitrary members; exposed for tests and tools.
Prediction weighted_vote(std::span<const EnsembleMember> members, std::span<const double> features);

}  // namespace awe
