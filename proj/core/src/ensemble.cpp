#include "awe/ensemble.hpp"

#include <algorithm>
#include <numeric>

namespace awe {

std::string_view to_string(WeightingMode mode) noexcept {
    return mode == WeightingMode::mse ? "mse" : "benefit";
}

std::optional<WeightingMode> parse_weighting_mode(std::string_view text) noexcept {
    if (text == "mse") {
        return WeightingMode::mse;
    }
    if (text == "benefit") {
        return WeightingMode::benefit;
    }
    return std::nullopt;
}

void EnsembleConfig::validate() const {
    if (capacity < 2) {
        throw std::invalid_argument("ensemble capacity must be at least 2");
    }
    if (chunk_size == 0) {
        throw std::invalid_argument("chunk size must be positive");
    }
    if (weighting == WeightingMode::benefit && !benefit) {
        throw std::invalid_argument("benefit weighting requires a benefit matrix");
    }
    if (benefit && !(benefit->cost >= 0.0)) {
        throw std::invalid_argument("benefit matrix cost must be non-negative");
    }
}

ClassDistribution class_priors(const Chunk& chunk) {
    validate_chunk(chunk);
    std::vector<double> freq(chunk.num_classes, 0.0);
    for (const Instance& inst : chunk.instances) {
        freq[*inst.label] += 1.0;
    }
    return ClassDistribution::from_scores(std::move(freq));
}

double mse_of_classifier(const Classifier& model, const Chunk& chunk) {
    validate_chunk(chunk);
    double total = 0.0;
    for (const Instance& inst : chunk.instances) {
        const double miss = 1.0 - model.predict(inst.features)[*inst.label];
        total += miss * miss;
    }
    return total / static_cast<double>(chunk.size());
}

double mse_random(const ClassDistribution& priors) {
    double total = 0.0;
    for (double p : priors.probs()) {
        total += p * (1.0 - p) * (1.0 - p);
    }
    return total;
}

namespace {

template <typename ProbabilityOf>
double benefit_sum(const Chunk& chunk, const BenefitMatrix& matrix, ProbabilityOf&& prob) {
    validate_chunk(chunk);
    if (matrix.positive_class >= chunk.num_classes) {
        throw std::invalid_argument("benefit matrix positive class outside the class set");
    }
    double total = 0.0;
    for (const Instance& inst : chunk.instances) {
        if (!inst.amount) {
            throw std::invalid_argument("benefit weighting needs a transaction amount on every instance");
        }
        for (ClassIndex predicted = 0; predicted < chunk.num_classes; ++predicted) {
            const double gain = matrix.gain(*inst.label, predicted, *inst.amount);
            if (gain != 0.0) {
                total += gain * prob(inst, predicted);
            }
        }
    }
    return total;
}

}  // namespace

double benefit_of_classifier(const Classifier& model, const Chunk& chunk, const BenefitMatrix& matrix) {
    return benefit_sum(chunk, matrix, [&](const Instance& inst, ClassIndex c) {
        return model.predict(inst.features)[c];
    });
}

double benefit_random(const ClassDistribution& priors, const Chunk& chunk, const BenefitMatrix& matrix) {
    return benefit_sum(chunk, matrix, [&](const Instance&, ClassIndex c) { return priors[c]; });
}

WeightReport reweight(std::vector<EnsembleMember>& members, const Chunk& chunk,
                      const EnsembleConfig& config, std::optional<std::uint64_t> keep) {
    config.validate();
    if (members.empty()) {
        throw std::invalid_argument("reweight of an empty ensemble");
    }
    const ClassDistribution priors = class_priors(chunk);

    WeightReport report;
    report.chunk_index = chunk.index;
    report.mse_random = mse_random(priors);
    if (config.weighting == WeightingMode::benefit) {
        report.benefit_random = benefit_random(priors, chunk, *config.benefit);
    }

    for (EnsembleMember& m : members) {
        m.mse = mse_of_classifier(*m.model, chunk);
        if (config.weighting == WeightingMode::benefit) {
            m.benefit = benefit_of_classifier(*m.model, chunk, *config.benefit);
            m.weight = *m.benefit - *report.benefit_random;
        } else {
            m.benefit.reset();
            m.weight = report.mse_random - m.mse;
        }
        report.scores.push_back({m.id, m.origin_chunk, m.mse, m.benefit, m.weight});
    }

    // Rank: weight descending, newer origin first on ties.
    std::vector<std::size_t> rank(members.size());
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    std::stable_sort(rank.begin(), rank.end(), [&](std::size_t x, std::size_t y) {
        const EnsembleMember& a = members[x];
        const EnsembleMember& b = members[y];
        if (a.weight != b.weight) {
            return a.weight > b.weight;
        }
        if (a.origin_chunk != b.origin_chunk) {
            return a.origin_chunk > b.origin_chunk;
        }
        return a.id > b.id;
    });

    std::vector<bool> retain(members.size(), false);
    std::size_t kept = 0;
    for (std::size_t idx : rank) {
        const EnsembleMember& m = members[idx];
        const bool eligible = m.weight > 0.0 || (keep && m.id == *keep);
        if (eligible && kept < config.capacity) {
            retain[idx] = true;
            ++kept;
        }
    }

    std::vector<EnsembleMember> survivors;
    survivors.reserve(kept);
    for (std::size_t idx = 0; idx < members.size(); ++idx) {
        if (retain[idx]) {
            survivors.push_back(std::move(members[idx]));
        } else {
            report.pruned.push_back(members[idx].id);
        }
    }
    members = std::move(survivors);
    return report;
}

Prediction weighted_vote(std::span<const EnsembleMember> members, std::span<const double> features) {
    std::vector<double> scores;
    for (const EnsembleMember& m : members) {
        const double w = std::max(m.weight, 0.0);
        if (w <= 0.0) {
            continue;
        }
        const ClassDistribution dist = m.model->predict(features);
        if (scores.empty()) {
            scores.assign(dist.size(), 0.0);
        } else if (scores.size() != dist.size()) {
            throw std::invalid_argument("ensemble members disagree on the class count");
        }
        for (std::size_t c = 0; c < dist.size(); ++c) {
            scores[c] += w * dist[c];
        }
    }
    if (scores.empty()) {
        throw NoVotingMembers();
    }
    const auto label = static_cast<ClassIndex>(std::max_element(scores.begin(), scores.end()) - scores.begin());
    return {label, ClassDistribution::from_scores(std::move(scores))};
}

AccuracyWeightedEnsemble::AccuracyWeightedEnsemble(EnsembleConfig config) : config_(std::move(config)) {
    config_.validate();
}

WeightReport AccuracyWeightedEnsemble::process_chunk(const Chunk& chunk) {
    validate_chunk(chunk);
    EnsembleMember fresh;
    fresh.model = fit(config_.learner, chunk);
    fresh.origin_chunk = chunk.index;
    fresh.id = next_id_++;
    const std::uint64_t fresh_id = fresh.id;
    members_.push_back(std::move(fresh));

    WeightReport report = reweight(members_, chunk, config_, fresh_id);
    ++version_;
    return report;
}

Prediction AccuracyWeightedEnsemble::predict(std::span<const double> features) const {
    return weighted_vote(members_, features);
}

bool AccuracyWeightedEnsemble::has_voters() const noexcept {
    return std::any_of(members_.begin(), members_.end(), [](const EnsembleMember& m) { return m.weight > 0.0; });
}

Prediction predict_weighted(const AccuracyWeightedEnsemble& ensemble, const Instance& instance) {
    return ensemble.predict(instance.features);
}

}  // namespace awe
