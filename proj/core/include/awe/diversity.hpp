#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "awe/types.hpp"

namespace awe {

/// Pairwise diversity of one classifier pair, or the average over all pairs.
///
/// `rho_degenerate` / `q_degenerate` count pairs whose denominator was zero;
/// such pairs contribute 0 (no correlation evidence under unanimity).
struct PairwiseMeasures {
    double rho = 0.0;  ///< correlation coefficient
    double q = 0.0;    ///< Yule's Q statistic
    double dis = 0.0;  ///< disagreement, b + c
    double df = 0.0;   ///< double fault, d
    std::size_t pairs = 1;
    std::size_t rho_degenerate = 0;
    std::size_t q_degenerate = 0;
};

PairwiseMeasures pairwise_measures(const ContingencyTable& table);

/// Same as pairwise_measures, from raw cell proportions (fading tables are
/// normalized by a shared denominator and skip the table's sum check).
PairwiseMeasures pairwise_from_cells(double a, double b, double c, double d);

/// Mean of already computed per-pair measures; degeneracy counts add up.
PairwiseMeasures average_measures(std::span<const PairwiseMeasures> per_pair);

/// Mean of the per-pair measures. Throws std::invalid_argument on an empty span.
PairwiseMeasures pairwise_average(std::span<const ContingencyTable> tables);

/// 2/(L(L-1)) times the sum over all unordered pairs i < j.
PairwiseMeasures pairwise_averages(const OracleMatrix& oracle);

struct AccuracySummary {
    std::vector<double> p_per_classifier;  ///< p_j, column accuracy
    std::vector<double> weights;           ///< w_j, sums to 1
    double big_p = 0.0;                    ///< P = 1 - sum(l_i) / (N L)
    double big_p_weighted = 0.0;           ///< P = sum_j w_j p_j (same value, other route)
    std::vector<double> l_mass;            ///< l_i = L * sum of weights wrong on sample i
    std::vector<double> failure_histogram; ///< T_j, j = 0..L, from unweighted failure counts
    bool uniform = true;
};

/// Uniform weights 1/L. Each l_i is then the exact integer failure count.
AccuracySummary ensemble_accuracy(const OracleMatrix& oracle);

/// Throws std::invalid_argument if weights has the wrong length, a negative
/// entry, or does not sum to 1 within 1e-9.
AccuracySummary ensemble_accuracy(const OracleMatrix& oracle, std::span<const double> weights);

struct NonPairwiseMeasures {
    double entropy_e = 0.0;   ///< normalized to [0,1] by 1/N
    double entropy_cc = 0.0;  ///< base-2 binary entropy of the correct proportion
    double kw = 0.0;          ///< Kohavi-Wolpert variance
    double kappa = 1.0;       ///< inter-rater agreement
    double gd = 1.0;          ///< generalized diversity
    bool kappa_degenerate = false;  ///< P in {0,1}; kappa := 1
    bool gd_degenerate = false;     ///< nobody ever fails; gd := 1
};

/// Per-sample computation; `summary` must come from the same oracle.
NonPairwiseMeasures nonpairwise_measures(const OracleMatrix& oracle, const AccuracySummary& summary);

/// Sufficient statistics of the non-pairwise measures under uniform weights:
/// how much sample mass saw exactly j of the L classifiers fail. Masses are
/// integer counts for block/incremental/window processing and fading sums
/// under a fading factor.
struct FailureProfile {
    std::size_t n_classifiers = 0;
    double mass = 0.0;              ///< N, or the fading increment
    std::vector<double> failures;   ///< size L+1
};

FailureProfile failure_profile(const OracleMatrix& oracle);

/// Same measures as nonpairwise_measures, from the histogram alone. For
/// integer profiles the result is bit-identical to the per-sample route.
NonPairwiseMeasures nonpairwise_from_profile(const FailureProfile& profile);

/// Accuracy summary from sufficient statistics: per-classifier correct mass
/// plus the failure profile. l_mass stays empty (no per-sample history).
AccuracySummary accuracy_from_profile(std::span<const double> correct_mass,
                                      const FailureProfile& profile);

}  // namespace awe
