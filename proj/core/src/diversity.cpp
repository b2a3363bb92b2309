#include "awe/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace awe {

PairwiseMeasures pairwise_measures(const ContingencyTable& t) {
    return pairwise_from_cells(t.a(), t.b(), t.c(), t.d());
}

PairwiseMeasures pairwise_from_cells(double a, double b, double c, double d) {
    PairwiseMeasures m;
    m.dis = b + c;
    m.df = d;

    const double cross = a * d - b * c;
    const double rho_den = std::sqrt((a + b) * (c + d) * (b + d) * (a + c));
    if (rho_den > 0.0) {
        m.rho = cross / rho_den;
    } else {
        m.rho_degenerate = 1;
    }
    const double q_den = a * d + b * c;
    if (q_den > 0.0) {
        m.q = cross / q_den;
    } else {
        m.q_degenerate = 1;
    }
    return m;
}

PairwiseMeasures average_measures(std::span<const PairwiseMeasures> per_pair) {
    if (per_pair.empty()) {
        throw std::invalid_argument("pairwise average over zero pairs");
    }
    PairwiseMeasures avg;
    avg.pairs = per_pair.size();
    for (const PairwiseMeasures& m : per_pair) {
        avg.rho += m.rho;
        avg.q += m.q;
        avg.dis += m.dis;
        avg.df += m.df;
        avg.rho_degenerate += m.rho_degenerate;
        avg.q_degenerate += m.q_degenerate;
    }
    const auto n = static_cast<double>(per_pair.size());
    avg.rho /= n;
    avg.q /= n;
    avg.dis /= n;
    avg.df /= n;
    return avg;
}

PairwiseMeasures pairwise_average(std::span<const ContingencyTable> tables) {
    std::vector<PairwiseMeasures> per_pair;
    per_pair.reserve(tables.size());
    for (const ContingencyTable& t : tables) {
        per_pair.push_back(pairwise_measures(t));
    }
    return average_measures(per_pair);
}

PairwiseMeasures pairwise_averages(const OracleMatrix& oracle) {
    const std::size_t l = oracle.n_classifiers();
    std::vector<ContingencyTable> tables;
    tables.reserve(pair_count(l));
    for (std::size_t i = 0; i + 1 < l; ++i) {
        for (std::size_t j = i + 1; j < l; ++j) {
            tables.push_back(contingency_from_oracle(oracle, i, j));
        }
    }
    return pairwise_average(tables);
}

namespace {

// Shared tail of both accuracy routes so that integer inputs give identical doubles.
void finish_accuracy(AccuracySummary& s, double mass, double failure_total) {
    const auto l = static_cast<double>(s.p_per_classifier.size());
    s.big_p = 1.0 - failure_total / (mass * l);
    s.big_p_weighted = 0.0;
    for (std::size_t j = 0; j < s.p_per_classifier.size(); ++j) {
        s.big_p_weighted += s.weights[j] * s.p_per_classifier[j];
    }
}

AccuracySummary accuracy_impl(const OracleMatrix& oracle, std::vector<double> weights, bool uniform) {
    const std::size_t n = oracle.n_samples();
    const std::size_t l = oracle.n_classifiers();
    const auto nd = static_cast<double>(n);
    const auto ld = static_cast<double>(l);

    AccuracySummary s;
    s.uniform = uniform;
    s.weights = std::move(weights);
    s.p_per_classifier.assign(l, 0.0);
    s.l_mass.assign(n, 0.0);
    s.failure_histogram.assign(l + 1, 0.0);

    std::vector<std::uint64_t> correct(l, 0);
    std::vector<std::uint64_t> histogram(l + 1, 0);
    double l_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t failures = 0;
        double wrong_weight = 0.0;
        for (std::size_t j = 0; j < l; ++j) {
            if (oracle.correct(i, j)) {
                ++correct[j];
            } else {
                ++failures;
                wrong_weight += s.weights[j];
            }
        }
        ++histogram[failures];
        s.l_mass[i] = uniform ? static_cast<double>(failures) : ld * wrong_weight;
        l_total += s.l_mass[i];
    }
    for (std::size_t j = 0; j < l; ++j) {
        s.p_per_classifier[j] = static_cast<double>(correct[j]) / nd;
    }
    for (std::size_t j = 0; j <= l; ++j) {
        s.failure_histogram[j] = static_cast<double>(histogram[j]) / nd;
    }
    finish_accuracy(s, nd, l_total);
    return s;
}

double binary_entropy(double p) {
    double h = 0.0;
    if (p > 0.0) {
        h -= p * std::log2(p);
    }
    if (p < 1.0) {
        h -= (1.0 - p) * std::log2(1.0 - p);
    }
    return h;
}

struct NonPairwiseInputs {
    double mass;
    std::size_t l;
    double min_votes;       // sum_i min(c_i, L - c_i)
    double disagreement;    // sum_i l_i (L - l_i)
    double big_p;
    double correct_share;   // overall correct proportion over all N*L cells
    std::span<const double> histogram;  // T_j
};

NonPairwiseMeasures finish_nonpairwise(const NonPairwiseInputs& in) {
    const auto l = static_cast<double>(in.l);
    NonPairwiseMeasures m;
    m.entropy_e = in.min_votes * 2.0 / ((l - 1.0) * in.mass);
    m.entropy_cc = binary_entropy(in.correct_share);
    m.kw = in.disagreement / (in.mass * l * l);

    if (in.big_p <= 0.0 || in.big_p >= 1.0) {
        m.kappa = 1.0;
        m.kappa_degenerate = true;
    } else {
        m.kappa = 1.0 - in.disagreement / (in.mass * l * (l - 1.0) * in.big_p * (1.0 - in.big_p));
    }

    double coincident = 0.0;
    double single = 0.0;
    for (std::size_t j = 1; j < in.histogram.size(); ++j) {
        const auto jd = static_cast<double>(j);
        coincident += jd * (jd - 1.0) / (l * (l - 1.0)) * in.histogram[j];
        single += jd / l * in.histogram[j];
    }
    if (single <= 0.0) {
        m.gd = 1.0;
        m.gd_degenerate = true;
    } else {
        m.gd = 1.0 - coincident / single;
    }
    return m;
}

}  // namespace

AccuracySummary ensemble_accuracy(const OracleMatrix& oracle) {
    const std::size_t l = oracle.n_classifiers();
    return accuracy_impl(oracle, std::vector<double>(l, 1.0 / static_cast<double>(l)), true);
}

AccuracySummary ensemble_accuracy(const OracleMatrix& oracle, std::span<const double> weights) {
    if (weights.size() != oracle.n_classifiers()) {
        throw std::invalid_argument("weight vector length differs from classifier count");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) {
            throw std::invalid_argument("weights must be non-negative");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("weights must sum to 1");
    }
    return accuracy_impl(oracle, std::vector<double>(weights.begin(), weights.end()), false);
}

NonPairwiseMeasures nonpairwise_measures(const OracleMatrix& oracle, const AccuracySummary& summary) {
    const std::size_t n = oracle.n_samples();
    const std::size_t l = oracle.n_classifiers();
    if (summary.l_mass.size() != n || summary.failure_histogram.size() != l + 1) {
        throw std::invalid_argument("accuracy summary does not match the oracle matrix");
    }
    double min_votes = 0.0;
    double disagreement = 0.0;
    double failures = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t correct = 0;
        for (std::size_t j = 0; j < l; ++j) {
            correct += oracle.correct(i, j) ? 1 : 0;
        }
        min_votes += static_cast<double>(std::min(correct, l - correct));
        failures += static_cast<double>(l - correct);
        const double li = summary.l_mass[i];
        disagreement += li * (static_cast<double>(l) - li);
    }
    const auto nd = static_cast<double>(n);
    const double correct_share = 1.0 - failures / (nd * static_cast<double>(l));
    return finish_nonpairwise({nd, l, min_votes, disagreement, summary.big_p, correct_share,
                               summary.failure_histogram});
}

FailureProfile failure_profile(const OracleMatrix& oracle) {
    const std::size_t l = oracle.n_classifiers();
    FailureProfile p;
    p.n_classifiers = l;
    p.mass = static_cast<double>(oracle.n_samples());
    p.failures.assign(l + 1, 0.0);
    for (std::size_t i = 0; i < oracle.n_samples(); ++i) {
        std::size_t f = 0;
        for (std::size_t j = 0; j < l; ++j) {
            f += oracle.correct(i, j) ? 0 : 1;
        }
        p.failures[f] += 1.0;
    }
    return p;
}

NonPairwiseMeasures nonpairwise_from_profile(const FailureProfile& profile) {
    const std::size_t l = profile.n_classifiers;
    if (l < 2 || profile.failures.size() != l + 1) {
        throw std::invalid_argument("failure profile needs L >= 2 and L+1 bins");
    }
    if (!(profile.mass > 0.0)) {
        throw std::invalid_argument("failure profile is empty");
    }
    const auto ld = static_cast<double>(l);
    double min_votes = 0.0;
    double disagreement = 0.0;
    double failures = 0.0;
    std::vector<double> histogram(l + 1);
    for (std::size_t j = 0; j <= l; ++j) {
        const double f = profile.failures[j];
        const auto jd = static_cast<double>(j);
        min_votes += f * static_cast<double>(std::min(j, l - j));
        disagreement += f * (jd * (ld - jd));
        failures += f * jd;
        histogram[j] = f / profile.mass;
    }
    const double big_p = 1.0 - failures / (profile.mass * ld);
    return finish_nonpairwise({profile.mass, l, min_votes, disagreement, big_p, big_p, histogram});
}

AccuracySummary accuracy_from_profile(std::span<const double> correct_mass,
                                      const FailureProfile& profile) {
    const std::size_t l = profile.n_classifiers;
    if (correct_mass.size() != l || profile.failures.size() != l + 1) {
        throw std::invalid_argument("accuracy statistics have mismatched sizes");
    }
    if (!(profile.mass > 0.0)) {
        throw std::invalid_argument("accuracy statistics are empty");
    }
    AccuracySummary s;
    s.uniform = true;
    s.weights.assign(l, 1.0 / static_cast<double>(l));
    s.p_per_classifier.resize(l);
    for (std::size_t j = 0; j < l; ++j) {
        s.p_per_classifier[j] = correct_mass[j] / profile.mass;
    }
    s.failure_histogram.resize(l + 1);
    double failures = 0.0;
    for (std::size_t j = 0; j <= l; ++j) {
        s.failure_histogram[j] = profile.failures[j] / profile.mass;
        failures += profile.failures[j] * static_cast<double>(j);
    }
    finish_accuracy(s, profile.mass, failures);
    return s;
}

}  // namespace awe
