#include "awe/stream_diversity.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace awe {

std::string_view to_string(DiversityMode mode) noexcept {
    switch (mode) {
        case DiversityMode::block:
            return "block";
        case DiversityMode::incremental:
            return "incremental";
        case DiversityMode::window:
            return "window";
        case DiversityMode::fading:
            return "fading";
    }
    return "unknown";
}

std::optional<DiversityMode> parse_diversity_mode(std::string_view text) noexcept {
    for (DiversityMode m : {DiversityMode::block, DiversityMode::incremental, DiversityMode::window,
                            DiversityMode::fading}) {
        if (text == to_string(m)) {
            return m;
        }
    }
    return std::nullopt;
}

DiversityReport block_report(const OracleMatrix& oracle, std::size_t timestamp) {
    DiversityReport r;
    r.mode = DiversityMode::block;
    r.timestamp = timestamp;
    r.mass = static_cast<double>(oracle.n_samples());
    r.n_classifiers = oracle.n_classifiers();
    r.pairwise = pairwise_averages(oracle);
    r.accuracy = ensemble_accuracy(oracle);
    r.nonpairwise = nonpairwise_measures(oracle, r.accuracy);
    return r;
}

// ---------------------------------------------------------------------------

PairCountState::PairCountState(std::size_t n_classifiers)
    : n_classifiers_(n_classifiers),
      pairs_(pair_count(n_classifiers)),
      correct_(n_classifiers, 0),
      failures_(n_classifiers + 1, 0) {
    if (n_classifiers < 2) {
        throw std::invalid_argument("diversity tracking needs at least two classifiers");
    }
}

std::size_t PairCountState::pair_slot(std::size_t i, std::size_t j) const noexcept {
    // Row-major upper triangle without the diagonal.
    return i * (2 * n_classifiers_ - i - 1) / 2 + (j - i - 1);
}

void PairCountState::check_width(std::span<const Outcome> outcomes) const {
    if (outcomes.size() != n_classifiers_) {
        throw std::invalid_argument("outcome vector has " + std::to_string(outcomes.size()) +
                                    " entries, expected " + std::to_string(n_classifiers_));
    }
}

void PairCountState::update(std::span<const Outcome> outcomes) {
    check_width(outcomes);
    std::size_t slot = 0;
    std::size_t failed = 0;
    for (std::size_t i = 0; i < n_classifiers_; ++i) {
        if (is_correct(outcomes[i])) {
            ++correct_[i];
        } else {
            ++failed;
        }
        for (std::size_t j = i + 1; j < n_classifiers_; ++j) {
            pairs_[slot++].add(outcomes[i], outcomes[j]);
        }
    }
    ++failures_[failed];
    ++n_seen_;
}

void PairCountState::remove(std::span<const Outcome> outcomes) {
    check_width(outcomes);
    if (n_seen_ == 0) {
        throw std::logic_error("remove from an empty pair-count state");
    }
    std::size_t slot = 0;
    std::size_t failed = 0;
    for (std::size_t i = 0; i < n_classifiers_; ++i) {
        if (is_correct(outcomes[i])) {
            --correct_[i];
        } else {
            ++failed;
        }
        for (std::size_t j = i + 1; j < n_classifiers_; ++j) {
            pairs_[slot++].remove(outcomes[i], outcomes[j]);
        }
    }
    --failures_[failed];
    --n_seen_;
}

void PairCountState::reset() {
    n_seen_ = 0;
    std::fill(pairs_.begin(), pairs_.end(), PairCounts{});
    std::fill(correct_.begin(), correct_.end(), 0);
    std::fill(failures_.begin(), failures_.end(), 0);
}

const PairCounts& PairCountState::pair(std::size_t i, std::size_t j) const {
    if (!(i < j && j < n_classifiers_)) {
        throw std::out_of_range("pair index must satisfy i < j < L");
    }
    return pairs_[pair_slot(i, j)];
}

DiversityReport PairCountState::report(DiversityMode mode, std::size_t timestamp) const {
    if (n_seen_ == 0) {
        throw std::logic_error("no outcome vectors recorded yet");
    }
    std::vector<ContingencyTable> tables;
    tables.reserve(pairs_.size());
    for (const PairCounts& p : pairs_) {
        tables.push_back(ContingencyTable::from_counts(p));
    }

    FailureProfile profile;
    profile.n_classifiers = n_classifiers_;
    profile.mass = static_cast<double>(n_seen_);
    profile.failures.assign(failures_.begin(), failures_.end());
    const std::vector<double> correct(correct_.begin(), correct_.end());

    DiversityReport r;
    r.mode = mode;
    r.timestamp = timestamp;
    r.mass = profile.mass;
    r.n_classifiers = n_classifiers_;
    r.pairwise = pairwise_average(tables);
    r.accuracy = accuracy_from_profile(correct, profile);
    r.nonpairwise = nonpairwise_from_profile(profile);
    return r;
}

PairCountState incremental_update(PairCountState state, std::span<const Outcome> outcomes) {
    state.update(outcomes);
    return state;
}

// ---------------------------------------------------------------------------

WindowState::WindowState(std::size_t n_classifiers, std::size_t capacity)
    : capacity_(capacity), counts_(n_classifiers) {
    if (capacity == 0) {
        throw std::invalid_argument("window capacity must be positive");
    }
    ring_.resize(capacity * n_classifiers);
}

std::span<const Outcome> WindowState::slot(std::size_t k) const {
    const std::size_t l = counts_.n_classifiers();
    return {ring_.data() + k * l, l};
}

void WindowState::push(std::span<const Outcome> outcomes) {
    const std::size_t l = counts_.n_classifiers();
    if (outcomes.size() != l) {
        throw std::invalid_argument("outcome vector width does not match the window");
    }
    std::size_t target;
    if (size_ == capacity_) {
        counts_.remove(slot(head_));
        target = head_;
        head_ = (head_ + 1) % capacity_;
    } else {
        target = (head_ + size_) % capacity_;
        ++size_;
    }
    std::copy(outcomes.begin(), outcomes.end(), ring_.begin() + static_cast<std::ptrdiff_t>(target * l));
    counts_.update(outcomes);
}

void WindowState::reset() {
    head_ = 0;
    size_ = 0;
    counts_.reset();
}

OracleMatrix WindowState::contents() const {
    if (size_ == 0) {
        throw std::logic_error("window is empty");
    }
    std::vector<Outcome> entries;
    entries.reserve(size_ * n_classifiers());
    for (std::size_t k = 0; k < size_; ++k) {
        const auto row = slot((head_ + k) % capacity_);
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return OracleMatrix(size_, n_classifiers(), std::move(entries));
}

DiversityReport WindowState::report(std::size_t timestamp) const {
    if (size_ == 0) {
        throw std::logic_error("window is empty");
    }
    return counts_.report(DiversityMode::window, timestamp);
}

DiversityReport window_report(const WindowState& state, std::size_t timestamp) {
    return state.report(timestamp);
}

// ---------------------------------------------------------------------------

PairCell classify_pair(Outcome i, Outcome j) noexcept {
    const bool ci = is_correct(i);
    const bool cj = is_correct(j);
    if (ci && cj) {
        return PairCell::a;
    }
    if (cj) {
        return PairCell::b;
    }
    if (ci) {
        return PairCell::c;
    }
    return PairCell::d;
}

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("fading factor must lie in (0, 1]");
    }
}

inline double fade(double sum, double alpha, bool hit) noexcept {
    return (hit ? 1.0 : 0.0) + alpha * sum;
}

}  // namespace

FadingCounts fading_update(FadingCounts s, PairCell cell) {
    check_alpha(s.alpha);
    s.s_a = fade(s.s_a, s.alpha, cell == PairCell::a);
    s.s_b = fade(s.s_b, s.alpha, cell == PairCell::b);
    s.s_c = fade(s.s_c, s.alpha, cell == PairCell::c);
    s.s_d = fade(s.s_d, s.alpha, cell == PairCell::d);
    s.n_fading = fade(s.n_fading, s.alpha, true);
    return s;
}

PairwiseMeasures fading_measures(const FadingCounts& s) {
    if (!(s.n_fading > 0.0)) {
        throw std::logic_error("fading measures before the first update");
    }
    return pairwise_from_cells(s.s_a / s.n_fading, s.s_b / s.n_fading, s.s_c / s.n_fading,
                               s.s_d / s.n_fading);
}

FadingTracker::FadingTracker(std::size_t n_classifiers, double alpha)
    : n_classifiers_(n_classifiers),
      alpha_(alpha),
      cells_(pair_count(n_classifiers), std::array<double, 4>{}),
      correct_(n_classifiers, 0.0),
      failures_(n_classifiers + 1, 0.0) {
    if (n_classifiers < 2) {
        throw std::invalid_argument("diversity tracking needs at least two classifiers");
    }
    check_alpha(alpha);
}

void FadingTracker::update(std::span<const Outcome> outcomes) {
    if (outcomes.size() != n_classifiers_) {
        throw std::invalid_argument("outcome vector width does not match the tracker");
    }
    std::size_t slot = 0;
    std::size_t failed = 0;
    for (std::size_t i = 0; i < n_classifiers_; ++i) {
        const bool ok = is_correct(outcomes[i]);
        failed += ok ? 0 : 1;
        correct_[i] = fade(correct_[i], alpha_, ok);
        for (std::size_t j = i + 1; j < n_classifiers_; ++j) {
            const auto cell = static_cast<std::size_t>(classify_pair(outcomes[i], outcomes[j]));
            auto& sums = cells_[slot++];
            for (std::size_t k = 0; k < sums.size(); ++k) {
                sums[k] = fade(sums[k], alpha_, k == cell);
            }
        }
    }
    for (std::size_t j = 0; j < failures_.size(); ++j) {
        failures_[j] = fade(failures_[j], alpha_, j == failed);
    }
    n_fading_ = fade(n_fading_, alpha_, true);
    ++n_updates_;
}

void FadingTracker::reset() {
    n_fading_ = 0.0;
    n_updates_ = 0;
    std::fill(cells_.begin(), cells_.end(), std::array<double, 4>{});
    std::fill(correct_.begin(), correct_.end(), 0.0);
    std::fill(failures_.begin(), failures_.end(), 0.0);
}

FadingCounts FadingTracker::pair(std::size_t i, std::size_t j) const {
    if (!(i < j && j < n_classifiers_)) {
        throw std::out_of_range("pair index must satisfy i < j < L");
    }
    const auto& sums = cells_[i * (2 * n_classifiers_ - i - 1) / 2 + (j - i - 1)];
    return {sums[0], sums[1], sums[2], sums[3], n_fading_, alpha_};
}

DiversityReport FadingTracker::report(std::size_t timestamp) const {
    if (n_updates_ == 0) {
        throw std::logic_error("fading report before the first update");
    }
    std::vector<PairwiseMeasures> per_pair;
    per_pair.reserve(cells_.size());
    for (const auto& sums : cells_) {
        per_pair.push_back(fading_measures({sums[0], sums[1], sums[2], sums[3], n_fading_, alpha_}));
    }

    FailureProfile profile;
    profile.n_classifiers = n_classifiers_;
    profile.mass = n_fading_;
    profile.failures = failures_;

    DiversityReport r;
    r.mode = DiversityMode::fading;
    r.timestamp = timestamp;
    r.mass = n_fading_;
    r.n_classifiers = n_classifiers_;
    r.pairwise = average_measures(per_pair);
    r.accuracy = accuracy_from_profile(correct_, profile);
    r.nonpairwise = nonpairwise_from_profile(profile);
    return r;
}

}  // namespace awe
