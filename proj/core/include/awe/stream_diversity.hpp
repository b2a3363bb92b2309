#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "awe/diversity.hpp"
#include "awe/types.hpp"

namespace awe {

enum class DiversityMode { block, incremental, window, fading };

std::string_view to_string(DiversityMode mode) noexcept;
std::optional<DiversityMode> parse_diversity_mode(std::string_view text) noexcept;

/// Snapshot of every diversity measure for one processing mode.
struct DiversityReport {
    PairwiseMeasures pairwise;
    NonPairwiseMeasures nonpairwise;
    AccuracySummary accuracy;
    DiversityMode mode = DiversityMode::block;
    std::size_t timestamp = 0;   ///< instance or chunk index
    double mass = 0.0;           ///< samples covered (fading increment for fading mode)
    std::size_t n_classifiers = 0;
};

/// Static measures over one block. Costs one pass over the block, no carried state.
DiversityReport block_report(const OracleMatrix& oracle, std::size_t timestamp = 0);

/// Exact integer summary of every outcome vector seen so far: joint counts per
/// classifier pair, per-classifier correct counts and the failure-count histogram.
/// One update touches O(L^2) counters.
class PairCountState {
  public:
    /// Throws std::invalid_argument when n_classifiers < 2.
    explicit PairCountState(std::size_t n_classifiers);

    /// Throws std::invalid_argument on a length mismatch.
    void update(std::span<const Outcome> outcomes);
    /// Inverse of update; the caller guarantees `outcomes` was added before.
    void remove(std::span<const Outcome> outcomes);
    void reset();

    std::size_t n_classifiers() const noexcept { return n_classifiers_; }
    std::uint64_t n_seen() const noexcept { return n_seen_; }
    /// Counts oriented as (i, j) for i < j. Throws std::out_of_range otherwise.
    const PairCounts& pair(std::size_t i, std::size_t j) const;

    /// Throws std::logic_error before the first update.
    DiversityReport report(DiversityMode mode, std::size_t timestamp) const;

  private:
    std::size_t pair_slot(std::size_t i, std::size_t j) const noexcept;
    void check_width(std::span<const Outcome> outcomes) const;

    std::size_t n_classifiers_;
    std::uint64_t n_seen_ = 0;
    std::vector<PairCounts> pairs_;
    std::vector<std::uint64_t> correct_;
    std::vector<std::uint64_t> failures_;
};

/// Functional form of PairCountState::update.
PairCountState incremental_update(PairCountState state, std::span<const Outcome> outcomes);

/// Bounded FIFO of the most recent outcome vectors with counts maintained by
/// add-new / subtract-evicted, so a report never looks at evicted history.
class WindowState {
  public:
    /// Throws std::invalid_argument when capacity == 0 or n_classifiers < 2.
    WindowState(std::size_t n_classifiers, std::size_t capacity);

    /// Evicts the oldest vector first when the window is full.
    void push(std::span<const Outcome> outcomes);
    void reset();

    std::size_t size() const noexcept { return size_; }
    std::size_t capacity() const noexcept { return capacity_; }
    std::size_t n_classifiers() const noexcept { return counts_.n_classifiers(); }

    /// Current contents, oldest first. Throws std::logic_error when empty.
    OracleMatrix contents() const;
    DiversityReport report(std::size_t timestamp) const;

  private:
    std::span<const Outcome> slot(std::size_t k) const;

    std::size_t capacity_;
    std::size_t head_ = 0;  // index of the oldest slot
    std::size_t size_ = 0;
    std::vector<Outcome> ring_;
    PairCountState counts_;
};

/// Throws std::logic_error when the window is empty.
DiversityReport window_report(const WindowState& state, std::size_t timestamp = 0);

/// Which joint-outcome cell a pair falls into.
enum class PairCell : std::uint8_t { a, b, c, d };

PairCell classify_pair(Outcome i, Outcome j) noexcept;

/// Exponentially faded cell sums of one classifier pair:
///   S(t) = x(t) + alpha * S(t-1),   N(t) = 1 + alpha * N(t-1).
struct FadingCounts {
    double s_a = 0.0;
    double s_b = 0.0;
    double s_c = 0.0;
    double s_d = 0.0;
    double n_fading = 0.0;
    double alpha = 0.999;
};

inline constexpr double kDefaultAlpha = 0.999;

/// Throws std::invalid_argument when alpha is outside (0, 1].
FadingCounts fading_update(FadingCounts state, PairCell cell);

/// Normalized cells s_x / N feed the pairwise measures; df equals S_d / N.
/// Throws std::logic_error before the first update.
PairwiseMeasures fading_measures(const FadingCounts& state);

/// Fading counterpart of PairCountState for a whole ensemble. Pair cells share
/// one fading increment; the failure histogram (L+1 sums) and per-classifier
/// correct masses (L sums) fade with the same factor.
class FadingTracker {
  public:
    FadingTracker(std::size_t n_classifiers, double alpha = kDefaultAlpha);

    void update(std::span<const Outcome> outcomes);
    void reset();

    std::size_t n_classifiers() const noexcept { return n_classifiers_; }
    double alpha() const noexcept { return alpha_; }
    double n_fading() const noexcept { return n_fading_; }
    std::uint64_t n_updates() const noexcept { return n_updates_; }
    /// Fading state of pair (i, j), i < j, with the shared increment filled in.
    FadingCounts pair(std::size_t i, std::size_t j) const;

    DiversityReport report(std::size_t timestamp) const;

  private:
    std::size_t n_classifiers_;
    double alpha_;
    double n_fading_ = 0.0;
    std::uint64_t n_updates_ = 0;
    std::vector<std::array<double, 4>> cells_;
    std::vector<double> correct_;
    std::vector<double> failures_;
};

}  // namespace awe
