#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace awe {

/// Dense class index. Opaque labels are mapped onto 0..K-1 by a LabelMap.
using ClassIndex = std::size_t;

/// Correctness of one classifier on one labeled sample.
enum class Outcome : std::uint8_t { incorrect = 0, correct = 1 };

inline constexpr bool is_correct(Outcome o) noexcept { return o == Outcome::correct; }

/// Maps opaque class labels to dense indices in first-registration order.
class LabelMap {
  public:
    LabelMap() = default;
    explicit LabelMap(std::vector<std::string> names);

    /// Returns the index of `name`, registering it when the map is open.
    /// Throws std::invalid_argument for an unknown label on a closed map.
    ClassIndex intern(std::string_view name);
    std::optional<ClassIndex> find(std::string_view name) const;

    const std::string& name(ClassIndex idx) const { return names_.at(idx); }
    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    void close() noexcept { closed_ = true; }
    bool closed() const noexcept { return closed_; }

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, ClassIndex> index_;
    bool closed_ = false;
};

struct Instance {
    std::vector<double> features;
    std::optional<ClassIndex> label;
    /// Transaction value t(x), used only by benefit weighting.
    std::optional<double> amount;
};

/// A consecutive block of labeled instances.
struct Chunk {
    std::vector<Instance> instances;
    std::size_t index = 0;
    std::size_t num_classes = 0;
    /// Set on the final chunk when it is shorter than the configured size.
    bool partial = false;

    std::size_t size() const noexcept { return instances.size(); }
    bool empty() const noexcept { return instances.empty(); }
    std::size_t num_features() const noexcept {
        return instances.empty() ? 0 : instances.front().features.size();
    }
};

/// Validates the Chunk invariants (non-empty, all labeled, labels < num_classes,
/// constant feature count). Throws std::invalid_argument.
void validate_chunk(const Chunk& chunk);

/// N x L correct/incorrect record of L classifiers on N samples, row-major.
class OracleMatrix {
  public:
    /// Throws std::invalid_argument unless n_samples >= 1, n_classifiers >= 2
    /// and entries.size() == n_samples * n_classifiers.
    OracleMatrix(std::size_t n_samples, std::size_t n_classifiers, std::vector<Outcome> entries);

    static OracleMatrix from_rows(const std::vector<std::vector<Outcome>>& rows);
    /// Reads the {-1, 1} I/O convention (1 = correct). Any other value throws.
    static OracleMatrix from_signed(std::size_t n_samples, std::size_t n_classifiers,
                                    std::span<const int> values);
    /// Reads the {0, 1} convention (1 = correct). Any other value throws.
    static OracleMatrix from_binary(std::size_t n_samples, std::size_t n_classifiers,
                                    std::span<const int> values);

    std::size_t n_samples() const noexcept { return n_samples_; }
    std::size_t n_classifiers() const noexcept { return n_classifiers_; }

    Outcome at(std::size_t sample, std::size_t classifier) const {
        return entries_[sample * n_classifiers_ + classifier];
    }
    bool correct(std::size_t sample, std::size_t classifier) const {
        return is_correct(at(sample, classifier));
    }
    std::span<const Outcome> row(std::size_t sample) const {
        return {entries_.data() + sample * n_classifiers_, n_classifiers_};
    }

  private:
    std::size_t n_samples_;
    std::size_t n_classifiers_;
    std::vector<Outcome> entries_;
};

/// Raw joint-outcome counts for an ordered pair (i, j) of classifiers.
///   a: both correct, b: i wrong / j correct, c: i correct / j wrong, d: both wrong.
struct PairCounts {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t c = 0;
    std::uint64_t d = 0;

    std::uint64_t total() const noexcept { return a + b + c + d; }
    void add(Outcome i, Outcome j) noexcept;
    void remove(Outcome i, Outcome j) noexcept;

    friend bool operator==(const PairCounts&, const PairCounts&) = default;
};

/// Joint correctness proportions of a classifier pair. Raw counts are kept
/// when the table was built from integer data.
class ContingencyTable {
  public:
    /// Throws std::invalid_argument if counts.total() == 0.
    static ContingencyTable from_counts(const PairCounts& counts);
    /// Throws std::invalid_argument on a negative cell or when the cells do not
    /// sum to 1 within 1e-12.
    static ContingencyTable from_proportions(double a, double b, double c, double d);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double c() const noexcept { return c_; }
    double d() const noexcept { return d_; }
    const std::optional<PairCounts>& counts() const noexcept { return counts_; }

  private:
    ContingencyTable(double a, double b, double c, double d, std::optional<PairCounts> counts)
        : a_(a), b_(b), c_(c), d_(d), counts_(counts) {}

    double a_, b_, c_, d_;
    std::optional<PairCounts> counts_;
};

/// Throws std::out_of_range for an index >= L and std::invalid_argument for i == j.
ContingencyTable contingency_from_oracle(const OracleMatrix& oracle, std::size_t i, std::size_t j);

/// Number of unordered classifier pairs, L(L-1)/2.
constexpr std::size_t pair_count(std::size_t n_classifiers) noexcept {
    return n_classifiers < 2 ? 0 : n_classifiers * (n_classifiers - 1) / 2;
}

}  // namespace awe
