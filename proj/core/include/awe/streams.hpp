#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "awe/types.hpp"

namespace awe {

/// Single-consumer, single-pass source of labeled instances.
class InstanceSource {
  public:
    virtual ~InstanceSource() = default;
    /// nullopt at end of stream.
    virtual std::optional<Instance> next() = 0;
    virtual const LabelMap& labels() const noexcept = 0;
};

/// Malformed input; carries the 1-based line number when known.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// File could not be opened or read.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// CSV ingestion

/// Layout of a labeled CSV: comma separated, '.' decimal point, label last.
struct CsvSchema {
    bool header = false;
    /// Column holding t(x): a header name, or a 0-based index without a header.
    std::optional<std::string> amount_column;
    /// Closed class set; empty means labels are registered as first seen.
    std::vector<std::string> classes;
};

/// Reads `key=value` lines (`header`, `amount`, `classes=A,B,...`); '#' starts a comment.
/// Throws IoError / ParseError.
CsvSchema load_schema(const std::filesystem::path& path);

class CsvSource final : public InstanceSource {
  public:
    /// Throws IoError when the file cannot be opened, ParseError on a bad header.
    CsvSource(const std::filesystem::path& path, CsvSchema schema);

    /// Throws ParseError (with line number) on a malformed row.
    std::optional<Instance> next() override;
    const LabelMap& labels() const noexcept override { return labels_; }
    std::size_t line() const noexcept { return line_; }

  private:
    std::ifstream in_;
    CsvSchema schema_;
    LabelMap labels_;
    std::optional<std::size_t> amount_index_;
    std::optional<std::size_t> n_columns_;
    std::size_t line_ = 0;
};

std::unique_ptr<CsvSource> open_csv(const std::filesystem::path& path, CsvSchema schema = {});

/// Writes up to `limit` instances as CSV rows (features..., [amount,] label).
/// Returns the number of rows written.
std::size_t write_csv(InstanceSource& source, std::ostream& out, bool with_amount = false,
                      std::size_t limit = SIZE_MAX);

// ---------------------------------------------------------------------------
// Synthetic drifting streams

enum class GeneratorKind { sea, hyperplane };

std::string_view to_string(GeneratorKind kind) noexcept;
std::optional<GeneratorKind> parse_generator_kind(std::string_view text) noexcept;

/// One concept. Labels are binary: class 1 is the "positive" side
/// (SEA: x1 + x2 <= threshold; hyperplane: w.x - b >= 0), swapped when `inverted`.
struct ConceptParams {
    GeneratorKind kind = GeneratorKind::sea;
    double threshold = 8.0;            ///< SEA
    std::vector<double> normal;        ///< hyperplane w; its length is the dimension
    double offset = 0.0;               ///< hyperplane b
    std::vector<double> class_priors;  ///< empty: natural priors; otherwise P(y) (virtual drift)
    double noise = 0.0;                ///< label flip probability, [0, 0.5)
    bool inverted = false;

    std::size_t num_features() const noexcept { return kind == GeneratorKind::sea ? 3 : normal.size(); }
    /// Throws std::invalid_argument.
    void validate() const;
};

/// SEA concept with threshold `theta` (defaults per concept: 8, 9, 7, 9.5).
ConceptParams sea_concept(double theta, double noise = 0.0);
/// Hyperplane through the centre of [0,1]^d with an all-ones normal.
ConceptParams hyperplane_concept(std::size_t dims, double noise = 0.0);

enum class DriftKind { sudden, gradual };

struct DriftEvent {
    std::size_t position = 0;  ///< first instance index affected
    DriftKind kind = DriftKind::sudden;
    std::size_t width = 1;     ///< gradual: instances over which the new concept phases in
    ConceptParams target;
};

struct DriftSchedule {
    std::vector<DriftEvent> events;
    /// Positions strictly increasing, gradual width >= 1, every target valid
    /// and of the same kind/dimension as `base`. Throws std::invalid_argument.
    void validate(const ConceptParams& base) const;
};

/// Deterministic (given the seed) stream of `count` instances. Within a
/// gradual event at position p with width w, instance t comes from the new
/// concept with probability (t - p + 1) / (w + 1).
class DriftingGenerator final : public InstanceSource {
  public:
    DriftingGenerator(ConceptParams base, DriftSchedule schedule, std::size_t count, std::uint64_t seed);

    std::optional<Instance> next() override;
    const LabelMap& labels() const noexcept override { return labels_; }
    std::size_t position() const noexcept { return emitted_; }
    /// Concept in force at `index` ignoring gradual mixing (the newest event at or before it).
    const ConceptParams& concept_at(std::size_t index) const noexcept;

  private:
    double uniform() noexcept;
    std::vector<double> draw_features(const ConceptParams& c);
    Instance draw(const ConceptParams& c);

    ConceptParams base_;
    DriftSchedule schedule_;
    std::size_t count_;
    std::size_t emitted_ = 0;
    std::mt19937_64 rng_;
    LabelMap labels_;
};

/// Concept label of `features` without noise.
ClassIndex concept_label(const ConceptParams& params, std::span<const double> features) noexcept;

std::unique_ptr<DriftingGenerator> generate(ConceptParams base, DriftSchedule schedule, std::size_t count,
                                            std::uint64_t seed);

// ---------------------------------------------------------------------------

/// Cuts a source into consecutive chunks of `chunk_size`; the last one may be
/// shorter and is then flagged partial.
class Chunker {
  public:
    /// Throws std::invalid_argument when chunk_size == 0. `num_classes` of 0
    /// means "the source's label count when the chunk is cut".
    Chunker(InstanceSource& source, std::size_t chunk_size, std::size_t num_classes = 0);

    std::optional<Chunk> next();

  private:
    InstanceSource& source_;
    std::size_t chunk_size_;
    std::size_t num_classes_;
    std::size_t next_index_ = 0;
    bool done_ = false;
};

}  // namespace awe
