#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "awe/ensemble.hpp"
#include "awe/stream_diversity.hpp"
#include "awe/streams.hpp"

namespace awe {

/// Invalid or incomplete experiment configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Flat key=value settings. Keys match the CLI flag names without dashes
/// prefix, e.g. `chunk-size=500`.
using Settings = std::map<std::string, std::string, std::less<>>;

/// Reads a settings file; blank lines and '#' comments are skipped.
/// Throws IoError or ConfigError (unknown key, missing '=').
Settings read_settings_file(const std::filesystem::path& path);

/// Every recognized key.
const std::vector<std::string_view>& settings_keys();

/// Parses the drift grammar
///   event[;event...]   event := (sudden|gradual)@POS[+WIDTH]:change[,change...]
///   change := invert | threshold=V | noise=V | offset=V | normal=V/V/...
///           | priors=P0/P1 | priors=natural
/// Each target is the previous concept with the changes applied.
/// Throws ConfigError.
DriftSchedule parse_drift(std::string_view text, const ConceptParams& base);

struct StreamSpec {
    std::optional<GeneratorKind> generator;  ///< nullopt: read `input`
    std::filesystem::path input;
    CsvSchema schema;
    std::size_t instances = 10'000;
    double noise = 0.0;
    double threshold = 8.0;
    std::size_t dims = 5;
    std::string drift;  ///< textual schedule, see parse_drift
    std::uint64_t seed = 1;

    ConceptParams base_concept() const;
};

struct ExperimentConfig {
    StreamSpec stream;
    EnsembleConfig ensemble;
    std::vector<DiversityMode> modes;  ///< canonical order, no duplicates
    std::size_t window = 0;            ///< 0: same as the chunk size
    double alpha = kDefaultAlpha;
    std::filesystem::path out;

    std::size_t effective_window() const noexcept { return window ? window : ensemble.chunk_size; }
    /// Throws ConfigError.
    void validate() const;
};

/// Builds and validates a config. `stream` is required (sea, hyperplane or
/// csv); a csv stream requires `input`. Throws ConfigError.
ExperimentConfig build_config(const Settings& settings);

/// Header of the metrics file for this config.
std::vector<std::string> metric_columns(const ExperimentConfig& config);

/// One metrics row. Optional fields are written as empty cells.
struct MetricRow {
    std::size_t chunk_index = 0;
    std::size_t instances = 0;
    std::optional<double> accuracy;  ///< absent on chunk 0
    std::size_t ensemble_size = 0;  ///< after training and pruning on this chunk
    std::optional<double> min_weight;
    std::optional<double> max_weight;
    std::vector<std::optional<DiversityReport>> diversity;  ///< one slot per configured mode
};

/// Observer hook for library users and tests; called after each row is written.
struct ExperimentObserver {
    virtual ~ExperimentObserver() = default;
    virtual void on_chunk(const Chunk& chunk, const MetricRow& row, const WeightReport& weights,
                          const AccuracyWeightedEnsemble& ensemble) = 0;
};

struct ExperimentSummary {
    std::size_t chunks = 0;
    std::size_t instances = 0;
};

/// Opens the configured stream. For CSV without a declared class set the
/// label column is pre-scanned once so every chunk sees the full class count.
std::unique_ptr<InstanceSource> open_stream(const StreamSpec& spec);

/// Chunk-prequential run: each chunk is scored by the current ensemble
/// (accuracy and oracle outputs), the diversity trackers consume those oracle
/// outputs, and only then is the chunk used for training and reweighting.
/// Rows are flushed as they complete, so a failure leaves every finished row
/// in `out`.
ExperimentSummary run_experiment(const ExperimentConfig& config, std::ostream& out,
                                 ExperimentObserver* observer = nullptr);

/// Same, writing to config.out. Throws ConfigError when no output path is set and
/// IoError if the file cannot be created.
ExperimentSummary run_experiment(const ExperimentConfig& config, ExperimentObserver* observer = nullptr);

/// Reads a 0/1 oracle matrix (rows = samples, columns = classifiers).
/// Throws ParseError naming the offending row, IoError if unreadable.
OracleMatrix read_oracle_csv(const std::filesystem::path& path);

/// Prints every static measure with degeneracy flags.
void print_measures(const OracleMatrix& oracle, std::ostream& out);

}  // namespace awe
