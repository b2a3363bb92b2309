#include "awe/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "text.hpp"

namespace awe {

namespace {

const std::vector<std::string_view> kKeys = {
    "stream", "input",   "schema",   "header",         "classes", "amount", "instances", "noise",
    "threshold", "dims", "drift",    "seed",           "chunk-size", "capacity", "weighting", "cost",
    "positive-class", "learner", "mode", "window", "alpha", "out",
};

const std::vector<std::string_view> kMeasureNames = {"p",  "q",         "rho",        "dis", "df",
                                                     "entropy_e", "entropy_cc", "kw", "kappa", "gd"};

constexpr DiversityMode kAllModes[] = {DiversityMode::block, DiversityMode::incremental, DiversityMode::window,
                                       DiversityMode::fading};

double to_double(const Settings& s, std::string_view key, double fallback) {
    auto it = s.find(key);
    if (it == s.end()) {
        return fallback;
    }
    auto v = text::parse_double(it->second);
    if (!v) {
        throw ConfigError(std::string(key) + ": expected a number, got '" + it->second + "'");
    }
    return *v;
}

std::uint64_t to_uint(const Settings& s, std::string_view key, std::uint64_t fallback) {
    auto it = s.find(key);
    if (it == s.end()) {
        return fallback;
    }
    auto v = text::parse_uint(it->second);
    if (!v) {
        throw ConfigError(std::string(key) + ": expected a non-negative integer, got '" + it->second + "'");
    }
    return *v;
}

std::optional<std::string> get(const Settings& s, std::string_view key) {
    auto it = s.find(key);
    if (it == s.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool to_bool(const Settings& s, std::string_view key, bool fallback) {
    auto v = get(s, key);
    if (!v) {
        return fallback;
    }
    if (*v == "true" || *v == "1" || *v == "yes") {
        return true;
    }
    if (*v == "false" || *v == "0" || *v == "no") {
        return false;
    }
    throw ConfigError(std::string(key) + ": expected true or false");
}

double parse_number(std::string_view text, std::string_view what) {
    auto v = text::parse_double(text);
    if (!v) {
        throw ConfigError("drift: bad " + std::string(what) + " '" + std::string(text) + "'");
    }
    return *v;
}

std::vector<double> parse_slashed(std::string_view text, std::string_view what) {
    std::vector<double> out;
    for (auto part : text::split(text, '/')) {
        out.push_back(parse_number(part, what));
    }
    return out;
}

void apply_change(ConceptParams& c, std::string_view change) {
    change = text::trim(change);
    if (change == "invert") {
        c.inverted = !c.inverted;
        return;
    }
    const auto eq = change.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("drift: unknown change '" + std::string(change) + "'");
    }
    const auto key = text::trim(change.substr(0, eq));
    const auto value = text::trim(change.substr(eq + 1));
    const bool sea = c.kind == GeneratorKind::sea;
    if ((key == "threshold" && !sea) || ((key == "offset" || key == "normal") && sea)) {
        throw ConfigError("drift: '" + std::string(key) + "' does not apply to a " +
                          std::string(to_string(c.kind)) + " stream");
    }
    if (key == "threshold") {
        c.threshold = parse_number(value, "threshold");
    } else if (key == "noise") {
        c.noise = parse_number(value, "noise");
    } else if (key == "offset") {
        c.offset = parse_number(value, "offset");
    } else if (key == "normal") {
        c.normal = parse_slashed(value, "normal");
    } else if (key == "priors") {
        c.class_priors = value == "natural" ? std::vector<double>{} : parse_slashed(value, "priors");
    } else {
        throw ConfigError("drift: unknown change '" + std::string(key) + "'");
    }
}

void write_cell(std::string& line, const std::optional<double>& v) {
    if (v) {
        line += text::format_double(*v);
    }
}

std::vector<double> measure_values(const DiversityReport& r) {
    return {r.accuracy.big_p,        r.pairwise.q,          r.pairwise.rho,   r.pairwise.dis,
            r.pairwise.df,           r.nonpairwise.entropy_e, r.nonpairwise.entropy_cc, r.nonpairwise.kw,
            r.nonpairwise.kappa,     r.nonpairwise.gd};
}

std::string format_row(const MetricRow& row) {
    std::string line = std::to_string(row.chunk_index);
    line += ',';
    line += std::to_string(row.instances);
    line += ',';
    write_cell(line, row.accuracy);
    line += ',';
    line += std::to_string(row.ensemble_size);
    line += ',';
    write_cell(line, row.min_weight);
    line += ',';
    write_cell(line, row.max_weight);
    for (const auto& report : row.diversity) {
        if (report) {
            for (double v : measure_values(*report)) {
                line += ',';
                line += text::format_double(v);
            }
        } else {
            line.append(kMeasureNames.size(), ',');
        }
    }
    line += '\n';
    return line;
}

// Diversity trackers for one ensemble; rebuilt whenever the member set changes.
class Trackers {
  public:
    explicit Trackers(const ExperimentConfig& config) : config_(config) {}

    void observe(const std::vector<std::vector<Outcome>>& rows, std::uint64_t version, std::size_t timestamp,
                 std::vector<std::optional<DiversityReport>>& out) {
        out.assign(config_.modes.size(), std::nullopt);
        if (rows.empty() || rows.front().size() < 2) {
            return;
        }
        const std::size_t l = rows.front().size();
        if (!version_ || *version_ != version) {
            version_ = version;
            incremental_.emplace(l);
            window_.emplace(l, config_.effective_window());
            fading_.emplace(l, config_.alpha);
        }
        for (std::size_t m = 0; m < config_.modes.size(); ++m) {
            switch (config_.modes[m]) {
                case DiversityMode::block:
                    out[m] = block_report(OracleMatrix::from_rows(rows), timestamp);
                    break;
                case DiversityMode::incremental:
                    for (const auto& r : rows) {
                        incremental_->update(r);
                    }
                    out[m] = incremental_->report(DiversityMode::incremental, timestamp);
                    break;
                case DiversityMode::window:
                    for (const auto& r : rows) {
                        window_->push(r);
                    }
                    out[m] = window_->report(timestamp);
                    break;
                case DiversityMode::fading:
                    for (const auto& r : rows) {
                        fading_->update(r);
                    }
                    out[m] = fading_->report(timestamp);
                    break;
            }
        }
    }

  private:
    const ExperimentConfig& config_;
    std::optional<std::uint64_t> version_;
    std::optional<PairCountState> incremental_;
    std::optional<WindowState> window_;
    std::optional<FadingTracker> fading_;
};

}  // namespace

const std::vector<std::string_view>& settings_keys() { return kKeys; }

Settings read_settings_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file " + path.string());
    }
    Settings settings;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto s = text::trim(raw);
        if (s.empty() || s.front() == '#') {
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line) + ": expected key=value");
        }
        const std::string key(text::trim(s.substr(0, eq)));
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
            throw ConfigError("config line " + std::to_string(line) + ": unknown key '" + key + "'");
        }
        settings[key] = std::string(text::trim(s.substr(eq + 1)));
    }
    return settings;
}

DriftSchedule parse_drift(std::string_view spec, const ConceptParams& base) {
    DriftSchedule schedule;
    ConceptParams current = base;
    for (auto event_text : text::split(spec, ';')) {
        event_text = text::trim(event_text);
        if (event_text.empty()) {
            continue;
        }
        const auto at = event_text.find('@');
        const auto colon = event_text.find(':');
        if (at == std::string_view::npos || colon == std::string_view::npos || colon < at) {
            throw ConfigError("drift: expected kind@position[:changes] in '" + std::string(event_text) + "'");
        }
        DriftEvent event;
        const auto kind = text::trim(event_text.substr(0, at));
        if (kind == "sudden") {
            event.kind = DriftKind::sudden;
        } else if (kind == "gradual") {
            event.kind = DriftKind::gradual;
        } else {
            throw ConfigError("drift: unknown kind '" + std::string(kind) + "'");
        }
        auto where = event_text.substr(at + 1, colon - at - 1);
        const auto plus = where.find('+');
        const auto position = text::parse_uint(where.substr(0, plus));
        if (!position) {
            throw ConfigError("drift: bad position in '" + std::string(event_text) + "'");
        }
        event.position = static_cast<std::size_t>(*position);
        if (plus != std::string_view::npos) {
            const auto width = text::parse_uint(where.substr(plus + 1));
            if (!width) {
                throw ConfigError("drift: bad width in '" + std::string(event_text) + "'");
            }
            event.width = static_cast<std::size_t>(*width);
        } else if (event.kind == DriftKind::gradual) {
            throw ConfigError("drift: gradual events need +width");
        }
        for (auto change : text::split(event_text.substr(colon + 1), ',')) {
            apply_change(current, change);
        }
        event.target = current;
        schedule.events.push_back(std::move(event));
    }
    try {
        schedule.validate(base);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("drift: ") + e.what());
    }
    return schedule;
}

ConceptParams StreamSpec::base_concept() const {
    if (!generator) {
        throw ConfigError("csv streams have no generator concept");
    }
    return *generator == GeneratorKind::sea ? sea_concept(threshold, noise) : hyperplane_concept(dims, noise);
}

void ExperimentConfig::validate() const {
    try {
        ensemble.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ConfigError("alpha must lie in (0, 1]");
    }
    if (stream.generator) {
        if (stream.generator == GeneratorKind::hyperplane && stream.dims == 0) {
            throw ConfigError("dims must be positive");
        }
        try {
            stream.base_concept().validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        parse_drift(stream.drift, stream.base_concept());
    } else if (stream.input.empty()) {
        throw ConfigError("csv stream needs an input path");
    }
}

ExperimentConfig build_config(const Settings& s) {
    for (const auto& [key, value] : s) {
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
            throw ConfigError("unknown key '" + key + "'");
        }
    }
    ExperimentConfig c;
    const auto stream = get(s, "stream");
    if (!stream) {
        throw ConfigError("no stream configured (stream=sea|hyperplane|csv)");
    }
    if (*stream != "csv") {
        c.stream.generator = parse_generator_kind(*stream);
        if (!c.stream.generator) {
            throw ConfigError("unknown stream '" + *stream + "'");
        }
    }
    if (auto input = get(s, "input")) {
        c.stream.input = *input;
    }
    if (auto schema = get(s, "schema")) {
        try {
            c.stream.schema = load_schema(*schema);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("schema: ") + e.what());
        }
    }
    c.stream.schema.header = to_bool(s, "header", c.stream.schema.header);
    if (auto classes = get(s, "classes")) {
        c.stream.schema.classes.clear();
        for (auto name : text::split(*classes, ',')) {
            c.stream.schema.classes.emplace_back(text::trim(name));
        }
    }
    if (auto amount = get(s, "amount")) {
        c.stream.schema.amount_column = *amount;
    }
    c.stream.instances = to_uint(s, "instances", c.stream.instances);
    c.stream.noise = to_double(s, "noise", c.stream.noise);
    c.stream.threshold = to_double(s, "threshold", c.stream.threshold);
    c.stream.dims = to_uint(s, "dims", c.stream.dims);
    c.stream.drift = get(s, "drift").value_or("");
    c.stream.seed = to_uint(s, "seed", c.stream.seed);

    c.ensemble.chunk_size = to_uint(s, "chunk-size", c.ensemble.chunk_size);
    c.ensemble.capacity = to_uint(s, "capacity", c.ensemble.capacity);
    if (auto w = get(s, "weighting")) {
        auto mode = parse_weighting_mode(*w);
        if (!mode) {
            throw ConfigError("unknown weighting '" + *w + "'");
        }
        c.ensemble.weighting = *mode;
    }
    if (c.ensemble.weighting == WeightingMode::benefit || s.count("cost") || s.count("positive-class")) {
        BenefitMatrix m;
        m.cost = to_double(s, "cost", 0.0);
        m.positive_class = to_uint(s, "positive-class", 1);
        c.ensemble.benefit = m;
    }
    if (auto l = get(s, "learner")) {
        auto kind = parse_learner_kind(*l);
        if (!kind) {
            throw ConfigError("unknown learner '" + *l + "'");
        }
        c.ensemble.learner = *kind;
    }

    const std::string modes = get(s, "mode").value_or("all");
    if (modes == "all") {
        c.modes.assign(std::begin(kAllModes), std::end(kAllModes));
    } else if (modes != "none") {
        std::vector<DiversityMode> wanted;
        for (auto name : text::split(modes, ',')) {
            auto m = parse_diversity_mode(text::trim(name));
            if (!m) {
                throw ConfigError("unknown diversity mode '" + std::string(name) + "'");
            }
            wanted.push_back(*m);
        }
        for (DiversityMode m : kAllModes) {
            if (std::find(wanted.begin(), wanted.end(), m) != wanted.end()) {
                c.modes.push_back(m);
            }
        }
    }
    c.window = to_uint(s, "window", 0);
    c.alpha = to_double(s, "alpha", c.alpha);
    c.out = get(s, "out").value_or("");
    c.validate();
    return c;
}

std::vector<std::string> metric_columns(const ExperimentConfig& config) {
    std::vector<std::string> cols = {"chunk", "instances", "accuracy", "ensemble_size", "min_weight", "max_weight"};
    for (DiversityMode m : config.modes) {
        for (auto name : kMeasureNames) {
            cols.push_back(std::string(to_string(m)) + "_" + std::string(name));
        }
    }
    return cols;
}

std::unique_ptr<InstanceSource> open_stream(const StreamSpec& spec) {
    if (spec.generator) {
        const ConceptParams base = spec.base_concept();
        return generate(base, parse_drift(spec.drift, base), spec.instances, spec.seed);
    }
    CsvSchema schema = spec.schema;
    if (schema.classes.empty()) {
        auto scan = open_csv(spec.input, schema);
        while (scan->next()) {
        }
        schema.classes = scan->labels().names();
    }
    return open_csv(spec.input, std::move(schema));
}

ExperimentSummary run_experiment(const ExperimentConfig& config, std::ostream& out, ExperimentObserver* observer) {
    config.validate();
    auto source = open_stream(config.stream);

    {
        std::string header;
        for (const auto& col : metric_columns(config)) {
            if (!header.empty()) {
                header += ',';
            }
            header += col;
        }
        out << header << '\n' << std::flush;
    }

    AccuracyWeightedEnsemble ensemble(config.ensemble);
    Trackers trackers(config);
    Chunker chunker(*source, config.ensemble.chunk_size);
    ExperimentSummary summary;

    std::vector<std::vector<Outcome>> oracle_rows;
    while (auto chunk = chunker.next()) {
        MetricRow row;
        row.chunk_index = chunk->index;
        row.instances = chunk->size();

        // Test: score the chunk with the ensemble as it stands.
        oracle_rows.clear();
        const auto& members = ensemble.members();
        if (!members.empty()) {
            const bool voters = ensemble.has_voters();
            std::size_t hits = 0;
            for (const Instance& inst : chunk->instances) {
                std::vector<Outcome> outcomes(members.size());
                for (std::size_t j = 0; j < members.size(); ++j) {
                    const bool ok = members[j].model->predict(inst.features).argmax() == *inst.label;
                    outcomes[j] = ok ? Outcome::correct : Outcome::incorrect;
                }
                // Cold start: fall back on the newest member.
                const bool ok = voters ? ensemble.predict(inst.features).label == *inst.label
                                       : is_correct(outcomes.back());
                hits += ok ? 1 : 0;
                oracle_rows.push_back(std::move(outcomes));
            }
            row.accuracy = static_cast<double>(hits) / static_cast<double>(chunk->size());
        }
        trackers.observe(oracle_rows, ensemble.membership_version(), chunk->index, row.diversity);
        if (row.diversity.empty()) {
            row.diversity.assign(config.modes.size(), std::nullopt);
        }

        // Train.
        const WeightReport weights = ensemble.process_chunk(*chunk);
        row.ensemble_size = ensemble.members().size();
        for (const EnsembleMember& m : ensemble.members()) {
            row.min_weight = row.min_weight ? std::min(*row.min_weight, m.weight) : m.weight;
            row.max_weight = row.max_weight ? std::max(*row.max_weight, m.weight) : m.weight;
        }

        out << format_row(row) << std::flush;
        if (!out) {
            throw IoError("failed writing metrics row");
        }
        ++summary.chunks;
        summary.instances += chunk->size();
        if (observer) {
            observer->on_chunk(*chunk, row, weights, ensemble);
        }
    }
    return summary;
}

ExperimentSummary run_experiment(const ExperimentConfig& config, ExperimentObserver* observer) {
    config.validate();
    if (config.out.empty()) {
        throw ConfigError("no output path");
    }
    std::ofstream out(config.out, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot create " + config.out.string());
    }
    return run_experiment(config, out, observer);
}

OracleMatrix read_oracle_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<int> values;
    std::size_t width = 0;
    std::size_t rows = 0;
    std::size_t line = 0;
    std::string raw;
    while (std::getline(in, raw)) {
        ++line;
        const auto s = text::trim(raw);
        if (s.empty()) {
            continue;
        }
        const auto cells = text::split(s, ',');
        if (rows == 0) {
            width = cells.size();
        } else if (cells.size() != width) {
            throw ParseError("row " + std::to_string(rows + 1) + " has " + std::to_string(cells.size()) +
                                 " columns, expected " + std::to_string(width),
                             line);
        }
        for (auto cell : cells) {
            const auto c = text::trim(cell);
            if (c != "0" && c != "1") {
                throw ParseError("row " + std::to_string(rows + 1) + ": cell '" + std::string(c) +
                                     "' is not 0 or 1",
                                 line);
            }
            values.push_back(c == "1" ? 1 : 0);
        }
        ++rows;
    }
    if (rows == 0) {
        throw ParseError("oracle file has no rows", 0);
    }
    if (width < 2) {
        throw ParseError("oracle matrix needs at least two classifier columns", 0);
    }
    return OracleMatrix::from_binary(rows, width, values);
}

void print_measures(const OracleMatrix& oracle, std::ostream& out) {
    const PairwiseMeasures pw = pairwise_averages(oracle);
    const AccuracySummary acc = ensemble_accuracy(oracle);
    const NonPairwiseMeasures np = nonpairwise_measures(oracle, acc);

    auto line = [&out](std::string_view name, double v, std::string_view note = {}) {
        out << name << ' ' << text::format_double(v);
        if (!note.empty()) {
            out << "  (" << note << ')';
        }
        out << '\n';
    };
    out << "samples " << oracle.n_samples() << '\n';
    out << "classifiers " << oracle.n_classifiers() << '\n';
    line("P", acc.big_p);
    line("P_weighted", acc.big_p_weighted);
    out << "p_j";
    for (double p : acc.p_per_classifier) {
        out << ' ' << text::format_double(p);
    }
    out << '\n';
    out << "T_j";
    for (double t : acc.failure_histogram) {
        out << ' ' << text::format_double(t);
    }
    out << '\n';

    const std::string rho_note =
        pw.rho_degenerate ? std::to_string(pw.rho_degenerate) + " degenerate pair(s) counted as 0" : "";
    const std::string q_note =
        pw.q_degenerate ? std::to_string(pw.q_degenerate) + " degenerate pair(s) counted as 0" : "";
    line("rho_av", pw.rho, rho_note);
    line("q_av", pw.q, q_note);
    line("dis_av", pw.dis);
    line("df_av", pw.df);
    line("entropy_e", np.entropy_e);
    line("entropy_cc", np.entropy_cc);
    line("kw", np.kw);
    line("kappa", np.kappa, np.kappa_degenerate ? "degenerate: P in {0,1}" : "");
    line("gd", np.gd, np.gd_degenerate ? "degenerate: no failures" : "");
}

}  // namespace awe
