#include "awe/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace awe {

LabelMap::LabelMap(std::vector<std::string> names) {
    for (auto& n : names) {
        intern(n);
    }
    closed_ = true;
}

ClassIndex LabelMap::intern(std::string_view name) {
    if (auto found = find(name)) {
        return *found;
    }
    if (closed_) {
        throw std::invalid_argument("unknown class label '" + std::string(name) + "'");
    }
    const ClassIndex idx = names_.size();
    names_.emplace_back(name);
    index_.emplace(names_.back(), idx);
    return idx;
}

std::optional<ClassIndex> LabelMap::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void validate_chunk(const Chunk& chunk) {
    if (chunk.empty()) {
        throw std::invalid_argument("chunk is empty");
    }
    if (chunk.num_classes == 0) {
        throw std::invalid_argument("chunk declares zero classes");
    }
    const std::size_t n_features = chunk.num_features();
    for (std::size_t k = 0; k < chunk.size(); ++k) {
        const Instance& inst = chunk.instances[k];
        if (!inst.label) {
            throw std::invalid_argument("chunk instance " + std::to_string(k) + " is unlabeled");
        }
        if (*inst.label >= chunk.num_classes) {
            throw std::invalid_argument("chunk instance " + std::to_string(k) +
                                        " has label outside the class set");
        }
        if (inst.features.size() != n_features) {
            throw std::invalid_argument("chunk instance " + std::to_string(k) +
                                        " has inconsistent feature count");
        }
    }
}

OracleMatrix::OracleMatrix(std::size_t n_samples, std::size_t n_classifiers,
                           std::vector<Outcome> entries)
    : n_samples_(n_samples), n_classifiers_(n_classifiers), entries_(std::move(entries)) {
    if (n_samples_ < 1) {
        throw std::invalid_argument("oracle matrix needs at least one sample");
    }
    if (n_classifiers_ < 2) {
        throw std::invalid_argument("oracle matrix needs at least two classifiers");
    }
    if (entries_.size() != n_samples_ * n_classifiers_) {
        throw std::invalid_argument("oracle matrix entry count does not match N*L");
    }
    for (Outcome o : entries_) {
        if (o != Outcome::correct && o != Outcome::incorrect) {
            throw std::invalid_argument("oracle entry is neither correct nor incorrect");
        }
    }
}

OracleMatrix OracleMatrix::from_rows(const std::vector<std::vector<Outcome>>& rows) {
    if (rows.empty()) {
        throw std::invalid_argument("oracle matrix needs at least one sample");
    }
    const std::size_t width = rows.front().size();
    std::vector<Outcome> entries;
    entries.reserve(rows.size() * width);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != width) {
            throw std::invalid_argument("oracle row " + std::to_string(r) + " is ragged");
        }
        entries.insert(entries.end(), rows[r].begin(), rows[r].end());
    }
    return OracleMatrix(rows.size(), width, std::move(entries));
}

namespace {

OracleMatrix decode(std::size_t n, std::size_t l, std::span<const int> values, int wrong_code) {
    if (values.size() != n * l) {
        throw std::invalid_argument("oracle matrix entry count does not match N*L");
    }
    std::vector<Outcome> entries;
    entries.reserve(values.size());
    for (int v : values) {
        if (v == 1) {
            entries.push_back(Outcome::correct);
        } else if (v == wrong_code) {
            entries.push_back(Outcome::incorrect);
        } else {
            throw std::invalid_argument("invalid oracle code " + std::to_string(v));
        }
    }
    return OracleMatrix(n, l, std::move(entries));
}

}  // namespace

OracleMatrix OracleMatrix::from_signed(std::size_t n_samples, std::size_t n_classifiers,
                                       std::span<const int> values) {
    return decode(n_samples, n_classifiers, values, -1);
}

OracleMatrix OracleMatrix::from_binary(std::size_t n_samples, std::size_t n_classifiers,
                                       std::span<const int> values) {
    return decode(n_samples, n_classifiers, values, 0);
}

void PairCounts::add(Outcome i, Outcome j) noexcept {
    const bool ci = is_correct(i);
    const bool cj = is_correct(j);
    if (ci && cj) {
        ++a;
    } else if (!ci && cj) {
        ++b;
    } else if (ci && !cj) {
        ++c;
    } else {
        ++d;
    }
}

void PairCounts::remove(Outcome i, Outcome j) noexcept {
    const bool ci = is_correct(i);
    const bool cj = is_correct(j);
    if (ci && cj) {
        --a;
    } else if (!ci && cj) {
        --b;
    } else if (ci && !cj) {
        --c;
    } else {
        --d;
    }
}

ContingencyTable ContingencyTable::from_counts(const PairCounts& counts) {
    const std::uint64_t n = counts.total();
    if (n == 0) {
        throw std::invalid_argument("contingency table from zero samples");
    }
    const auto nd = static_cast<double>(n);
    return {static_cast<double>(counts.a) / nd, static_cast<double>(counts.b) / nd,
            static_cast<double>(counts.c) / nd, static_cast<double>(counts.d) / nd, counts};
}

ContingencyTable ContingencyTable::from_proportions(double a, double b, double c, double d) {
    if (!(a >= 0.0 && b >= 0.0 && c >= 0.0 && d >= 0.0)) {
        throw std::invalid_argument("contingency cells must be non-negative");
    }
    if (std::abs(a + b + c + d - 1.0) > 1e-12) {
        throw std::invalid_argument("contingency cells must sum to 1");
    }
    return {a, b, c, d, std::nullopt};
}

ContingencyTable contingency_from_oracle(const OracleMatrix& oracle, std::size_t i, std::size_t j) {
    const std::size_t l = oracle.n_classifiers();
    if (i >= l || j >= l) {
        throw std::out_of_range("classifier index out of range");
    }
    if (i == j) {
        throw std::invalid_argument("a contingency table needs two distinct classifiers");
    }
    PairCounts counts;
    for (std::size_t s = 0; s < oracle.n_samples(); ++s) {
        counts.add(oracle.at(s, i), oracle.at(s, j));
    }
    return ContingencyTable::from_counts(counts);
}

}  // namespace awe
