#pragma once

#include <memory>
#include <vector>

#include "awe/ensemble.hpp"
#include "awe/types.hpp"
#include "reference.hpp"

namespace testing_support {

inline awe::OracleMatrix to_oracle(const ref::Matrix& m) {
    std::vector<int> flat;
    for (const auto& row : m) {
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return awe::OracleMatrix::from_binary(m.size(), m[0].size(), flat);
}

inline std::vector<awe::Outcome> outcomes(const std::vector<int>& bits) {
    std::vector<awe::Outcome> out;
    for (int b : bits) {
        out.push_back(b ? awe::Outcome::correct : awe::Outcome::incorrect);
    }
    return out;
}

/// Answers the same distribution for every input.
class FixedClassifier final : public awe::Classifier {
  public:
    explicit FixedClassifier(std::vector<double> probs) : dist_(std::move(probs)) {}
    std::size_t num_classes() const noexcept override { return dist_.size(); }
    awe::ClassDistribution predict(std::span<const double>) const override { return dist_; }

  private:
    awe::ClassDistribution dist_;
};

/// Answers the distribution stored at features[0] (an integer key).
class LookupClassifier final : public awe::Classifier {
  public:
    explicit LookupClassifier(std::vector<std::vector<double>> table) : table_(std::move(table)) {}
    std::size_t num_classes() const noexcept override { return table_.front().size(); }
    awe::ClassDistribution predict(std::span<const double> x) const override {
        return awe::ClassDistribution(table_.at(static_cast<std::size_t>(x[0])));
    }

  private:
    std::vector<std::vector<double>> table_;
};

inline awe::Instance labeled(std::vector<double> x, awe::ClassIndex y, std::optional<double> amount = {}) {
    awe::Instance inst;
    inst.features = std::move(x);
    inst.label = y;
    inst.amount = amount;
    return inst;
}

inline awe::Chunk make_chunk(std::vector<awe::Instance> instances, std::size_t num_classes,
                             std::size_t index = 0) {
    awe::Chunk c;
    c.instances = std::move(instances);
    c.num_classes = num_classes;
    c.index = index;
    return c;
}

inline awe::EnsembleMember member(std::shared_ptr<const awe::Classifier> model, double weight,
                                  std::size_t origin = 0, std::uint64_t id = 0) {
    awe::EnsembleMember m;
    m.model = std::move(model);
    m.weight = weight;
    m.origin_chunk = origin;
    m.id = id;
    return m;
}

}  // namespace testing_support
