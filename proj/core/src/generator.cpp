#include <cmath>
#include <numeric>

#include "awe/streams.hpp"

namespace awe {

namespace {

// Upper bound on rejection draws when class priors are forced.
constexpr std::size_t kMaxRejections = 1'000'000;
// Generated transaction amounts are uniform on [0, kAmountScale).
constexpr double kAmountScale = 100.0;

}  // namespace

std::string_view to_string(GeneratorKind kind) noexcept {
    return kind == GeneratorKind::sea ? "sea" : "hyperplane";
}

std::optional<GeneratorKind> parse_generator_kind(std::string_view text) noexcept {
    if (text == "sea") {
        return GeneratorKind::sea;
    }
    if (text == "hyperplane") {
        return GeneratorKind::hyperplane;
    }
    return std::nullopt;
}

void ConceptParams::validate() const {
    if (!(noise >= 0.0 && noise < 0.5)) {
        throw std::invalid_argument("label noise must lie in [0, 0.5)");
    }
    if (kind == GeneratorKind::hyperplane && normal.empty()) {
        throw std::invalid_argument("hyperplane concept needs a non-empty normal");
    }
    if (!class_priors.empty()) {
        if (class_priors.size() != 2) {
            throw std::invalid_argument("generated streams are binary; priors need two entries");
        }
        double total = 0.0;
        for (double p : class_priors) {
            if (!(p >= 0.0 && p <= 1.0)) {
                throw std::invalid_argument("class prior outside [0,1]");
            }
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-9) {
            throw std::invalid_argument("class priors must sum to 1");
        }
    }
}

ConceptParams sea_concept(double theta, double noise) {
    ConceptParams c;
    c.kind = GeneratorKind::sea;
    c.threshold = theta;
    c.noise = noise;
    return c;
}

ConceptParams hyperplane_concept(std::size_t dims, double noise) {
    ConceptParams c;
    c.kind = GeneratorKind::hyperplane;
    c.normal.assign(dims, 1.0);
    c.offset = static_cast<double>(dims) / 2.0;
    c.noise = noise;
    return c;
}

void DriftSchedule::validate(const ConceptParams& base) const {
    base.validate();
    for (std::size_t k = 0; k < events.size(); ++k) {
        const DriftEvent& e = events[k];
        if (k > 0 && e.position <= events[k - 1].position) {
            throw std::invalid_argument("drift positions must be strictly increasing");
        }
        if (e.kind == DriftKind::gradual && e.width < 1) {
            throw std::invalid_argument("gradual drift width must be at least 1");
        }
        e.target.validate();
        if (e.target.kind != base.kind || e.target.num_features() != base.num_features()) {
            throw std::invalid_argument("drift target must keep the generator kind and dimension");
        }
    }
}

ClassIndex concept_label(const ConceptParams& params, std::span<const double> x) noexcept {
    bool positive;
    if (params.kind == GeneratorKind::sea) {
        positive = x[0] + x[1] <= params.threshold;
    } else {
        const double dot = std::inner_product(params.normal.begin(), params.normal.end(), x.begin(), 0.0);
        positive = dot - params.offset >= 0.0;
    }
    if (params.inverted) {
        positive = !positive;
    }
    return positive ? 1 : 0;
}

DriftingGenerator::DriftingGenerator(ConceptParams base, DriftSchedule schedule, std::size_t count,
                                     std::uint64_t seed)
    : base_(std::move(base)),
      schedule_(std::move(schedule)),
      count_(count),
      rng_(seed),
      labels_(std::vector<std::string>{"0", "1"}) {
    schedule_.validate(base_);
}

double DriftingGenerator::uniform() noexcept {
    // 53 random mantissa bits; identical on every platform for a given seed.
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

std::vector<double> DriftingGenerator::draw_features(const ConceptParams& c) {
    std::vector<double> x(c.num_features());
    const double scale = c.kind == GeneratorKind::sea ? 10.0 : 1.0;
    for (double& v : x) {
        v = scale * uniform();
    }
    return x;
}

Instance DriftingGenerator::draw(const ConceptParams& c) {
    Instance inst;
    if (c.class_priors.empty()) {
        inst.features = draw_features(c);
        inst.label = concept_label(c, inst.features);
    } else {
        // Virtual drift: pick the class from the forced priors, then sample x
        // from the unchanged class-conditional region.
        const ClassIndex wanted = uniform() < c.class_priors[0] ? 0 : 1;
        std::size_t tries = 0;
        do {
            if (++tries > kMaxRejections) {
                throw std::runtime_error("class region too small to honour the requested priors");
            }
            inst.features = draw_features(c);
        } while (concept_label(c, inst.features) != wanted);
        inst.label = wanted;
    }
    if (uniform() < c.noise) {
        inst.label = 1 - *inst.label;
    }
    inst.amount = kAmountScale * uniform();
    return inst;
}

const ConceptParams& DriftingGenerator::concept_at(std::size_t index) const noexcept {
    const ConceptParams* current = &base_;
    for (const DriftEvent& e : schedule_.events) {
        if (e.position > index) {
            break;
        }
        current = &e.target;
    }
    return *current;
}

std::optional<Instance> DriftingGenerator::next() {
    if (emitted_ >= count_) {
        return std::nullopt;
    }
    const std::size_t t = emitted_;
    const ConceptParams* previous = &base_;
    const DriftEvent* active = nullptr;
    for (const DriftEvent& e : schedule_.events) {
        if (e.position > t) {
            break;
        }
        if (active) {
            previous = &active->target;
        }
        active = &e;
    }

    // Draw the mixing variate on every instance, inside a gradual window or not.
    const double mix = uniform();
    const ConceptParams* source = active ? &active->target : &base_;
    if (active && active->kind == DriftKind::gradual && t < active->position + active->width) {
        const double p_new = static_cast<double>(t - active->position + 1) /
                             static_cast<double>(active->width + 1);
        source = mix < p_new ? &active->target : previous;
    }
    Instance inst = draw(*source);
    ++emitted_;
    return inst;
}

std::unique_ptr<DriftingGenerator> generate(ConceptParams base, DriftSchedule schedule, std::size_t count,
                                            std::uint64_t seed) {
    return std::make_unique<DriftingGenerator>(std::move(base), std::move(schedule), count, seed);
}

}  // namespace awe
