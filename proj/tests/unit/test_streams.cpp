#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "awe/streams.hpp"

using namespace awe;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& body) {
    const fs::path p = fs::temp_directory_path() / ("awe_streams_" + name);
    std::ofstream(p, std::ios::binary) << body;
    return p;
}

std::vector<Instance> drain(InstanceSource& src) {
    std::vector<Instance> out;
    while (auto x = src.next()) out.push_back(std::move(*x));
    return out;
}

}  // namespace

TEST(Csv, SingleRow) {
    auto src = open_csv(write_temp("one.csv", "1.0,2.0,A\n"));
    const auto rows = drain(*src);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].features, (std::vector<double>{1.0, 2.0}));
    EXPECT_EQ(src->labels().name(*rows[0].label), "A");
}

TEST(Csv, EmptyFile) {
    auto src = open_csv(write_temp("empty.csv", ""));
    EXPECT_TRUE(drain(*src).empty());
}

TEST(Csv, RaggedRowNamesLine) {
    auto src = open_csv(write_temp("ragged.csv", "1,2,3,A\n4,5,6,B\n7,8,C\n"));
    EXPECT_TRUE(src->next().has_value());
    EXPECT_TRUE(src->next().has_value());
    try {
        src->next();
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}

TEST(Csv, NonNumericFeature) {
    auto src = open_csv(write_temp("bad.csv", "1,x,A\n"));
    EXPECT_THROW(src->next(), ParseError);
}

TEST(Csv, MissingFile) {
    EXPECT_THROW(open_csv("/nonexistent/awe/input.csv"), IoError);
}

TEST(Csv, HeaderAmountAndClosedClasses) {
    CsvSchema schema;
    schema.header = true;
    schema.amount_column = "amt";
    schema.classes = {"legit", "fraud"};
    auto src = open_csv(write_temp("amt.csv", "f1,amt,f2,y\n0.5,120,1.5,fraud\n0.1,3,0.2,legit\n"), schema);
    const auto rows = drain(*src);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].features, (std::vector<double>{0.5, 1.5}));
    EXPECT_EQ(rows[0].amount, 120.0);
    EXPECT_EQ(*rows[0].label, 1u);
    EXPECT_EQ(*rows[1].label, 0u);

    auto unknown = open_csv(write_temp("amt2.csv", "f1,amt,f2,y\n0.5,120,1.5,other\n"), schema);
    EXPECT_THROW(unknown->next(), ParseError);
}

TEST(Csv, RoundTripThroughWriter) {
    auto gen = generate(sea_concept(8.0), {}, 50, 3);
    std::ostringstream out;
    EXPECT_EQ(write_csv(*gen, out), 50u);
    auto src = open_csv(write_temp("round.csv", out.str()));
    auto again = generate(sea_concept(8.0), {}, 50, 3);
    for (int i = 0; i < 50; ++i) {
        const auto a = src->next();
        const auto b = again->next();
        ASSERT_TRUE(a && b);
        EXPECT_EQ(a->features, b->features);
        EXPECT_EQ(src->labels().name(*a->label), again->labels().name(*b->label));
    }
}

TEST(Generator, SeaLabelsFollowConcept) {
    auto gen = generate(sea_concept(8.0, 0.0), {}, 5000, 7);
    for (const auto& x : drain(*gen)) {
        ASSERT_EQ(x.features.size(), 3u);
        EXPECT_EQ(*x.label, x.features[0] + x.features[1] <= 8.0 ? 1u : 0u);
        for (double v : x.features) {
            EXPECT_GE(v, 0.0);
            EXPECT_LT(v, 10.0);
        }
    }
}

TEST(Generator, HyperplaneLabelsFollowConcept) {
    const auto c = hyperplane_concept(4);
    auto gen = generate(c, {}, 2000, 8);
    for (const auto& x : drain(*gen)) {
        double dot = 0.0;
        for (double v : x.features) dot += v;
        EXPECT_EQ(*x.label, dot - 2.0 >= 0.0 ? 1u : 0u);
    }
}

TEST(Generator, SuddenInversion) {
    ConceptParams flipped = sea_concept(8.0);
    flipped.inverted = true;
    DriftSchedule schedule;
    schedule.events.push_back({1000, DriftKind::sudden, 1, flipped});
    auto gen = generate(sea_concept(8.0), schedule, 2000, 9);
    const auto xs = drain(*gen);
    EXPECT_FALSE(gen->concept_at(999).inverted);
    EXPECT_TRUE(gen->concept_at(1000).inverted);
    for (std::size_t t = 0; t < xs.size(); ++t) {
        const bool below = xs[t].features[0] + xs[t].features[1] <= 8.0;
        const ClassIndex want = (below != (t >= 1000)) ? 1 : 0;
        EXPECT_EQ(*xs[t].label, want) << "instance " << t;
    }
}

TEST(Generator, GradualMixRamps) {
    ConceptParams flipped = sea_concept(8.0);
    flipped.inverted = true;
    DriftSchedule schedule;
    schedule.events.push_back({1000, DriftKind::gradual, 2000, flipped});
    auto gen = generate(sea_concept(8.0), schedule, 4000, 10);
    const auto xs = drain(*gen);
    auto share_new = [&](std::size_t from, std::size_t to) {
        double n = 0;
        for (std::size_t t = from; t < to; ++t) {
            const bool below = xs[t].features[0] + xs[t].features[1] <= 8.0;
            n += (*xs[t].label == 1) != below;
        }
        return n / static_cast<double>(to - from);
    };
    EXPECT_EQ(share_new(0, 1000), 0.0);
    EXPECT_NEAR(share_new(1000, 1500), 0.125, 0.05);
    EXPECT_NEAR(share_new(2500, 3000), 0.875, 0.05);
    EXPECT_EQ(share_new(3000, 4000), 1.0);
}

TEST(Generator, SameSeedSameBytes) {
    auto a = generate(sea_concept(8.0, 0.1), {}, 1000, 42);
    auto b = generate(sea_concept(8.0, 0.1), {}, 1000, 42);
    std::ostringstream sa, sb;
    write_csv(*a, sa, true);
    write_csv(*b, sb, true);
    EXPECT_EQ(sa.str(), sb.str());
    auto c = generate(sea_concept(8.0, 0.1), {}, 1000, 43);
    std::ostringstream sc;
    write_csv(*c, sc, true);
    EXPECT_NE(sa.str(), sc.str());
}

TEST(Generator, VirtualDriftKeepsBoundary) {
    ConceptParams skewed = sea_concept(8.0);
    skewed.class_priors = {0.9, 0.1};
    DriftSchedule schedule;
    schedule.events.push_back({2000, DriftKind::sudden, 1, skewed});
    auto gen = generate(sea_concept(8.0), schedule, 6000, 11);
    const auto xs = drain(*gen);
    double pos_after = 0;
    for (std::size_t t = 0; t < xs.size(); ++t) {
        // The class-conditional regions do not move, so the noiseless
        // boundary still labels every instance.
        const bool below = xs[t].features[0] + xs[t].features[1] <= 8.0;
        EXPECT_EQ(*xs[t].label, below ? 1u : 0u);
        if (t >= 2000) pos_after += *xs[t].label;
    }
    EXPECT_NEAR(pos_after / 4000.0, 0.1, 0.02);
}

TEST(Generator, ScheduleValidation) {
    DriftSchedule bad;
    bad.events.push_back({10, DriftKind::sudden, 1, sea_concept(9.0)});
    bad.events.push_back({10, DriftKind::sudden, 1, sea_concept(7.0)});
    EXPECT_THROW(generate(sea_concept(8.0), bad, 100, 1), std::invalid_argument);
    DriftSchedule mixed;
    mixed.events.push_back({10, DriftKind::sudden, 1, hyperplane_concept(3)});
    EXPECT_THROW(generate(sea_concept(8.0), mixed, 100, 1), std::invalid_argument);
    EXPECT_THROW(generate(sea_concept(8.0, 0.5), {}, 100, 1), std::invalid_argument);
}

TEST(ChunkerTest, SplitsWithRemainder) {
    auto gen = generate(sea_concept(8.0), {}, 10, 1);
    Chunker chunker(*gen, 4);
    std::vector<std::size_t> sizes, indices;
    std::vector<bool> partial;
    while (auto c = chunker.next()) {
        sizes.push_back(c->size());
        indices.push_back(c->index);
        partial.push_back(c->partial);
        EXPECT_EQ(c->num_classes, 2u);
    }
    EXPECT_EQ(sizes, (std::vector<std::size_t>{4, 4, 2}));
    EXPECT_EQ(indices, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(partial, (std::vector<bool>{false, false, true}));
}

TEST(ChunkerTest, SizeOneAndEmpty) {
    auto gen = generate(sea_concept(8.0), {}, 3, 1);
    Chunker ones(*gen, 1);
    int n = 0;
    while (auto c = ones.next()) {
        EXPECT_EQ(c->size(), 1u);
        ++n;
    }
    EXPECT_EQ(n, 3);

    auto none = generate(sea_concept(8.0), {}, 0, 1);
    Chunker empty(*none, 5);
    EXPECT_FALSE(empty.next().has_value());
    EXPECT_THROW(Chunker(*none, 0), std::invalid_argument);
}
