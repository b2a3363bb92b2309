#include <gtest/gtest.h>

#include <random>

#include "awe/stream_diversity.hpp"
#include "helpers.hpp"

using namespace awe;
using testing_support::outcomes;
using testing_support::to_oracle;

namespace {

void expect_same(const DiversityReport& x, const DiversityReport& y, double tol) {
    EXPECT_NEAR(x.pairwise.rho, y.pairwise.rho, tol);
    EXPECT_NEAR(x.pairwise.q, y.pairwise.q, tol);
    EXPECT_NEAR(x.pairwise.dis, y.pairwise.dis, tol);
    EXPECT_NEAR(x.pairwise.df, y.pairwise.df, tol);
    EXPECT_NEAR(x.accuracy.big_p, y.accuracy.big_p, tol);
    EXPECT_NEAR(x.nonpairwise.entropy_e, y.nonpairwise.entropy_e, tol);
    EXPECT_NEAR(x.nonpairwise.entropy_cc, y.nonpairwise.entropy_cc, tol);
    EXPECT_NEAR(x.nonpairwise.kw, y.nonpairwise.kw, tol);
    EXPECT_NEAR(x.nonpairwise.kappa, y.nonpairwise.kappa, tol);
    EXPECT_NEAR(x.nonpairwise.gd, y.nonpairwise.gd, tol);
}

}  // namespace

TEST(ModeNames, RoundTrip) {
    for (auto m : {DiversityMode::block, DiversityMode::incremental, DiversityMode::window,
                   DiversityMode::fading}) {
        EXPECT_EQ(parse_diversity_mode(to_string(m)), m);
    }
    EXPECT_FALSE(parse_diversity_mode("Block").has_value());
}

TEST(Block, DelegatesAndMatchesReference) {
    std::mt19937_64 rng(3);
    const auto m = ref::random_matrix(rng, 8, 3, 0.6);
    const auto r = block_report(to_oracle(m), 7);
    const auto want = ref::all(m);
    EXPECT_EQ(r.timestamp, 7u);
    EXPECT_EQ(r.mass, 8.0);
    EXPECT_NEAR(r.pairwise.q, want.q_av, 1e-12);
    EXPECT_NEAR(r.pairwise.rho, want.rho_av, 1e-12);
    EXPECT_NEAR(r.nonpairwise.kappa, want.kappa, 1e-12);
    EXPECT_NEAR(r.nonpairwise.gd, want.gd, 1e-12);
}

TEST(Incremental, SingleUpdate) {
    PairCountState s(2);
    s.update(outcomes({1, 1}));
    EXPECT_EQ(s.pair(0, 1), (PairCounts{1, 0, 0, 0}));
}

TEST(Incremental, PerPairOrientation) {
    const auto s = incremental_update(PairCountState(3), outcomes({1, 0, 0}));
    EXPECT_EQ(s.pair(0, 1), (PairCounts{0, 0, 1, 0}));
    EXPECT_EQ(s.pair(0, 2), (PairCounts{0, 0, 1, 0}));
    EXPECT_EQ(s.pair(1, 2), (PairCounts{0, 0, 0, 1}));
    EXPECT_THROW(s.pair(1, 0), std::out_of_range);
}

TEST(Incremental, ErrorsAndReset) {
    PairCountState s(3);
    EXPECT_THROW(s.report(DiversityMode::incremental, 0), std::logic_error);
    EXPECT_THROW(s.update(outcomes({1, 0})), std::invalid_argument);
    EXPECT_THROW(PairCountState(1), std::invalid_argument);
    s.update(outcomes({1, 0, 1}));
    s.reset();
    EXPECT_EQ(s.n_seen(), 0u);
    EXPECT_EQ(s.pair(0, 2), PairCounts{});
}

TEST(Incremental, EqualsBlockExactly) {
    std::mt19937_64 rng(17);
    const auto m = ref::random_matrix(rng, 300, 5, 0.65);
    PairCountState s(5);
    for (std::size_t k = 0; k < m.size(); ++k) {
        s.update(outcomes(m[k]));
        if (k % 37 == 0 || k + 1 == m.size()) {
            const ref::Matrix prefix(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(k + 1));
            expect_same(s.report(DiversityMode::incremental, k), block_report(to_oracle(prefix)), 0.0);
        }
    }
}

TEST(Window, TenOutcomesWidthFour) {
    std::mt19937_64 rng(23);
    const auto m = ref::random_matrix(rng, 10, 3, 0.5);
    WindowState w(3, 4);
    for (const auto& row : m) {
        w.push(outcomes(row));
    }
    EXPECT_EQ(w.size(), 4u);
    const ref::Matrix tail(m.begin() + 6, m.end());
    const auto want = ref::all(tail);
    const auto r = window_report(w, 10);
    EXPECT_NEAR(r.pairwise.dis, want.dis_av, 1e-12);
    EXPECT_NEAR(r.pairwise.q, want.q_av, 1e-12);
    EXPECT_NEAR(r.nonpairwise.entropy_e, want.entropy_e, 1e-12);
    EXPECT_NEAR(r.nonpairwise.kw, want.kw, 1e-12);

    const auto contents = w.contents();
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            EXPECT_EQ(contents.correct(i, j), tail[i][j] == 1);
        }
    }
}

TEST(Window, WidthOne) {
    WindowState w(3, 1);
    w.push(outcomes({1, 1, 1}));
    w.push(outcomes({1, 0, 1}));
    const auto r = w.report(0);
    EXPECT_NEAR(r.pairwise.dis, 2.0 / 3.0, 1e-15);
    EXPECT_DOUBLE_EQ(r.nonpairwise.entropy_e, 1.0);
    EXPECT_EQ(r.mass, 1.0);
}

TEST(Window, AlignedWithBlocks) {
    std::mt19937_64 rng(29);
    const auto m = ref::random_matrix(rng, 60, 4, 0.7);
    WindowState w(4, 20);
    for (std::size_t k = 0; k < m.size(); ++k) {
        w.push(outcomes(m[k]));
        if ((k + 1) % 20 == 0) {
            const ref::Matrix block(m.begin() + static_cast<std::ptrdiff_t>(k - 19),
                                    m.begin() + static_cast<std::ptrdiff_t>(k + 1));
            expect_same(w.report(k), block_report(to_oracle(block)), 1e-12);
        }
    }
}

TEST(Window, Errors) {
    EXPECT_THROW(WindowState(3, 0), std::invalid_argument);
    WindowState w(2, 3);
    EXPECT_THROW(w.report(0), std::logic_error);
    EXPECT_THROW(w.contents(), std::logic_error);
    EXPECT_THROW(w.push(outcomes({1})), std::invalid_argument);
}

TEST(Fading, PlainCountingWhenAlphaIsOne) {
    FadingCounts s;
    s.alpha = 1.0;
    for (int k = 0; k < 3; ++k) {
        s = fading_update(s, PairCell::d);
    }
    EXPECT_EQ(s.s_d, 3.0);
    EXPECT_EQ(s.n_fading, 3.0);
}

TEST(Fading, HalfLifeSequence) {
    FadingCounts s;
    s.alpha = 0.5;
    const PairCell seq[] = {PairCell::d, PairCell::a, PairCell::d};
    const double want_sd[] = {1.0, 0.5, 1.25};
    const double want_n[] = {1.0, 1.5, 1.75};
    for (int k = 0; k < 3; ++k) {
        s = fading_update(s, seq[k]);
        EXPECT_EQ(s.s_d, want_sd[k]);
        EXPECT_EQ(s.n_fading, want_n[k]);
    }
    EXPECT_DOUBLE_EQ(fading_measures(s).df, 5.0 / 7.0);
}

TEST(Fading, BaseCase) {
    const auto s = fading_update(FadingCounts{}, PairCell::b);
    EXPECT_EQ(s.s_b, 1.0);
    EXPECT_EQ(s.n_fading, 1.0);
    EXPECT_EQ(s.s_a + s.s_c + s.s_d, 0.0);
}

TEST(Fading, AllAgreeingCorrect) {
    FadingCounts s;
    for (int k = 0; k < 10; ++k) s = fading_update(s, PairCell::a);
    const auto m = fading_measures(s);
    EXPECT_EQ(m.df, 0.0);
    EXPECT_EQ(m.dis, 0.0);
}

TEST(Fading, Errors) {
    FadingCounts s;
    s.alpha = 0.0;
    EXPECT_THROW(fading_update(s, PairCell::a), std::invalid_argument);
    s.alpha = 1.5;
    EXPECT_THROW(fading_update(s, PairCell::a), std::invalid_argument);
    EXPECT_THROW(fading_measures(FadingCounts{}), std::logic_error);
    EXPECT_THROW(FadingTracker(3, 0.0), std::invalid_argument);
    FadingTracker t(3, 0.9);
    EXPECT_THROW(t.report(0), std::logic_error);
}

TEST(Fading, TrackerPairMatchesScalarRecursion) {
    std::mt19937_64 rng(31);
    const auto m = ref::random_matrix(rng, 200, 3, 0.6);
    FadingTracker t(3, 0.9);
    FadingCounts s02;
    s02.alpha = 0.9;
    for (const auto& row : m) {
        const auto o = outcomes(row);
        t.update(o);
        s02 = fading_update(s02, classify_pair(o[0], o[2]));
    }
    const auto p = t.pair(0, 2);
    EXPECT_DOUBLE_EQ(p.s_a, s02.s_a);
    EXPECT_DOUBLE_EQ(p.s_d, s02.s_d);
    EXPECT_DOUBLE_EQ(p.n_fading, s02.n_fading);
}

TEST(Fading, AlphaOneEqualsCumulative) {
    std::mt19937_64 rng(37);
    const auto m = ref::random_matrix(rng, 500, 4, 0.55);
    FadingTracker t(4, 1.0);
    PairCountState c(4);
    for (const auto& row : m) {
        t.update(outcomes(row));
        c.update(outcomes(row));
    }
    expect_same(t.report(0), c.report(DiversityMode::incremental, 0), 1e-9);
}

TEST(Fading, ForgetsOldBehaviour) {
    // After long disagreement followed by long agreement, the faded
    // disagreement is near zero while the cumulative one stays at 1/2.
    FadingTracker t(2, 0.9);
    PairCountState c(2);
    for (int k = 0; k < 200; ++k) {
        const auto o = k < 100 ? outcomes({1, 0}) : outcomes({1, 1});
        t.update(o);
        c.update(o);
    }
    EXPECT_LT(t.report(0).pairwise.dis, 1e-4);
    EXPECT_DOUBLE_EQ(c.report(DiversityMode::incremental, 0).pairwise.dis, 0.5);
}
