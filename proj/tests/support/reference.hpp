// Naive reference implementation of the static diversity measures, written
// straight from the textbook formulas with no shared code paths. Slow on
// purpose: every pair and every sample is enumerated from scratch.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

namespace ref {

using Matrix = std::vector<std::vector<int>>;  // [sample][classifier], 1 = correct

struct Pair {
    double a, b, c, d;
    double rho, q, dis, df;
};

struct All {
    double rho_av, q_av, dis_av, df_av;
    double p_columns, p_mass;
    std::vector<double> l;
    std::vector<double> t;
    double entropy_e, entropy_cc, kw, kappa, gd;
};

inline Pair pair(const Matrix& m, std::size_t i, std::size_t j) {
    double n11 = 0, n01 = 0, n10 = 0, n00 = 0;
    for (const auto& row : m) {
        if (row[i] && row[j]) n11 += 1;
        if (!row[i] && row[j]) n01 += 1;
        if (row[i] && !row[j]) n10 += 1;
        if (!row[i] && !row[j]) n00 += 1;
    }
    const double n = static_cast<double>(m.size());
    Pair p{n11 / n, n01 / n, n10 / n, n00 / n, 0, 0, 0, 0};
    const double num = p.a * p.d - p.b * p.c;
    const double rden = std::sqrt((p.a + p.b) * (p.c + p.d) * (p.b + p.d) * (p.a + p.c));
    p.rho = rden == 0 ? 0 : num / rden;
    const double qden = p.a * p.d + p.b * p.c;
    p.q = qden == 0 ? 0 : num / qden;
    p.dis = p.b + p.c;
    p.df = p.d;
    return p;
}

inline All all(const Matrix& m) {
    const std::size_t n = m.size();
    const std::size_t L = m[0].size();
    All r{};

    double sr = 0, sq = 0, sd = 0, sf = 0;
    for (std::size_t i = 0; i < L; ++i) {
        for (std::size_t j = i + 1; j < L; ++j) {
            const Pair p = pair(m, i, j);
            sr += p.rho;
            sq += p.q;
            sd += p.dis;
            sf += p.df;
        }
    }
    const double f = 2.0 / (static_cast<double>(L) * static_cast<double>(L - 1));
    r.rho_av = f * sr;
    r.q_av = f * sq;
    r.dis_av = f * sd;
    r.df_av = f * sf;

    // P as the weighted mean of column accuracies, uniform weights.
    r.p_columns = 0;
    for (std::size_t j = 0; j < L; ++j) {
        double pj = 0;
        for (std::size_t i = 0; i < n; ++i) pj += m[i][j];
        r.p_columns += (1.0 / static_cast<double>(L)) * (pj / static_cast<double>(n));
    }
    // P again, through the misclassification mass l_i.
    r.l.assign(n, 0);
    double lsum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double w = 0;
        for (std::size_t j = 0; j < L; ++j) {
            if (!m[i][j]) w += 1.0 / static_cast<double>(L);
        }
        r.l[i] = std::round(static_cast<double>(L) * w);
        lsum += r.l[i];
    }
    r.p_mass = 1.0 - lsum / static_cast<double>(n * L);

    r.t.assign(L + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        r.t[static_cast<std::size_t>(r.l[i])] += 1.0 / static_cast<double>(n);
    }

    double e = 0;
    double correct_total = 0;
    double var = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double ci = 0;
        for (std::size_t j = 0; j < L; ++j) ci += m[i][j];
        correct_total += ci;
        e += std::min(ci, static_cast<double>(L) - ci);
        var += r.l[i] * (static_cast<double>(L) - r.l[i]);
    }
    const double nd = static_cast<double>(n);
    const double Ld = static_cast<double>(L);
    r.entropy_e = (1.0 / nd) * (2.0 / (Ld - 1.0)) * e;

    const double ahat = correct_total / (nd * Ld);
    r.entropy_cc = 0;
    if (ahat > 0 && ahat < 1) {
        r.entropy_cc = -ahat * std::log2(ahat) - (1 - ahat) * std::log2(1 - ahat);
    }

    r.kw = var / (nd * Ld * Ld);
    const double P = r.p_mass;
    r.kappa = (P <= 0 || P >= 1) ? 1.0 : 1.0 - var / (nd * Ld * (Ld - 1.0) * P * (1.0 - P));

    double p1 = 0, p2 = 0;
    for (std::size_t j = 0; j <= L; ++j) {
        const double jd = static_cast<double>(j);
        p1 += (jd / Ld) * r.t[j];
        p2 += (jd * (jd - 1.0) / (Ld * (Ld - 1.0))) * r.t[j];
    }
    r.gd = p1 == 0 ? 1.0 : 1.0 - p2 / p1;
    return r;
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t L, double p_correct) {
    std::bernoulli_distribution coin(p_correct);
    Matrix m(n, std::vector<int>(L));
    for (auto& row : m) {
        for (auto& v : row) v = coin(rng) ? 1 : 0;
    }
    return m;
}

}  // namespace ref
