#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvelab/incidence.hpp"
#include "curvelab/linebundle.hpp"
#include "curvelab/matrix.hpp"
#include "curvelab/rng.hpp"

using namespace curvelab;

namespace {
constexpr uint64_t kPrime = 65521;

// chart-at-infinity construction: monomial bases read in reverse, entries
// replaced by their reversed representation padded with the degree deficiency
template <class K>
ExactMatrix<K> section_matrix_other_chart(const LineBundleMap<K>& m, int k) {
    std::vector<int> col_off(m.source_twists.size() + 1, 0);
    for (size_t i = 0; i < m.source_twists.size(); ++i)
        col_off[i + 1] = col_off[i] + std::max(0, m.source_twists[i] + k + 1);
    std::vector<int> row_off(m.target_twists.size() + 1, 0);
    for (size_t j = 0; j < m.target_twists.size(); ++j)
        row_off[j + 1] = row_off[j] + std::max(0, m.target_twists[j] + k + 1);
    ExactMatrix<K> out(row_off.back(), col_off.back());
    for (size_t j = 0; j < m.target_twists.size(); ++j) {
        const int rows = m.target_twists[j] + k + 1;
        if (rows <= 0) continue;
        for (size_t i = 0; i < m.source_twists.size(); ++i) {
            const int cols = m.source_twists[i] + k + 1;
            if (cols <= 0) continue;
            const int cap = m.target_twists[j] - m.source_twists[i];
            const auto& e = m.entries[j][i];
            for (int s = 0; s < cols; ++s)
                for (int r = 0; r <= cap; ++r) {
                    if (e[cap - r].is_zero()) continue;
                    if (s + r >= rows) break;
                    out.at(row_off[j] + s + r, col_off[i] + s) = e[cap - r];
                }
        }
    }
    return out;
}

// exact Gaussian solve of a square system, for the oracle below
std::vector<Fp> solve_square(std::vector<std::vector<Fp>> a, std::vector<Fp> rhs) {
    const int n = static_cast<int>(a.size());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!a[r][col].is_zero()) { piv = r; break; }
        REQUIRE(piv >= 0);
        std::swap(a[col], a[piv]);
        std::swap(rhs[col], rhs[piv]);
        const Fp inv = a[col][col].inv();
        for (int j = col; j < n; ++j) a[col][j] *= inv;
        rhs[col] *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            const Fp f = a[r][col];
            for (int j = col; j < n; ++j) a[r][j] -= f * a[col][j];
            rhs[r] -= f * rhs[col];
        }
    }
    return rhs;
}

// Coefficient-perturbation oracle for one Jacobian column: f(c + eps*t^k e_m)
// is a polynomial of degree <= h in eps, so its linear coefficient is picked
// out exactly by solving the Vandermonde system over eps = 1..h.
UniPoly<Fp> perturbation_column(const HomForm<Fp>& f, const CurveMap<Fp>& c, int m, int k) {
    const int h = f.degree();
    const auto base = pullback(f, c);
    std::vector<UniPoly<Fp>> diffs;
    for (int eps = 1; eps <= h; ++eps) {
        auto comps = c.components;
        comps[m] += UniPoly<Fp>::monomial(Fp::from_int(eps), k);
        CurveMap<Fp> bumped;
        bumped.n = c.n;
        bumped.d = c.d;
        bumped.components = std::move(comps);
        diffs.push_back(pullback(f, bumped) - base);
    }
    UniPoly<Fp> linear;
    const int top = f.degree() * c.d;
    for (int coeff = 0; coeff <= top; ++coeff) {
        std::vector<std::vector<Fp>> vand(h, std::vector<Fp>(h));
        std::vector<Fp> rhs(h);
        for (int r = 0; r < h; ++r) {
            Fp p = Fp::one();
            for (int j = 0; j < h; ++j) {
                p *= Fp::from_int(r + 1);
                vand[r][j] = p;
            }
            rhs[r] = diffs[r][coeff];
        }
        const auto x = solve_square(std::move(vand), std::move(rhs));
        if (!x[0].is_zero()) linear += UniPoly<Fp>::monomial(x[0], coeff);
    }
    return linear;
}
}  // namespace

TEST_CASE("rank_kernel on identity, zero and planted-rank matrices") {
    FpContext ctx(kPrime);
    auto [r5, k5] = rank_kernel(ExactMatrix<Fp>::identity(5));
    CHECK(r5 == 5);
    CHECK(k5.empty());

    auto [r0, k0] = rank_kernel(ExactMatrix<Fp>(3, 7));
    CHECK(r0 == 0);
    CHECK(k0.size() == 7);

    Rng rng(3);
    const auto a = ExactMatrix<Fp>::random(20, 12, rng);
    const auto b = ExactMatrix<Fp>::random(12, 30, rng);
    const auto m = a * b;
    auto [rank, kernel] = rank_kernel(m);
    CHECK(rank == 12);
    CHECK(kernel.size() == 18);
    for (const auto& v : kernel)
        for (const auto& y : m.apply(v)) CHECK(y.is_zero());
}

TEST_CASE("rank + kernel dimension = cols on random matrices") {
    FpContext ctx(kPrime);
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const int rows = 1 + static_cast<int>(rng.below(12));
        const int cols = 1 + static_cast<int>(rng.below(12));
        const auto m = ExactMatrix<Fp>::random(rows, cols, rng);
        auto [rank, kernel] = rank_kernel(m);
        CHECK(rank + static_cast<int>(kernel.size()) == cols);
        for (const auto& v : kernel)
            for (const auto& y : m.apply(v)) CHECK(y.is_zero());
    }
}

TEST_CASE("rank_kernel is deterministic") {
    FpContext ctx(kPrime);
    Rng rng(7);
    const auto m = ExactMatrix<Fp>::random(9, 14, rng);
    auto first = rank_kernel(m);
    auto second = rank_kernel(m);
    CHECK(first.first == second.first);
    CHECK(first.second == second.second);
}

TEST_CASE("section_matrix: multiplication by t on O(0) -> O(1)") {
    FpContext ctx(kPrime);
    const LineBundleMap<Fp> m({0}, {1}, {{UniPoly<Fp>::variable()}});
    const auto s = section_matrix(m, 0);
    REQUIRE(s.rows() == 2);
    REQUIRE(s.cols() == 1);
    CHECK(s.at(0, 0).is_zero());
    CHECK(s.at(1, 0) == Fp::one());
}

TEST_CASE("section_matrix: all-zero map gives the zero matrix of stated shape") {
    FpContext ctx(kPrime);
    const LineBundleMap<Fp> m({1, 2}, {3}, {{UniPoly<Fp>(), UniPoly<Fp>()}});
    const auto s = section_matrix(m, 0);
    REQUIRE(s.rows() == 4);
    REQUIRE(s.cols() == 5);
    for (int r = 0; r < s.rows(); ++r)
        for (int c = 0; c < s.cols(); ++c) CHECK(s.at(r, c).is_zero());
}

TEST_CASE("section_matrix: negative twists contribute nothing") {
    FpContext ctx(kPrime);
    Rng rng(1);
    const LineBundleMap<Fp> m({-3}, {1}, {{UniPoly<Fp>::random(4, rng)}});
    const auto s = section_matrix(m, 0);
    CHECK(s.cols() == 0);
    CHECK(s.rows() == 2);
}

TEST_CASE("gradient row equals the coefficient-perturbation oracle, (4,5,1)") {
    FpContext ctx(kPrime);
    Rng rng(11);
    const auto pair = sample_incident_pair<Fp>(4, 1, 5, rng);
    const auto J = section_matrix(gradient_row(pair.hypersurface, pair.curve), 0);
    REQUIRE(J.rows() == 6);
    REQUIRE(J.cols() == 10);

    ExactMatrix<Fp> oracle(6, 10);
    for (int m = 0; m <= 4; ++m)
        for (int k = 0; k <= 1; ++k) {
            const auto col = perturbation_column(pair.hypersurface, pair.curve, m, k);
            for (int r = 0; r <= col.degree(); ++r) oracle.at(r, m * 2 + k) = col[r];
        }
    CHECK(J.rank() == oracle.rank());
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 10; ++c) CHECK(J.at(r, c) == oracle.at(r, c));
}

TEST_CASE("fiberwise_surjective: stated rows") {
    FpContext ctx(kPrime);
    const auto t = UniPoly<Fp>::variable();
    const auto one = UniPoly<Fp>::constant(Fp::one());
    CHECK(fiberwise_surjective(LineBundleMap<Fp>({-1, -1}, {0}, {{one, t}})));

    std::string why;
    CHECK_FALSE(fiberwise_surjective(LineBundleMap<Fp>({-2, -2}, {0}, {{t, t * t}}), &why));
    CHECK(why.find("zero") != std::string::npos);

    CHECK_FALSE(fiberwise_surjective(LineBundleMap<Fp>({0}, {1}, {{UniPoly<Fp>()}}), &why));
    CHECK(why == "all entries zero");

    CHECK_FALSE(fiberwise_surjective(LineBundleMap<Fp>({0}, {2}, {{t}}), &why));
    CHECK(why == "common zero at infinity");
}

TEST_CASE("gradient row of random incident quintic pairs is surjective >= 24/25") {
    FpContext ctx(kPrime);
    int good = 0;
    for (int trial = 0; trial < 25; ++trial) {
        Rng trial_rng = Rng::derive(13, trial);
        try {
            const auto pair = sample_incident_pair<Fp>(4, 2, 5, trial_rng);
            if (fiberwise_surjective(gradient_row(pair.hypersurface, pair.curve))) ++good;
        } catch (const degeneracy_error&) {
        }
    }
    CHECK(good >= 24);
}

TEST_CASE("section matrix rank is monotone in the twist") {
    FpContext ctx(kPrime);
    Rng rng(17);
    for (int trial = 0; trial < 8; ++trial) {
        const std::vector<int> src = {0, 1 + static_cast<int>(rng.below(2))};
        const std::vector<int> dst = {2 + static_cast<int>(rng.below(3)), 4};
        const auto m = LineBundleMap<Fp>::random(src, dst, rng);
        int prev = -1;
        for (int k = 0; k <= 4; ++k) {
            const int r = section_matrix(m, k).rank();
            if (prev >= 0) CHECK(r >= prev);
            prev = r;
        }
    }
}

TEST_CASE("homogenization consistency: both chart constructions agree on 10 random maps") {
    FpContext ctx(kPrime);
    Rng rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        const std::vector<int> src = {static_cast<int>(rng.below(3)), 1};
        const std::vector<int> dst = {3, 2 + static_cast<int>(rng.below(3))};
        const auto m = LineBundleMap<Fp>::random(src, dst, rng);
        for (int k = 0; k <= 2; ++k) {
            const auto a = section_matrix(m, k);
            const auto b = section_matrix_other_chart(m, k);
            CHECK(a.rank() == b.rank());
        }
    }
}

TEST_CASE("entry degree caps are enforced") {
    FpContext ctx(kPrime);
    const auto t = UniPoly<Fp>::variable();
    CHECK_THROWS_AS(LineBundleMap<Fp>({0}, {0}, {{t}}), invariant_error);
}
