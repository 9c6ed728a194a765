#include <doctest.h>

#include <cmath>

#include "ginv/embed.hpp"
#include "helpers.hpp"

using namespace ginv;
using testutil::random_vector;

TEST_CASE("sampling is deterministic in (m, kappa, seed)") {
    const GaussianMap a = sample_map(7, 13, 99);
    const GaussianMap b = sample_map(7, 13, 99);
    CHECK(a.matrix == b.matrix);
    const GaussianMap c = sample_map(7, 13, 100);
    CHECK(a.matrix != c.matrix);
}

TEST_CASE("entry statistics") {
    const std::size_t m = 100, kappa = 100;
    const GaussianMap map = sample_map(m, kappa, 4242);

    SUBCASE("mean near zero") {
        double mean = 0.0;
        for (double v : map.matrix) mean += v;
        mean /= static_cast<double>(map.matrix.size());
        CHECK(std::abs(mean) < 0.02);   // 3 sigma for 10^4 entries of sd 0.1
    }
    SUBCASE("per-entry variance within 10% of 1/m") {
        double var = 0.0;
        for (double v : map.matrix) var += v * v;
        var /= static_cast<double>(map.matrix.size());
        CHECK(var == doctest::Approx(1.0 / m).epsilon(0.10));
    }
    SUBCASE("column norms concentrate near one for large m") {
        const GaussianMap tall = sample_map(2000, 10, 7);
        for (std::size_t j = 0; j < tall.input_dim; ++j) {
            double norm_sq = 0.0;
            for (std::size_t i = 0; i < tall.m; ++i) {
                const double v = tall.entry(i, j);
                norm_sq += v * v;
            }
            CHECK(norm_sq == doctest::Approx(1.0).epsilon(0.15));
        }
    }
}

TEST_CASE("embedding basics") {
    const FiniteGroup Z6 = cyclic_group(6);
    const InvariantMap inv = make_invariant(Z6, 2);
    const GaussianMap map = sample_map(4, inv.output_dim(), 11);

    SUBCASE("zero maps to zero") {
        const std::vector<double> zero(6, 0.0);
        for (double v : embed_point(map, inv, zero)) CHECK(v == 0.0);
    }
    SUBCASE("determinism is bit-exact for identical inputs") {
        const auto a = random_vector(6, 3);
        CHECK(embed_point(map, inv, a) == embed_point(map, inv, a));
    }
    SUBCASE("embeddings are invariant across the orbit") {
        for (std::uint64_t trial = 0; trial < 20; ++trial) {
            const auto a = random_vector(6, 400 + trial);
            const auto& g = Z6.element(counter_bits(41, trial) % Z6.size());
            const auto y1 = embed_point(map, inv, a);
            const auto y2 = embed_point(map, inv, act_vector(g, a));
            CHECK(testutil::max_abs_diff(y1, y2) <=
                  1e-12 * std::max(1.0, testutil::norm_inf(y1)));
        }
    }
    SUBCASE("multiply count is n^omega plus m * kappa") {
        OpCount ops;
        (void)embed_point(map, inv, random_vector(6, 5), &ops);
        CHECK(ops.tensor_terms == 36);
        CHECK(ops.matvec_mults == map.m * inv.output_dim());
    }
    SUBCASE("dimension mismatch is rejected") {
        const GaussianMap wrong = sample_map(4, inv.output_dim() + 1, 11);
        CHECK_THROWS_AS(embed_point(wrong, inv, random_vector(6, 5)),
                        DimensionMismatch);
    }
    SUBCASE("linearity: difference of embeddings equals map of z-difference") {
        const auto a1 = random_vector(6, 61);
        const auto a2 = random_vector(6, 62);
        const auto z1 = apply_invariant(inv, a1);
        const auto z2 = apply_invariant(inv, a2);
        std::vector<double> dz(z1.size());
        for (std::size_t i = 0; i < dz.size(); ++i) dz[i] = z1[i] - z2[i];
        const auto lhs = apply_map(map, dz);

        const auto y1 = embed_point(map, inv, a1);
        const auto y2 = embed_point(map, inv, a2);
        for (std::size_t i = 0; i < lhs.size(); ++i)
            CHECK(lhs[i] == doctest::Approx(y1[i] - y2[i]).epsilon(1e-12));
    }
}

TEST_CASE("dimension bound") {
    SUBCASE("alpha(1/2) = 1/8") {
        // k=2, beta=1/e, epsilon=1/2, delta=0: required = (2 ln 2 + 1) / 0.125
        const std::size_t m = jl_dimension({2, std::exp(-1.0), 0.5, 0.0});
        const double required = (2.0 * std::log(2.0) + 1.0) / 0.125;
        CHECK(m == static_cast<std::size_t>(std::ceil(required)));
    }
    SUBCASE("the worked example lands on 72") {
        CHECK(jl_dimension({20, 0.05, 0.5, 0.0}) == 72);
    }
    SUBCASE("independent re-evaluation of the formula") {
        const JlBudget b{37, 0.01, 0.4, 0.1};
        const double y = (b.epsilon - b.delta) / (1.0 - b.delta);
        const double required =
            (2.0 * std::log(37.0) + std::log(1.0 / 0.01)) / (y * y - y * y * y);
        CHECK(jl_dimension(b) == static_cast<std::size_t>(std::ceil(required)));
    }
    SUBCASE("epsilon at or below delta is rejected before any overflow") {
        CHECK_THROWS_AS(jl_dimension({20, 0.05, 0.3, 0.3}), EpsilonNotAboveDelta);
        CHECK_THROWS_AS(jl_dimension({20, 0.05, 0.3, 0.5}), EpsilonNotAboveDelta);
    }
    SUBCASE("degenerate point counts are rejected") {
        CHECK_THROWS_AS(jl_dimension({1, 0.05, 0.5, 0.0}), DegenerateK);
    }
    SUBCASE("epsilon barely above delta errors out instead of overflowing") {
        CHECK_THROWS_AS(jl_dimension({20, 0.05, 0.9 + 1e-9, 0.9}), Error);
    }
}

TEST_CASE("isometry verification") {
    SUBCASE("an identity map on a kernel-free invariant never violates") {
        const FiniteGroup T = close_generators({}, 10, 4);
        const InvariantMap inv = make_invariant(T, 1);
        GaussianMap eye;
        eye.m = 4;
        eye.input_dim = 4;
        eye.seed = 0;
        eye.matrix.assign(16, 0.0);
        for (std::size_t i = 0; i < 4; ++i) eye.matrix[i * 4 + i] = 1.0;

        std::vector<std::vector<double>> points;
        for (std::uint64_t t = 0; t < 6; ++t) points.push_back(random_vector(4, 70 + t));
        const IsometryReport rep = verify_isometry(points, inv, eye, 1e-9);
        CHECK(rep.pairs_checked == 15);
        CHECK(rep.violations.empty());
    }
    SUBCASE("duplicate points are rejected") {
        const InvariantMap inv = make_invariant(cyclic_group(3), 1);
        const auto a = random_vector(3, 1);
        const GaussianMap map = sample_map(2, inv.output_dim(), 5);
        CHECK_THROWS_AS(verify_isometry({a, a}, inv, map, 0.5), DuplicatePoints);
    }
    SUBCASE("epsilon = 0 flags every pair under a random map") {
        const InvariantMap inv = make_invariant(cyclic_group(5), 1);
        const GaussianMap map = sample_map(3, inv.output_dim(), 17);
        std::vector<std::vector<double>> points;
        for (std::uint64_t t = 0; t < 5; ++t) points.push_back(random_vector(5, 90 + t));
        const IsometryReport rep = verify_isometry(points, inv, map, 0.0);
        CHECK(rep.violations.size() == rep.pairs_checked);
    }
}

TEST_CASE("injectivity Monte-Carlo") {
    SUBCASE("m at least kappa with distinct invariants is injective in all trials") {
        const InvariantMap inv = make_invariant(cyclic_group(4), 2);
        std::vector<std::vector<double>> points;
        for (std::uint64_t t = 0; t < 5; ++t) points.push_back(random_vector(4, 110 + t));
        const WhitneyReport rep =
            check_whitney_injectivity(points, inv, inv.output_dim(), 50, 3);
        CHECK(rep.injective_trials == rep.trials);
    }
    SUBCASE("indistinguishable points are refused") {
        const InvariantMap inv = make_invariant(cyclic_group(2), 1);
        // same orbit-sum, not equivalent
        const std::vector<std::vector<double>> points{{1.0, 0.0}, {0.5, 0.5}};
        CHECK_THROWS_AS(check_whitney_injectivity(points, inv, 3, 10, 1),
                        NotDiscriminable);
    }
    SUBCASE("ten points into three dimensions") {
        const InvariantMap inv = make_invariant(cyclic_group(8), 2);
        std::vector<std::vector<double>> points;
        for (std::uint64_t t = 0; t < 10; ++t) points.push_back(random_vector(8, 130 + t));
        const WhitneyReport rep = check_whitney_injectivity(points, inv, 3, 1000, 9);
        CHECK(static_cast<double>(rep.injective_trials) >= 0.99 * 1000);
        CHECK(rep.min_pair_gap > 0.0);
    }
}

TEST_CASE("concentration self-test") {
    SUBCASE("empirical tail stays under the analytic bound") {
        const ConcentrationReport rep = concentration_selftest(100, 0.5, 10000, 1);
        CHECK(rep.bound == doctest::Approx(2.0 * std::exp(-3.125)).epsilon(1e-12));
        CHECK(rep.empirical_tail <= rep.bound);
    }
    SUBCASE("the bound shrinks as m grows for epsilon below 2/3") {
        double prev = 2.0;
        for (std::size_t m : {10, 20, 40, 80, 160}) {
            const double bound =
                2.0 * std::exp(-(static_cast<double>(m) / 4.0) * (0.25 - 0.125));
            CHECK(bound < prev);
            prev = bound;
        }
    }
    SUBCASE("epsilon outside (0,1) is rejected") {
        CHECK_THROWS_AS(concentration_selftest(10, 1.0, 10, 1), Error);
    }
    SUBCASE("repeated self-tests stay under the bound almost always") {
        std::size_t under = 0;
        for (std::uint64_t s = 0; s < 20; ++s) {
            const ConcentrationReport rep = concentration_selftest(100, 0.5, 2000, s);
            if (rep.empirical_tail <= rep.bound) ++under;
        }
        CHECK(under >= 19);
    }
}
