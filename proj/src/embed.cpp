#include "ginv/embed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ginv {

GaussianMap sample_map(std::size_t m, std::size_t input_dim, std::uint64_t seed) {
    if (m < 1 || input_dim < 1)
        throw Error("sample_map: dimensions must be >= 1");
    GaussianMap map;
    map.m = m;
    map.input_dim = input_dim;
    map.seed = seed;
    map.matrix.resize(m * input_dim);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t idx = 0; idx < map.matrix.size(); ++idx)
        map.matrix[idx] = scale * counter_normal(seed, idx);
    return map;
}

std::vector<double> apply_map(const GaussianMap& map, std::span<const double> x,
                              OpCount* ops) {
    if (x.size() != map.input_dim)
        throw DimensionMismatch("apply_map: input length differs from map width");
    std::vector<double> y(map.m, 0.0);
    for (std::size_t i = 0; i < map.m; ++i) {
        const double* row = map.matrix.data() + i * map.input_dim;
        KahanSum acc;
        for (std::size_t j = 0; j < map.input_dim; ++j) acc.add(row[j] * x[j]);
        y[i] = acc.value();
    }
    if (ops) ops->matvec_mults += map.m * map.input_dim;
    return y;
}

std::vector<double> embed_point(const GaussianMap& map, const InvariantMap& inv,
                                std::span<const double> a, OpCount* ops) {
    if (map.input_dim != inv.output_dim())
        throw DimensionMismatch("embed_point: map width differs from invariant dimension");
    return apply_map(map, apply_invariant(inv, a, ops), ops);
}

std::size_t jl_dimension(const JlBudget& budget) {
    if (budget.k < 2) throw DegenerateK("jl_dimension: need k >= 2 points");
    if (!(budget.beta > 0.0 && budget.beta < 1.0))
        throw Error("jl_dimension: beta must lie in (0,1)");
    if (!(budget.delta >= 0.0 && budget.epsilon < 1.0))
        throw Error("jl_dimension: need 0 <= delta and epsilon < 1");
    if (!(budget.epsilon > budget.delta))
        throw EpsilonNotAboveDelta("jl_dimension: epsilon must exceed delta");

    const double y = (budget.epsilon - budget.delta) / (1.0 - budget.delta);
    const double alpha = y * y - y * y * y;
    const double required =
        (2.0 * std::log(static_cast<double>(budget.k)) + std::log(1.0 / budget.beta)) / alpha;
    if (!(required < 1e12))
        throw Error("jl_dimension: required dimension diverges as epsilon approaches delta");

    // "Exceeds" is strict: when the bound lands on an integer, go one above.
    const double floor_val = std::floor(required);
    if (floor_val == required) return static_cast<std::size_t>(required) + 1;
    return static_cast<std::size_t>(std::ceil(required));
}

namespace {

double sq_distance(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return s;
}

} // namespace

IsometryReport verify_isometry(const std::vector<std::vector<double>>& points,
                               const InvariantMap& inv, const GaussianMap& map,
                               double epsilon) {
    if (points.size() < 2)
        throw Error("verify_isometry: need at least two points");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw DuplicatePoints("verify_isometry: points " + std::to_string(i) +
                                      " and " + std::to_string(j) + " are identical");

    std::vector<std::vector<double>> embedded;
    embedded.reserve(points.size());
    for (const auto& p : points)
        embedded.push_back(embed_point(map, inv, p));

    IsometryReport report;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const double d_tensor = tensor_distance_sq(points[i], points[j], inv.omega);
            const double d_embed = sq_distance(embedded[i], embedded[j]);
            ++report.pairs_checked;
            if (d_tensor == 0.0) continue;   // invariant vectors coincide too
            const double ratio = d_embed / d_tensor;
            if (std::abs(ratio - 1.0) > std::abs(report.worst_ratio - 1.0))
                report.worst_ratio = ratio;
            if (d_embed < (1.0 - epsilon) * d_tensor ||
                d_embed > (1.0 + epsilon) * d_tensor)
                report.violations.push_back({i, j, ratio});
        }
    }
    return report;
}

WhitneyReport check_whitney_injectivity(const std::vector<std::vector<double>>& points,
                                        const InvariantMap& inv, std::size_t m,
                                        std::size_t trials, std::uint64_t seed) {
    std::vector<std::vector<double>> z;
    z.reserve(points.size());
    for (const auto& p : points) z.push_back(apply_invariant(inv, p));

    double z_scale = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        for (const double v : z[i]) z_scale = std::max(z_scale, std::abs(v));
    const double same_tol = 1e-12 * std::max(1.0, z_scale);
    for (std::size_t i = 0; i < z.size(); ++i) {
        for (std::size_t j = i + 1; j < z.size(); ++j) {
            double diff = 0.0;
            for (std::size_t c = 0; c < z[i].size(); ++c)
                diff = std::max(diff, std::abs(z[i][c] - z[j][c]));
            if (diff <= same_tol)
                throw NotDiscriminable("check_whitney_injectivity: points " +
                                       std::to_string(i) + " and " + std::to_string(j) +
                                       " share an invariant vector");
        }
    }

    double max_tensor_dist = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            max_tensor_dist = std::max(
                max_tensor_dist,
                std::sqrt(std::max(0.0, tensor_distance_sq(points[i], points[j], inv.omega))));
    const double gap_tol = 1e-9 * max_tensor_dist;

    WhitneyReport report;
    report.trials = trials;
    report.min_pair_gap = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < trials; ++t) {
        const GaussianMap map = sample_map(m, inv.output_dim(), derive_seed(seed, t));
        std::vector<std::vector<double>> y;
        y.reserve(z.size());
        for (const auto& zi : z) y.push_back(apply_map(map, zi));

        bool injective = true;
        for (std::size_t i = 0; i < y.size() && injective; ++i) {
            for (std::size_t j = i + 1; j < y.size(); ++j) {
                const double gap = std::sqrt(sq_distance(y[i], y[j]));
                report.min_pair_gap = std::min(report.min_pair_gap, gap);
                if (gap <= gap_tol) {
                    injective = false;
                    break;
                }
            }
        }
        if (injective) ++report.injective_trials;
    }
    return report;
}

ConcentrationReport concentration_selftest(std::size_t m, double epsilon,
                                           std::size_t samples, std::uint64_t seed,
                                           std::size_t dim) {
    if (m < 1) throw Error("concentration_selftest: m must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw Error("concentration_selftest: epsilon must lie in (0,1)");

    ConcentrationReport report;
    report.samples = samples;
    report.bound = 2.0 * std::exp(-(static_cast<double>(m) / 4.0) *
                                  (epsilon * epsilon - epsilon * epsilon * epsilon));

    for (std::size_t s = 0; s < samples; ++s) {
        const std::uint64_t trial_seed = derive_seed(seed, s);
        std::vector<double> x(dim);
        double norm_sq = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            x[j] = counter_normal(trial_seed ^ 0x517CC1B727220A95ull, j);
            norm_sq += x[j] * x[j];
        }
        const double inv_norm = 1.0 / std::sqrt(norm_sq);
        for (double& v : x) v *= inv_norm;

        const GaussianMap map = sample_map(m, dim, trial_seed);
        const std::vector<double> y = apply_map(map, x);
        double energy = 0.0;
        for (double v : y) energy += v * v;
        if (std::abs(energy - 1.0) > epsilon) ++report.exceedances;
    }
    report.empirical_tail =
        static_cast<double>(report.exceedances) / static_cast<double>(samples);
    return report;
}

} // namespace ginv
