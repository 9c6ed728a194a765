#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ginv/invariant.hpp"

namespace ginv {

/// Seeded m x input_dim random projection with i.i.d. N(0, 1/m) entries.
/// Entry (i, j) is a pure function of (seed, i, j), so regenerating from the
/// same triple reproduces the matrix bit-exactly regardless of fill order.
struct GaussianMap {
    std::size_t m = 0;
    std::size_t input_dim = 0;
    std::uint64_t seed = 0;
    std::vector<double> matrix;   // row-major, m rows

    double entry(std::size_t i, std::size_t j) const {
        return matrix[i * input_dim + j];
    }
};

GaussianMap sample_map(std::size_t m, std::size_t input_dim, std::uint64_t seed);

std::vector<double> apply_map(const GaussianMap& map, std::span<const double> x,
                              OpCount* ops = nullptr);

/// The two-step embedding: random projection of the invariant vector.
/// Inherits the invariance of the first step. Total multiply count is
/// n^omega tuple products plus m * invariant_dim matrix multiplies.
std::vector<double> embed_point(const GaussianMap& map, const InvariantMap& inv,
                                std::span<const double> a, OpCount* ops = nullptr);

/// Parameters of the dimension bound: k canonical points, failure
/// probability beta, distortion epsilon, discriminability constant delta.
struct JlBudget {
    std::size_t k = 0;
    double beta = 0.0;
    double epsilon = 0.0;
    double delta = 0.0;
};

/// Smallest m strictly exceeding (2 ln k + ln(1/beta)) / alpha(y) with
/// y = (epsilon - delta)/(1 - delta) and alpha(y) = y^2 - y^3. Natural
/// logarithms throughout (the concentration bound is base e).
std::size_t jl_dimension(const JlBudget& budget);

struct IsometryViolation {
    std::size_t i = 0;
    std::size_t j = 0;
    double ratio = 0.0;   // embedded energy / tensor-space energy
};

struct IsometryReport {
    std::size_t pairs_checked = 0;
    std::vector<IsometryViolation> violations;
    double worst_ratio = 1.0;   // farthest ratio from 1 seen
};

/// Check (1-eps) * D <= |Phi F (a_i - a_j tensor diff)|^2 <= (1+eps) * D for
/// every pair, with D the tensor-space squared distance. Throws
/// DuplicatePoints when two input vectors are identical.
IsometryReport verify_isometry(const std::vector<std::vector<double>>& points,
                               const InvariantMap& inv, const GaussianMap& map,
                               double epsilon);

struct WhitneyReport {
    std::size_t trials = 0;
    std::size_t injective_trials = 0;
    double min_pair_gap = 0.0;   // smallest embedded pair distance seen
};

/// Sample `trials` fresh maps and count how many embed the point set
/// injectively (every pair farther apart than a scale-relative tolerance).
/// Throws NotDiscriminable if two points share an invariant vector — no
/// linear map can separate those.
WhitneyReport check_whitney_injectivity(const std::vector<std::vector<double>>& points,
                                        const InvariantMap& inv, std::size_t m,
                                        std::size_t trials, std::uint64_t seed);

struct ConcentrationReport {
    std::size_t samples = 0;
    std::size_t exceedances = 0;
    double empirical_tail = 0.0;
    double bound = 0.0;   // 2 exp(-(m/4)(eps^2 - eps^3))
};

/// Statistical self-test of the norm-concentration bound: draws fresh maps
/// and unit vectors, measures P(| |Phi x|^2 - 1 | > eps) empirically.
ConcentrationReport concentration_selftest(std::size_t m, double epsilon,
                                           std::size_t samples, std::uint64_t seed,
                                           std::size_t dim = 16);

} // namespace ginv
