#pragma once

#include <utility>
#include <vector>

#include "ginv/invariant.hpp"

namespace ginv {

/// Canonical representative of a vector orbit: the lexicographic minimum of
/// {act_vector(g, a) : g in G}. `fixed` is true iff some non-identity
/// element fixes the vector (so it lies outside every fundamental region).
struct CanonicalPoint {
    std::vector<double> vec;
    bool fixed = false;
};

CanonicalPoint canonicalize(std::span<const double> a, const FiniteGroup& G);

/// A dataset reduced to its canonical classes: exact-match deduplication of
/// canonical forms, reps sorted lexicographically. class_sizes counts input
/// points per class.
struct CanonicalSet {
    std::vector<std::vector<double>> reps;
    std::vector<std::size_t> class_sizes;
    std::vector<bool> fixed_flags;

    std::size_t size() const { return reps.size(); }
};

CanonicalSet reduce_dataset(const std::vector<std::vector<double>>& points,
                            const FiniteGroup& G);

/// delta = worst kernel fraction over canonical pairs: the largest share of
/// a pairwise difference tensor's energy that the invariant discards.
/// delta < 1 iff the invariant is discriminable over the set.
struct PairDelta {
    std::size_t i = 0;
    std::size_t j = 0;
    double delta_fraction = 0.0;
};

struct DeltaReport {
    double delta = 0.0;
    std::pair<std::size_t, std::size_t> argmax_pair{0, 0};
    std::vector<PairDelta> per_pair;   // filled only on request
};

DeltaReport compute_delta(const CanonicalSet& canon, const InvariantMap& inv,
                          bool keep_pairs = false);

struct DiscriminabilityReport {
    bool discriminable = true;
    std::size_t witness_i = 0;
    std::size_t witness_j = 0;
    std::vector<double> z_i;
    std::vector<double> z_j;
};

/// True iff all pairwise invariant vectors differ by more than tol in
/// max-norm; returns the first witness pair otherwise.
DiscriminabilityReport check_discriminable(const CanonicalSet& canon,
                                           const InvariantMap& inv, double tol);

/// Box-counting dimension estimate: occupied-cell counts over a ladder of
/// grid scales and the least-squares slope of log N against -log eps.
struct BoxDimEstimate {
    std::vector<double> epsilons;
    std::vector<std::size_t> counts;
    double slope = 0.0;
    double r2 = 1.0;
};

/// The grid at each scale is anchored at the coordinate-wise minimum of the
/// data. The ladder must have >= 2 strictly decreasing positive scales.
BoxDimEstimate estimate_box_dimension(const std::vector<std::vector<double>>& points,
                                      const std::vector<double>& eps_ladder);

} // namespace ginv
