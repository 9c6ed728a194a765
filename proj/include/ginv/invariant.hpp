#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ginv/group.hpp"
#include "ginv/orbits.hpp"

namespace ginv {

/// Instrumentation counters for the linear pipeline. `tensor_terms` counts
/// one unit per tuple product accumulated (n^omega per invariant
/// application), `matvec_mults` one per matrix-vector multiply-add.
struct OpCount {
    std::uint64_t tensor_terms = 0;
    std::uint64_t matvec_mults = 0;
};

/// The linear orbit-sum invariant on the tensor space X^omega. Viewed as a
/// matrix it has one row per orbit: the orbit's indicator scaled by
/// 1/sqrt(orbit size), so the rows are orthonormal (disjoint supports).
/// Immutable after construction.
struct InvariantMap {
    int omega = 0;
    OrbitSet orbits;
    std::vector<double> norm_factors;   // 1/sqrt(orbit_sizes[i])

    std::size_t input_dim() const { return orbits.n; }   // data dimension n
    std::size_t output_dim() const { return orbits.count(); } // invariant dimension
};

InvariantMap make_invariant(const FiniteGroup& G, int omega,
                            std::uint64_t tuple_cap = Caps{}.tuple_cap);

/// Evaluate the invariant on a data vector: component i is
/// 1/sqrt(|orbit_i|) * sum over tuples in orbit_i of prod_j a[tuple_j].
/// Streams the tuple space once; the tensor power is never materialized.
std::vector<double> apply_invariant(const InvariantMap& inv,
                                    std::span<const double> a,
                                    OpCount* ops = nullptr);

/// Unnormalized orbit sum: sum over tuples in the orbit of prod_j a[tuple_j].
double orbit_functional(const OrbitSet& orbits, std::int32_t orbit_id,
                        std::span<const double> a);

/// Squared distance between the omega-th tensor powers of a1 and a2,
/// via the closed form (|a1|^2)^w - 2<a1,a2>^w + (|a2|^2)^w.
double tensor_distance_sq(std::span<const double> a1,
                          std::span<const double> a2, int omega);

/// Same quantity by brute-force streaming of all n^omega tuples; the two
/// routes cross-check each other in the tests.
double tensor_distance_sq_streamed(std::span<const double> a1,
                                   std::span<const double> a2, int omega);

/// Energy split of the difference tensor t = a1^ow - a2^ow:
///   f_energy       = |F(t)|^2           (captured by the invariant)
///   total          = |t|^2
///   delta_fraction = 1 - f_energy/total (fraction lying in the kernel)
/// Row orthonormality guarantees 0 <= delta_fraction <= 1 up to rounding.
/// Throws ZeroDifference when the tensor powers coincide.
struct KernelEnergy {
    double f_energy = 0.0;
    double total = 0.0;
    double delta_fraction = 0.0;
};

KernelEnergy kernel_energy(const InvariantMap& inv, std::span<const double> a1,
                           std::span<const double> a2);

/// Concatenation of apply_invariant over each omega in the list. Taking the
/// list up to |G| realizes a fully discriminating invariant at tiny scale.
std::vector<double> stacked_invariant(const FiniteGroup& G,
                                      std::span<const double> a,
                                      const std::vector<int>& omega_list,
                                      std::uint64_t tuple_cap = Caps{}.tuple_cap);

/// Lift of a data vector to a vector over the group: bar[g] = a[g(x1)].
/// Constant on left cosets of the stabilizer of x1. Requires a transitive
/// action (throws NotTransitive otherwise).
struct ExtensionVector {
    Point x1 = 0;
    std::vector<double> bar;   // indexed by group element index
};

ExtensionVector extension(std::span<const double> a, const FiniteGroup& G, Point x1);

/// Multi-correlation over the group: sum_sigma z[sigma] * prod_j z[sigma*g_j].
/// `args` holds omega-1 element indices. Plain left-to-right accumulation,
/// so equal inputs give bit-identical sums.
double multi_correlation(std::span<const double> z, const FiniteGroup& G,
                         std::span<const std::size_t> args);

/// Full evaluation of the multi-correlation of the extension of `a` at all
/// coset-representative argument tuples, grouped by the tuple-space orbit
/// each argument falls in. Each G-orbit on X^omega carries a constant
/// multiplicity factor |S| / |S-orbit| relating the correlation value to the
/// plain orbit sum:  value = factor * orbit_functional(orbit).
struct CorrelationEntry {
    std::vector<Point> args;      // point indices (x_{i1}, ..., x_{i_{w-1}})
    double value = 0.0;
    std::int32_t orbit_id = -1;   // G-orbit of (args..., x1) on X^omega
};

struct CorrelationTable {
    int omega = 0;
    Point x1 = 0;
    std::uint64_t stabilizer_size = 1;
    std::vector<CorrelationEntry> entries;
    std::vector<double> orbit_factor;   // per G-orbit id

    /// Number of distinct values up to a relative tolerance.
    std::size_t distinct_values(double rel_tol = 1e-9) const;
};

CorrelationTable correlation_table(std::span<const double> a, const FiniteGroup& G,
                                   Point x1, int omega,
                                   std::uint64_t tuple_cap = Caps{}.tuple_cap);

} // namespace ginv
