#include "ginv/invariant.hpp"

#include <algorithm>
#include <cmath>

namespace ginv {

InvariantMap make_invariant(const FiniteGroup& G, int omega,
                            std::uint64_t tuple_cap) {
    InvariantMap inv;
    inv.omega = omega;
    inv.orbits = enumerate_orbits(G, omega, tuple_cap);
    inv.norm_factors.reserve(inv.orbits.count());
    for (std::uint64_t s : inv.orbits.orbit_sizes)
        inv.norm_factors.push_back(1.0 / std::sqrt(static_cast<double>(s)));
    return inv;
}

namespace {

// Advance a base-n odometer; digits[0] is the most significant limb, so the
// walk visits tuple codes 0, 1, 2, ... in order.
inline void advance_odometer(std::vector<Point>& digits, std::size_t n) {
    for (std::size_t j = digits.size(); j-- > 0;) {
        if (++digits[j] < n) return;
        digits[j] = 0;
    }
}

} // namespace

std::vector<double> apply_invariant(const InvariantMap& inv,
                                    std::span<const double> a, OpCount* ops) {
    const std::size_t n = inv.orbits.n;
    if (a.size() != n)
        throw LengthMismatch("apply_invariant: vector length differs from point count");

    const std::uint64_t total = inv.orbits.tuple_count();
    std::vector<KahanSum> acc(inv.orbits.count());
    std::vector<Point> digits(inv.omega, 0);

    for (TupleCode code = 0; code < total; ++code) {
        double prod = a[digits[0]];
        for (int j = 1; j < inv.omega; ++j) prod *= a[digits[j]];
        acc[inv.orbits.orbit_of[code]].add(prod);
        advance_odometer(digits, n);
    }
    if (ops) ops->tensor_terms += total;

    std::vector<double> z(inv.orbits.count());
    for (std::size_t i = 0; i < z.size(); ++i)
        z[i] = inv.norm_factors[i] * acc[i].value();
    return z;
}

double orbit_functional(const OrbitSet& orbits, std::int32_t orbit_id,
                        std::span<const double> a) {
    if (a.size() != orbits.n)
        throw LengthMismatch("orbit_functional: vector length differs from point count");
    KahanSum acc;
    for (TupleCode code : stream_orbit_members(orbits, orbit_id)) {
        double prod = 1.0;
        TupleCode c = code;
        for (int j = 0; j < orbits.omega; ++j) {
            prod *= a[c % orbits.n];
            c /= orbits.n;
        }
        acc.add(prod);
    }
    return acc.value();
}

namespace {

double dot(std::span<const double> x, std::span<const double> y) {
    KahanSum s;
    for (std::size_t i = 0; i < x.size(); ++i) s.add(x[i] * y[i]);
    return s.value();
}

double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

} // namespace

double tensor_distance_sq(std::span<const double> a1,
                          std::span<const double> a2, int omega) {
    if (a1.size() != a2.size())
        throw LengthMismatch("tensor_distance_sq: vector lengths differ");
    const double n11 = dot(a1, a1);
    const double n22 = dot(a2, a2);
    const double n12 = dot(a1, a2);
    return ipow(n11, omega) - 2.0 * ipow(n12, omega) + ipow(n22, omega);
}

double tensor_distance_sq_streamed(std::span<const double> a1,
                                   std::span<const double> a2, int omega) {
    if (a1.size() != a2.size())
        throw LengthMismatch("tensor_distance_sq_streamed: vector lengths differ");
    const std::size_t n = a1.size();
    std::uint64_t total = 1;
    for (int i = 0; i < omega; ++i) total *= n;

    std::vector<Point> digits(omega, 0);
    KahanSum acc;
    for (TupleCode code = 0; code < total; ++code) {
        double p1 = a1[digits[0]];
        double p2 = a2[digits[0]];
        for (int j = 1; j < omega; ++j) {
            p1 *= a1[digits[j]];
            p2 *= a2[digits[j]];
        }
        const double d = p1 - p2;
        acc.add(d * d);
        advance_odometer(digits, n);
    }
    return acc.value();
}

KernelEnergy kernel_energy(const InvariantMap& inv, std::span<const double> a1,
                           std::span<const double> a2) {
    const std::size_t n = inv.orbits.n;
    if (a1.size() != n || a2.size() != n)
        throw LengthMismatch("kernel_energy: vector length differs from point count");

    const double total = tensor_distance_sq(a1, a2, inv.omega);
    if (total <= 0.0)
        throw ZeroDifference("kernel_energy: tensor powers coincide");

    // Per-orbit sums of the difference tensor, accumulated without ever
    // materializing it.
    const std::uint64_t tuples = inv.orbits.tuple_count();
    std::vector<KahanSum> acc(inv.orbits.count());
    std::vector<Point> digits(inv.omega, 0);
    for (TupleCode code = 0; code < tuples; ++code) {
        double p1 = a1[digits[0]];
        double p2 = a2[digits[0]];
        for (int j = 1; j < inv.omega; ++j) {
            p1 *= a1[digits[j]];
            p2 *= a2[digits[j]];
        }
        acc[inv.orbits.orbit_of[code]].add(p1 - p2);
        advance_odometer(digits, n);
    }

    KahanSum f_energy;
    for (std::size_t i = 0; i < acc.size(); ++i) {
        const double zi = inv.norm_factors[i] * acc[i].value();
        f_energy.add(zi * zi);
    }

    KernelEnergy out;
    out.f_energy = f_energy.value();
    out.total = total;
    out.delta_fraction = 1.0 - out.f_energy / out.total;
    return out;
}

std::vector<double> stacked_invariant(const FiniteGroup& G,
                                      std::span<const double> a,
                                      const std::vector<int>& omega_list,
                                      std::uint64_t tuple_cap) {
    std::vector<double> out;
    for (int w : omega_list) {
        const InvariantMap inv = make_invariant(G, w, tuple_cap);
        const std::vector<double> z = apply_invariant(inv, a);
        out.insert(out.end(), z.begin(), z.end());
    }
    return out;
}

ExtensionVector extension(std::span<const double> a, const FiniteGroup& G, Point x1) {
    if (x1 >= G.degree())
        throw IndexOutOfRange("extension: base point out of range");
    if (a.size() != G.degree())
        throw LengthMismatch("extension: vector length differs from point count");
    // Transitivity check doubles as the coset-structure guarantee.
    (void)coset_reps(G, x1);

    ExtensionVector ext;
    ext.x1 = x1;
    ext.bar.reserve(G.size());
    for (const auto& g : G.elements()) ext.bar.push_back(a[g.image[x1]]);
    return ext;
}

double multi_correlation(std::span<const double> z, const FiniteGroup& G,
                         std::span<const std::size_t> args) {
    if (z.size() != G.size())
        throw LengthMismatch("multi_correlation: vector length differs from group size");
    for (std::size_t gi : args)
        if (gi >= G.size())
            throw IndexOutOfRange("multi_correlation: argument index out of range");

    double sum = 0.0;
    for (std::size_t sigma = 0; sigma < G.size(); ++sigma) {
        double term = z[sigma];
        for (std::size_t gi : args) term *= z[G.compose_index(sigma, gi)];
        sum += term;
    }
    return sum;
}

CorrelationTable correlation_table(std::span<const double> a, const FiniteGroup& G,
                                   Point x1, int omega, std::uint64_t tuple_cap) {
    if (omega < 1) throw Error("correlation_table: omega must be >= 1");
    const std::size_t n = G.degree();

    const std::vector<Permutation> reps = coset_reps(G, x1); // throws NotTransitive
    const ExtensionVector ext = extension(a, G, x1);
    const FiniteGroup S = stabilizer(G, x1);

    const OrbitSet g_orbits = enumerate_orbits(G, omega, tuple_cap);
    // S-orbits on X^(omega-1) classify the argument tuples; omega = 1 has a
    // single empty argument tuple.
    OrbitSet s_orbits;
    if (omega > 1) s_orbits = enumerate_orbits(S, omega - 1, tuple_cap);

    std::vector<std::size_t> rep_index(n);
    for (std::size_t j = 0; j < n; ++j) rep_index[j] = G.index_of(reps[j]);

    CorrelationTable table;
    table.omega = omega;
    table.x1 = x1;
    table.stabilizer_size = S.size();
    table.orbit_factor.assign(g_orbits.count(), 0.0);

    std::uint64_t arg_count = 1;
    for (int i = 0; i < omega - 1; ++i) arg_count *= n;

    std::vector<Point> args(omega - 1, 0);
    std::vector<std::size_t> arg_elems(omega - 1);
    std::vector<Point> full(omega);
    for (std::uint64_t k = 0; k < arg_count; ++k) {
        for (std::size_t j = 0; j + 1 < static_cast<std::size_t>(omega); ++j)
            arg_elems[j] = rep_index[args[j]];
        CorrelationEntry entry;
        entry.args = args;
        entry.value = multi_correlation(ext.bar, G, arg_elems);

        std::copy(args.begin(), args.end(), full.begin());
        full[omega - 1] = x1;
        entry.orbit_id = g_orbits.orbit_of[encode_tuple(full, n)];

        if (omega > 1) {
            const std::uint64_t s_orbit_size =
                s_orbits.orbit_sizes[s_orbits.orbit_of[encode_tuple(args, n)]];
            table.orbit_factor[entry.orbit_id] =
                static_cast<double>(S.size()) / static_cast<double>(s_orbit_size);
        } else {
            table.orbit_factor[entry.orbit_id] = static_cast<double>(S.size());
        }

        table.entries.push_back(std::move(entry));
        advance_odometer(args, n);
    }
    return table;
}

std::size_t CorrelationTable::distinct_values(double rel_tol) const {
    std::vector<double> vals;
    vals.reserve(entries.size());
    for (const auto& e : entries) vals.push_back(e.value);
    std::sort(vals.begin(), vals.end());
    if (vals.empty()) return 0;
    double scale = std::max(std::abs(vals.front()), std::abs(vals.back()));
    scale = std::max(scale, 1.0);
    std::size_t count = 1;
    for (std::size_t i = 1; i < vals.size(); ++i)
        if (vals[i] - vals[i - 1] > rel_tol * scale) ++count;
    return count;
}

} // namespace ginv
