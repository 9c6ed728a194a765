#include "ginv/discrim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <unordered_set>

namespace ginv {

CanonicalPoint canonicalize(std::span<const double> a, const FiniteGroup& G) {
    if (a.size() != G.degree())
        throw LengthMismatch("canonicalize: vector length differs from point count");

    CanonicalPoint out;
    out.vec.assign(a.begin(), a.end());
    for (std::size_t gi = 0; gi < G.size(); ++gi) {
        std::vector<double> image = act_vector(G.element(gi), a);
        if (gi != G.identity_index() &&
            std::equal(image.begin(), image.end(), a.begin()))
            out.fixed = true;
        if (image < out.vec) out.vec = std::move(image);
    }
    return out;
}

CanonicalSet reduce_dataset(const std::vector<std::vector<double>>& points,
                            const FiniteGroup& G) {
    struct ClassInfo {
        std::size_t count = 0;
        bool fixed = false;
    };
    std::map<std::vector<double>, ClassInfo> classes;
    for (const auto& p : points) {
        CanonicalPoint c = canonicalize(p, G);
        auto& info = classes[std::move(c.vec)];
        ++info.count;
        info.fixed = c.fixed;
    }

    CanonicalSet out;
    out.reps.reserve(classes.size());
    for (auto& [rep, info] : classes) {
        out.reps.push_back(rep);
        out.class_sizes.push_back(info.count);
        out.fixed_flags.push_back(info.fixed);
    }
    return out;
}

DeltaReport compute_delta(const CanonicalSet& canon, const InvariantMap& inv,
                          bool keep_pairs) {
    if (canon.size() < 2)
        throw TooFewPoints("compute_delta: need at least two canonical points");

    DeltaReport report;
    report.delta = -1.0;
    for (std::size_t i = 0; i < canon.size(); ++i) {
        for (std::size_t j = i + 1; j < canon.size(); ++j) {
            double frac;
            try {
                frac = kernel_energy(inv, canon.reps[i], canon.reps[j]).delta_fraction;
            } catch (const ZeroDifference&) {
                // Distinct canonical points with identical tensor powers:
                // nothing downstream can separate them.
                frac = 1.0;
            }
            if (keep_pairs) report.per_pair.push_back({i, j, frac});
            if (frac > report.delta) {
                report.delta = frac;
                report.argmax_pair = {i, j};
            }
        }
    }
    report.delta = std::clamp(report.delta, 0.0, 1.0);
    return report;
}

DiscriminabilityReport check_discriminable(const CanonicalSet& canon,
                                           const InvariantMap& inv, double tol) {
    std::vector<std::vector<double>> z;
    z.reserve(canon.size());
    for (const auto& rep : canon.reps) z.push_back(apply_invariant(inv, rep));

    DiscriminabilityReport report;
    for (std::size_t i = 0; i < z.size(); ++i) {
        for (std::size_t j = i + 1; j < z.size(); ++j) {
            double diff = 0.0;
            for (std::size_t c = 0; c < z[i].size(); ++c)
                diff = std::max(diff, std::abs(z[i][c] - z[j][c]));
            if (diff <= tol) {
                report.discriminable = false;
                report.witness_i = i;
                report.witness_j = j;
                report.z_i = z[i];
                report.z_j = z[j];
                return report;
            }
        }
    }
    return report;
}

BoxDimEstimate estimate_box_dimension(const std::vector<std::vector<double>>& points,
                                      const std::vector<double>& eps_ladder) {
    if (eps_ladder.size() < 2)
        throw DegenerateLadder("estimate_box_dimension: need at least two scales");
    for (std::size_t i = 0; i < eps_ladder.size(); ++i) {
        if (!(eps_ladder[i] > 0.0))
            throw DegenerateLadder("estimate_box_dimension: scales must be positive");
        if (i > 0 && !(eps_ladder[i] < eps_ladder[i - 1]))
            throw DegenerateLadder("estimate_box_dimension: scales must strictly decrease");
    }
    if (points.empty())
        throw Error("estimate_box_dimension: empty point set");

    const std::size_t dim = points.front().size();
    std::vector<double> anchor(dim, std::numeric_limits<double>::infinity());
    for (const auto& p : points) {
        if (p.size() != dim)
            throw LengthMismatch("estimate_box_dimension: ragged point set");
        for (std::size_t c = 0; c < dim; ++c) anchor[c] = std::min(anchor[c], p[c]);
    }

    BoxDimEstimate est;
    est.epsilons = eps_ladder;
    for (double eps : eps_ladder) {
        std::unordered_set<std::string> cells;
        std::string key;
        for (const auto& p : points) {
            key.clear();
            for (std::size_t c = 0; c < dim; ++c) {
                const auto cell =
                    static_cast<std::int64_t>(std::floor((p[c] - anchor[c]) / eps));
                key += std::to_string(cell);
                key += ',';
            }
            cells.insert(key);
        }
        est.counts.push_back(cells.size());
    }

    // Least-squares fit of log N against -log eps.
    const std::size_t s = eps_ladder.size();
    double mean_u = 0.0, mean_v = 0.0;
    std::vector<double> u(s), v(s);
    for (std::size_t i = 0; i < s; ++i) {
        u[i] = -std::log(eps_ladder[i]);
        v[i] = std::log(static_cast<double>(est.counts[i]));
        mean_u += u[i];
        mean_v += v[i];
    }
    mean_u /= s;
    mean_v /= s;
    double suu = 0.0, suv = 0.0, svv = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
        suu += (u[i] - mean_u) * (u[i] - mean_u);
        suv += (u[i] - mean_u) * (v[i] - mean_v);
        svv += (v[i] - mean_v) * (v[i] - mean_v);
    }
    est.slope = suv / suu;
    est.r2 = svv > 0.0 ? (suv * suv) / (suu * svv) : 1.0;
    return est;
}

} // namespace ginv
