#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ginv/common.hpp"
#include "ginv/errors.hpp"

namespace ginv {

/// A permutation of {0..n-1}, stored as its image array: image[x] = g(x).
struct Permutation {
    std::vector<Point> image;

    std::size_t degree() const { return image.size(); }
    Point operator()(Point x) const { return image[x]; }

    bool operator==(const Permutation&) const = default;
    auto operator<=>(const Permutation&) const = default;

    static Permutation identity(std::size_t n);

    /// True iff every index in {0..n-1} appears exactly once.
    bool is_bijection() const;
};

/// Function composition: (g ∘ h)(x) = g(h(x)). With a left action this is
/// the group product g·h.
Permutation compose(const Permutation& g, const Permutation& h);

Permutation inverse(const Permutation& g);

/// Optional human-readable label per point (e.g. "{0,2}" for choice data).
struct GSpaceLabels {
    std::vector<std::string> labels;
};

/// A finite permutation group acting on {0..n-1}. Elements are held
/// explicitly, deduplicated, and sorted lexicographically on their image
/// arrays; everything downstream relies on that ordering for determinism.
/// Immutable after construction.
class FiniteGroup {
public:
    FiniteGroup(std::size_t n, std::vector<Permutation> elements,
                std::vector<Permutation> generators);

    std::size_t degree() const { return n_; }
    std::size_t size() const { return elements_.size(); }
    const std::vector<Permutation>& elements() const { return elements_; }
    const Permutation& element(std::size_t i) const { return elements_[i]; }
    const std::vector<Permutation>& generators() const { return generators_; }
    std::size_t identity_index() const { return identity_index_; }

    /// Position of g in the sorted element list; throws Error if absent.
    std::size_t index_of(const Permutation& g) const;

    /// Index of element(i)·element(j), i.e. compose(element(i), element(j)).
    std::size_t compose_index(std::size_t i, std::size_t j) const;
    std::size_t inverse_index(std::size_t i) const;

private:
    std::size_t n_;
    std::vector<Permutation> elements_;   // sorted, deduplicated
    std::vector<Permutation> generators_;
    std::size_t identity_index_;
};

/// Breadth-first closure of `generators` under composition.
/// Throws ClosureCapExceeded if the group would exceed `cap` elements,
/// NotABijection if a generator is malformed. Empty input yields the
/// trivial group on n points (n taken as 1 if there is no generator).
FiniteGroup close_generators(const std::vector<Permutation>& generators,
                             std::uint64_t cap,
                             std::size_t n_if_empty = 1);

/// Cyclic group of order n acting on {0..n-1} by rotation i -> i+1 mod n.
FiniteGroup cyclic_group(std::size_t n);

/// Sym_l acting on the C(l, w) size-w subsets of {0..l-1}. Each subset is a
/// point, labeled like "{0,2}". Subsets are numbered in lexicographic order.
std::pair<FiniteGroup, GSpaceLabels>
sym_subsets_group(std::size_t l, std::size_t w, const Caps& caps = Caps{});

/// Left action on data vectors: out[g(x)] = a[x].
std::vector<double> act_vector(const Permutation& g, std::span<const double> a);

/// Componentwise action on tuples of point indices.
std::vector<Point> act_tuple(const Permutation& g, std::span<const Point> t);

/// The group acting on itself by left multiplication: one point per element
/// of G (in G's element order), labeled by the element's image array.
std::pair<FiniteGroup, GSpaceLabels>
regular_space(const FiniteGroup& G, const Caps& caps = Caps{});

/// Subgroup of elements fixing x1. |G| = |stabilizer| * |orbit of x1|.
FiniteGroup stabilizer(const FiniteGroup& G, Point x1);

/// One representative t_j per point x_j with t_j(x1) = x_j, each the
/// lexicographically smallest qualifying element. Throws NotTransitive if
/// some point is unreachable from x1.
std::vector<Permutation> coset_reps(const FiniteGroup& G, Point x1);

} // namespace ginv
