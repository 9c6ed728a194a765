#pragma once

#include <cstdint>
#include <iterator>
#include <span>
#include <vector>

#include "ginv/group.hpp"

namespace ginv {

/// Pack a tuple over {0..n-1} into a base-n integer, first component most
/// significant, so numeric order on codes equals lexicographic tuple order.
TupleCode encode_tuple(std::span<const Point> t, std::size_t n);
std::vector<Point> decode_tuple(TupleCode code, std::size_t n, int omega);

/// Partition of the tuple space X^omega into G-orbits. Orbits are numbered
/// in ascending order of their smallest member code, which makes ids stable
/// across runs. Immutable once built.
struct OrbitSet {
    std::size_t n = 0;
    int omega = 0;
    std::vector<std::int32_t> orbit_of;      // dense, indexed by tuple code
    std::vector<std::uint64_t> orbit_sizes;
    std::vector<TupleCode> orbit_reps;       // smallest member per orbit

    std::size_t count() const { return orbit_sizes.size(); }
    std::uint64_t tuple_count() const { return orbit_of.size(); }
};

/// Breadth-first orbit enumeration over X^omega, sweeping generator actions
/// componentwise. Throws TupleSpaceCapExceeded when n^omega > cap.
OrbitSet enumerate_orbits(const FiniteGroup& G, int omega,
                          std::uint64_t cap = Caps{}.tuple_cap);

/// theta[g] = number of points fixed by element g.
struct FixedPointProfile {
    std::vector<std::uint64_t> theta;
};

FixedPointProfile fixed_points(const FiniteGroup& G);

/// Number of G-orbits on X^omega by the Burnside average (1/|G|) sum theta^omega,
/// in exact integer arithmetic. Throws NonIntegerBurnside if the sum is not
/// divisible by |G| — that means the element list is not a group.
std::uint64_t burnside_count(const FiniteGroup& G, int omega);

/// Lazy view over the members of one orbit, in ascending code order.
class OrbitMemberRange {
public:
    class iterator {
    public:
        using value_type = TupleCode;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::forward_iterator_tag;

        iterator() = default;
        iterator(const OrbitSet* os, std::int32_t id, TupleCode pos)
            : os_(os), id_(id), pos_(pos) { skip(); }

        TupleCode operator*() const { return pos_; }
        iterator& operator++() { ++pos_; skip(); return *this; }
        iterator operator++(int) { iterator t = *this; ++*this; return t; }
        bool operator==(const iterator& o) const { return pos_ == o.pos_; }

    private:
        void skip() {
            while (pos_ < os_->orbit_of.size() && os_->orbit_of[pos_] != id_)
                ++pos_;
        }
        const OrbitSet* os_ = nullptr;
        std::int32_t id_ = -1;
        TupleCode pos_ = 0;
    };

    OrbitMemberRange(const OrbitSet& os, std::int32_t id) : os_(&os), id_(id) {}
    iterator begin() const { return iterator(os_, id_, 0); }
    iterator end() const { return iterator(os_, id_, os_->orbit_of.size()); }
    std::uint64_t size() const { return os_->orbit_sizes[id_]; }

private:
    const OrbitSet* os_;
    std::int32_t id_;
};

/// Throws UnknownOrbit for an id outside the partition.
OrbitMemberRange stream_orbit_members(const OrbitSet& orbits, std::int32_t orbit_id);

} // namespace ginv
