#include "ginv/orbits.hpp"

#include <deque>

namespace ginv {

TupleCode encode_tuple(std::span<const Point> t, std::size_t n) {
    TupleCode code = 0;
    for (Point x : t) code = code * n + x;
    return code;
}

std::vector<Point> decode_tuple(TupleCode code, std::size_t n, int omega) {
    std::vector<Point> t(omega);
    for (int j = omega - 1; j >= 0; --j) {
        t[j] = static_cast<Point>(code % n);
        code /= n;
    }
    return t;
}

namespace {

std::uint64_t checked_power(std::size_t n, int omega, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (int i = 0; i < omega; ++i) {
        if (total > cap / n)
            throw TupleSpaceCapExceeded("tuple space n^omega exceeds cap");
        total *= n;
    }
    if (total > cap)
        throw TupleSpaceCapExceeded("tuple space n^omega exceeds cap");
    return total;
}

} // namespace

OrbitSet enumerate_orbits(const FiniteGroup& G, int omega, std::uint64_t cap) {
    if (omega < 1) throw Error("enumerate_orbits: omega must be >= 1");
    const std::size_t n = G.degree();
    const std::uint64_t total = checked_power(n, omega, cap);

    OrbitSet os;
    os.n = n;
    os.omega = omega;
    os.orbit_of.assign(total, -1);

    // Generator images of single points; enough for orbit sweeps.
    const auto& gens = G.generators();

    std::deque<TupleCode> frontier;
    std::vector<Point> tuple(omega), image(omega);

    for (TupleCode seed = 0; seed < total; ++seed) {
        if (os.orbit_of[seed] != -1) continue;
        // Scanning codes in ascending order means `seed` is the smallest
        // member of a fresh orbit.
        const std::int32_t id = static_cast<std::int32_t>(os.orbit_reps.size());
        os.orbit_reps.push_back(seed);
        os.orbit_of[seed] = id;
        std::uint64_t members = 1;

        frontier.clear();
        frontier.push_back(seed);
        while (!frontier.empty()) {
            const TupleCode code = frontier.front();
            frontier.pop_front();
            TupleCode c = code;
            for (int j = omega - 1; j >= 0; --j) {
                tuple[j] = static_cast<Point>(c % n);
                c /= n;
            }
            for (const auto& g : gens) {
                for (int j = 0; j < omega; ++j) image[j] = g.image[tuple[j]];
                const TupleCode next = encode_tuple(image, n);
                if (os.orbit_of[next] == -1) {
                    os.orbit_of[next] = id;
                    ++members;
                    frontier.push_back(next);
                }
            }
        }
        os.orbit_sizes.push_back(members);
    }
    return os;
}

FixedPointProfile fixed_points(const FiniteGroup& G) {
    FixedPointProfile p;
    p.theta.reserve(G.size());
    for (const auto& g : G.elements()) {
        std::uint64_t count = 0;
        for (std::size_t x = 0; x < G.degree(); ++x)
            if (g.image[x] == x) ++count;
        p.theta.push_back(count);
    }
    return p;
}

std::uint64_t burnside_count(const FiniteGroup& G, int omega) {
    if (omega < 1) throw Error("burnside_count: omega must be >= 1");
    const FixedPointProfile p = fixed_points(G);
    unsigned __int128 sum = 0;
    for (std::uint64_t theta : p.theta) {
        unsigned __int128 term = 1;
        for (int i = 0; i < omega; ++i) term *= theta;
        sum += term;
    }
    if (sum % G.size() != 0)
        throw NonIntegerBurnside("burnside_count: fixed-point sum not divisible by group size");
    return static_cast<std::uint64_t>(sum / G.size());
}

OrbitMemberRange stream_orbit_members(const OrbitSet& orbits, std::int32_t orbit_id) {
    if (orbit_id < 0 || static_cast<std::size_t>(orbit_id) >= orbits.count())
        throw UnknownOrbit("stream_orbit_members: no such orbit id");
    return OrbitMemberRange(orbits, orbit_id);
}

} // namespace ginv
