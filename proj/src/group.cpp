#include "ginv/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace ginv {

Permutation Permutation::identity(std::size_t n) {
    Permutation e;
    e.image.resize(n);
    for (std::size_t i = 0; i < n; ++i) e.image[i] = static_cast<Point>(i);
    return e;
}

bool Permutation::is_bijection() const {
    std::vector<bool> seen(image.size(), false);
    for (Point y : image) {
        if (y >= image.size() || seen[y]) return false;
        seen[y] = true;
    }
    return true;
}

Permutation compose(const Permutation& g, const Permutation& h) {
    if (g.degree() != h.degree())
        throw LengthMismatch("compose: permutation degrees differ");
    Permutation r;
    r.image.resize(g.degree());
    for (std::size_t x = 0; x < g.degree(); ++x)
        r.image[x] = g.image[h.image[x]];
    return r;
}

Permutation inverse(const Permutation& g) {
    Permutation r;
    r.image.resize(g.degree());
    for (std::size_t x = 0; x < g.degree(); ++x)
        r.image[g.image[x]] = static_cast<Point>(x);
    return r;
}

FiniteGroup::FiniteGroup(std::size_t n, std::vector<Permutation> elements,
                         std::vector<Permutation> generators)
    : n_(n), elements_(std::move(elements)), generators_(std::move(generators)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()),
                    elements_.end());
    identity_index_ = index_of(Permutation::identity(n_));
}

std::size_t FiniteGroup::index_of(const Permutation& g) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), g);
    if (it == elements_.end() || !(*it == g))
        throw Error("element not in group");
    return static_cast<std::size_t>(it - elements_.begin());
}

std::size_t FiniteGroup::compose_index(std::size_t i, std::size_t j) const {
    return index_of(compose(elements_[i], elements_[j]));
}

std::size_t FiniteGroup::inverse_index(std::size_t i) const {
    return index_of(inverse(elements_[i]));
}

FiniteGroup close_generators(const std::vector<Permutation>& generators,
                             std::uint64_t cap, std::size_t n_if_empty) {
    if (cap < 1) throw ClosureCapExceeded("closure cap must be >= 1");
    if (generators.empty()) {
        std::vector<Permutation> elems{Permutation::identity(n_if_empty)};
        return FiniteGroup(n_if_empty, elems, {});
    }

    const std::size_t n = generators.front().degree();
    for (const auto& g : generators) {
        if (g.degree() != n)
            throw LengthMismatch("close_generators: generators act on different point counts");
        if (!g.is_bijection())
            throw NotABijection("close_generators: generator is not a bijection");
    }

    std::set<Permutation> seen;
    std::deque<Permutation> todo;
    Permutation e = Permutation::identity(n);
    seen.insert(e);
    todo.push_back(e);

    while (!todo.empty()) {
        Permutation current = std::move(todo.front());
        todo.pop_front();
        for (const auto& gen : generators) {
            Permutation next = compose(gen, current);
            if (seen.insert(next).second) {
                if (seen.size() > cap)
                    throw ClosureCapExceeded("close_generators: group size exceeds cap");
                todo.push_back(std::move(next));
            }
        }
    }

    std::vector<Permutation> elems(seen.begin(), seen.end());
    return FiniteGroup(n, std::move(elems), generators);
}

FiniteGroup cyclic_group(std::size_t n) {
    if (n < 1) throw Error("cyclic_group: n must be >= 1");
    std::vector<Permutation> elems;
    elems.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        Permutation g;
        g.image.resize(n);
        for (std::size_t x = 0; x < n; ++x)
            g.image[x] = static_cast<Point>((x + k) % n);
        elems.push_back(std::move(g));
    }
    std::vector<Permutation> gens;
    if (n > 1) gens.push_back(elems[1]);
    return FiniteGroup(n, std::move(elems), std::move(gens));
}

namespace {

std::uint64_t binomial(std::uint64_t l, std::uint64_t w) {
    if (w > l) return 0;
    w = std::min(w, l - w);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= w; ++i)
        r = r * (l - w + i) / i;
    return r;
}

std::string subset_label(const std::vector<Point>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    out += "}";
    return out;
}

} // namespace

std::pair<FiniteGroup, GSpaceLabels>
sym_subsets_group(std::size_t l, std::size_t w, const Caps& caps) {
    if (l < 1 || w < 1 || w > l)
        throw Error("sym_subsets_group: need 1 <= w <= l");

    std::uint64_t factorial = 1;
    for (std::size_t i = 2; i <= l; ++i) {
        factorial *= i;
        if (factorial > caps.group_cap)
            throw CapExceeded("sym_subsets_group: l! exceeds group cap");
    }
    const std::uint64_t n = binomial(l, w);
    if (n > caps.point_cap)
        throw CapExceeded("sym_subsets_group: C(l,w) exceeds point cap");

    // Enumerate subsets in lexicographic order; their rank is the point id.
    std::vector<std::vector<Point>> subsets;
    std::vector<Point> cur(w);
    for (std::size_t i = 0; i < w; ++i) cur[i] = static_cast<Point>(i);
    while (true) {
        subsets.push_back(cur);
        // next combination
        std::size_t i = w;
        while (i > 0 && cur[i - 1] == static_cast<Point>(l - w + i - 1)) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < w; ++j) cur[j] = cur[j - 1] + 1;
    }

    std::map<std::vector<Point>, Point> rank;
    for (std::size_t i = 0; i < subsets.size(); ++i)
        rank[subsets[i]] = static_cast<Point>(i);

    // Walk all l! letter permutations in lexicographic order and record the
    // induced permutation of subset points.
    std::vector<Point> letters(l);
    for (std::size_t i = 0; i < l; ++i) letters[i] = static_cast<Point>(i);

    std::vector<Permutation> induced;
    induced.reserve(factorial);
    do {
        Permutation p;
        p.image.resize(subsets.size());
        for (std::size_t s = 0; s < subsets.size(); ++s) {
            std::vector<Point> img(w);
            for (std::size_t j = 0; j < w; ++j) img[j] = letters[subsets[s][j]];
            std::sort(img.begin(), img.end());
            p.image[s] = rank.at(img);
        }
        induced.push_back(std::move(p));
    } while (std::next_permutation(letters.begin(), letters.end()));

    GSpaceLabels labels;
    labels.labels.reserve(subsets.size());
    for (const auto& s : subsets) labels.labels.push_back(subset_label(s));

    // Generators: induced images of a transposition and an l-cycle.
    std::vector<Permutation> gens;
    if (l >= 2) {
        auto induce = [&](const Permutation& sigma) {
            Permutation p;
            p.image.resize(subsets.size());
            for (std::size_t s = 0; s < subsets.size(); ++s) {
                std::vector<Point> img(w);
                for (std::size_t j = 0; j < w; ++j)
                    img[j] = sigma.image[subsets[s][j]];
                std::sort(img.begin(), img.end());
                p.image[s] = rank.at(img);
            }
            return p;
        };
        Permutation swap01 = Permutation::identity(l);
        std::swap(swap01.image[0], swap01.image[1]);
        Permutation cyc;
        cyc.image.resize(l);
        for (std::size_t i = 0; i < l; ++i)
            cyc.image[i] = static_cast<Point>((i + 1) % l);
        gens.push_back(induce(swap01));
        if (l >= 3) gens.push_back(induce(cyc));
    }

    return {FiniteGroup(subsets.size(), std::move(induced), std::move(gens)),
            std::move(labels)};
}

std::vector<double> act_vector(const Permutation& g, std::span<const double> a) {
    if (g.degree() != a.size())
        throw LengthMismatch("act_vector: vector length differs from point count");
    std::vector<double> out(a.size());
    for (std::size_t x = 0; x < a.size(); ++x)
        out[g.image[x]] = a[x];
    return out;
}

std::vector<Point> act_tuple(const Permutation& g, std::span<const Point> t) {
    std::vector<Point> out(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) {
        if (t[j] >= g.degree())
            throw IndexOutOfRange("act_tuple: tuple component out of range");
        out[j] = g.image[t[j]];
    }
    return out;
}

std::pair<FiniteGroup, GSpaceLabels>
regular_space(const FiniteGroup& G, const Caps& caps) {
    if (G.size() > caps.point_cap)
        throw CapExceeded("regular_space: group size exceeds point cap");
    const std::size_t m = G.size();

    auto induce = [&](std::size_t gi) {
        Permutation p;
        p.image.resize(m);
        for (std::size_t j = 0; j < m; ++j)
            p.image[j] = static_cast<Point>(G.compose_index(gi, j));
        return p;
    };

    std::vector<Permutation> elems;
    elems.reserve(m);
    for (std::size_t gi = 0; gi < m; ++gi) elems.push_back(induce(gi));

    std::vector<Permutation> gens;
    for (const auto& g : G.generators()) gens.push_back(induce(G.index_of(g)));

    GSpaceLabels labels;
    labels.labels.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        const auto& img = G.element(j).image;
        std::string s = "(";
        for (std::size_t i = 0; i < img.size(); ++i) {
            if (i) s += " ";
            s += std::to_string(img[i]);
        }
        s += ")";
        labels.labels.push_back(std::move(s));
    }

    return {FiniteGroup(m, std::move(elems), std::move(gens)), std::move(labels)};
}

FiniteGroup stabilizer(const FiniteGroup& G, Point x1) {
    if (x1 >= G.degree())
        throw IndexOutOfRange("stabilizer: point out of range");
    std::vector<Permutation> elems;
    for (const auto& g : G.elements())
        if (g.image[x1] == x1) elems.push_back(g);
    std::vector<Permutation> gens;
    const Permutation e = Permutation::identity(G.degree());
    for (const auto& g : elems)
        if (!(g == e)) gens.push_back(g);
    return FiniteGroup(G.degree(), std::move(elems), std::move(gens));
}

std::vector<Permutation> coset_reps(const FiniteGroup& G, Point x1) {
    if (x1 >= G.degree())
        throw IndexOutOfRange("coset_reps: point out of range");
    std::vector<Permutation> reps(G.degree());
    std::vector<bool> found(G.degree(), false);
    // Elements are sorted, so the first hit per target point is the
    // lexicographic minimum of its coset.
    for (const auto& g : G.elements()) {
        const Point target = g.image[x1];
        if (!found[target]) {
            reps[target] = g;
            found[target] = true;
        }
    }
    for (std::size_t j = 0; j < G.degree(); ++j)
        if (!found[j])
            throw NotTransitive("coset_reps: point " + std::to_string(j) +
                                " is not reachable from the base point");
    return reps;
}

} // namespace ginv
