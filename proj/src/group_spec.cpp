#include "ginv/group_spec.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ginv {

std::string GroupSpec::canonical_string() const {
    std::ostringstream out;
    switch (type) {
    case Type::Cyclic:
        out << "cyclic(n=" << n << ")";
        break;
    case Type::SymSubsets:
        out << "sym_subsets(l=" << l << ",w=" << w << ")";
        break;
    case Type::Generators:
        out << "generators(n=" << n;
        for (const auto& g : generators) {
            out << ";[";
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (i) out << ",";
                out << g[i];
            }
            out << "]";
        }
        out << ")";
        break;
    }
    return out.str();
}

GroupSpec parse_group_spec(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("group spec is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw ParseError("group spec must be an object with a \"type\" string");

    GroupSpec spec;
    const std::string type = j["type"].get<std::string>();
    try {
        if (type == "cyclic") {
            spec.type = GroupSpec::Type::Cyclic;
            spec.n = j.at("n").get<std::size_t>();
        } else if (type == "sym_subsets") {
            spec.type = GroupSpec::Type::SymSubsets;
            spec.l = j.at("l").get<std::size_t>();
            spec.w = j.at("w").get<std::size_t>();
        } else if (type == "generators") {
            spec.type = GroupSpec::Type::Generators;
            spec.n = j.at("n").get<std::size_t>();
            for (const auto& gen : j.at("generators")) {
                std::vector<Point> image;
                for (const auto& v : gen) image.push_back(v.get<Point>());
                spec.generators.push_back(std::move(image));
            }
        } else {
            throw ParseError("unknown group type '" + type + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("group spec field error: ") + e.what());
    }
    return spec;
}

GroupSpec load_group_spec(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return parse_group_spec(arg);
    std::ifstream in(arg);
    if (!in) throw Error("cannot open group spec file '" + arg + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_group_spec(buf.str());
}

std::pair<FiniteGroup, GSpaceLabels> build_group(const GroupSpec& spec,
                                                 const Caps& caps) {
    switch (spec.type) {
    case GroupSpec::Type::Cyclic: {
        if (spec.n > caps.point_cap)
            throw CapExceeded("cyclic group order exceeds point cap");
        FiniteGroup G = cyclic_group(spec.n);
        GSpaceLabels labels;
        for (std::size_t i = 0; i < spec.n; ++i)
            labels.labels.push_back(std::to_string(i));
        return {std::move(G), std::move(labels)};
    }
    case GroupSpec::Type::SymSubsets:
        return sym_subsets_group(spec.l, spec.w, caps);
    case GroupSpec::Type::Generators: {
        std::vector<Permutation> gens;
        for (const auto& image : spec.generators) {
            if (image.size() != spec.n)
                throw ParseError("generator length differs from n");
            gens.push_back(Permutation{image});
        }
        FiniteGroup G = close_generators(gens, caps.group_cap, spec.n);
        if (G.degree() != spec.n)
            throw ParseError("generator degree differs from n");
        GSpaceLabels labels;
        for (std::size_t i = 0; i < spec.n; ++i)
            labels.labels.push_back(std::to_string(i));
        return {std::move(G), std::move(labels)};
    }
    }
    throw Error("unreachable group spec type");
}

std::string group_hash(const GroupSpec& spec, int omega) {
    const std::string payload = spec.canonical_string() + "|omega=" + std::to_string(omega);
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : payload) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xF];
        h >>= 4;
    }
    return out;
}

} // namespace ginv
