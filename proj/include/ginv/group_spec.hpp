#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ginv/group.hpp"

namespace ginv {

/// Structured description of a group, as accepted on the command line:
///   {"type":"cyclic","n":8}
///   {"type":"sym_subsets","l":5,"w":2}
///   {"type":"generators","n":6,"generators":[[1,2,3,4,5,0]]}
struct GroupSpec {
    enum class Type { Cyclic, SymSubsets, Generators };

    Type type = Type::Cyclic;
    std::size_t n = 1;      // cyclic order / generator degree
    std::size_t l = 1;      // sym_subsets letters
    std::size_t w = 1;      // sym_subsets subset size
    std::vector<std::vector<Point>> generators;

    /// Deterministic serialization used for hashing and display.
    std::string canonical_string() const;
};

/// Parse from JSON text. Throws ParseError on anything malformed.
GroupSpec parse_group_spec(const std::string& json_text);

/// CLI convenience: inline JSON when the argument starts with '{',
/// otherwise the path of a file holding the JSON.
GroupSpec load_group_spec(const std::string& arg);

std::pair<FiniteGroup, GSpaceLabels> build_group(const GroupSpec& spec,
                                                 const Caps& caps = Caps{});

/// FNV-1a digest of the canonical spec string plus omega, as 16 hex chars.
/// Sketches made under different digests are never compared.
std::string group_hash(const GroupSpec& spec, int omega);

} // namespace ginv
