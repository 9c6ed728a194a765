#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ginv/errors.hpp"

namespace ginv {

/// Identity of the sketching pipeline a store was built with. Records from
/// stores with different headers must never be compared.
struct StoreHeader {
    std::string group_hash;   // digest of group spec + omega
    int omega = 1;
    std::size_t kappa = 0;    // invariant dimension
    std::size_t m = 0;        // sketch dimension
    std::uint64_t seed = 0;
};

struct SketchRecord {
    std::string id;              // caller-supplied, no whitespace
    std::vector<double> sketch;  // m reals
};

/// Line-oriented append-only sketch store: one header line, one record per
/// line, floats serialized as shortest round-trip decimals.
struct SketchStore {
    StoreHeader header;
    std::vector<SketchRecord> records;
};

bool store_exists(const std::string& path);

SketchStore load_store(const std::string& path);

/// Append records, creating the store if absent. The whole file is rewritten
/// to a temp sibling and renamed into place; a lock file serializes writers.
/// Throws GroupHashMismatch if an existing store was built under a different
/// pipeline.
void append_records(const std::string& path, const StoreHeader& header,
                    const std::vector<SketchRecord>& records);

struct QueryMatch {
    std::string id;
    double distance = 0.0;
};

/// Linear scan: ids whose sketch lies within `radius` of the query sketch,
/// sorted by distance. Throws EmptyStore when there are no records.
std::vector<QueryMatch> query_store(const SketchStore& store,
                                    const std::vector<double>& query_sketch,
                                    double radius);

} // namespace ginv
