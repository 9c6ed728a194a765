#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ginv/errors.hpp"

namespace ginv {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

/// Strict parse of a full token; throws ParseError on trailing garbage.
double parse_double(const std::string& token);

/// Read a delimiter-separated vector file: one point per row, columns split
/// on spaces, tabs or commas. Blank lines and lines starting with '#' are
/// skipped. Malformed tokens raise ParseError naming the 1-based line.
std::vector<std::vector<double>> read_vectors(const std::string& path);
std::vector<std::vector<double>> read_vectors(std::istream& in,
                                              const std::string& origin = "<stream>");

/// Require every row to have exactly `arity` columns; errors name the line.
void require_arity(const std::vector<std::vector<double>>& rows, std::size_t arity,
                   const std::string& origin);

void write_vectors(std::ostream& out, const std::vector<std::vector<double>>& rows);

/// Atomically replace `path`: write to a sibling temp file, then rename.
void atomic_write(const std::string& path, const std::string& contents);

} // namespace ginv
