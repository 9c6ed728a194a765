#include "ginv/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace ginv {

std::string format_double(double v) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, result.ptr);
}

double parse_double(const std::string& token) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto result = std::from_chars(first, last, value);
    if (result.ec != std::errc{} || result.ptr != last)
        throw ParseError("not a number: '" + token + "'");
    return value;
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == ',' || c == '\r') {
            if (!cur.empty()) tokens.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

} // namespace

std::vector<std::vector<double>> read_vectors(std::istream& in,
                                              const std::string& origin) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tokens = split_row(line);
        if (tokens.empty() || tokens.front().front() == '#') continue;
        std::vector<double> row;
        row.reserve(tokens.size());
        for (const auto& t : tokens) {
            try {
                row.push_back(parse_double(t));
            } catch (const ParseError& e) {
                throw ParseError(origin + ":" + std::to_string(lineno) + ": " + e.what());
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::vector<double>> read_vectors(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return read_vectors(in, path);
}

void require_arity(const std::vector<std::vector<double>>& rows, std::size_t arity,
                   const std::string& origin) {
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].size() != arity)
            throw ParseError(origin + ": row " + std::to_string(i + 1) + " has " +
                             std::to_string(rows[i].size()) + " columns, expected " +
                             std::to_string(arity));
}

void write_vectors(std::ostream& out, const std::vector<std::vector<double>>& rows) {
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ' ';
            out << format_double(row[c]);
        }
        out << '\n';
    }
}

void atomic_write(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.parent_path() /
                         (target.filename().string() + ".tmp." +
                          std::to_string(::getpid()));
    {
        std::ofstream out(tmp);
        if (!out) throw Error("cannot write '" + tmp.string() + "'");
        out << contents;
        out.flush();
        if (!out) throw Error("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error("rename to '" + path + "' failed: " + ec.message());
    }
}

} // namespace ginv
