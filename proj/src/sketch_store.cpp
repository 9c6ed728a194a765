#include "ginv/sketch_store.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fcntl.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "ginv/io.hpp"

namespace ginv {

namespace {

constexpr const char* kMagic = "#ginv-sketch-store v1";

// Advisory single-writer lock: exclusive-create a sibling lock file.
class StoreLock {
public:
    explicit StoreLock(const std::string& store_path)
        : path_(store_path + ".lock") {
        fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
        if (fd_ < 0)
            throw Error("store '" + store_path +
                        "' is locked by another writer (remove " + path_ +
                        " if stale)");
    }
    ~StoreLock() {
        if (fd_ >= 0) {
            ::close(fd_);
            ::unlink(path_.c_str());
        }
    }
    StoreLock(const StoreLock&) = delete;
    StoreLock& operator=(const StoreLock&) = delete;

private:
    std::string path_;
    int fd_ = -1;
};

std::string header_line(const StoreHeader& h) {
    std::ostringstream out;
    out << kMagic << " group_hash=" << h.group_hash << " omega=" << h.omega
        << " kappa=" << h.kappa << " m=" << h.m << " seed=" << h.seed;
    return out.str();
}

StoreHeader parse_header(const std::string& line, const std::string& path) {
    std::istringstream in(line);
    std::string magic1, magic2;
    in >> magic1 >> magic2;
    if (magic1 + " " + magic2 != kMagic)
        throw ParseError(path + ": not a sketch store (bad magic)");
    StoreHeader h;
    std::string field;
    while (in >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos)
            throw ParseError(path + ": malformed header field '" + field + "'");
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        if (key == "group_hash") h.group_hash = value;
        else if (key == "omega") h.omega = std::stoi(value);
        else if (key == "kappa") h.kappa = std::stoul(value);
        else if (key == "m") h.m = std::stoul(value);
        else if (key == "seed") h.seed = std::stoull(value);
        else throw ParseError(path + ": unknown header field '" + key + "'");
    }
    return h;
}

std::string render(const SketchStore& store) {
    std::ostringstream out;
    out << header_line(store.header) << '\n';
    for (const auto& rec : store.records) {
        out << rec.id;
        for (double v : rec.sketch) out << ' ' << format_double(v);
        out << '\n';
    }
    return out.str();
}

} // namespace

bool store_exists(const std::string& path) {
    return std::filesystem::exists(path);
}

SketchStore load_store(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open store '" + path + "'");
    SketchStore store;
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(path + ": empty store file");
    store.header = parse_header(line, path);

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        SketchRecord rec;
        row >> rec.id;
        std::string token;
        while (row >> token) {
            try {
                rec.sketch.push_back(parse_double(token));
            } catch (const ParseError& e) {
                throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
            }
        }
        if (rec.sketch.size() != store.header.m)
            throw ParseError(path + ":" + std::to_string(lineno) + ": record has " +
                             std::to_string(rec.sketch.size()) +
                             " sketch values, header says m=" +
                             std::to_string(store.header.m));
        store.records.push_back(std::move(rec));
    }
    return store;
}

void append_records(const std::string& path, const StoreHeader& header,
                    const std::vector<SketchRecord>& records) {
    for (const auto& rec : records) {
        if (rec.id.empty() ||
            rec.id.find_first_of(" \t\r\n") != std::string::npos)
            throw Error("record id '" + rec.id + "' is empty or contains whitespace");
        if (rec.sketch.size() != header.m)
            throw Error("record '" + rec.id + "' sketch length differs from m");
    }

    StoreLock lock(path);
    SketchStore store;
    if (store_exists(path)) {
        store = load_store(path);
        if (store.header.group_hash != header.group_hash)
            throw GroupHashMismatch("store '" + path + "' was built for group hash " +
                                    store.header.group_hash + ", not " +
                                    header.group_hash);
        if (store.header.omega != header.omega || store.header.kappa != header.kappa ||
            store.header.m != header.m || store.header.seed != header.seed)
            throw GroupHashMismatch("store '" + path +
                                    "' pipeline parameters differ from the request");
    } else {
        store.header = header;
    }
    store.records.insert(store.records.end(), records.begin(), records.end());
    atomic_write(path, render(store));
}

std::vector<QueryMatch> query_store(const SketchStore& store,
                                    const std::vector<double>& query_sketch,
                                    double radius) {
    if (store.records.empty())
        throw EmptyStore("query: store holds no records");
    if (query_sketch.size() != store.header.m)
        throw Error("query sketch length differs from store m");

    std::vector<QueryMatch> matches;
    for (const auto& rec : store.records) {
        double d = 0.0;
        for (std::size_t i = 0; i < query_sketch.size(); ++i) {
            const double diff = rec.sketch[i] - query_sketch[i];
            d += diff * diff;
        }
        d = std::sqrt(d);
        if (d <= radius) matches.push_back({rec.id, d});
    }
    std::sort(matches.begin(), matches.end(),
              [](const QueryMatch& a, const QueryMatch& b) {
                  return a.distance < b.distance ||
                         (a.distance == b.distance && a.id < b.id);
              });
    return matches;
}

} // namespace ginv
