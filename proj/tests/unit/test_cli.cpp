// End-to-end checks of the ginv binary: exit codes, report fields, and
// byte-level determinism of file outputs.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "ginv/common.hpp"
#include "ginv/group.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

struct Sandbox {
    fs::path dir;
    Sandbox() {
        dir = fs::temp_directory_path() /
              ("ginv_cli_" + std::to_string(::getpid()) + "_" + std::to_string(seq++));
        fs::create_directories(dir);
    }
    ~Sandbox() { fs::remove_all(dir); }
    std::string file(const std::string& name) const { return (dir / name).string(); }
    static inline int seq = 0;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run(const Sandbox& box, const std::string& args) {
    const std::string out_path = box.file("cmd_out.txt");
    const std::string cmd = std::string(GINV_BIN) + " " + args + " > " + out_path + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    return r;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path);
    out << contents;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("orbits subcommand") {
    Sandbox box;
    const RunResult ok = run(box, "orbits --group '{\"type\":\"cyclic\",\"n\":4}' --omega 2");
    CHECK(ok.exit_code == 0);
    CHECK(contains(ok.out, "kappa_enumerated: 4"));
    CHECK(contains(ok.out, "status: OK"));

    // trivial group built from an empty generator list: n^omega orbits
    const RunResult trivial = run(box,
        "orbits --group '{\"type\":\"generators\",\"n\":3,\"generators\":[]}' --omega 2");
    CHECK(trivial.exit_code == 0);
    CHECK(contains(trivial.out, "kappa_enumerated: 9"));

    const RunResult capped = run(box,
        "--tuple-cap 100 orbits --group '{\"type\":\"cyclic\",\"n\":10}' --omega 3");
    CHECK(capped.exit_code == 2);
    CHECK(contains(capped.out, "error:"));
}

TEST_CASE("jl-dim subcommand") {
    Sandbox box;
    const RunResult ok = run(box, "jl-dim --k 20 --beta 0.05 --epsilon 0.5");
    CHECK(ok.exit_code == 0);
    CHECK(contains(ok.out, "m: 72"));

    const RunResult bad = run(box, "jl-dim --k 20 --beta 0.05 --epsilon 0.3 --delta 0.4");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("dedup subcommand on the rotations fixture") {
    Sandbox box;
    const ginv::FiniteGroup Z8 = ginv::cyclic_group(8);
    std::ostringstream data;
    for (std::uint64_t b = 0; b < 10; ++b) {
        std::vector<double> base(8);
        for (std::size_t i = 0; i < 8; ++i)
            base[i] = ginv::counter_normal(3000 + b, i);
        for (std::size_t r : {0, 2, 4, 6}) {
            const auto rotated = ginv::act_vector(Z8.element(r), base);
            for (std::size_t i = 0; i < 8; ++i)
                data << (i ? " " : "") << rotated[i];
            data << "\n";
        }
    }
    write_file(box.file("points.txt"), data.str());

    const RunResult r = run(box, "dedup --group '{\"type\":\"cyclic\",\"n\":8}' --input " +
                                     box.file("points.txt"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "canonical_classes: 10"));
    CHECK(contains(r.out, "reduction_factor: 4.0"));

    const RunResult js = run(box, "--json dedup --group '{\"type\":\"cyclic\",\"n\":8}' --input " +
                                      box.file("points.txt"));
    CHECK(js.exit_code == 0);
    CHECK(contains(js.out, "\"canonical_classes\": 10"));
}

TEST_CASE("invariant subcommand writes a kappa header") {
    Sandbox box;
    write_file(box.file("v.txt"), "1 0 0 0\n0 1 0 0\n");
    const RunResult r = run(box,
        "invariant --group '{\"type\":\"cyclic\",\"n\":4}' --omega 2 --input " +
        box.file("v.txt"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "# kappa_omega 4"));

    // wrong arity is reported with the row number
    write_file(box.file("bad.txt"), "1 0 0 0\n1 0\n");
    const RunResult bad = run(box,
        "invariant --group '{\"type\":\"cyclic\",\"n\":4}' --omega 2 --input " +
        box.file("bad.txt"));
    CHECK(bad.exit_code == 2);
    CHECK(contains(bad.out, "row 2"));
}

TEST_CASE("embed output is deterministic") {
    Sandbox box;
    write_file(box.file("v.txt"), "1 2 3 4 5 6\n-1 0 1 0 -1 0\n");
    const std::string cmd =
        "embed --group '{\"type\":\"cyclic\",\"n\":6}' --omega 2 --m 4 --seed 9 --input " +
        box.file("v.txt");
    const RunResult a = run(box, cmd);
    const RunResult b = run(box, cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(contains(a.out, "# m 4 seed 9"));
}

TEST_CASE("sketch add and query round trip") {
    Sandbox box;
    const ginv::FiniteGroup Z6 = ginv::cyclic_group(6);
    std::vector<double> base(6);
    for (std::size_t i = 0; i < 6; ++i) base[i] = ginv::counter_normal(777, i);

    std::ostringstream data;
    for (std::size_t i = 0; i < 6; ++i) data << (i ? " " : "") << base[i];
    data << "\n0.5 0.5 0.5 0.25 0.25 0.25\n";
    write_file(box.file("v.txt"), data.str());

    const std::string group = "'{\"type\":\"cyclic\",\"n\":6}'";
    const RunResult add = run(box, "sketch add --group " + group +
                                       " --omega 2 --m 5 --seed 12 --store " +
                                       box.file("s.store") + " --input " + box.file("v.txt"));
    CHECK(add.exit_code == 0);
    CHECK(contains(add.out, "appended: 2"));

    // a rotated copy of a stored vector matches at (numerically) zero radius
    const auto rotated = ginv::act_vector(Z6.element(3), base);
    std::ostringstream qv;
    for (std::size_t i = 0; i < 6; ++i) qv << (i ? "," : "") << rotated[i];
    const RunResult q = run(box, "sketch query --group " + group +
                                     " --omega 2 --store " + box.file("s.store") +
                                     " --radius 1e-9 --vector '" + qv.str() + "'");
    CHECK(q.exit_code == 0);
    CHECK(contains(q.out, "row0"));
    CHECK_FALSE(contains(q.out, "row1"));

    // identical adds into two fresh stores give byte-identical files
    const RunResult add2 = run(box, "sketch add --group " + group +
                                        " --omega 2 --m 5 --seed 12 --store " +
                                        box.file("s2.store") + " --input " + box.file("v.txt"));
    CHECK(add2.exit_code == 0);
    CHECK(slurp(box.file("s.store")) == slurp(box.file("s2.store")));

    // a mismatched pipeline is refused
    const RunResult clash = run(box, "sketch add --group " + group +
                                         " --omega 1 --m 5 --seed 12 --store " +
                                         box.file("s.store") + " --input " + box.file("v.txt"));
    CHECK(clash.exit_code == 2);
}

TEST_CASE("bispectrum roundtrip subcommand") {
    Sandbox box;
    std::ostringstream data;
    for (std::size_t i = 0; i < 16; ++i) data << ginv::counter_normal(51, i) << "\n";
    write_file(box.file("sig.txt"), data.str());

    const RunResult r = run(box, "bispectrum roundtrip --input " + box.file("sig.txt"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "status: OK"));

    // constant signals violate the invertibility condition
    write_file(box.file("const.txt"), "1\n1\n1\n1\n");
    const RunResult bad = run(box, "bispectrum roundtrip --input " + box.file("const.txt"));
    CHECK(bad.exit_code == 2);
}

TEST_CASE("whitney-check subcommand") {
    Sandbox box;
    std::ostringstream data;
    for (std::uint64_t p = 0; p < 8; ++p) {
        for (std::size_t i = 0; i < 8; ++i)
            data << (i ? " " : "") << ginv::counter_normal(6000 + p, i);
        data << "\n";
    }
    write_file(box.file("pts.txt"), data.str());
    const RunResult r = run(box,
        "whitney-check --group '{\"type\":\"cyclic\",\"n\":8}' --omega 2 --m 3 "
        "--trials 200 --seed 4 --input " + box.file("pts.txt"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "status: OK"));
}

TEST_CASE("conc-selftest subcommand") {
    Sandbox box;
    const RunResult r = run(box, "conc-selftest --m 100 --epsilon 0.5 --samples 2000 --seed 3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "status: OK"));
}

TEST_CASE("group, delta, boxdim and jl-check subcommands") {
    Sandbox box;

    const RunResult g = run(box, "group --group '{\"type\":\"sym_subsets\",\"l\":3,\"w\":2}'");
    CHECK(g.exit_code == 0);
    CHECK(contains(g.out, "order: 6"));
    CHECK(contains(g.out, "{1,2}"));

    std::ostringstream pts;
    for (std::uint64_t p = 0; p < 6; ++p) {
        for (std::size_t i = 0; i < 6; ++i)
            pts << (i ? " " : "") << ginv::counter_normal(8800 + p, i);
        pts << "\n";
    }
    write_file(box.file("pts.txt"), pts.str());

    const RunResult d = run(box, "delta --group '{\"type\":\"cyclic\",\"n\":6}' --omega 2 --input " +
                                     box.file("pts.txt"));
    CHECK(d.exit_code == 0);
    CHECK(contains(d.out, "delta:"));
    CHECK(contains(d.out, "discriminable: true"));

    const RunResult jc = run(box,
        "jl-check --group '{\"type\":\"cyclic\",\"n\":6}' --omega 2 --epsilon 0.9 "
        "--m 40 --seeds 5 --budget 1.0 --input " + box.file("pts.txt"));
    CHECK(jc.exit_code == 0);
    CHECK(contains(jc.out, "seeds: 5"));

    std::ostringstream seg;
    for (int i = 0; i < 2000; ++i) seg << i / 2000.0 << " " << i / 2000.0 << "\n";
    write_file(box.file("seg.txt"), seg.str());
    const RunResult b = run(box, "boxdim --input " + box.file("seg.txt") +
                                     " --scales '0.25,0.125,0.0625,0.03125'");
    CHECK(b.exit_code == 0);
    CHECK(contains(b.out, "slope: 1.0"));
}

TEST_CASE("options can come from a config file") {
    Sandbox box;
    write_file(box.file("ginv.ini"),
               "[jl-dim]\nk=20\nbeta=0.05\nepsilon=0.5\n");
    const RunResult r = run(box, "--config " + box.file("ginv.ini") + " jl-dim");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "m: 72"));
}
