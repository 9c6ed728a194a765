// ginv — group-invariant embeddings, duplicate detection and sketch store.

#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ginv/discrim.hpp"
#include "ginv/embed.hpp"
#include "ginv/group_spec.hpp"
#include "ginv/io.hpp"
#include "ginv/sketch_store.hpp"
#include "ginv/spectral.hpp"

using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInputError = 2;

struct Pipeline {
    ginv::GroupSpec spec;
    ginv::FiniteGroup group;
    ginv::GSpaceLabels labels;
};

Pipeline make_pipeline(const std::string& group_arg, const ginv::Caps& caps) {
    ginv::GroupSpec spec = ginv::load_group_spec(group_arg);
    auto built = ginv::build_group(spec, caps);
    return {std::move(spec), std::move(built.first), std::move(built.second)};
}

void emit(const Json& report, bool as_json) {
    if (as_json) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    for (const auto& [key, value] : report.items()) {
        if (value.is_string())
            std::cout << key << ": " << value.get<std::string>() << "\n";
        else
            std::cout << key << ": " << value.dump() << "\n";
    }
}

std::vector<double> parse_inline_vector(const std::string& text) {
    std::vector<double> out;
    std::string token;
    for (char c : text) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!token.empty()) out.push_back(ginv::parse_double(token));
            token.clear();
        } else {
            token += c;
        }
    }
    if (!token.empty()) out.push_back(ginv::parse_double(token));
    return out;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw ginv::Error("cannot write '" + path + "'");
    return file;
}

// Resolve --m: a number, or "auto" = measure delta on the canonical classes
// of the dataset and size m by the dimension bound.
std::size_t resolve_m(const std::string& m_arg, double epsilon, double beta,
                      const std::vector<std::vector<double>>& points,
                      const ginv::FiniteGroup& G, const ginv::InvariantMap& inv,
                      Json* diag) {
    if (m_arg != "auto") {
        const long parsed = std::stol(m_arg);
        if (parsed < 1) throw ginv::Error("--m must be >= 1 or 'auto'");
        return static_cast<std::size_t>(parsed);
    }
    const ginv::CanonicalSet canon = ginv::reduce_dataset(points, G);
    if (canon.size() < 2)
        throw ginv::Error("auto m needs at least two canonical classes");
    const ginv::DeltaReport delta = ginv::compute_delta(canon, inv);
    if (delta.delta >= epsilon)
        throw ginv::EpsilonNotAboveDelta(
            "auto m: measured delta " + ginv::format_double(delta.delta) +
            " is not below epsilon " + ginv::format_double(epsilon));
    const std::size_t m = ginv::jl_dimension(
        {canon.size(), beta, epsilon, delta.delta});
    if (diag) {
        (*diag)["canonical_points"] = canon.size();
        (*diag)["measured_delta"] = delta.delta;
        (*diag)["auto_m"] = m;
    }
    return m;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ginv: two-step group-invariant embeddings for non-sequential data"};
    app.require_subcommand(1);

    bool as_json = false;
    app.add_flag("--json", as_json, "emit reports as JSON");
    app.set_config("--config", "", "read options from a TOML/INI config file");

    ginv::Caps caps;
    app.add_option("--group-cap", caps.group_cap, "max group size");
    app.add_option("--point-cap", caps.point_cap, "max point-set size");
    app.add_option("--tuple-cap", caps.tuple_cap, "max tuple-space size n^omega");

    int rc = kExitOk;

    // ---- group ------------------------------------------------------------
    std::string g_group;
    auto* cmd_group = app.add_subcommand("group", "inspect a group spec");
    cmd_group->add_option("--group", g_group, "group spec (inline JSON or file)")->required();
    cmd_group->callback([&] {
        Pipeline p = make_pipeline(g_group, caps);
        Json report;
        report["spec"] = p.spec.canonical_string();
        report["points"] = p.group.degree();
        report["order"] = p.group.size();
        report["generators"] = p.group.generators().size();
        report["labels"] = p.labels.labels;
        emit(report, as_json);
    });

    // ---- orbits -----------------------------------------------------------
    std::string o_group;
    int o_omega = 1;
    auto* cmd_orbits = app.add_subcommand("orbits", "enumerate tuple-space orbits and cross-check the count");
    cmd_orbits->add_option("--group", o_group)->required();
    cmd_orbits->add_option("--omega", o_omega, "tensor power")->required();
    cmd_orbits->callback([&] {
        Pipeline p = make_pipeline(o_group, caps);
        const ginv::OrbitSet orbits = ginv::enumerate_orbits(p.group, o_omega, caps.tuple_cap);
        const std::uint64_t expected = ginv::burnside_count(p.group, o_omega);
        const bool ok = orbits.count() == expected;

        Json table = Json::array();
        for (std::size_t i = 0; i < orbits.count(); ++i) {
            Json row;
            row["id"] = i;
            row["size"] = orbits.orbit_sizes[i];
            row["rep"] = ginv::decode_tuple(orbits.orbit_reps[i], orbits.n, o_omega);
            table.push_back(std::move(row));
        }
        Json report;
        report["omega"] = o_omega;
        report["kappa_enumerated"] = orbits.count();
        report["kappa_burnside"] = expected;
        report["status"] = ok ? "OK" : "MISMATCH";
        report["orbits"] = std::move(table);
        emit(report, as_json);
        if (!ok) rc = kExitVerifyFail;
    });

    // ---- invariant ----------------------------------------------------------
    std::string i_group, i_input, i_output;
    int i_omega = 1;
    auto* cmd_inv = app.add_subcommand("invariant", "apply the orbit-sum invariant to data rows");
    cmd_inv->add_option("--group", i_group)->required();
    cmd_inv->add_option("--omega", i_omega)->required();
    cmd_inv->add_option("--input,-i", i_input, "vector file, one point per row")->required();
    cmd_inv->add_option("--output,-o", i_output, "output file (default stdout)");
    cmd_inv->callback([&] {
        Pipeline p = make_pipeline(i_group, caps);
        auto rows = ginv::read_vectors(i_input);
        ginv::require_arity(rows, p.group.degree(), i_input);
        const ginv::InvariantMap inv = ginv::make_invariant(p.group, i_omega, caps.tuple_cap);

        std::vector<std::vector<double>> out_rows;
        out_rows.reserve(rows.size());
        for (const auto& row : rows)
            out_rows.push_back(ginv::apply_invariant(inv, row));

        std::ofstream file;
        std::ostream& out = open_output(file, i_output);
        out << "# kappa_omega " << inv.output_dim() << "\n";
        ginv::write_vectors(out, out_rows);
    });

    // ---- embed --------------------------------------------------------------
    std::string e_group, e_input, e_output, e_m = "auto";
    int e_omega = 1;
    std::uint64_t e_seed = 0;
    double e_epsilon = 0.5, e_beta = 0.05;
    auto* cmd_embed = app.add_subcommand("embed", "two-step embedding: invariant then random projection");
    cmd_embed->add_option("--group", e_group)->required();
    cmd_embed->add_option("--omega", e_omega)->required();
    cmd_embed->add_option("--input,-i", e_input)->required();
    cmd_embed->add_option("--output,-o", e_output);
    cmd_embed->add_option("--m", e_m, "sketch dimension, or 'auto'");
    cmd_embed->add_option("--seed", e_seed, "projection seed");
    cmd_embed->add_option("--epsilon", e_epsilon, "distortion budget for auto m");
    cmd_embed->add_option("--beta", e_beta, "failure probability for auto m");
    cmd_embed->callback([&] {
        Pipeline p = make_pipeline(e_group, caps);
        auto rows = ginv::read_vectors(e_input);
        ginv::require_arity(rows, p.group.degree(), e_input);
        const ginv::InvariantMap inv = ginv::make_invariant(p.group, e_omega, caps.tuple_cap);
        const std::size_t m = resolve_m(e_m, e_epsilon, e_beta, rows, p.group, inv, nullptr);
        const ginv::GaussianMap map = ginv::sample_map(m, inv.output_dim(), e_seed);

        std::vector<std::vector<double>> out_rows;
        out_rows.reserve(rows.size());
        for (const auto& row : rows)
            out_rows.push_back(ginv::embed_point(map, inv, row));

        std::ofstream file;
        std::ostream& out = open_output(file, e_output);
        out << "# m " << m << " seed " << e_seed << "\n";
        ginv::write_vectors(out, out_rows);
    });

    // ---- jl-dim -------------------------------------------------------------
    std::size_t j_k = 0;
    double j_beta = 0.05, j_epsilon = 0.5, j_delta = 0.0;
    auto* cmd_jldim = app.add_subcommand("jl-dim", "embedding dimension from the isometry bound");
    cmd_jldim->add_option("--k", j_k, "number of canonical points")->required();
    cmd_jldim->add_option("--beta", j_beta)->required();
    cmd_jldim->add_option("--epsilon", j_epsilon)->required();
    cmd_jldim->add_option("--delta", j_delta, "discriminability constant (default 0)");
    cmd_jldim->callback([&] {
        const std::size_t m = ginv::jl_dimension({j_k, j_beta, j_epsilon, j_delta});
        Json report;
        report["k"] = j_k;
        report["beta"] = j_beta;
        report["epsilon"] = j_epsilon;
        report["delta"] = j_delta;
        report["m"] = m;
        emit(report, as_json);
    });

    // ---- delta --------------------------------------------------------------
    std::string d_group, d_input;
    int d_omega = 1;
    bool d_pairs = false;
    auto* cmd_delta = app.add_subcommand("delta", "worst kernel fraction over canonical pairs");
    cmd_delta->add_option("--group", d_group)->required();
    cmd_delta->add_option("--omega", d_omega)->required();
    cmd_delta->add_option("--input,-i", d_input)->required();
    cmd_delta->add_flag("--pairs", d_pairs, "include the full per-pair table");
    cmd_delta->callback([&] {
        Pipeline p = make_pipeline(d_group, caps);
        auto rows = ginv::read_vectors(d_input);
        ginv::require_arity(rows, p.group.degree(), d_input);
        const ginv::InvariantMap inv = ginv::make_invariant(p.group, d_omega, caps.tuple_cap);
        const ginv::CanonicalSet canon = ginv::reduce_dataset(rows, p.group);
        const ginv::DeltaReport delta = ginv::compute_delta(canon, inv, d_pairs);

        Json report;
        report["points"] = rows.size();
        report["canonical_points"] = canon.size();
        report["delta"] = delta.delta;
        report["argmax_pair"] = {delta.argmax_pair.first, delta.argmax_pair.second};
        report["discriminable"] = delta.delta < 1.0;
        if (d_pairs) {
            Json pairs = Json::array();
            for (const auto& pd : delta.per_pair)
                pairs.push_back({{"i", pd.i}, {"j", pd.j}, {"delta", pd.delta_fraction}});
            report["pairs"] = std::move(pairs);
        }
        emit(report, as_json);
    });

    // ---- dedup --------------------------------------------------------------
    std::string dd_group, dd_input;
    auto* cmd_dedup = app.add_subcommand("dedup", "exact duplicate detection under group equivalence");
    cmd_dedup->add_option("--group", dd_group)->required();
    cmd_dedup->add_option("--input,-i", dd_input)->required();
    cmd_dedup->callback([&] {
        Pipeline p = make_pipeline(dd_group, caps);
        auto rows = ginv::read_vectors(dd_input);
        ginv::require_arity(rows, p.group.degree(), dd_input);
        const ginv::CanonicalSet canon = ginv::reduce_dataset(rows, p.group);

        Json report;
        report["points"] = rows.size();
        report["canonical_classes"] = canon.size();
        report["reduction_factor"] = static_cast<double>(rows.size()) /
                                     static_cast<double>(canon.size());
        report["group_order"] = p.group.size();
        report["class_sizes"] = canon.class_sizes;
        report["fixed_flags"] = canon.fixed_flags;
        emit(report, as_json);
    });

    // ---- boxdim -------------------------------------------------------------
    std::string b_input, b_scales;
    auto* cmd_boxdim = app.add_subcommand("boxdim", "box-counting dimension estimate");
    cmd_boxdim->add_option("--input,-i", b_input)->required();
    cmd_boxdim->add_option("--scales", b_scales, "comma-separated decreasing grid scales")->required();
    cmd_boxdim->callback([&] {
        auto rows = ginv::read_vectors(b_input);
        const std::vector<double> ladder = parse_inline_vector(b_scales);
        const ginv::BoxDimEstimate est = ginv::estimate_box_dimension(rows, ladder);
        Json report;
        report["scales"] = est.epsilons;
        report["counts"] = est.counts;
        report["slope"] = est.slope;
        report["r2"] = est.r2;
        emit(report, as_json);
    });

    // ---- whitney-check --------------------------------------------------------
    std::string w_group, w_input;
    int w_omega = 1;
    std::size_t w_m = 3, w_trials = 1000;
    std::uint64_t w_seed = 0;
    double w_min_fraction = 0.99;
    auto* cmd_whitney = app.add_subcommand("whitney-check", "Monte-Carlo injectivity of random embeddings");
    cmd_whitney->add_option("--group", w_group)->required();
    cmd_whitney->add_option("--omega", w_omega)->required();
    cmd_whitney->add_option("--input,-i", w_input)->required();
    cmd_whitney->add_option("--m", w_m)->required();
    cmd_whitney->add_option("--trials", w_trials);
    cmd_whitney->add_option("--seed", w_seed);
    cmd_whitney->add_option("--min-fraction", w_min_fraction, "required injective fraction");
    cmd_whitney->callback([&] {
        Pipeline p = make_pipeline(w_group, caps);
        auto rows = ginv::read_vectors(w_input);
        ginv::require_arity(rows, p.group.degree(), w_input);
        const ginv::InvariantMap inv = ginv::make_invariant(p.group, w_omega, caps.tuple_cap);
        const ginv::WhitneyReport rep =
            ginv::check_whitney_injectivity(rows, inv, w_m, w_trials, w_seed);
        const double fraction =
            static_cast<double>(rep.injective_trials) / static_cast<double>(rep.trials);

        Json report;
        report["points"] = rows.size();
        report["m"] = w_m;
        report["trials"] = rep.trials;
        report["injective_trials"] = rep.injective_trials;
        report["injective_fraction"] = fraction;
        report["min_pair_gap"] = rep.min_pair_gap;
        report["status"] = fraction >= w_min_fraction ? "OK" : "FAIL";
        emit(report, as_json);
        if (fraction < w_min_fraction) rc = kExitVerifyFail;
    });

    // ---- jl-check ---------------------------------------------------------
    std::string jc_group, jc_input, jc_m = "auto";
    int jc_omega = 1;
    std::size_t jc_seeds = 1;
    std::uint64_t jc_seed = 0;
    double jc_epsilon = 0.5, jc_beta = 0.05, jc_budget = -1.0;
    auto* cmd_jlcheck = app.add_subcommand("jl-check", "empirical pairwise isometry of the two-step embedding");
    cmd_jlcheck->add_option("--group", jc_group)->required();
    cmd_jlcheck->add_option("--omega", jc_omega)->required();
    cmd_jlcheck->add_option("--input,-i", jc_input)->required();
    cmd_jlcheck->add_option("--epsilon", jc_epsilon)->required();
    cmd_jlcheck->add_option("--beta", jc_beta);
    cmd_jlcheck->add_option("--m", jc_m, "sketch dimension, or 'auto'");
    cmd_jlcheck->add_option("--seed", jc_seed);
    cmd_jlcheck->add_option("--seeds", jc_seeds, "number of independent maps to try");
    cmd_jlcheck->add_option("--budget", jc_budget, "max allowed fraction of failing seeds (default 2*beta)");
    cmd_jlcheck->callback([&] {
        Pipeline p = make_pipeline(jc_group, caps);
        auto rows = ginv::read_vectors(jc_input);
        ginv::require_arity(rows, p.group.degree(), jc_input);
        const ginv::InvariantMap inv = ginv::make_invariant(p.group, jc_omega, caps.tuple_cap);
        const ginv::CanonicalSet canon = ginv::reduce_dataset(rows, p.group);

        Json diag;
        const std::size_t m =
            resolve_m(jc_m, jc_epsilon, jc_beta, rows, p.group, inv, &diag);

        std::size_t failing_seeds = 0;
        double worst = 1.0;
        std::size_t pairs = 0;
        for (std::size_t s = 0; s < jc_seeds; ++s) {
            const ginv::GaussianMap map =
                ginv::sample_map(m, inv.output_dim(), ginv::derive_seed(jc_seed, s));
            const ginv::IsometryReport rep =
                ginv::verify_isometry(canon.reps, inv, map, jc_epsilon);
            pairs = rep.pairs_checked;
            if (!rep.violations.empty()) ++failing_seeds;
            if (std::abs(rep.worst_ratio - 1.0) > std::abs(worst - 1.0))
                worst = rep.worst_ratio;
        }
        const double budget = jc_budget >= 0.0 ? jc_budget : 2.0 * jc_beta;
        const double fraction =
            static_cast<double>(failing_seeds) / static_cast<double>(jc_seeds);

        Json report = diag;
        report["canonical_points"] = canon.size();
        report["m"] = m;
        report["epsilon"] = jc_epsilon;
        report["pairs_checked"] = pairs;
        report["seeds"] = jc_seeds;
        report["failing_seeds"] = failing_seeds;
        report["failing_fraction"] = fraction;
        report["worst_ratio"] = worst;
        report["budget"] = budget;
        report["status"] = fraction <= budget ? "OK" : "FAIL";
        emit(report, as_json);
        if (fraction > budget) rc = kExitVerifyFail;
    });

    // ---- conc-selftest --------------------------------------------------------
    std::size_t c_m = 100, c_samples = 10000;
    double c_epsilon = 0.5;
    std::uint64_t c_seed = 0;
    auto* cmd_conc = app.add_subcommand("conc-selftest", "norm-concentration statistical self-test");
    cmd_conc->add_option("--m", c_m)->required();
    cmd_conc->add_option("--epsilon", c_epsilon)->required();
    cmd_conc->add_option("--samples", c_samples);
    cmd_conc->add_option("--seed", c_seed);
    cmd_conc->callback([&] {
        const ginv::ConcentrationReport rep =
            ginv::concentration_selftest(c_m, c_epsilon, c_samples, c_seed);
        Json report;
        report["m"] = c_m;
        report["epsilon"] = c_epsilon;
        report["samples"] = rep.samples;
        report["exceedances"] = rep.exceedances;
        report["empirical_tail"] = rep.empirical_tail;
        report["bound"] = rep.bound;
        report["status"] = rep.empirical_tail <= rep.bound ? "OK" : "FAIL";
        emit(report, as_json);
        if (rep.empirical_tail > rep.bound) rc = kExitVerifyFail;
    });

    // ---- bispectrum -------------------------------------------------------
    std::string bs_mode, bs_input, bs_output;
    std::size_t bs_n = 0;
    double bs_tol = 1e-6;
    auto* cmd_bisp = app.add_subcommand("bispectrum", "triple-correlation spectra and inversion over Z_n");
    cmd_bisp->add_option("mode", bs_mode, "compute | invert | roundtrip")
        ->required()
        ->check(CLI::IsMember({"compute", "invert", "roundtrip"}));
    cmd_bisp->add_option("--input,-i", bs_input)->required();
    cmd_bisp->add_option("--output,-o", bs_output);
    cmd_bisp->add_option("--n", bs_n, "signal length (invert mode)");
    cmd_bisp->add_option("--tol", bs_tol, "roundtrip max-norm tolerance");
    cmd_bisp->callback([&] {
        if (bs_mode == "compute") {
            auto rows = ginv::read_vectors(bs_input);
            ginv::require_arity(rows, 1, bs_input);
            std::vector<double> z;
            for (const auto& r : rows) z.push_back(r[0]);
            const ginv::Bispectrum B = ginv::bispectrum(z);

            std::ofstream file;
            std::ostream& out = open_output(file, bs_output);
            out << "# bispectrum n " << B.n << " columns k1 k2 re im\n";
            for (std::size_t k1 = 0; k1 < B.n; ++k1)
                for (std::size_t k2 = 0; k2 < B.n; ++k2)
                    out << k1 << ' ' << k2 << ' '
                        << ginv::format_double(B.at(k1, k2).real()) << ' '
                        << ginv::format_double(B.at(k1, k2).imag()) << '\n';
        } else if (bs_mode == "invert") {
            if (bs_n == 0) throw ginv::Error("invert mode needs --n");
            auto rows = ginv::read_vectors(bs_input);
            ginv::require_arity(rows, 4, bs_input);
            ginv::Bispectrum B;
            B.n = bs_n;
            B.values.assign(bs_n * bs_n, {0.0, 0.0});
            for (const auto& r : rows) {
                const auto k1 = static_cast<std::size_t>(r[0]);
                const auto k2 = static_cast<std::size_t>(r[1]);
                if (k1 >= bs_n || k2 >= bs_n)
                    throw ginv::Error("bispectrum index out of range");
                B.values[k1 * bs_n + k2] = {r[2], r[3]};
            }
            const ginv::InversionResult res = ginv::invert_bispectrum(B);

            std::ofstream file;
            std::ostream& out = open_output(file, bs_output);
            out << "# signal n " << bs_n << " imag_residue "
                << ginv::format_double(res.imag_residue) << "\n";
            for (double v : res.signal) out << ginv::format_double(v) << '\n';
        } else { // roundtrip
            auto rows = ginv::read_vectors(bs_input);
            ginv::require_arity(rows, 1, bs_input);
            std::vector<double> z;
            for (const auto& r : rows) z.push_back(r[0]);
            const ginv::InversionResult res =
                ginv::invert_bispectrum(ginv::bispectrum(z));

            double best = std::numeric_limits<double>::infinity();
            for (std::size_t shift = 0; shift < z.size(); ++shift) {
                double err = 0.0;
                for (std::size_t g = 0; g < z.size(); ++g)
                    err = std::max(err,
                                   std::abs(res.signal[(g + shift) % z.size()] - z[g]));
                best = std::min(best, err);
            }
            Json report;
            report["n"] = z.size();
            report["max_error_up_to_shift"] = best;
            report["imag_residue"] = res.imag_residue;
            report["tol"] = bs_tol;
            report["status"] = best <= bs_tol ? "OK" : "FAIL";
            emit(report, as_json);
            if (best > bs_tol) rc = kExitVerifyFail;
        }
    });

    // ---- sketch add / query -----------------------------------------------
    auto* cmd_sketch = app.add_subcommand("sketch", "persistent sketch store");
    cmd_sketch->require_subcommand(1);

    std::string sa_group, sa_input, sa_store, sa_m = "auto", sa_prefix = "row";
    int sa_omega = 1;
    std::uint64_t sa_seed = 0;
    double sa_epsilon = 0.5, sa_beta = 0.05;
    auto* cmd_add = cmd_sketch->add_subcommand("add", "sketch data rows and append them to a store");
    cmd_add->add_option("--group", sa_group)->required();
    cmd_add->add_option("--omega", sa_omega)->required();
    cmd_add->add_option("--input,-i", sa_input)->required();
    cmd_add->add_option("--store", sa_store)->required();
    cmd_add->add_option("--m", sa_m, "sketch dimension, or 'auto'");
    cmd_add->add_option("--seed", sa_seed);
    cmd_add->add_option("--epsilon", sa_epsilon);
    cmd_add->add_option("--beta", sa_beta);
    cmd_add->add_option("--id-prefix", sa_prefix, "record ids are <prefix><row-index>");
    cmd_add->callback([&] {
        Pipeline p = make_pipeline(sa_group, caps);
        auto rows = ginv::read_vectors(sa_input);
        ginv::require_arity(rows, p.group.degree(), sa_input);
        const ginv::InvariantMap inv = ginv::make_invariant(p.group, sa_omega, caps.tuple_cap);

        std::size_t m;
        if (sa_m == "auto" && ginv::store_exists(sa_store)) {
            // An existing store pins the pipeline; reuse its m.
            m = ginv::load_store(sa_store).header.m;
        } else {
            m = resolve_m(sa_m, sa_epsilon, sa_beta, rows, p.group, inv, nullptr);
        }
        const ginv::GaussianMap map = ginv::sample_map(m, inv.output_dim(), sa_seed);

        ginv::StoreHeader header;
        header.group_hash = ginv::group_hash(p.spec, sa_omega);
        header.omega = sa_omega;
        header.kappa = inv.output_dim();
        header.m = m;
        header.seed = sa_seed;

        std::vector<ginv::SketchRecord> records;
        records.reserve(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            records.push_back({sa_prefix + std::to_string(r),
                               ginv::embed_point(map, inv, rows[r])});
        ginv::append_records(sa_store, header, records);

        Json report;
        report["store"] = sa_store;
        report["appended"] = records.size();
        report["m"] = m;
        report["group_hash"] = header.group_hash;
        emit(report, as_json);
    });

    std::string sq_group, sq_store, sq_vector, sq_input;
    int sq_omega = 1;
    double sq_radius = 1e-9;
    auto* cmd_query = cmd_sketch->add_subcommand("query", "find stored sketches near a query vector");
    cmd_query->add_option("--group", sq_group)->required();
    cmd_query->add_option("--omega", sq_omega)->required();
    cmd_query->add_option("--store", sq_store)->required();
    cmd_query->add_option("--vector", sq_vector, "inline query vector, comma separated");
    cmd_query->add_option("--input,-i", sq_input, "file holding the query vector (first row)");
    cmd_query->add_option("--radius", sq_radius)->required();
    cmd_query->callback([&] {
        const ginv::SketchStore store = ginv::load_store(sq_store);
        Pipeline p = make_pipeline(sq_group, caps);
        const std::string expected = ginv::group_hash(p.spec, sq_omega);
        if (store.header.group_hash != expected)
            throw ginv::GroupHashMismatch("store was built for group hash " +
                                          store.header.group_hash + ", query pipeline is " +
                                          expected);

        std::vector<double> query;
        if (!sq_vector.empty()) {
            query = parse_inline_vector(sq_vector);
        } else if (!sq_input.empty()) {
            auto rows = ginv::read_vectors(sq_input);
            if (rows.empty()) throw ginv::Error("query file has no rows");
            query = rows.front();
        } else {
            throw ginv::Error("query needs --vector or --input");
        }
        if (query.size() != p.group.degree())
            throw ginv::LengthMismatch("query vector length differs from point count");

        const ginv::InvariantMap inv = ginv::make_invariant(p.group, sq_omega, caps.tuple_cap);
        if (inv.output_dim() != store.header.kappa)
            throw ginv::GroupHashMismatch("store kappa differs from pipeline");
        const ginv::GaussianMap map =
            ginv::sample_map(store.header.m, inv.output_dim(), store.header.seed);
        const std::vector<double> sketch = ginv::embed_point(map, inv, query);
        const auto matches = ginv::query_store(store, sketch, sq_radius);

        Json rows_json = Json::array();
        for (const auto& match : matches)
            rows_json.push_back({{"id", match.id}, {"distance", match.distance}});
        Json report;
        report["store"] = sq_store;
        report["records"] = store.records.size();
        report["radius"] = sq_radius;
        report["matches"] = std::move(rows_json);
        emit(report, as_json);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInputError;
    } catch (const ginv::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return rc;
}
