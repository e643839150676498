// corrgeom command-line front end.
//
// Exit codes: 0 success, 2 usage or input error, 3 numeric failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "corrgeom/bloch.hpp"
#include "corrgeom/constructions.hpp"
#include "corrgeom/criteria.hpp"
#include "corrgeom/errors.hpp"
#include "corrgeom/io.hpp"
#include "corrgeom/landscape.hpp"
#include "corrgeom/moments.hpp"
#include "corrgeom/observables.hpp"
#include "corrgeom/simulate.hpp"

namespace {

using namespace corrgeom;

constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct Globals {
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "auto";
};

struct StateArgs {
    std::string state = "product";
    int d = 2;
    double p = 0.0;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

BipartiteState load_state(const StateArgs &a) {
    if (a.state == "product") {
        return product_state(a.d, a.d);
    }
    if (a.state == "bell") {
        return phi_plus_state(a.d);
    }
    if (a.state == "iso") {
        return isotropic_state(a.d, a.p);
    }
    if (a.state == "mixed") {
        return maximally_mixed_state(a.d, a.d);
    }
    return io::state_from_text(read_file(a.state));
}

void emit(const Globals &g, const std::string &text) {
    if (g.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(g.out, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw InputError("cannot write '" + g.out + "'");
    }
    f << text;
}

std::string dump(const io::json &j) { return j.dump(2) + "\n"; }

bool want_csv(const Globals &g, bool csv_default) {
    if (g.format == "auto") {
        return csv_default;
    }
    return g.format == "csv";
}

void add_state_options(CLI::App *cmd, StateArgs &a) {
    cmd->add_option("--state", a.state, "State JSON file, or builtin: product, bell, iso, mixed")
        ->capture_default_str();
    cmd->add_option("--d", a.d, "Local dimension for builtin states")->capture_default_str()->check(CLI::Range(2, 10));
    cmd->add_option("--p", a.p, "Noise parameter for the iso builtin")->capture_default_str()->check(CLI::Range(0.0, 1.0));
}

std::string run_observable(const Globals &g, int d, bool rank4, bool real_only) {
    const ObservableSpectrum a = rank4 ? spectrum_rank4(d, !real_only) : spectrum_full(d);
    if (!want_csv(g, false)) {
        return dump(io::spectrum_to_json(a));
    }
    std::string out = "re,im\n";
    for (const cplx &z : a.eigenvalues) {
        out += fmt::format("{:.17g},{:.17g}\n", z.real(), z.imag());
    }
    return out;
}

std::string run_moments(const Globals &g, const StateArgs &sa) {
    const BlochDecomposition b = decompose(load_state(sa));
    const MomentPoint p = normalized_point(b);
    const RegionClass region = classify(p);
    if (want_csv(g, false)) {
        return fmt::format("d1,d2,s2,s4,r2t,r4t,region_k\n{},{},{:.17g},{:.17g},{:.17g},{:.17g},{}\n", p.d1, p.d2, p.s2,
                           p.s4, p.r2t, p.r4t, region.k ? std::to_string(*region.k) : "none");
    }
    io::json j = io::moments_to_json(p);
    j["region_k"] = region.k ? io::json(*region.k) : io::json(nullptr);
    return dump(j);
}

std::string run_landscape(const Globals &g, int d1, int d2, int k, int samples) {
    if (!want_csv(g, true)) {
        throw InputError("landscape emits csv only");
    }
    std::ostringstream os;
    write_curves_csv(os, emit_curves(d1, d2, k, samples));
    return os.str();
}

std::string run_construct(const Globals &g, const std::string &kind, int d, std::optional<int> m,
                          std::optional<double> p) {
    if (want_csv(g, false)) {
        throw InputError("construct emits json only");
    }
    if (kind == "coverage") {
        return dump(io::coverage_to_json(kink_coverage(d)));
    }
    if (kind == "mub") {
        const MubFamily mubs = mub_known(d);
        return dump(io::construction_to_json(theorem3_state(mubs, m.value_or(static_cast<int>(mubs.bases.size())))));
    }
    EquiangularSet set;
    if (kind == "trio") {
        if (d != 2) {
            throw InputError("construct --kind trio requires --d 2");
        }
        set = qubit_trio();
    } else if (kind == "sicpad") {
        set = pad_sic(d);
    } else {
        throw InputError("unknown construction kind '" + kind + "'");
    }
    if (m) {
        if (*m < 1 || *m > static_cast<int>(set.vectors.size())) {
            throw InputError(fmt::format("--m must lie in [1, {}] for this set", set.vectors.size()));
        }
        set.vectors.resize(static_cast<std::size_t>(*m));
    }
    if (p) {
        return dump(io::construction_to_json(corollary1_family(set, *p)));
    }
    return dump(io::construction_to_json(theorem2_state(set)));
}

std::string run_detect(const Globals &g, const StateArgs &sa, int k, std::optional<double> x, std::optional<double> y) {
    const BlochDecomposition b = decompose(load_state(sa));
    const SchmidtVerdict v =
        (x || y) ? detect_generalized(b, k, x.value_or(1.0), y.value_or(1.0)) : detect_schmidt(b, k);
    if (want_csv(g, false)) {
        return fmt::format("trace_norm,bound,k_tested,detected,margin\n{:.17g},{:.17g},{},{},{:.17g}\n",
                           v.trace_norm_value, v.bound, v.k_tested, v.detected ? "true" : "false", v.margin);
    }
    return dump(io::verdict_to_json(v));
}

std::string run_simulate(const Globals &g, bool seed_given, const std::string &config, std::optional<int> workers) {
    if (!want_csv(g, true)) {
        throw InputError("simulate emits csv only");
    }
    BudgetGrid grid = parse_budget_config(read_file(config));
    if (seed_given) {
        grid.seed = g.seed;
    }
    if (workers) {
        grid.workers = *workers;
    }
    std::ostringstream os;
    write_budget_csv(os, run_budget_study(grid));
    return os.str();
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Correlation-matrix geometry: Schmidt-number criteria, moment observables, boundary curves, "
                 "extremal constructions and randomized-measurement simulation."};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    CLI::Option *seed_opt = app.add_option("--seed", g.seed, "Master seed for random streams")->capture_default_str();
    app.add_option("--out", g.out, "Output file (default: stdout)");
    app.add_option("--format", g.format, "Output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"auto", "json", "csv"}));

    int obs_d = 0;
    bool rank4 = false;
    bool real_only = false;
    CLI::App *observable = app.add_subcommand("observable", "Moment-matching observable spectrum (JSON)");
    observable->add_option("--d", obs_d, "Local dimension")->required();
    observable->add_flag("--rank4", rank4, "Rank-4 observable instead of the full-rank one");
    observable->add_flag("--real-only", real_only, "With --rank4: fail instead of returning complex eigenvalues");

    StateArgs moments_state;
    CLI::App *moments = app.add_subcommand("moments", "Normalized moments of a state (JSON)");
    add_state_options(moments, moments_state);

    int ls_d1 = 2;
    int ls_d2 = 2;
    int ls_k = 1;
    int ls_samples = 201;
    CLI::App *landscape = app.add_subcommand("landscape", "Boundary curves of the Schmidt-number-k region (CSV)");
    landscape->add_option("--d1", ls_d1, "Dimension of the smaller factor")->capture_default_str();
    landscape->add_option("--d2", ls_d2, "Dimension of the larger factor")->capture_default_str();
    landscape->add_option("--k", ls_k, "Schmidt number")->capture_default_str();
    landscape->add_option("--samples", ls_samples, "Uniform grid size before kinks are inserted")->capture_default_str();

    std::string kind = "trio";
    int con_d = 2;
    std::optional<int> con_m;
    std::optional<double> con_p;
    CLI::App *construct = app.add_subcommand("construct", "Extremal separable states with verification (JSON)");
    construct->add_option("--kind", kind, "trio, sicpad, mub or coverage")
        ->capture_default_str()
        ->check(CLI::IsMember({"trio", "sicpad", "mub", "coverage"}));
    construct->add_option("--d", con_d, "Local dimension")->capture_default_str();
    construct->add_option("--m", con_m, "Number of bases (mub) or vectors (trio, sicpad); default all");
    construct->add_option("--p", con_p, "Mixing weight: the last vector gets 1-p (trio, sicpad)");

    StateArgs detect_state;
    int det_k = 1;
    std::optional<double> det_x;
    std::optional<double> det_y;
    CLI::App *detect = app.add_subcommand("detect", "Trace-norm Schmidt-number test (JSON)");
    add_state_options(detect, detect_state);
    detect->add_option("--k", det_k, "Schmidt number to test against")->capture_default_str();
    detect->add_option("--x", det_x, "Weight of the local-vector row (default 1)");
    detect->add_option("--y", det_y, "Weight of the local-vector column (default 1)");

    std::string config;
    std::optional<int> workers;
    CLI::App *simulate = app.add_subcommand("simulate", "Randomized-measurement budget study (CSV)");
    simulate->add_option("--config", config, "TOML file with d, p, k, M, K, reps, seed, workers")->required();
    simulate->add_option("--workers", workers, "Worker threads; results do not depend on this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        std::string text;
        if (observable->parsed()) {
            text = run_observable(g, obs_d, rank4, real_only);
        } else if (moments->parsed()) {
            text = run_moments(g, moments_state);
        } else if (landscape->parsed()) {
            text = run_landscape(g, ls_d1, ls_d2, ls_k, ls_samples);
        } else if (construct->parsed()) {
            text = run_construct(g, kind, con_d, con_m, con_p);
        } else if (detect->parsed()) {
            text = run_detect(g, detect_state, det_k, det_x, det_y);
        } else if (simulate->parsed()) {
            text = run_simulate(g, seed_opt->count() > 0, config, workers);
        }
        emit(g, text);
    } catch (const InputError &e) {
        fmt::print(std::cerr, "error: {}\n", e.what());
        return kExitInput;
    } catch (const NumericError &e) {
        fmt::print(std::cerr, "numeric failure: {} (best residual {:.3g})\n", e.what(), e.best_residual());
        return kExitNumeric;
    }
    return 0;
}
