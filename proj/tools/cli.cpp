#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include "qgp/conserved.hpp"
#include "qgp/dynamics.hpp"
#include "qgp/errors.hpp"
#include "qgp/io.hpp"
#include "qgp/parallel.hpp"
#include "qgp/profile.hpp"
#include "qgp/spectral.hpp"

namespace qgp::cli {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

// Parameters of one subcommand: bound to CLI flags and settable from a JSON
// config, with the effective values hashed into the provenance header.
class Params {
public:
    explicit Params(CLI::App* app) : app_(app) {}

    template <class T>
    void option(const std::string& name, T& ref, const std::string& help) {
        app_->add_option("--" + name, ref, help);
        bind(name, ref);
    }

    void flag(const std::string& name, bool& ref, const std::string& help) {
        app_->add_flag("--" + name, ref, help);
        bind(name, ref);
    }

    template <class T>
    void positional(const std::string& name, T& ref, const std::string& help) {
        app_->add_option(name, ref, help);
        bind(name, ref);
        positional_.insert(name);
    }

    // Records which parameters were given on the command line, then applies
    // the config file on top.
    void finish(const std::string& config_path) {
        for (const auto& [name, _] : setters_) {
            const std::string key = positional_.count(name) ? name : "--" + name;
            if (app_->count(key) > 0) given_.insert(name);
        }
        if (config_path.empty()) return;
        std::ifstream in(config_path);
        if (!in) throw ValidationError("cannot read config file '" + config_path + "'");
        json cfg;
        try {
            cfg = json::parse(in);
        } catch (const json::exception& e) {
            throw ValidationError("config file '" + config_path + "' is not valid JSON: " + e.what());
        }
        if (!cfg.is_object()) throw ValidationError("config file must hold a JSON object");
        for (const auto& [key, value] : cfg.items()) {
            auto it = setters_.find(key);
            if (it == setters_.end()) {
                throw ValidationError("unknown config key '" + key + "' for subcommand '" + app_->get_name() + "'");
            }
            try {
                it->second(value);
            } catch (const json::exception&) {
                throw ValidationError("config key '" + key + "' has the wrong type");
            }
            given_.insert(key);
        }
    }

    bool given(const std::string& name) const { return given_.count(name) > 0; }

    void require(const std::string& name) const {
        if (!given(name)) throw ValidationError("missing required parameter --" + name);
    }

    io::Provenance provenance(const std::string& normalization = "full") const {
        json all = json::object();
        for (const auto& [name, get] : getters_) all[name] = get();
        const json doc{{"command", app_->get_name()}, {"params", all}};
        return {io::fnv1a_hex(doc.dump()), normalization};
    }

private:
    template <class T>
    void bind(const std::string& name, T& ref) {
        setters_[name] = [&ref](const json& j) { ref = j.get<T>(); };
        getters_[name] = [&ref] { return json(ref); };
    }

    CLI::App* app_;
    std::map<std::string, std::function<void(const json&)>> setters_;
    std::map<std::string, std::function<json()>> getters_;
    std::set<std::string> given_;
    std::set<std::string> positional_;
};

json provenance_json(const io::Provenance& p) {
    return {{"tool", "qgpdark"},
            {"version", std::string(io::kVersion)},
            {"config_hash", p.config_hash},
            {"normalization", p.normalization}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void require_finite(double v, const std::string& name) {
    if (!std::isfinite(v)) throw ValidationError("--" + name + " must be a finite number");
}

void require_output(const std::string& path, const std::string& name) {
    if (path.empty()) throw ValidationError("missing required output path --" + name);
}

SolitonParams soliton(const Params& params, double c, double kappa) {
    params.require("c");
    params.require("kappa");
    require_finite(c, "c");
    require_finite(kappa, "kappa");
    SolitonParams p{c, kappa};
    validate(p);
    return p;
}

// Grid from optional --n / --L; fallback is resolved_grid when neither is given.
Grid grid_for(const Params& params, const SolitonParams& p, int n, double L, const std::function<Grid()>& fallback) {
    if (params.given("n") && (n < 8 || n % 2 != 0)) throw ValidationError("--n must be an even integer >= 8");
    if (params.given("L") && !(L > 0.0 && std::isfinite(L))) throw ValidationError("--L must be positive");
    if (!params.given("n") && !params.given("L")) return fallback();
    const double half = params.given("L") ? L : default_half_length(p);
    const auto points = static_cast<std::size_t>(params.given("n") ? n : 4096);
    const double minimum = 12.0 / decay_rate(p);
    if (half < minimum) {
        std::ostringstream os;
        os << "--L = " << half << " is shorter than 12 decay lengths (" << minimum << ")";
        throw TruncationError(os.str(), minimum);
    }
    return Grid(half, points);
}

// ---------------------------------------------------------------- profile

struct ProfileCmd {
    double c = NAN;
    double kappa = NAN;
    double L = 0.0;
    int n = 0;
    std::string out;
};

void run_profile(const Params& params, const ProfileCmd& a, std::ostream& out) {
    const SolitonParams p = soliton(params, a.c, a.kappa);
    const Grid grid = grid_for(params, p, a.n, a.L, [&] { return default_grid(p); });
    const io::Provenance prov = params.provenance();
    const SolitonProfile prof = solve_profile(p, grid);

    std::ostringstream os;
    os << "# " << io::provenance_text(prov) << "; c=" << io::fmt17(p.c) << " kappa=" << io::fmt17(p.kappa) << '\n';
    os << "x,eta,v,theta,eta_x\n";
    for (std::size_t j = 0; j < grid.size(); ++j) {
        os << io::fmt17(grid.x(j)) << ',' << io::fmt17(prof.eta[j]) << ',' << io::fmt17(prof.v[j]) << ','
           << io::fmt17(prof.theta[j]) << ',' << io::fmt17(prof.eta_x[j]) << '\n';
    }
    if (a.out.empty() || a.out == "-") {
        out << os.str();
    } else {
        io::write_text_file(a.out, os.str());
    }
}

// ---------------------------------------------------------------- diagram

struct DiagramCmd {
    double kappa = NAN;
    double cmin = 0.01;
    double cmax = 1.4;
    int samples = 200;
    std::string out_csv;
    std::string out_svg;
};

void run_diagram(const Params& params, const DiagramCmd& a) {
    params.require("kappa");
    require_finite(a.kappa, "kappa");
    validate(SolitonParams{1.0, a.kappa});
    if (!(a.cmin > 0.0 && a.cmin < a.cmax && a.cmax < std::numbers::sqrt2)) {
        throw ParameterError("diagram requires 0 < cmin < cmax < sqrt(2)");
    }
    if (a.samples < 2) throw ParameterError("--samples must be >= 2");
    require_output(a.out_csv, "out-csv");
    require_output(a.out_svg, "out-svg");
    const BranchCurve curve = branch_curve(a.kappa, a.cmin, a.cmax, a.samples);
    emit_diagram(curve, a.out_csv, a.out_svg, params.provenance());
}

// ---------------------------------------------------------------- vk

struct VkCmd {
    double c = NAN;
    double kappa = NAN;
    double tol = 1e-6;
};

void run_vk(const Params& params, const VkCmd& a, std::ostream& out) {
    const SolitonParams p = soliton(params, a.c, a.kappa);
    if (!(a.tol >= 0.0)) throw ValidationError("--tol must be >= 0");
    const StabilityVerdict v = vk_classify(p.c, p.kappa, a.tol);
    const json j{{"c", v.c}, {"kappa", v.kappa}, {"dPdc", v.dPdc}, {"verdict", to_string(v.verdict)}};
    out << j.dump() << '\n';
}

// ---------------------------------------------------------------- critical

struct CriticalCmd {
    double kappa = NAN;
    bool kappa0 = false;
};

void run_critical(const Params& params, const CriticalCmd& a, std::ostream& out) {
    if (params.given("kappa") == a.kappa0) throw ValidationError("critical needs exactly one of --kappa or --kappa0");
    if (a.kappa0) {
        out << json{{"kappa0", find_kappa0()}}.dump() << '\n';
        return;
    }
    require_finite(a.kappa, "kappa");
    validate(SolitonParams{1.0, a.kappa});
    json j{{"kappa", a.kappa}};
    const auto ct = find_c_tilde(a.kappa);
    j["c_tilde"] = ct ? json(*ct) : json(nullptr);
    if (a.kappa <= 0.0) {
        const auto q = find_q_star(a.kappa);
        if (q) {
            j["q_star"] = q->q_star;
            j["c_star"] = q->c_star;
            j["black_soliton_energy"] = q->level;
            j["q_star_at_endpoint"] = q->at_endpoint;
        }
    }
    out << j.dump() << '\n';
}

// ---------------------------------------------------------------- spectrum

struct SpectrumCmd {
    double c = NAN;
    double kappa = NAN;
    double L = 0.0;
    int n = 0;
    std::string out;
    std::string dump_eigvecs;
};

void run_spectrum(const Params& params, const SpectrumCmd& a, std::ostream& out) {
    const SolitonParams p = soliton(params, a.c, a.kappa);
    const Grid grid = grid_for(params, p, a.n, a.L, [&] { return resolved_grid(p); });
    const io::Provenance prov = params.provenance();
    const SolitonProfile prof = solve_profile(p, grid);
    const SpectrumReport r = analyze_spectrum(prof);
    const OperatorLc op = assemble_lc(prof);

    const json j{{"_provenance", provenance_json(prov)},
                 {"c", p.c},
                 {"kappa", p.kappa},
                 {"n", grid.size()},
                 {"L", grid.half_length()},
                 {"negative_count", r.negative_count},
                 {"negative_count_listed", r.negative_count_listed},
                 {"mu_minus", r.mu_minus},
                 {"mu_minus_matrix", r.mu_minus_matrix},
                 {"mu_zero", r.mu_zero},
                 {"kernel_residual", r.kernel_residual},
                 {"kernel_overlap", r.kernel_overlap},
                 {"essential_edge", r.essential_edge},
                 {"spectral_gap", r.spectral_gap},
                 {"boundary_potential_defect", op.boundary_potential_defect()},
                 {"discrete_eigenvalues", r.discrete_eigenvalues}};

    std::string eig_csv;
    if (!a.dump_eigvecs.empty()) {
        std::ostringstream os;
        os << "# " << io::provenance_text(prov) << "; chi1 is the refined ground state, e<k> the matrix eigenvectors\n";
        os << "x,chi1";
        for (std::size_t k = 0; k < r.eigenpairs.size(); ++k) os << ",e" << k + 1;
        os << '\n';
        for (std::size_t i = 0; i < grid.size(); ++i) {
            os << io::fmt17(grid.x(i)) << ',' << io::fmt17(r.chi1[i]);
            for (const auto& e : r.eigenpairs) os << ',' << io::fmt17(e.vector[i]);
            os << '\n';
        }
        eig_csv = os.str();
    }
    if (a.out.empty() || a.out == "-") {
        out << dump(j);
    } else {
        io::write_text_file(a.out, dump(j));
    }
    if (!eig_csv.empty()) io::write_text_file(a.dump_eigvecs, eig_csv);
}

// ---------------------------------------------------------------- evolve

struct EvolveCmd {
    double c = NAN;
    double kappa = NAN;
    std::string perturb = "random_smooth";
    double amplitude = 1e-2;
    std::uint64_t seed = 1;
    double T = 10.0;
    double dt = 0.0;
    double sample_every = 0.5;
    double snapshot_every = 0.0;
    double K = 100.0;
    double L = 0.0;
    int n = 0;
    bool svg = false;
    bool dealias = false;
    std::string out;
};

std::string snapshot_name(double t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "t_%.4f.csv", t);
    return buf;
}

std::string snapshot_csv(const HydroState& s, const io::Provenance& prov) {
    std::ostringstream os;
    os << "# " << io::provenance_text(prov) << "; t=" << io::fmt17(s.t) << '\n';
    os << "x,eta,v\n";
    const Grid& g = s.eta.grid();
    for (std::size_t j = 0; j < g.size(); ++j) {
        os << io::fmt17(g.x(j)) << ',' << io::fmt17(s.eta[j]) << ',' << io::fmt17(s.v[j]) << '\n';
    }
    return os.str();
}

void run_evolve(const Params& params, const EvolveCmd& a) {
    const SolitonParams p = soliton(params, a.c, a.kappa);
    const PerturbationMode mode = parse_perturbation_mode(a.perturb);
    require_finite(a.amplitude, "amplitude");
    if (!(a.T > 0.0) || !std::isfinite(a.T)) throw ValidationError("--T must be positive");
    if (!(a.dt >= 0.0) || !std::isfinite(a.dt)) throw ValidationError("--dt must be >= 0 (0 selects the stable step)");
    if (!(a.sample_every > 0.0)) throw ValidationError("--sample-every must be positive");
    if (!(a.snapshot_every >= 0.0)) throw ValidationError("--snapshot-every must be >= 0");
    if (!(a.K >= 0.0)) throw ValidationError("--K must be >= 0");
    require_output(a.out, "out");
    const Grid grid = grid_for(params, p, a.n, a.L, [&] { return experiment_grid(p); });
    if (a.dt > stable_dt(grid, p.kappa) * 2.0) {
        throw ValidationError("--dt exceeds the RK4 stability bound " + io::fmt17(2.0 * stable_dt(grid, p.kappa)));
    }
    const io::Provenance prov = params.provenance();

    std::vector<std::pair<std::string, std::string>> snapshots;
    const double every = a.snapshot_every > 0.0 ? a.snapshot_every : a.T;
    double next_snapshot = 0.0;
    EvolveOptions opts;
    opts.dt = a.dt;
    opts.sample_every = a.sample_every;
    opts.K = a.K;
    opts.dealias = a.dealias;
    opts.on_sample = [&](const HydroState& s) {
        if (s.t + 1e-9 >= next_snapshot) {
            snapshots.emplace_back(snapshot_name(s.t), snapshot_csv(s, prov));
            while (next_snapshot <= s.t + 1e-9) next_snapshot += every;
        }
    };
    const ExperimentResult res = stability_experiment(p, {mode, a.amplitude, a.seed}, a.T, grid, opts);
    const EvolutionReport& r = res.report;

    json validity = r.validity.ok ? json{{"status", "ok"}}
                                  : json{{"status", "frame_violation"},
                                         {"t", r.validity.t},
                                         {"x", r.validity.x},
                                         {"message", r.validity.message}};
    const json report{{"_provenance", provenance_json(prov)},
                      {"params",
                       {{"c", p.c},
                        {"kappa", p.kappa},
                        {"perturb", to_string(mode)},
                        {"amplitude", a.amplitude},
                        {"seed", a.seed},
                        {"T", a.T},
                        {"K", a.K},
                        {"n", grid.size()},
                        {"L", grid.half_length()}}},
                      {"dt", r.dt},
                      {"verdict", to_string(res.verdict)},
                      {"initial_distance", res.initial_distance},
                      {"max_distance", res.max_distance},
                      {"validity", validity},
                      {"times", r.times},
                      {"energy_drift", r.energy_drift},
                      {"momentum_drift", r.momentum_drift},
                      {"particles_drift", r.particles_drift},
                      {"twist_drift", r.twist_drift},
                      {"orbital_distance", r.orbital_distance},
                      {"best_shift", r.best_shift},
                      {"lyapunov", r.lyapunov}};

    const fs::path dir(a.out);
    fs::create_directories(dir / "snapshots");
    for (const auto& [name, body] : snapshots) io::write_text_file(dir / "snapshots" / name, body);
    if (a.svg) {
        io::Plot plot;
        plot.title = "Orbital distance, c = " + io::fmt17(p.c) + ", kappa = " + io::fmt17(p.kappa);
        plot.x_label = "t";
        plot.y_label = "distance";
        plot.series.push_back({r.times, r.orbital_distance, "#1f4e9c"});
        io::write_text_file(dir / "orbital_distance.svg", io::render_svg(plot, prov));
    }
    io::write_text_file(dir / "report.json", dump(report));
}

// ---------------------------------------------------------------- figures

struct FiguresCmd {
    std::string recipe;
    std::string out;
    int samples = 200;
    int scan_points = 24;
};

std::string kappa_scan_csv(int points, const io::Provenance& prov) {
    const double k0 = find_kappa0();
    std::vector<double> kappas(static_cast<std::size_t>(points));
    std::vector<double> ctilde(kappas.size());
    std::vector<double> level(kappas.size());
    for (std::size_t i = 0; i < kappas.size(); ++i) {
        kappas[i] = -50.0 + (k0 + 50.0) * static_cast<double>(i) / (points - 1);
    }
    parallel_for(kappas.size(), [&](std::size_t i) {
        const auto c = i + 1 == kappas.size() ? std::nullopt : find_c_tilde(kappas[i]);
        ctilde[i] = c ? *c : 0.0;
        level[i] = black_soliton_energy(kappas[i]);
    });
    std::ostringstream os;
    os << "# " << io::provenance_text(prov) << "; kappa0=" << io::fmt17(k0)
       << "; c_tilde is set to 0 where no cusp exists; *_half_normalized columns are halved\n";
    os << "kappa,c_tilde,E0,E0_half_normalized\n";
    for (std::size_t i = 0; i < kappas.size(); ++i) {
        os << io::fmt17(kappas[i]) << ',' << io::fmt17(ctilde[i]) << ',' << io::fmt17(level[i]) << ','
           << io::fmt17(0.5 * level[i]) << '\n';
    }
    return os.str();
}

json figure_summary(const BranchCurve& curve, const io::Provenance& prov) {
    const double e0 = black_soliton_energy(curve.kappa);
    const double p0 = black_soliton_momentum(curve.kappa);
    json j{{"_provenance", provenance_json(prov)},
           {"kappa", curve.kappa},
           {"c_tilde", curve.cusp ? json(*curve.cusp) : json(nullptr)},
           {"black_soliton_energy", {{"full", e0}, {"half_normalized", 0.5 * e0}}},
           {"endpoint_momentum", {{"full", p0}, {"half_normalized", 0.5 * p0}}}};
    if (curve.cusp) {
        const double pc = momentum_of_speed(*curve.cusp, curve.kappa);
        const double ec = energy_of_speed(*curve.cusp, curve.kappa);
        j["cusp"] = {{"P", pc}, {"E", ec}, {"P_half_normalized", 0.5 * pc}, {"E_half_normalized", 0.5 * ec}};
    }
    return j;
}

void run_figures(const Params& params, const FiguresCmd& a) {
    params.require("recipe");
    if (a.recipe != "fig1" && a.recipe != "fig2" && a.recipe != "kappa_scan") {
        throw ValidationError("unknown figure recipe '" + a.recipe + "' (expected fig1, fig2 or kappa_scan)");
    }
    require_output(a.out, "out");
    if (a.samples < 2) throw ValidationError("--samples must be >= 2");
    if (a.scan_points < 2) throw ValidationError("--scan-points must be >= 2");
    const io::Provenance prov = params.provenance("full; *_half columns are halved to match the published figures");

    std::vector<std::pair<std::string, std::string>> files;
    if (a.recipe == "fig1" || a.recipe == "fig2") {
        const double kappa = a.recipe == "fig1" ? -50.0 : -3.0;
        const BranchCurve curve = branch_curve(kappa, 0.01, 1.4, a.samples);
        files.emplace_back(a.recipe + "_branch.csv", diagram_csv(curve, prov));
        files.emplace_back(a.recipe + "_branch.svg", diagram_svg(curve, prov));
        files.emplace_back(a.recipe + "_summary.json", dump(figure_summary(curve, prov)));
    }
    if (a.recipe == "fig2" || a.recipe == "kappa_scan") {
        files.emplace_back("ctilde_vs_kappa.csv", kappa_scan_csv(a.scan_points, prov));
    }
    fs::create_directories(a.out);
    for (const auto& [name, body] : files) io::write_text_file(fs::path(a.out) / name, body);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dark solitons of the quasilinear Gross-Pitaevskii equation"};
    app.name("qgpdark");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(io::kVersion));
    std::string config;
    app.add_option("--config", config, "JSON file with parameter values; overrides flags");

    auto* profile = app.add_subcommand("profile", "Solve the soliton profile and write x,eta,v,theta,eta_x");
    ProfileCmd profile_args;
    Params profile_params(profile);
    profile_params.option("c", profile_args.c, "speed in (0, sqrt 2)");
    profile_params.option("kappa", profile_args.kappa, "quasilinear strength < 1/2");
    profile_params.option("L", profile_args.L, "half-length of the box");
    profile_params.option("n", profile_args.n, "grid points");
    profile_params.option("out", profile_args.out, "CSV path (stdout if omitted)");

    auto* diagram = app.add_subcommand("diagram", "Energy-momentum branch as CSV and SVG");
    DiagramCmd diagram_args;
    Params diagram_params(diagram);
    diagram_params.option("kappa", diagram_args.kappa, "quasilinear strength");
    diagram_params.option("cmin", diagram_args.cmin, "smallest speed");
    diagram_params.option("cmax", diagram_args.cmax, "largest speed");
    diagram_params.option("samples", diagram_args.samples, "number of speeds");
    diagram_params.option("out-csv", diagram_args.out_csv, "CSV path");
    diagram_params.option("out-svg", diagram_args.out_svg, "SVG path");

    auto* vk = app.add_subcommand("vk", "Slope criterion verdict as JSON");
    VkCmd vk_args;
    Params vk_params(vk);
    vk_params.option("c", vk_args.c, "speed in (0, sqrt 2)");
    vk_params.option("kappa", vk_args.kappa, "quasilinear strength < 1/2");
    vk_params.option("tol", vk_args.tol, "degeneracy tolerance on dP/dc");

    auto* critical = app.add_subcommand("critical", "Cusp speed for --kappa, or the threshold --kappa0");
    CriticalCmd critical_args;
    Params critical_params(critical);
    critical_params.option("kappa", critical_args.kappa, "quasilinear strength");
    critical_params.flag("kappa0", critical_args.kappa0, "print the threshold kappa_0");

    auto* spectrum = app.add_subcommand("spectrum", "Spectrum of the scalar operator L_c as JSON");
    SpectrumCmd spectrum_args;
    Params spectrum_params(spectrum);
    spectrum_params.option("c", spectrum_args.c, "speed in (0, sqrt 2)");
    spectrum_params.option("kappa", spectrum_args.kappa, "quasilinear strength < 1/2");
    spectrum_params.option("L", spectrum_args.L, "half-length of the box");
    spectrum_params.option("n", spectrum_args.n, "grid points");
    spectrum_params.option("out", spectrum_args.out, "JSON path (stdout if omitted)");
    spectrum_params.option("dump-eigvecs", spectrum_args.dump_eigvecs, "CSV path for eigenvectors");

    auto* evolve = app.add_subcommand("evolve", "Evolve a perturbed soliton and write report.json");
    EvolveCmd evolve_args;
    Params evolve_params(evolve);
    evolve_params.option("c", evolve_args.c, "speed in (0, sqrt 2)");
    evolve_params.option("kappa", evolve_args.kappa, "quasilinear strength < 1/2");
    evolve_params.option("perturb", evolve_args.perturb, "along_chi_minus | random_smooth | psi_q");
    evolve_params.option("amplitude", evolve_args.amplitude, "perturbation size");
    evolve_params.option("seed", evolve_args.seed, "random seed");
    evolve_params.option("T", evolve_args.T, "final time");
    evolve_params.option("dt", evolve_args.dt, "time step (0: stable default)");
    evolve_params.option("sample-every", evolve_args.sample_every, "time between diagnostics");
    evolve_params.option("snapshot-every", evolve_args.snapshot_every, "time between snapshots (0: first and last)");
    evolve_params.option("K", evolve_args.K, "Lyapunov penalty constant");
    evolve_params.option("L", evolve_args.L, "half-length of the box");
    evolve_params.option("n", evolve_args.n, "grid points");
    evolve_params.flag("svg", evolve_args.svg, "also write orbital_distance.svg");
    evolve_params.flag("dealias", evolve_args.dealias, "apply the 2/3 filter to derivatives");
    evolve_params.option("out", evolve_args.out, "output directory");

    auto* figures = app.add_subcommand("figures", "Reproduce a figure recipe: fig1, fig2 or kappa_scan");
    FiguresCmd figures_args;
    Params figures_params(figures);
    figures_params.positional("recipe", figures_args.recipe, "fig1 | fig2 | kappa_scan");
    figures_params.option("out", figures_args.out, "output directory");
    figures_params.option("samples", figures_args.samples, "speeds on each branch");
    figures_params.option("scan-points", figures_args.scan_points, "kappa values in the scan");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        try {
            app.parse(reversed);
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return kOk;
        } catch (const CLI::CallForAllHelp&) {
            out << app.help("", CLI::AppFormatMode::All);
            return kOk;
        } catch (const CLI::CallForVersion&) {
            out << io::kVersion << '\n';
            return kOk;
        } catch (const CLI::ParseError& e) {
            throw ValidationError(e.what());
        }

        if (profile->parsed()) {
            profile_params.finish(config);
            run_profile(profile_params, profile_args, out);
        } else if (diagram->parsed()) {
            diagram_params.finish(config);
            run_diagram(diagram_params, diagram_args);
        } else if (vk->parsed()) {
            vk_params.finish(config);
            run_vk(vk_params, vk_args, out);
        } else if (critical->parsed()) {
            critical_params.finish(config);
            run_critical(critical_params, critical_args, out);
        } else if (spectrum->parsed()) {
            spectrum_params.finish(config);
            run_spectrum(spectrum_params, spectrum_args, out);
        } else if (evolve->parsed()) {
            evolve_params.finish(config);
            run_evolve(evolve_params, evolve_args);
        } else if (figures->parsed()) {
            figures_params.finish(config);
            run_figures(figures_params, figures_args);
        }
        return kOk;
    } catch (const ValidationError& e) {
        err << "qgpdark: invalid input: " << e.what() << '\n';
        return kInvalid;
    } catch (const NumericalError& e) {
        err << "qgpdark: numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        err << "qgpdark: " << e.what() << '\n';
        return kNumerical;
    }
}

}  // namespace qgp::cli
