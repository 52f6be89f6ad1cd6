#include "tdho_cli/app.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tdho/errors.hpp"
#include "tdho_cli/config.hpp"
#include "tdho_cli/csv.hpp"
#include "tdho_cli/run.hpp"

namespace tdho::cli {

namespace {

/// Flags mirroring RunConfig; applied on top of the config file only when given.
struct Overrides {
    std::string config_path;
    std::string profile;
    double omega0 = 0, omega_target = 0, kappa = 0;
    std::string samples;
    std::vector<int> N;
    double t_min = 0, t_max = 0;
    std::size_t n_out = 0;
    std::string reference;
    double t_ref = 0, reference_frequency = 0;
    std::vector<std::string> reps;
    double tail_tol = 0;
    int max_mode = 0;
    double rel_tol = 0, abs_tol = 0;
    int temps_max_mode = 0;
    double density_time = 0;
    int density_max_mode = 0;
    int oracle_dimension = 0, oracle_samples = 0, oracle_max_mode = 0;
    std::string output;
    std::vector<std::string> emit;

    std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> setters;

    template <class T>
    void add(CLI::App* app, const std::string& flag, T& dst, const std::string& help,
             std::function<void(RunConfig&)> apply) {
        setters.emplace_back(app->add_option(flag, dst, help), std::move(apply));
    }

    void attach(CLI::App* app) {
        app->add_option("--config", config_path, "JSON config file; flags override its values")
            ->check(CLI::ExistingFile);
        add(app, "--profile", profile, "constant | tanh_step | sech_bump | tabulated",
            [this](RunConfig& c) { c = config_from_json({{"profile", {{"kind", profile}}}}, c); });
        add(app, "--omega0", omega0, "initial frequency", [this](RunConfig& c) { c.profile.omega0 = omega0; });
        add(app, "--omega-target", omega_target, "final (tanh) or peak (sech) frequency",
            [this](RunConfig& c) { c.profile.omega_target = omega_target; });
        add(app, "--kappa", kappa, "switching rate", [this](RunConfig& c) { c.profile.kappa = kappa; });
        add(app, "--samples", samples, "two-column CSV for tabulated profiles",
            [this](RunConfig& c) { c.profile.samples = samples; });
        add(app, "--N", N, "initial invariant modes", [this](RunConfig& c) { c.N = N; });
        add(app, "--t-min", t_min, "grid start", [this](RunConfig& c) { c.t_min = t_min; });
        add(app, "--t-max", t_max, "grid end", [this](RunConfig& c) { c.t_max = t_max; });
        add(app, "--n-out", n_out, "grid points", [this](RunConfig& c) { c.n_out = n_out; });
        add(app, "--reference", reference, "profile | in_region",
            [this](RunConfig& c) { c = config_from_json({{"reference", {{"mode", reference}}}}, c); });
        add(app, "--t-ref", t_ref, "time where sigma = 1", [this](RunConfig& c) { c.reference_time = t_ref; });
        add(app, "--reference-frequency", reference_frequency, "constant Omega of the invariant",
            [this](RunConfig& c) { c.reference_frequency = reference_frequency; });
        add(app, "--rep", reps, "initial, diagonal, invariant",
            [this](RunConfig& c) { c = config_from_json({{"representations", reps}}, c); });
        add(app, "--tail-tol", tail_tol, "neglected probability mass per time",
            [this](RunConfig& c) { c.tail_tol = tail_tol; });
        add(app, "--max-mode", max_mode, "hard cap on M", [this](RunConfig& c) { c.max_mode = max_mode; });
        add(app, "--rel-tol", rel_tol, "ODE relative tolerance", [this](RunConfig& c) { c.rel_tol = rel_tol; });
        add(app, "--abs-tol", abs_tol, "ODE absolute tolerance", [this](RunConfig& c) { c.abs_tol = abs_tol; });
        add(app, "--temps-max-mode", temps_max_mode, "largest K in temps files",
            [this](RunConfig& c) { c.temps_max_mode = temps_max_mode; });
        add(app, "--density-time", density_time, "emit the density block at this time",
            [this](RunConfig& c) { c.density_time = density_time; });
        add(app, "--density-max-mode", density_max_mode, "largest mode in the density block",
            [this](RunConfig& c) { c.density_max_mode = density_max_mode; });
        add(app, "--oracle-dimension", oracle_dimension, "Fock basis size (0 = 200 up to N = 1, else 400)",
            [this](RunConfig& c) { c.oracle_dimension = oracle_dimension; });
        add(app, "--oracle-samples", oracle_samples, "number of sampled intervals",
            [this](RunConfig& c) { c.oracle_samples = oracle_samples; });
        add(app, "--oracle-max-mode", oracle_max_mode, "largest M compared",
            [this](RunConfig& c) { c.oracle_max_mode = oracle_max_mode; });
        add(app, "-o,--output", output, "output directory", [this](RunConfig& c) { c.output_dir = output; });
        add(app, "--emit", emit, "products to write: sigma bogoliubov transitions thermo entropy temps",
            [this](RunConfig& c) {
                nlohmann::json e = {{"sigma", false},      {"bogoliubov", false}, {"transitions", false},
                                    {"thermo", false},     {"entropy", false},    {"temps", false}};
                for (const auto& name : emit) {
                    if (!e.contains(name)) throw UsageError("--emit: unknown product '" + name + "'");
                    e[name] = true;
                }
                c = config_from_json({{"output", {{"emit", e}}}}, c);
            });
    }

    RunConfig build(RunConfig base) const {
        if (!config_path.empty()) base = load_config(config_path, std::move(base));
        for (const auto& [opt, apply] : setters)
            if (opt->count() > 0) apply(base);
        return base;
    }
};

void print_oracle(const OracleOutcome& o, std::ostream& out) {
    for (const auto& c : o.report.checks)
        out << (c.passed ? "ok   " : "FAIL ") << c.name << " measured=" << format_number(c.measured)
            << " tol=" << format_number(c.tolerance) << '\n';
    out << "report: " << o.report_path.string() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact dynamics and thermodynamics of an oscillator with time-dependent frequency", "tdho"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    Overrides sim_o, tr_o, rep_o, or_o, sw_o;
    auto* simulate = app.add_subcommand("simulate", "run the full pipeline for a config");
    sim_o.attach(simulate);

    auto* transitions = app.add_subcommand("transitions", "write transition tables (and an optional density block)");
    tr_o.attach(transitions);

    std::string example;
    auto* reproduce = app.add_subcommand("reproduce", "run a pinned example preset");
    reproduce->add_option("example", example, "example1 | example2")
        ->required()
        ->check(CLI::IsMember({"example1", "example2"}));
    rep_o.attach(reproduce);

    std::string oracle_preset;
    auto* oracle = app.add_subcommand("oracle-check", "compare closed forms against the Fock and quadrature oracles");
    oracle->add_option("--preset", oracle_preset, "start from example1 or example2")
        ->check(CLI::IsMember({"example1", "example2"}));
    or_o.attach(oracle);

    std::string parameter;
    std::vector<double> values;
    std::string sweep_preset;
    auto* sw = app.add_subcommand("sweep", "repeat a run over one parameter");
    sw->add_option("--parameter", parameter, "kappa | omega_target | N")
        ->required()
        ->check(CLI::IsMember({"kappa", "omega_target", "N"}));
    sw->add_option("--values", values, "values to run")->required()->delimiter(',');
    sw->add_option("--preset", sweep_preset, "start from example1 or example2")
        ->check(CLI::IsMember({"example1", "example2"}));
    sw_o.attach(sw);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (simulate->parsed()) {
            const RunResult r = run(sim_o.build({}), "simulate");
            out << "wrote " << r.files.size() << " files to " << r.directory.string() << '\n';
        } else if (transitions->parsed()) {
            RunConfig c = tr_o.build({});
            c.emit = EmitFlags{false, false, true, false, false, false, false};
            const RunResult r = run(c, "transitions");
            out << "wrote " << r.files.size() << " files to " << r.directory.string() << '\n';
        } else if (reproduce->parsed()) {
            const RunResult r = run(rep_o.build(preset(example)), "reproduce " + example);
            out << "wrote " << r.files.size() << " files to " << r.directory.string() << '\n';
        } else if (oracle->parsed()) {
            RunConfig base = oracle_preset.empty() ? RunConfig{} : preset(oracle_preset);
            if (!oracle_preset.empty()) base.output_dir = "out/oracle_" + oracle_preset;
            const OracleOutcome o = oracle_check(or_o.build(base));
            print_oracle(o, out);
            return o.report.all_passed() ? kSuccess : kOracleFailure;
        } else if (sw->parsed()) {
            RunConfig base = sweep_preset.empty() ? RunConfig{} : preset(sweep_preset);
            if (!sweep_preset.empty()) base.output_dir = "out/sweep_" + sweep_preset;
            const SweepResult s = sweep(sw_o.build(base), parameter, values);
            out << "wrote " << s.runs.size() << " runs and " << s.summary_path.string() << '\n';
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const UnsupportedParameter& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "consistency failure: " << e.what() << '\n';
        return kConsistency;
    }
    return kSuccess;
}

}  // namespace tdho::cli
