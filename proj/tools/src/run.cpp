#include "tdho_cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <stdexcept>

#include "tdho/entropy_temp.hpp"
#include "tdho/ermakov.hpp"
#include "tdho/errors.hpp"
#include "tdho/representations.hpp"
#include "tdho/thermo.hpp"
#include "tdho/transitions.hpp"
#include "tdho_cli/csv.hpp"

namespace tdho::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Modes this far below the largest probability add nothing visible to the truncated spectrum.
constexpr double kSpectrumCut = 1e-18;

std::string suffix(Representation rep, int N) { return std::string(to_string(rep)) + "_N" + std::to_string(N); }

ErmakovSolution solve_for(const RunConfig& cfg, const FrequencyProfile& profile, const std::vector<double>& grid) {
    const auto [t_ref, big_omega] = resolve_reference(cfg, profile);
    ErmakovOptions opts;
    opts.rel_tol = cfg.rel_tol;
    opts.abs_tol = cfg.abs_tol;
    opts.reference_time = t_ref;
    opts.reference_frequency = big_omega;
    opts.output_times = grid;
    return solve(profile, cfg.t_min, cfg.t_max, opts);
}

void write_sigma(const fs::path& dir, const ErmakovSolution& sol, const std::vector<double>& grid) {
    CsvWriter w(dir / "sigma.csv", {"t", "sigma", "sigma_dot", "tau"});
    for (double t : grid) {
        const ErmakovState s = sol.state(t);
        w << t << s.sigma << s.sigma_dot << s.tau;
        w.end_row();
    }
    w.close();
}

void write_bogoliubov(const fs::path& dir, const ErmakovSolution& sol, const std::vector<double>& grid,
                      const std::vector<Representation>& reps) {
    CsvWriter w(dir / "bogoliubov.csv",
                {"t", "rep", "re_alpha", "im_alpha", "re_beta", "im_beta", "r", "theta_alpha", "theta_beta"});
    for (auto rep : reps) {
        for (const BogoliubovSet& b : bogoliubov_series(sol, rep, grid)) {
            w << b.t << to_string(rep) << b.alpha.real() << b.alpha.imag() << b.beta.real() << b.beta.imag() << b.r
              << b.theta_alpha << b.theta_beta;
            w.end_row();
        }
    }
    w.close();
}

void write_thermo(const fs::path& path, int N, const std::vector<ThermoRecord>& records) {
    CsvWriter w(path, {"t", "N", "N0", "N_omega", "N_inv", "E", "eps0", "Qdot_0", "Wdot_0", "Qdot_omega",
                       "Wdot_omega", "Qdot_I", "Wdot_I", "Q_0", "W_0", "Q_omega", "W_omega", "W_I"});
    for (const ThermoRecord& r : records) {
        w << r.t << N << r.N0 << r.N_omega << r.N_inv << r.E << r.eps0 << r.Qdot_0 << r.Wdot_0 << r.Qdot_omega
          << r.Wdot_omega << r.Qdot_I << r.Wdot_I << r.Q_0 << r.W_0 << r.Q_omega << r.W_omega << r.W_I;
        w.end_row();
    }
    w.close();
}

void write_transitions(const fs::path& path, const TransitionTable& table) {
    CsvWriter w(path, {"t", "N", "M", "P"});
    for (std::size_t ti = 0; ti < table.n_times(); ++ti) {
        for (std::size_t mi = 0; mi < table.n_modes(); ++mi) {
            w << table.times[ti] << table.N << table.modes[mi] << table.at(ti, mi);
            w.end_row();
        }
    }
    w.close();
}

void write_density(const fs::path& path, const DensityBlock& block) {
    CsvWriter w(path, {"t", "I", "J", "Re", "Im"});
    for (std::size_t i = 0; i < block.size(); ++i) {
        for (std::size_t j = 0; j < block.size(); ++j) {
            const auto v = block.at(i, j);
            w << block.t << block.modes[i] << block.modes[j] << v.real() << v.imag();
            w.end_row();
        }
    }
    w.close();
}

double heat_rate(const RateBundle& r, Representation rep) {
    switch (rep) {
        case Representation::Initial: return r.Qdot_0;
        case Representation::Diagonal: return r.Qdot_omega;
        case Representation::Invariant: return r.Qdot_I;
    }
    return 0.0;
}

double truncated_vn(const ErmakovSolution& sol, const TransitionTable& table, std::size_t ti) {
    const auto row = table.row(ti);
    const double top = row.empty() ? 0.0 : *std::max_element(row.begin(), row.end());
    std::vector<int> modes;
    for (std::size_t mi = 0; mi < row.size(); ++mi)
        if (row[mi] > kSpectrumCut * top) modes.push_back(table.modes[mi]);
    if (modes.size() <= 1) return 0.0;
    return von_neumann_trunc(density_block(sol, table.representation, table.N, table.times[ti], modes));
}

/// Writes entropy and temperature files for one table; returns the largest defined T_macr.
std::optional<double> write_entropy_temps(const fs::path& dir, const RunConfig& cfg, const ErmakovSolution& sol,
                                          const TransitionTable& table, std::vector<std::string>& files) {
    const Representation rep = table.representation;
    std::optional<double> max_T;
    if (cfg.emit.entropy) {
        const std::string name = "entropy_" + suffix(rep, table.N) + ".csv";
        CsvWriter w(dir / name, {"t", "rep", "S_d", "S_vN_trunc", "Sdot_d", "T_macr", "T_emergent", "tail_mass"});
        for (std::size_t ti = 0; ti < table.n_times(); ++ti) {
            const double t = table.times[ti];
            const double S = diagonal_entropy(table, ti);
            const double Sdot = entropy_rate(table, ti);
            const auto T = macroscopic_temperature(heat_rate(heat_work_rates(sol, table.N, t), rep), Sdot);
            if (T && (!max_T || *T > *max_T)) max_T = T;
            const double omega_rep = representation_frequency(sol, rep, t);
            w << t << to_string(rep) << S << truncated_vn(sol, table, ti) << Sdot << T
              << emergent_temperature(table.coefficients[ti], omega_rep) << table.tail_mass[ti];
            w.end_row();
        }
        w.close();
        files.push_back(name);
    }
    if (cfg.emit.temps && rep != Representation::Invariant) {
        const std::string name = "temps_" + suffix(rep, table.N) + ".csv";
        CsvWriter w(dir / name, {"t", "rep", "K", "T_K", "T_K_half", "T_K_th"});
        for (std::size_t ti = 0; ti < table.n_times(); ++ti) {
            const ModeTemps mt = mode_temperatures(table, ti, representation_frequency(sol, rep, table.times[ti]));
            for (std::size_t k = 0; k < mt.K.size(); ++k) {
                if (mt.K[k] > cfg.temps_max_mode) break;
                w << mt.t << to_string(rep) << mt.K[k] << mt.T_K[k] << mt.T_K_half[k] << mt.T_K_th[k];
                w.end_row();
            }
        }
        w.close();
        files.push_back(name);
    }
    return max_T;
}

struct TaskOutput {
    RunSummary summary;
    std::vector<std::string> files;
};

TaskOutput run_one_N(const fs::path& dir, const RunConfig& cfg, const ErmakovSolution& sol,
                     const std::vector<double>& grid, int N) {
    TaskOutput out;
    out.summary.N = N;
    const std::vector<ThermoRecord> thermo = thermo_series(sol, N, grid);
    std::vector<double> n0(thermo.size());
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < thermo.size(); ++i) {
        n0[i] = thermo[i].N0;
        peak = std::max(peak, thermo[i].N_omega);
    }
    out.summary.peak_N_omega = peak;
    out.summary.asymptotic_N0 = trailing_mean(grid, n0);
    if (cfg.emit.thermo) {
        const std::string name = "thermo_N" + std::to_string(N) + ".csv";
        write_thermo(dir / name, N, thermo);
        out.files.push_back(name);
    }

    const bool need_tables = cfg.emit.transitions || cfg.emit.entropy || cfg.emit.temps || cfg.density_time;
    if (!need_tables) return out;
    const TableOptions topts{cfg.tail_tol, cfg.max_mode};
    for (auto rep : cfg.representations) {
        const TransitionTable table = probability_table(sol, rep, N, grid, topts);
        if (cfg.emit.transitions) {
            const std::string name = "transitions_" + suffix(rep, N) + ".csv";
            write_transitions(dir / name, table);
            out.files.push_back(name);
        }
        const auto max_T = write_entropy_temps(dir, cfg, sol, table, out.files);
        if (rep == Representation::Initial) out.summary.max_T_macr_initial = max_T;
        if (rep == Representation::Diagonal) out.summary.max_T_macr_diagonal = max_T;
        if (cfg.density_time) {
            const std::string name = "density_" + suffix(rep, N) + ".csv";
            write_density(dir / name, density_block(sol, rep, N, *cfg.density_time, cfg.density_max_mode));
            out.files.push_back(name);
        }
    }
    return out;
}

}  // namespace

void write_manifest(const fs::path& dir, const std::string& command, const RunConfig& cfg,
                    const std::vector<std::string>& files, const json& extra) {
    json m;
    m["tool"] = "tdho";
    m["version"] = kToolVersion;
    m["command"] = command;
    m["config"] = config_to_json(cfg);
    for (const auto& [k, v] : extra.items()) m[k] = v;
    m["files"] = json::array();
    for (const auto& f : files) {
        const fs::path p = dir / f;
        m["files"].push_back({{"name", f}, {"bytes", fs::file_size(p)}, {"sha256", sha256_file(p)}});
    }
    std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
    out << m.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing " + (dir / "manifest.json").string());
}

RunResult run(const RunConfig& cfg, const std::string& command) {
    validate(cfg);
    const FrequencyProfile profile = make_profile(cfg.profile);
    const std::vector<double> grid = uniform_grid(cfg.t_min, cfg.t_max, cfg.n_out);
    const ErmakovSolution sol = solve_for(cfg, profile, grid);

    RunResult result;
    result.directory = cfg.output_dir;
    result.reference_time = sol.reference_time();
    result.reference_frequency = sol.reference_frequency();
    fs::create_directories(cfg.output_dir);

    if (cfg.emit.sigma) {
        write_sigma(cfg.output_dir, sol, grid);
        result.files.emplace_back("sigma.csv");
    }
    if (cfg.emit.bogoliubov) {
        write_bogoliubov(cfg.output_dir, sol, grid, cfg.representations);
        result.files.emplace_back("bogoliubov.csv");
    }

    std::vector<std::future<TaskOutput>> tasks;
    for (int N : cfg.N)
        tasks.push_back(std::async(std::launch::async, run_one_N, std::cref(cfg.output_dir), std::cref(cfg),
                                   std::cref(sol), std::cref(grid), N));
    // Every future is drained before rethrowing so no task outlives the solution it reads.
    std::exception_ptr failure;
    for (auto& task : tasks) {
        try {
            TaskOutput out = task.get();
            result.summaries.push_back(out.summary);
            result.files.insert(result.files.end(), out.files.begin(), out.files.end());
        } catch (...) {
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    std::sort(result.files.begin(), result.files.end());
    result.files.erase(std::unique(result.files.begin(), result.files.end()), result.files.end());
    write_manifest(cfg.output_dir, command, cfg, result.files,
                   {{"reference", {{"time", result.reference_time}, {"frequency", result.reference_frequency}}}});
    return result;
}

OracleOutcome oracle_check(const RunConfig& cfg) {
    validate(cfg);
    for (int N : cfg.N)
        if (N > 8) throw UsageError("N: oracle checks are limited to N <= 8");
    int D = cfg.oracle_dimension;
    if (D == 0) {
        const int n_max = *std::max_element(cfg.N.begin(), cfg.N.end());
        D = n_max <= 1 ? 200 : 400;
    }
    if (D < 20 || D > 400) throw UsageError("oracle.dimension: must lie in [20, 400]");

    const FrequencyProfile profile = make_profile(cfg.profile);
    const std::vector<double> grid = uniform_grid(cfg.t_min, cfg.t_max, cfg.n_out);
    const ErmakovSolution sol = solve_for(cfg, profile, grid);
    const std::vector<double> samples = uniform_grid(cfg.t_min, cfg.t_max, static_cast<std::size_t>(cfg.oracle_samples) + 1);
    const std::vector<double> few = uniform_grid(cfg.t_min, cfg.t_max, 5);
    const double big_omega = sol.reference_frequency();

    OracleOutcome outcome;
    outcome.dimension = D;
    OracleReport& rep = outcome.report;

    double norm_dev = 0.0;
    for (auto r : {Representation::Initial, Representation::Diagonal})
        for (double t : grid) {
            const BogoliubovSet b = bogoliubov(sol, r, t);
            norm_dev = std::max(norm_dev, std::abs(b.alpha_mod * b.alpha_mod - b.beta_mod * b.beta_mod - 1.0));
        }
    rep.add("bogoliubov_normalization", norm_dev, 1e-9);

    for (int N : cfg.N) {
        const std::string tag = "[N=" + std::to_string(N) + "]";
        double energy_dev = 0.0;
        for (double t : grid) energy_dev = std::max(energy_dev, energy_unchecked(sol, N, t).max_rel_discrepancy);
        rep.add("energy_forms" + tag, energy_dev, 1e-8);

        FockOptions fopts;
        fopts.dimension = D;
        fopts.rel_tol = cfg.rel_tol * 0.1;
        fopts.abs_tol = cfg.abs_tol;
        fopts.reference_time = sol.reference_time();
        fopts.reference_frequency = big_omega;
        std::vector<FockState> states;
        try {
            states = evolve_fock(profile, N, samples, fopts);
        } catch (const DimensionError&) {
            rep.add("fock_basis_leak" + tag, std::numeric_limits<double>::infinity(), 1e-10);
            continue;
        } catch (const IntegrationError&) {
            rep.add("fock_integration" + tag, std::numeric_limits<double>::infinity(), 0.0);
            continue;
        }
        const int m_max = std::min(cfg.oracle_max_mode, D - 1);
        double fock_norm = 0.0, prob_dev = 0.0, parity = 0.0, leak = 0.0, fock_e = 0.0, mean_dev = 0.0;
        for (const FockState& s : states) {
            fock_norm = std::max(fock_norm, std::abs(s.norm_sq() - 1.0));
            leak = std::max(leak, s.top_band_mass());
            const BogoliubovSet b = bogoliubov(sol, Representation::Initial, s.t);
            for (int M = 0; M <= m_max; ++M) {
                if ((M - N) % 2 != 0) {
                    parity = std::max(parity, s.probability(M));
                    continue;
                }
                prob_dev = std::max(prob_dev, std::abs(s.probability(M) - transition_probability(b, N, M)));
            }
            mean_dev = std::max(mean_dev, std::abs(s.mean_occupation() - occupations(sol, N, s.t).N0));
            const double e = energy_unchecked(sol, N, s.t).invariant;
            fock_e = std::max(fock_e, std::abs(fock_energy(profile, big_omega, s) - e) / std::abs(e));
        }
        rep.add("fock_normalization" + tag, fock_norm, 1e-8);
        rep.add("fock_vs_closed_form" + tag, prob_dev, 1e-6);
        rep.add("fock_parity" + tag, parity, 1e-10);
        rep.add("fock_top_band" + tag, leak, 1e-10);
        rep.add("fock_energy" + tag, fock_e, 1e-8);
        rep.add("fock_mean_occupation" + tag, mean_dev, 1e-6);

        double diag_dev = 0.0;
        for (std::size_t k = 0; k < states.size(); k += std::max<std::size_t>(1, states.size() / 4)) {
            const FockState& s = states[k];
            const std::vector<double> proj = diagonal_projection(profile, big_omega, s);
            const BogoliubovSet b = bogoliubov(sol, Representation::Diagonal, s.t);
            for (int M = 0; M <= m_max && M < static_cast<int>(proj.size()); ++M)
                diag_dev = std::max(diag_dev, std::abs(proj[static_cast<std::size_t>(M)] - transition_probability(b, N, M)));
        }
        rep.add("fock_diagonal_projection" + tag, diag_dev, 1e-6);

        double quad_dev = 0.0;
        constexpr int kQuadMaxMode = 40;
        for (auto r : {Representation::Initial, Representation::Diagonal})
            for (double t : few) {
                const BogoliubovSet b = bogoliubov(sol, r, t);
                for (int M = N % 2; M <= kQuadMaxMode; M += 2) {
                    const auto q = overlap_quadrature(sol, r, N, M, t, 2 * (kQuadMaxMode + N) + 20);
                    quad_dev = std::max(quad_dev, std::abs(q - matrix_element(b, N, M)));
                }
            }
        rep.add("quadrature_amplitude" + tag, quad_dev, 1e-8);

        double residual = 0.0, wf_norm = 0.0, ortho = 0.0;
        for (double frac : {0.25, 0.5, 0.75}) {
            const double t = cfg.t_min + frac * (cfg.t_max - cfg.t_min);
            const WavefunctionReport w = check_invariant_wavefunction(sol, N, t, wavefunction_grid(sol, N, t));
            residual = std::max(residual, w.schrodinger_residual);
            wf_norm = std::max(wf_norm, w.norm_error);
            ortho = std::max(ortho, w.max_overlap_offdiag);
        }
        rep.add("wavefunction_norm" + tag, wf_norm, 1e-8);
        rep.add("wavefunction_schrodinger_residual" + tag, residual, 1e-4);
        rep.add("wavefunction_orthogonality" + tag, ortho, 1e-8);
    }

    fs::create_directories(cfg.output_dir);
    outcome.report_path = cfg.output_dir / "oracle_report.json";
    std::ofstream out(outcome.report_path, std::ios::binary | std::ios::trunc);
    out << report_to_json(outcome).dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing " + outcome.report_path.string());
    return outcome;
}

json report_to_json(const OracleOutcome& outcome) {
    json j;
    j["tool"] = "tdho";
    j["version"] = kToolVersion;
    j["dimension"] = outcome.dimension;
    j["passed"] = outcome.report.all_passed();
    j["checks"] = json::array();
    for (const auto& c : outcome.report.checks) {
        json cj = {{"name", c.name}, {"tolerance", c.tolerance}, {"passed", c.passed}};
        cj["measured"] = std::isfinite(c.measured) ? json(c.measured) : json("inf");
        j["checks"].push_back(cj);
    }
    return j;
}

SweepResult sweep(const RunConfig& base, const std::string& parameter, const std::vector<double>& values) {
    if (parameter != "kappa" && parameter != "omega_target" && parameter != "N")
        throw UsageError("sweep: parameter must be kappa, omega_target or N");
    if (values.empty()) throw UsageError("sweep: need at least one value");
    SweepResult result;
    result.directory = base.output_dir;
    fs::create_directories(base.output_dir);
    std::vector<std::string> files;
    for (std::size_t i = 0; i < values.size(); ++i) {
        RunConfig cfg = base;
        const double v = values[i];
        if (parameter == "kappa") {
            cfg.profile.kappa = v;
        } else if (parameter == "omega_target") {
            cfg.profile.omega_target = v;
        } else {
            if (v < 0.0 || v != std::floor(v)) throw UsageError("sweep: N values must be nonnegative integers");
            cfg.N = {static_cast<int>(v)};
        }
        const std::string sub = parameter + "_" + std::to_string(i);
        cfg.output_dir = base.output_dir / sub;
        RunResult r = run(cfg, "sweep");
        for (const auto& f : r.files) files.push_back(sub + "/" + f);
        files.push_back(sub + "/manifest.json");
        result.runs.push_back(std::move(r));
    }
    result.summary_path = base.output_dir / "summary.csv";
    CsvWriter w(result.summary_path, {"index", "parameter", "value", "N", "peak_N_omega", "asymptotic_N0",
                                      "max_T_macr_initial", "max_T_macr_diagonal"});
    for (std::size_t i = 0; i < values.size(); ++i)
        for (const RunSummary& s : result.runs[i].summaries) {
            w << i << parameter << values[i] << s.N << s.peak_N_omega << s.asymptotic_N0 << s.max_T_macr_initial
              << s.max_T_macr_diagonal;
            w.end_row();
        }
    w.close();
    files.insert(files.begin(), "summary.csv");
    json extra = {{"sweep", {{"parameter", parameter}, {"values", values}}}};
    write_manifest(base.output_dir, "sweep", base, files, extra);
    return result;
}

}  // namespace tdho::cli
