#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

#include "cqed/config.hpp"
#include "cqed/output.hpp"
#include "cqed/reduction.hpp"
#include "cqed/stats.hpp"

namespace {

using namespace cqed;

// Flag values gathered before merging onto the config-file manifest.
struct CliOverrides {
    std::string config_path;
    std::string scenario;
    std::string solver;
    std::vector<std::string> channels;
    double reduce = 0.0;
    bool compare_full = false;
    std::string out_dir = ".";
    double horizon = 0.0;
    long samples = 0;
    double dt = 0.0;
    std::optional<bool> plot;
};

RunManifest make_manifest(const CliOverrides& cli) {
    RunManifest m;
    if (!cli.config_path.empty()) {
        m = manifest_from_json(load_json_file(cli.config_path));
    } else {
        require(!cli.scenario.empty(), ErrorCode::config,
                "either --config or --scenario is required");
        m.config = default_config(scenario_from_string(cli.scenario));
    }
    if (!cli.scenario.empty() && !cli.config_path.empty())
        require(cli.scenario == to_string(m.config.scenario), ErrorCode::config,
                "--scenario disagrees with the config file");
    if (!cli.solver.empty()) {
        require(cli.solver == "closed" || cli.solver == "lindblad", ErrorCode::config,
                "--solver: expected 'closed' or 'lindblad'");
        m.solver = cli.solver;
    }
    for (const auto& spec : cli.channels) {
        ChannelSpec ch;
        if (const auto colon = spec.find(':'); colon != std::string::npos) {
            ch.type = spec.substr(0, colon);
            try {
                ch.rate = std::stod(spec.substr(colon + 1));
            } catch (const std::exception&) {
                fail(ErrorCode::config, "--channel: bad rate in '" + spec + "'");
            }
        } else {
            ch.type = spec;
        }
        m.config.channels.push_back(std::move(ch));
    }
    if (cli.reduce > 0.0) {
        require(cli.reduce <= 1.0, ErrorCode::config, "--reduce: must be in (0, 1]");
        m.reduction.enabled = true;
        m.reduction.keep_fraction = cli.reduce;
    }
    if (cli.compare_full) {
        require(m.reduction.enabled, ErrorCode::config,
                "--compare-full needs --reduce or a reduction block in the config");
        m.reduction.compare_full = true;
    }
    if (cli.horizon > 0.0) m.config.horizon = cli.horizon;
    if (cli.samples > 0) m.config.samples = static_cast<std::size_t>(cli.samples);
    if (cli.dt > 0.0) m.config.dt = cli.dt;
    if (cli.plot) m.output.plot = *cli.plot;
    m.out_dir = cli.out_dir;
    return m;
}

TimeSeries solve(const RunManifest& m, const ScenarioBundle& bundle,
                 const SparseOperator& h, const std::vector<LindbladChannel>& channels,
                 const StateVector& psi0, const std::vector<Observable>& observables,
                 const std::vector<double>& times, const EigenSystem* es) {
    if (m.solver == "closed") {
        const ClosedRun run =
            evolve_closed(h, psi0, times, bundle.config.coupling.hbar, es);
        return sample_observables(run, observables);
    }
    const OpenRun run = evolve_lindblad(h, channels, DensityMatrix::pure(psi0), times,
                                        bundle.config.effective_dt(),
                                        bundle.config.coupling.hbar);
    return sample_observables(run, observables);
}

int cmd_run(const CliOverrides& cli) {
    const RunManifest m = make_manifest(cli);
    std::filesystem::create_directories(m.out_dir);
    const ScenarioBundle bundle = build_scenario(m.config);
    const auto times = sample_times(m.config.horizon, m.config.samples);

    // The spectral factorization is shared by the full run and the pilot.
    std::optional<EigenSystem> es;
    const bool needs_eigen =
        m.solver == "closed" || (m.reduction.enabled && m.reduction.pilot == "closed");
    if (needs_eigen) es = eigendecompose(bundle.hamiltonian);
    const EigenSystem* esp = es ? &*es : nullptr;

    TimeSeries series;
    ReductionReport report;
    if (!m.reduction.enabled) {
        series = solve(m, bundle, bundle.hamiltonian, bundle.channels, bundle.initial,
                       bundle.observables, times, esp);
    } else {
        // Pilot run over the full horizon feeds the amplitude profile.
        std::vector<double> profile;
        const auto pilot_times = sample_times(m.config.horizon, m.reduction.pilot_samples);
        if (m.reduction.pilot == "closed") {
            profile = amplitude_profile(evolve_closed(
                bundle.hamiltonian, bundle.initial, pilot_times,
                m.config.coupling.hbar, esp));
        } else {
            profile = amplitude_profile(evolve_lindblad(
                bundle.hamiltonian, bundle.channels, DensityMatrix::pure(bundle.initial),
                pilot_times, m.config.effective_dt(), m.config.coupling.hbar));
        }
        const std::size_t initial_index = [&] {
            double best = -1.0;
            std::size_t arg = 0;
            for (std::size_t i = 0; i < bundle.initial.amp.size(); ++i)
                if (std::abs(bundle.initial.amp[i]) > best) {
                    best = std::abs(bundle.initial.amp[i]);
                    arg = i;
                }
            return arg;
        }();
        const auto seeds = select_top(profile, m.reduction.keep_fraction, initial_index);
        const ReducedSpace reduced =
            repair_connectivity(bundle.hamiltonian, seeds, initial_index);

        double discarded = 0.0;
        const SparseOperator h_r = project(bundle.hamiltonian, reduced);
        const StateVector psi_r = project(bundle.initial, reduced, &discarded);
        if (discarded > 1e-6)
            std::cerr << "warning: projection discards " << discarded
                      << " of the initial state's weight\n";
        const auto channels_r = project(bundle.channels, reduced);
        std::vector<Observable> obs_r;
        for (const auto& o : bundle.observables) obs_r.push_back(project(o, reduced));

        report.dim_full = bundle.space->dim();
        report.dim_kept = seeds.size();
        report.dim_reduced = reduced.dim();
        report.repair_iterations = reduced.repair_iterations;
        report.seed_count = reduced.count(Provenance::seed_amplitude);
        report.repair_added = reduced.count(Provenance::neighbor_repair);
        report.fallback_component = reduced.fallback_component;
        report.keep_fraction = m.reduction.keep_fraction;
        report.discarded_weight = discarded;

        const TimeSeries reduced_series =
            solve(m, bundle, h_r, channels_r, psi_r, obs_r, times, nullptr);
        if (m.reduction.compare_full) {
            series = solve(m, bundle, bundle.hamiltonian, bundle.channels, bundle.initial,
                           bundle.observables, times, esp);
            for (std::size_t c = 0; c < reduced_series.labels.size(); ++c) {
                ReductionComparison cmp;
                cmp.label = reduced_series.labels[c];
                cmp.stable_full = stats::trailing_mean(series.columns[c], 0.1);
                cmp.stable_reduced = stats::trailing_mean(reduced_series.columns[c], 0.1);
                cmp.offset = cmp.stable_reduced - cmp.stable_full;
                cmp.pearson = stats::pearson(series.columns[c], reduced_series.columns[c]);
                report.comparison.push_back(cmp);
                series.labels.push_back(reduced_series.labels[c] + "_reduced");
                series.columns.push_back(reduced_series.columns[c]);
            }
        } else {
            series = reduced_series;
        }
    }

    const auto out = std::filesystem::path(m.out_dir);
    write_csv((out / "series.csv").string(), series);
    write_series_json((out / "series.json").string(), series, manifest_to_json(m));
    if (m.output.plot) write_svg((out / "plot.svg").string(), series, bundle.name);
    if (m.reduction.enabled) write_reduction_json((out / "reduction.json").string(), report);

    std::cout << "wrote " << (out / "series.csv").string() << " (" << series.times.size()
              << " samples, " << series.labels.size() << " observables)\n";
    if (m.reduction.enabled)
        std::cout << "reduction: kept " << report.dim_reduced << " of " << report.dim_full
                  << " states (seeds " << report.dim_kept << ", repair iterations "
                  << report.repair_iterations << ")\n";
    return 0;
}

int cmd_validate(const CliOverrides& cli) {
    const RunManifest m = make_manifest(cli);
    const ValidationReport report = validate_manifest(m);
    for (const auto& w : report.warnings) std::cout << "warning: " << w << '\n';
    std::cout << "OK, dim=" << report.dim << '\n';
    return 0;
}

int cmd_list() {
    std::cout
        << "oh_1e        one electron in an O-H double well coupled to a cavity mode\n"
        << "oh_2e        two opposite-spin electrons, one photon mode per spin sector\n"
        << "phonon_grid  monovalent atoms on a k x k grid; phonons drive bond formation\n"
        << "hbond        hydrogen bond between two water molecules, three electrons\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-dimensional cavity-QED chemistry simulator"};
    app.require_subcommand(1);

    CliOverrides cli;
    auto add_common = [&cli](CLI::App* cmd) {
        cmd->add_option("--config", cli.config_path, "JSON config file");
        cmd->add_option("--scenario", cli.scenario, "scenario id (see list-scenarios)");
    };

    CLI::App* run = app.add_subcommand("run", "run a scenario and write series artifacts");
    add_common(run);
    run->add_option("--solver", cli.solver, "closed | lindblad");
    run->add_option("--channel", cli.channels,
                    "dissipation channel, e.g. photon-escape or photon-escape:0.002");
    run->add_option("--reduce", cli.reduce, "keep fraction for state-space selection");
    run->add_flag("--compare-full", cli.compare_full,
                  "also run the full space and emit both curves");
    run->add_option("--out", cli.out_dir, "output directory");
    run->add_option("--horizon", cli.horizon, "time horizon");
    run->add_option("--samples", cli.samples, "number of samples");
    run->add_option("--dt", cli.dt, "integrator step (lindblad)");
    bool plot_on = false, plot_off = false;
    run->add_flag("--plot", plot_on, "write plot.svg (default)");
    run->add_flag("--no-plot", plot_off, "skip plot.svg");

    CLI::App* validate = app.add_subcommand("validate", "check a config without running");
    add_common(validate);

    app.add_subcommand("list-scenarios", "print the available scenarios");

    CLI11_PARSE(app, argc, argv);
    if (plot_on) cli.plot = true;
    if (plot_off) cli.plot = false;

    try {
        if (run->parsed()) return cmd_run(cli);
        if (validate->parsed()) return cmd_validate(cli);
        return cmd_list();
    } catch (const cqed::SimError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
