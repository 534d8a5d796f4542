#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cqed/dynamics.hpp"
#include "cqed/operators.hpp"

namespace cqed {

enum class ScenarioId { oh_1e, oh_2e, phonon_grid, hbond };

std::string to_string(ScenarioId id);
ScenarioId scenario_from_string(const std::string& name);

// Requested dissipation channel. type is "photon-escape", "phonon-escape",
// or a mode label; rate <= 0 selects the default 0.1 * g_mol.
struct ChannelSpec {
    std::string type;
    double rate = 0.0;
};

struct ScenarioConfig {
    ScenarioId scenario = ScenarioId::oh_1e;
    CouplingSpec coupling;

    // Per-label cutoffs; the kind keys "photon" and "phonon" act as defaults.
    std::map<std::string, int> cutoffs;

    // phonon_grid
    int grid_k = 3;
    int grid_atoms = 2;
    std::vector<int> initial_cells;  // empty -> cells 0..atoms-1

    // initial occupations / register values
    int initial_phonons = 2;
    int initial_photons = 0;
    std::string initial_orbital = "O";  // oh_1e: O | H | psi0 | psi1
    int initial_a_mol = 2;              // hbond
    int initial_a_spin = 1;
    int initial_b = 1;

    double horizon = 0.0;  // 0 -> scenario default
    std::size_t samples = 0;
    double dt = 0.0;       // 0 -> 0.01 / omega

    std::vector<ChannelSpec> channels;

    int cutoff_for(const std::string& label, ModeKind kind) const;
    double default_rate() const { return 0.1 * coupling.g_mol; }
    double effective_dt() const { return dt > 0.0 ? dt : 0.01 / coupling.omega; }
};

ScenarioConfig default_config(ScenarioId id);

// Everything a solver needs for one scenario run.
struct ScenarioBundle {
    SpacePtr space;
    SparseOperator hamiltonian;
    std::vector<LindbladChannel> channels;
    StateVector initial;
    std::vector<Observable> observables;
    // Index groups whose observables sum to the identity.
    std::vector<std::vector<std::size_t>> partitions;
    ScenarioConfig config;
    std::string name;
};

ScenarioBundle build_scenario(const ScenarioConfig& cfg);
ScenarioBundle build_oh_1e(const ScenarioConfig& cfg);
ScenarioBundle build_oh_2e(const ScenarioConfig& cfg);
ScenarioBundle build_phonon_grid(const ScenarioConfig& cfg);
ScenarioBundle build_hbond(const ScenarioConfig& cfg);

}  // namespace cqed
