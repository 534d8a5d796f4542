#include "cqed/models.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cqed {

std::string to_string(ScenarioId id) {
    switch (id) {
        case ScenarioId::oh_1e: return "oh_1e";
        case ScenarioId::oh_2e: return "oh_2e";
        case ScenarioId::phonon_grid: return "phonon_grid";
        case ScenarioId::hbond: return "hbond";
    }
    fail(ErrorCode::logic, "bad scenario id");
}

ScenarioId scenario_from_string(const std::string& name) {
    if (name == "oh_1e") return ScenarioId::oh_1e;
    if (name == "oh_2e") return ScenarioId::oh_2e;
    if (name == "phonon_grid") return ScenarioId::phonon_grid;
    if (name == "hbond") return ScenarioId::hbond;
    fail(ErrorCode::config, "unknown scenario '" + name +
                                "'; expected oh_1e, oh_2e, phonon_grid or hbond");
}

int ScenarioConfig::cutoff_for(const std::string& label, ModeKind kind) const {
    if (auto it = cutoffs.find(label); it != cutoffs.end()) return it->second;
    const std::string kind_key = kind == ModeKind::photon ? "photon" : "phonon";
    if (auto it = cutoffs.find(kind_key); it != cutoffs.end()) return it->second;
    return kind == ModeKind::photon ? 2 : 3;
}

ScenarioConfig default_config(ScenarioId id) {
    ScenarioConfig cfg;
    cfg.scenario = id;
    switch (id) {
        case ScenarioId::oh_1e:
            cfg.horizon = 1000.0;
            cfg.samples = 500;
            break;
        case ScenarioId::oh_2e:
            cfg.horizon = 1000.0;
            cfg.samples = 500;
            break;
        case ScenarioId::phonon_grid:
            cfg.coupling.g_tun = 0.05;
            cfg.coupling.g_cov = 0.1;
            cfg.horizon = 400.0;
            cfg.samples = 1024;
            break;
        case ScenarioId::hbond:
            cfg.coupling.g_tun = 0.05;
            cfg.coupling.g_cov = 0.1;
            cfg.cutoffs["b"] = 2;  // one quantum of headroom above the initial phonon
            cfg.horizon = 400.0;
            cfg.samples = 400;
            break;
    }
    return cfg;
}

namespace {

void validate_common(const ScenarioConfig& cfg) {
    cfg.coupling.validate();
    require(cfg.horizon > 0.0, ErrorCode::config, "horizon: must be > 0");
    require(cfg.samples >= 2, ErrorCode::config, "samples: must be >= 2");
    for (const auto& [label, cutoff] : cfg.cutoffs)
        require(cutoff >= 1, ErrorCode::config, "cutoffs." + label + ": must be >= 1");
}

std::vector<LindbladChannel> resolve_channels(const HilbertSpace& space,
                                              const ScenarioConfig& cfg) {
    std::vector<LindbladChannel> out;
    for (const auto& spec : cfg.channels) {
        const double rate = spec.rate > 0.0 ? spec.rate : cfg.default_rate();
        require(rate >= 0.0, ErrorCode::config, "channel rate must be >= 0");
        std::vector<std::string> labels;
        if (spec.type == "photon-escape" || spec.type == "phonon-escape") {
            const ModeKind kind =
                spec.type == "photon-escape" ? ModeKind::photon : ModeKind::phonon;
            for (const auto& m : space.modes())
                if (m.kind == kind) labels.push_back(m.label);
            require(!labels.empty(), ErrorCode::config,
                    "channel '" + spec.type + "': scenario has no such mode");
        } else {
            require(space.find_field(spec.type).has_value(), ErrorCode::config,
                    "channel '" + spec.type + "': unknown mode label");
            labels.push_back(spec.type);
        }
        for (const auto& label : labels)
            out.push_back({ladder(space, label, LadderDirection::annihilate), rate,
                           "escape(" + label + ")"});
    }
    return out;
}

// Energy-basis coordinates of the requested single-electron start state.
std::array<double, 2> orbital_coords(const CouplingSpec& c, const std::string& name) {
    if (name == "psi0") return {1.0, 0.0};
    if (name == "psi1") return {0.0, 1.0};
    if (name == "O") return {c.alpha, -c.beta};
    if (name == "H") return {c.beta, c.alpha};
    fail(ErrorCode::config, "initial.orbital: expected O, H, psi0 or psi1, got '" + name + "'");
}

}  // namespace

ScenarioBundle build_scenario(const ScenarioConfig& cfg) {
    switch (cfg.scenario) {
        case ScenarioId::oh_1e: return build_oh_1e(cfg);
        case ScenarioId::oh_2e: return build_oh_2e(cfg);
        case ScenarioId::phonon_grid: return build_phonon_grid(cfg);
        case ScenarioId::hbond: return build_hbond(cfg);
    }
    fail(ErrorCode::logic, "bad scenario id");
}

ScenarioBundle build_oh_1e(const ScenarioConfig& cfg) {
    validate_common(cfg);
    const int cutoff = cfg.cutoff_for("ph", ModeKind::photon);
    auto space = enumerate_space({{ModeKind::photon, cutoff, "ph"}},
                                 {{RegisterKind::orbital, 2, "orb"}});
    require(cfg.initial_photons >= 0 && cfg.initial_photons <= cutoff, ErrorCode::config,
            "initial.photons: outside the photon cutoff");

    ScenarioBundle b;
    b.space = space;
    b.config = cfg;
    b.name = "oh_1e";
    b.hamiltonian = build_jc_rwa(*space, cfg.coupling);
    b.channels = resolve_channels(*space, cfg);

    const auto coords = orbital_coords(cfg.coupling, cfg.initial_orbital);
    std::vector<Complex> amp(space->dim(), Complex(0.0, 0.0));
    for (int level = 0; level < 2; ++level) {
        if (coords[level] == 0.0) continue;
        BasisState s;
        s.fields = {static_cast<std::uint8_t>(cfg.initial_photons),
                    static_cast<std::uint8_t>(level)};
        amp[space->index_of(s)] = coords[level];
    }
    b.initial = StateVector::from_amplitudes(space, std::move(amp));

    auto [p_o, p_h] = site_projectors(*space, cfg.coupling, "orb");
    b.observables.push_back({std::move(p_o), "P_O"});
    b.observables.push_back({std::move(p_h), "P_H"});
    b.observables.push_back({number_op(*space, "ph"), "n_photon"});
    b.partitions.push_back({0, 1});
    return b;
}

ScenarioBundle build_oh_2e(const ScenarioConfig& cfg) {
    validate_common(cfg);
    const int cutoff = cfg.cutoff_for("ph_up", ModeKind::photon);
    // Spin registers hold the fixed, opposite spin directions; the constraint
    // freezes them so they are carried but never acted on.
    auto space = enumerate_space(
        {{ModeKind::photon, cutoff, "ph_up"}, {ModeKind::photon, cutoff, "ph_dn"}},
        {{RegisterKind::orbital, 2, "orb_up"},
         {RegisterKind::orbital, 2, "orb_dn"},
         {RegisterKind::spin, 2, "spin_up"},
         {RegisterKind::spin, 2, "spin_dn"}},
        [](const BasisState& s) { return s.fields[4] == 0 && s.fields[5] == 1; });
    require(cfg.initial_photons >= 0 && cfg.initial_photons <= cutoff, ErrorCode::config,
            "initial.photons: outside the photon cutoff");

    ScenarioBundle b;
    b.space = space;
    b.config = cfg;
    b.name = "oh_2e";
    b.hamiltonian = build_two_electron_H(*space, cfg.coupling);
    b.channels = resolve_channels(*space, cfg);

    // |O>_up |H>_dn as a product over the two orbital registers.
    const auto up = orbital_coords(cfg.coupling, "O");
    const auto dn = orbital_coords(cfg.coupling, "H");
    std::vector<Complex> amp(space->dim(), Complex(0.0, 0.0));
    for (int u = 0; u < 2; ++u) {
        for (int v = 0; v < 2; ++v) {
            const double w = up[u] * dn[v];
            if (w == 0.0) continue;
            BasisState s;
            s.fields = {static_cast<std::uint8_t>(cfg.initial_photons),
                        static_cast<std::uint8_t>(cfg.initial_photons),
                        static_cast<std::uint8_t>(u), static_cast<std::uint8_t>(v), 0, 1};
            amp[space->index_of(s)] = w;
        }
    }
    b.initial = StateVector::from_amplitudes(space, std::move(amp));

    const std::size_t fu = space->field_of("orb_up"), fd = space->field_of("orb_dn");
    const LocalOp po = site_projector_local(cfg.coupling, 0);
    const LocalOp ph = site_projector_local(cfg.coupling, 1);
    b.observables.push_back({embed(*space, {{fu, po}, {fd, po}}), "P_OmHp"});
    b.observables.push_back(
        {add(embed(*space, {{fu, po}, {fd, ph}}), embed(*space, {{fu, ph}, {fd, po}})),
         "P_OH"});
    b.observables.push_back({embed(*space, {{fu, ph}, {fd, ph}}), "P_OpHm"});
    b.partitions.push_back({0, 1, 2});
    return b;
}

ScenarioBundle build_phonon_grid(const ScenarioConfig& cfg) {
    validate_common(cfg);
    const GridGeometry g{cfg.grid_k, cfg.grid_atoms};
    require(g.k >= 2, ErrorCode::config, "grid.k: must be >= 2");
    require(g.atoms >= 1 && g.atoms <= g.cells(), ErrorCode::config,
            "grid.atoms: atom count exceeds the number of cells");

    std::vector<int> cells = cfg.initial_cells;
    if (cells.empty())
        for (int i = 0; i < g.atoms; ++i) cells.push_back(i);
    require(static_cast<int>(cells.size()) == g.atoms, ErrorCode::config,
            "grid.cells: need one cell per atom");
    std::set<int> seen;
    for (int c : cells) {
        require(c >= 0 && c < g.cells(), ErrorCode::config, "grid.cells: cell out of range");
        require(seen.insert(c).second, ErrorCode::config, "grid.cells: repeated cell");
    }

    const int b_cutoff = cfg.cutoff_for("b", ModeKind::phonon);
    require(cfg.initial_phonons >= 0 && cfg.initial_phonons <= b_cutoff, ErrorCode::config,
            "initial.phonons: outside the phonon cutoff");

    auto [modes, regs] = grid_space_spec(g, b_cutoff);
    auto space = enumerate_space(std::move(modes), std::move(regs), grid_exclusion(g));

    ScenarioBundle b;
    b.space = space;
    b.config = cfg;
    b.name = "phonon_grid";
    b.hamiltonian = build_grid_H(*space, g, cfg.coupling);
    b.channels = resolve_channels(*space, cfg);

    BasisState s;
    s.fields.assign(space->field_count(), 0);
    s.fields[0] = static_cast<std::uint8_t>(cfg.initial_phonons);
    for (int i = 0; i < g.atoms; ++i)
        s.fields[1 + i] = static_cast<std::uint8_t>(cells[i]);
    b.initial = StateVector::basis_state(space, space->index_of(s));

    SparseOperator bond_count = SparseOperator::zero(space->dim());
    for (int i = 0; i < g.atoms; ++i)
        for (int j = i + 1; j < g.atoms; ++j)
            bond_count = add(bond_count,
                             number_op(*space, "cov" + std::to_string(i) + "_" +
                                                   std::to_string(j)));
    b.observables.push_back({std::move(bond_count), "bond_count"});
    b.observables.push_back({number_op(*space, "b"), "n_phonon"});
    return b;
}

ScenarioBundle build_hbond(const ScenarioConfig& cfg) {
    validate_common(cfg);
    const int mol_cutoff = cfg.cutoff_for("a_mol", ModeKind::photon);
    const int spin_cutoff = cfg.cutoff_for("a_spin", ModeKind::photon);
    const int b_cutoff = cfg.cutoff_for("b", ModeKind::phonon);
    require(mol_cutoff >= 2, ErrorCode::config, "cutoffs.a_mol: must be >= 2");
    require(cfg.initial_a_mol >= 0 && cfg.initial_a_mol <= mol_cutoff, ErrorCode::config,
            "initial.a_mol: outside the cutoff");
    require(cfg.initial_a_spin >= 0 && cfg.initial_a_spin <= spin_cutoff, ErrorCode::config,
            "initial.a_spin: outside the cutoff");
    require(cfg.initial_b >= 0 && cfg.initial_b <= b_cutoff, ErrorCode::config,
            "initial.b: outside the cutoff");

    auto space = enumerate_space({{ModeKind::photon, mol_cutoff, "a_mol"},
                                  {ModeKind::photon, spin_cutoff, "a_spin"},
                                  {ModeKind::phonon, b_cutoff, "b"}},
                                 {{RegisterKind::orbital, 2, "orb_O1"},
                                  {RegisterKind::orbital, 2, "orb_H"},
                                  {RegisterKind::orbital, 2, "orb_O2"},
                                  {RegisterKind::bond, 4, "cov_1"},
                                  {RegisterKind::bond, 4, "cov_2"}});

    ScenarioBundle b;
    b.space = space;
    b.config = cfg;
    b.name = "hbond";
    b.hamiltonian = build_hbond_H(*space, cfg.coupling);
    b.channels = resolve_channels(*space, cfg);

    // |a_mol>|a_spin>|b> |Psi0>_O1 |Psi1>_H |Psi0>_O2, the O2..H bond still to
    // form at close distance, the O1-H bond present and close.
    BasisState s;
    s.fields = {static_cast<std::uint8_t>(cfg.initial_a_mol),
                static_cast<std::uint8_t>(cfg.initial_a_spin),
                static_cast<std::uint8_t>(cfg.initial_b),
                0, 1, 0,
                static_cast<std::uint8_t>(bond_value(false, false)),
                static_cast<std::uint8_t>(bond_value(true, false))};
    b.initial = StateVector::basis_state(space, space->index_of(s));

    const LocalOp exists{4, {0.0, 0.0, 0.0, 0.0,
                             0.0, 0.0, 0.0, 0.0,
                             0.0, 0.0, 1.0, 0.0,
                             0.0, 0.0, 0.0, 1.0}};
    SparseOperator p1 = embed_on(*space, "cov_1", exists);
    SparseOperator p2 = embed_on(*space, "cov_2", exists);
    b.observables.push_back({p1, "P_bond1"});
    b.observables.push_back({p2, "P_bond2"});
    b.observables.push_back({add(p1, p2), "bond_count"});
    return b;
}

}  // namespace cqed
