#include "cqed/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace cqed {

using nlohmann::json;

namespace {

[[noreturn]] void config_fail(const std::string& path, const std::string& msg) {
    fail(ErrorCode::config, path.empty() ? msg : path + ": " + msg);
}

void check_keys(const json& j, const std::string& path, std::set<std::string> allowed) {
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            config_fail(path.empty() ? key : path + "." + key, "unknown key");
}

double get_number(const json& j, const std::string& path) {
    if (!j.is_number()) config_fail(path, "expected a number");
    return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) config_fail(path, "expected an integer");
    return j.get<int>();
}

bool get_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) config_fail(path, "expected a boolean");
    return j.get<bool>();
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) config_fail(path, "expected a string");
    return j.get<std::string>();
}

}  // namespace

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::config, "cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is a 1-based offset into the text.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail(ErrorCode::config, path + ":" + std::to_string(line) + ":" +
                                    std::to_string(col) + ": " + e.what());
    }
}

RunManifest manifest_from_json(const json& j) {
    if (!j.is_object()) config_fail("", "config root must be an object");
    check_keys(j, "", {"scenario", "solver", "horizon", "samples", "dt", "coupling",
                       "cutoffs", "grid", "initial", "channels", "reduction", "output"});
    if (!j.contains("scenario")) config_fail("scenario", "missing required key");

    RunManifest m;
    m.config = default_config(scenario_from_string(get_string(j["scenario"], "scenario")));
    ScenarioConfig& cfg = m.config;

    if (j.contains("solver")) {
        m.solver = get_string(j["solver"], "solver");
        if (m.solver != "closed" && m.solver != "lindblad")
            config_fail("solver", "expected 'closed' or 'lindblad'");
    }
    if (j.contains("horizon")) cfg.horizon = get_number(j["horizon"], "horizon");
    if (j.contains("samples")) {
        const int s = get_int(j["samples"], "samples");
        if (s < 2) config_fail("samples", "must be >= 2");
        cfg.samples = static_cast<std::size_t>(s);
    }
    if (j.contains("dt")) cfg.dt = get_number(j["dt"], "dt");

    if (j.contains("coupling")) {
        const json& c = j["coupling"];
        check_keys(c, "coupling", {"hbar", "omega", "g_mol", "g_tun", "g_cov", "alpha", "beta"});
        if (c.contains("hbar")) cfg.coupling.hbar = get_number(c["hbar"], "coupling.hbar");
        if (c.contains("omega")) cfg.coupling.omega = get_number(c["omega"], "coupling.omega");
        if (c.contains("g_mol")) cfg.coupling.g_mol = get_number(c["g_mol"], "coupling.g_mol");
        if (c.contains("g_tun")) cfg.coupling.g_tun = get_number(c["g_tun"], "coupling.g_tun");
        if (c.contains("g_cov")) cfg.coupling.g_cov = get_number(c["g_cov"], "coupling.g_cov");
        if (c.contains("alpha")) cfg.coupling.alpha = get_number(c["alpha"], "coupling.alpha");
        if (c.contains("beta")) cfg.coupling.beta = get_number(c["beta"], "coupling.beta");
    }

    if (j.contains("cutoffs")) {
        if (!j["cutoffs"].is_object()) config_fail("cutoffs", "expected an object");
        for (const auto& [label, v] : j["cutoffs"].items())
            cfg.cutoffs[label] = get_int(v, "cutoffs." + label);
    }

    if (j.contains("grid")) {
        const json& g = j["grid"];
        check_keys(g, "grid", {"k", "atoms", "cells"});
        if (g.contains("k")) cfg.grid_k = get_int(g["k"], "grid.k");
        if (g.contains("atoms")) cfg.grid_atoms = get_int(g["atoms"], "grid.atoms");
        if (g.contains("cells")) {
            if (!g["cells"].is_array()) config_fail("grid.cells", "expected an array");
            cfg.initial_cells.clear();
            for (const auto& c : g["cells"])
                cfg.initial_cells.push_back(get_int(c, "grid.cells[]"));
        }
    }

    if (j.contains("initial")) {
        const json& i = j["initial"];
        check_keys(i, "initial", {"photons", "phonons", "orbital", "a_mol", "a_spin", "b"});
        if (i.contains("photons")) cfg.initial_photons = get_int(i["photons"], "initial.photons");
        if (i.contains("phonons")) cfg.initial_phonons = get_int(i["phonons"], "initial.phonons");
        if (i.contains("orbital")) cfg.initial_orbital = get_string(i["orbital"], "initial.orbital");
        if (i.contains("a_mol")) cfg.initial_a_mol = get_int(i["a_mol"], "initial.a_mol");
        if (i.contains("a_spin")) cfg.initial_a_spin = get_int(i["a_spin"], "initial.a_spin");
        if (i.contains("b")) cfg.initial_b = get_int(i["b"], "initial.b");
    }

    if (j.contains("channels")) {
        if (!j["channels"].is_array()) config_fail("channels", "expected an array");
        for (const auto& c : j["channels"]) {
            check_keys(c, "channels[]", {"type", "rate"});
            if (!c.contains("type")) config_fail("channels[].type", "missing required key");
            ChannelSpec spec;
            spec.type = get_string(c["type"], "channels[].type");
            if (c.contains("rate")) spec.rate = get_number(c["rate"], "channels[].rate");
            cfg.channels.push_back(std::move(spec));
        }
    }

    if (j.contains("reduction")) {
        const json& r = j["reduction"];
        check_keys(r, "reduction", {"keep_fraction", "pilot", "pilot_samples", "compare_full"});
        if (!r.contains("keep_fraction"))
            config_fail("reduction.keep_fraction", "missing required key");
        m.reduction.enabled = true;
        m.reduction.keep_fraction = get_number(r["keep_fraction"], "reduction.keep_fraction");
        if (m.reduction.keep_fraction <= 0.0 || m.reduction.keep_fraction > 1.0)
            config_fail("reduction.keep_fraction", "must be in (0, 1]");
        if (r.contains("pilot")) {
            m.reduction.pilot = get_string(r["pilot"], "reduction.pilot");
            if (m.reduction.pilot != "closed" && m.reduction.pilot != "lindblad")
                config_fail("reduction.pilot", "expected 'closed' or 'lindblad'");
        }
        if (r.contains("pilot_samples")) {
            const int s = get_int(r["pilot_samples"], "reduction.pilot_samples");
            if (s < 2) config_fail("reduction.pilot_samples", "must be >= 2");
            m.reduction.pilot_samples = static_cast<std::size_t>(s);
        }
        if (r.contains("compare_full"))
            m.reduction.compare_full = get_bool(r["compare_full"], "reduction.compare_full");
    }

    if (j.contains("output")) {
        check_keys(j["output"], "output", {"plot"});
        if (j["output"].contains("plot"))
            m.output.plot = get_bool(j["output"]["plot"], "output.plot");
    }
    return m;
}

json manifest_to_json(const RunManifest& m) {
    const ScenarioConfig& cfg = m.config;
    json j;
    j["scenario"] = to_string(cfg.scenario);
    j["solver"] = m.solver;
    j["horizon"] = cfg.horizon;
    j["samples"] = cfg.samples;
    j["dt"] = cfg.effective_dt();
    j["deterministic"] = true;
    j["coupling"] = {{"hbar", cfg.coupling.hbar},   {"omega", cfg.coupling.omega},
                     {"g_mol", cfg.coupling.g_mol}, {"g_tun", cfg.coupling.g_tun},
                     {"g_cov", cfg.coupling.g_cov}, {"alpha", cfg.coupling.alpha},
                     {"beta", cfg.coupling.beta}};
    j["cutoffs"] = json::object();
    for (const auto& [label, cutoff] : cfg.cutoffs) j["cutoffs"][label] = cutoff;
    if (cfg.scenario == ScenarioId::phonon_grid) {
        j["grid"] = {{"k", cfg.grid_k}, {"atoms", cfg.grid_atoms}};
        if (!cfg.initial_cells.empty()) j["grid"]["cells"] = cfg.initial_cells;
        j["initial"] = {{"phonons", cfg.initial_phonons}};
    } else if (cfg.scenario == ScenarioId::hbond) {
        j["initial"] = {{"a_mol", cfg.initial_a_mol},
                        {"a_spin", cfg.initial_a_spin},
                        {"b", cfg.initial_b}};
    } else {
        j["initial"] = {{"photons", cfg.initial_photons}};
        if (cfg.scenario == ScenarioId::oh_1e) j["initial"]["orbital"] = cfg.initial_orbital;
    }
    j["channels"] = json::array();
    for (const auto& c : cfg.channels)
        j["channels"].push_back({{"type", c.type},
                                 {"rate", c.rate > 0.0 ? c.rate : cfg.default_rate()}});
    if (m.reduction.enabled)
        j["reduction"] = {{"keep_fraction", m.reduction.keep_fraction},
                          {"pilot", m.reduction.pilot},
                          {"pilot_samples", m.reduction.pilot_samples},
                          {"compare_full", m.reduction.compare_full}};
    j["output"] = {{"plot", m.output.plot}};
    return j;
}

ValidationReport validate_manifest(const RunManifest& m) {
    ValidationReport report;
    const ScenarioBundle bundle = build_scenario(m.config);
    report.dim = bundle.space->dim();

    const double ratio = m.config.coupling.rwa_ratio();
    if (ratio > 1e-2) {
        std::ostringstream os;
        os << "RWA validity: g/omega = " << ratio
           << " exceeds 1e-2; the rotating-wave form is a poor approximation here";
        report.warnings.push_back(os.str());
    }
    if (m.solver == "lindblad" && bundle.channels.empty())
        report.warnings.push_back("lindblad solver selected with no channels; "
                                  "the run is equivalent to closed evolution");
    return report;
}

}  // namespace cqed
