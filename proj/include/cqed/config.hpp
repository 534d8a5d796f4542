#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cqed/models.hpp"

namespace cqed {

struct ReductionSettings {
    bool enabled = false;
    double keep_fraction = 1.0;
    std::string pilot = "closed";  // closed | lindblad
    std::size_t pilot_samples = 200;
    bool compare_full = false;
};

struct OutputSettings {
    bool plot = true;
};

// One CLI invocation: scenario, solver, reduction and output choices.
// Every run is deterministic; no RNG is involved anywhere.
struct RunManifest {
    ScenarioConfig config;
    std::string solver = "closed";  // closed | lindblad
    ReductionSettings reduction;
    OutputSettings output;
    std::string out_dir = ".";
};

// Parses a JSON file; parse failures raise SimError(config) with line/column.
nlohmann::json load_json_file(const std::string& path);

// Strict schema: unknown keys are rejected with their JSON path.
RunManifest manifest_from_json(const nlohmann::json& j);

// Normalized echo of the manifest, embedded in series.json.
nlohmann::json manifest_to_json(const RunManifest& m);

struct ValidationReport {
    std::size_t dim = 0;
    std::vector<std::string> warnings;
};

// Shape/schema checks plus the computed dimension; no simulation.
ValidationReport validate_manifest(const RunManifest& m);

}  // namespace cqed
