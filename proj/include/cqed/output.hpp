#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cqed/dynamics.hpp"

namespace cqed {

struct ReductionComparison {
    std::string label;
    double stable_full = 0.0;
    double stable_reduced = 0.0;
    double offset = 0.0;
    double pearson = 0.0;
};

struct ReductionReport {
    std::size_t dim_full = 0;
    std::size_t dim_kept = 0;     // amplitude-selected seed count
    std::size_t dim_reduced = 0;  // final size after connectivity repair
    std::size_t repair_iterations = 0;
    std::size_t seed_count = 0;
    std::size_t repair_added = 0;
    bool fallback_component = false;
    double keep_fraction = 1.0;
    double discarded_weight = 0.0;
    std::vector<ReductionComparison> comparison;  // present with compare_full
};

// time column plus one column per observable, 12 significant digits.
void write_csv(const std::string& path, const TimeSeries& series);

// Same samples as the CSV plus metadata (config echo, solver, tolerances).
void write_series_json(const std::string& path, const TimeSeries& series,
                       const nlohmann::json& metadata);

void write_reduction_json(const std::string& path, const ReductionReport& report);

// Minimal static plot: one polyline per observable, axes, ticks, legend.
void write_svg(const std::string& path, const TimeSeries& series, const std::string& title);

}  // namespace cqed
