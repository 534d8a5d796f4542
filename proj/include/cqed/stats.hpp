#pragma once

#include <cstddef>
#include <span>

namespace cqed::stats {

double mean(std::span<const double> v);

// Mean over the trailing fraction of the samples (0 < fraction <= 1).
double trailing_mean(std::span<const double> v, double fraction);

// Pearson correlation coefficient; returns 0 when either series is constant.
double pearson(std::span<const double> a, std::span<const double> b);

// Frequency (cycles per time unit) of the largest non-DC peak of a
// zero-padded discrete Fourier transform over a uniform time grid.
double dominant_frequency(std::span<const double> times, std::span<const double> values);

}  // namespace cqed::stats
