#include "cqed/stats.hpp"

#include <cmath>
#include <complex>

#include "cqed/errors.hpp"

namespace cqed::stats {

double mean(std::span<const double> v) {
    require(!v.empty(), ErrorCode::logic, "mean of an empty series");
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / double(v.size());
}

double trailing_mean(std::span<const double> v, double fraction) {
    require(fraction > 0.0 && fraction <= 1.0, ErrorCode::logic,
            "trailing_mean: fraction must be in (0, 1]");
    const std::size_t count =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(fraction * v.size())));
    return mean(v.subspan(v.size() - count));
}

double pearson(std::span<const double> a, std::span<const double> b) {
    require(a.size() == b.size() && a.size() >= 2, ErrorCode::logic,
            "pearson: series must have equal length >= 2");
    const double ma = mean(a), mb = mean(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

double dominant_frequency(std::span<const double> times, std::span<const double> values) {
    require(times.size() == values.size() && times.size() >= 8, ErrorCode::logic,
            "dominant_frequency: need at least 8 samples");
    const std::size_t n = times.size();
    const double dt = (times.back() - times.front()) / double(n - 1);
    require(dt > 0.0, ErrorCode::logic, "dominant_frequency: degenerate time grid");

    const double m = mean(values);
    // 4x zero-padded direct DFT; plenty of resolution at the sizes used here.
    const std::size_t bins = 4 * n;
    double best_mag = -1.0;
    std::size_t best_k = 1;
    for (std::size_t k = 1; k <= bins / 2; ++k) {
        const double w = 2.0 * M_PI * double(k) / (double(bins) * dt);
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double ph = -w * (times[i] - times.front());
            acc += (values[i] - m) * std::complex<double>(std::cos(ph), std::sin(ph));
        }
        const double mag = std::abs(acc);
        if (mag > best_mag) {
            best_mag = mag;
            best_k = k;
        }
    }
    return double(best_k) / (double(bins) * dt);
}

}  // namespace cqed::stats
