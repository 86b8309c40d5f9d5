#include "adccal/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "adccal/dynparams.hpp"

namespace adccal {

double median(std::vector<double> values)
{
    if (values.empty()) throw std::invalid_argument("median of an empty set");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return (lower + upper) / 2.0;
}

double median_absolute_deviation(std::span<const double> values)
{
    const double m = median(std::vector<double>(values.begin(), values.end()));
    std::vector<double> dev;
    dev.reserve(values.size());
    for (double v : values) dev.push_back(std::abs(v - m));
    return median(std::move(dev));
}

TimingSummary time_host_path(const SampleBlock& block, std::size_t repeats, std::size_t warmup)
{
    if (repeats == 0) throw std::invalid_argument("repeat count must be >= 1");

    using clock = std::chrono::steady_clock;
    double sink = 0.0;
    for (std::size_t i = 0; i < warmup; ++i) sink += power_spectrum(block).power[1];

    TimingSummary t;
    t.samples.reserve(repeats);
    for (std::size_t i = 0; i < repeats; ++i) {
        const auto start = clock::now();
        const auto spectrum = power_spectrum(block);
        const auto stop = clock::now();
        sink += spectrum.power[1];
        t.samples.push_back(std::chrono::duration<double>(stop - start).count());
    }
    // Keeps the optimiser from discarding the timed work.
    if (std::isnan(sink)) t.samples.push_back(0.0);

    t.median_seconds = median(t.samples);
    t.mad_seconds = median_absolute_deviation(t.samples);
    return t;
}

}  // namespace adccal
