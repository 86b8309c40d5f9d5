#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "adccal/signalgen.hpp"

namespace adccal {

/// Median of a non-empty sample set; even counts average the middle pair.
double median(std::vector<double> values);

/// Median absolute deviation from the median.
double median_absolute_deviation(std::span<const double> values);

struct TimingSummary {
    double median_seconds = 0.0;
    double mad_seconds = 0.0;
    std::vector<double> samples;
};

/// Wall-clock timing of the host spectrum path (window, FFT, single-sided
/// power) on `block`. `warmup` untimed runs precede `repeats` timed ones.
TimingSummary time_host_path(const SampleBlock& block, std::size_t repeats, std::size_t warmup);

}  // namespace adccal
