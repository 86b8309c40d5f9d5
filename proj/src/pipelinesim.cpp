#include "adccal/pipelinesim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "adccal/pow2.hpp"

namespace adccal {

void PipelineConfig::validate() const
{
    if (n_points < 2 || !is_power_of_two(n_points)) {
        throw std::invalid_argument("n_points must be a power of two >= 2, got " +
                                    std::to_string(n_points));
    }
    if (point_bytes == 0) throw std::invalid_argument("point_bytes must be positive");
    if (!(clock_hz > 0.0) || !std::isfinite(clock_hz)) {
        throw std::invalid_argument("clock_hz must be positive and finite");
    }
    if (bus_bits == 0) throw std::invalid_argument("bus_bits must be positive");
    if (n_fft_modules == 0) throw std::invalid_argument("n_fft_modules must be >= 1");
}

std::size_t PipelineConfig::stages() const { return log2_exact(n_points); }

std::uint64_t PipelineConfig::bus_clocks_per_group() const
{
    const std::uint64_t bits = group_bytes() * 8;
    return (bits + bus_bits - 1) / bus_bits;
}

std::uint64_t PipelineConfig::stream_clocks_per_group() const
{
    return std::max<std::uint64_t>(bus_clocks_per_group(), n_points);
}

StreamStats simulate_stream(const PipelineConfig& cfg, std::uint64_t n_groups)
{
    cfg.validate();
    if (n_groups == 0) throw std::invalid_argument("simulate_stream: n_groups must be >= 1");

    const std::uint64_t bus_clocks = cfg.bus_clocks_per_group();
    const std::uint64_t ingest_clocks = cfg.n_points;
    const std::uint64_t latency = cfg.pipeline_latency_clocks();

    // Event loop over group arrivals. Groups are dealt to engines round-robin;
    // a group starts once the bus is free and its engine has finished
    // ingesting the previous one, then streams at the slower of the two rates.
    std::vector<std::uint64_t> engine_free(cfg.n_fft_modules, cfg.fill_overhead);
    std::uint64_t bus_free = cfg.fill_overhead;
    std::uint64_t last_out = 0;
    std::uint64_t first_out = 0;

    for (std::uint64_t g = 0; g < n_groups; ++g) {
        auto& engine = engine_free[g % cfg.n_fft_modules];
        const std::uint64_t start = std::max(bus_free, engine);
        const std::uint64_t bus_done = start + bus_clocks;
        const std::uint64_t ingest_done = std::max(start + ingest_clocks, bus_done);
        bus_free = bus_done;
        engine = ingest_done;
        const std::uint64_t out = ingest_done + latency;
        if (g == 0) first_out = out;
        last_out = std::max(last_out, out);
    }

    StreamStats s;
    s.total_cycles = last_out;
    s.latency_first_group = first_out;
    s.groups_processed = n_groups;
    s.bytes_processed = n_groups * cfg.group_bytes();
    s.butterflies = n_groups * butterfly_count(cfg.n_points);
    s.simulated_seconds = static_cast<double>(s.total_cycles) / cfg.clock_hz;
    s.throughput_bytes_per_sec = static_cast<double>(s.bytes_processed) / s.simulated_seconds;
    return s;
}

double steady_state_throughput(const PipelineConfig& cfg)
{
    cfg.validate();
    const double engine_interval =
        static_cast<double>(cfg.n_points) / static_cast<double>(cfg.n_fft_modules);
    const double interval =
        std::max(static_cast<double>(cfg.bus_clocks_per_group()), engine_interval);
    return static_cast<double>(cfg.group_bytes()) * cfg.clock_hz / interval;
}

TransactionStats simulate_transaction(const PipelineConfig& cfg, double host_overhead_s)
{
    cfg.validate();
    if (!(host_overhead_s >= 0.0) || !std::isfinite(host_overhead_s)) {
        throw std::invalid_argument("host_overhead_s must be finite and >= 0");
    }

    TransactionStats t;
    t.host_overhead_s = host_overhead_s;
    t.read_clocks = cfg.stream_clocks_per_group();
    t.process_clocks = cfg.fill_overhead + cfg.pipeline_latency_clocks();
    t.write_clocks = cfg.stream_clocks_per_group();
    t.bytes = cfg.group_bytes();
    t.wall_seconds = host_overhead_s + static_cast<double>(t.device_clocks()) / cfg.clock_hz;
    t.throughput_bytes_per_sec = static_cast<double>(t.bytes) / t.wall_seconds;
    return t;
}

ComplexVec process_group(const PipelineConfig& cfg, std::span<const Complex> group)
{
    if (group.size() != cfg.n_points) {
        throw std::invalid_argument("process_group: group has " + std::to_string(group.size()) +
                                    " points, config expects " + std::to_string(cfg.n_points));
    }
    return fft(group);
}

double speedup(double baseline_seconds, double accel_seconds)
{
    if (!(baseline_seconds > 0.0) || !(accel_seconds > 0.0)) {
        throw std::invalid_argument("speedup: both times must be positive");
    }
    return baseline_seconds / accel_seconds;
}

PipelineConfig reference_latency_config()
{
    PipelineConfig cfg;
    cfg.stage_latency = 320;
    cfg.fill_overhead = 34;
    return cfg;
}

TransactionCalibration reference_transaction_calibration()
{
    TransactionCalibration cal;
    cal.config = PipelineConfig{};
    // 18 us minus (1024 read + 34 fill + 160 stage + 1024 write) clocks at 250 MHz.
    cal.host_overhead_s = 9.032e-6;
    return cal;
}

}  // namespace adccal
