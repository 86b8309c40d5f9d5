#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "adccal/fftcore.hpp"

namespace adccal {

/// Parameters of the accelerator cycle model.
///
/// Each FFT engine ingests one point per clock and runs log2(n_points)
/// pipeline stages. Input groups reach the engines over one shared stream bus
/// of bus_bits per clock. fill_overhead is paid once per transaction (DMA
/// descriptor setup and pipeline fill).
struct PipelineConfig {
    std::size_t n_points = 1024;
    std::size_t point_bytes = 8;
    double clock_hz = 250.0e6;
    std::size_t bus_bits = 64;
    std::uint64_t stage_latency = 16;
    std::uint64_t fill_overhead = 34;
    std::size_t n_fft_modules = 1;

    /// Throws std::invalid_argument on the first invalid field.
    void validate() const;

    std::size_t stages() const;
    std::uint64_t group_bytes() const { return n_points * point_bytes; }
    /// Clocks the bus needs to move one group.
    std::uint64_t bus_clocks_per_group() const;
    /// Clocks to stream one group into (or out of) an engine: the slower of
    /// bus and engine ingest.
    std::uint64_t stream_clocks_per_group() const;
    std::uint64_t pipeline_latency_clocks() const { return stages() * stage_latency; }
    double bus_limit_bytes_per_sec() const { return clock_hz * static_cast<double>(bus_bits) / 8.0; }

    friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

struct StreamStats {
    std::uint64_t total_cycles = 0;
    /// Clocks from the start of the stream until the first group has left the pipeline.
    std::uint64_t latency_first_group = 0;
    double simulated_seconds = 0.0;
    double throughput_bytes_per_sec = 0.0;
    std::uint64_t groups_processed = 0;
    std::uint64_t bytes_processed = 0;
    /// Complex multiplications performed, butterfly_count(n_points) per group.
    std::uint64_t butterflies = 0;

    friend bool operator==(const StreamStats&, const StreamStats&) = default;
};

/// Fully pipelined streaming of n_groups back-to-back groups. Deterministic.
StreamStats simulate_stream(const PipelineConfig& cfg, std::uint64_t n_groups);

/// Limit of simulate_stream throughput as n_groups grows without bound.
double steady_state_throughput(const PipelineConfig& cfg);

struct TransactionStats {
    double host_overhead_s = 0.0;
    std::uint64_t read_clocks = 0;
    std::uint64_t process_clocks = 0;
    std::uint64_t write_clocks = 0;
    double wall_seconds = 0.0;
    double throughput_bytes_per_sec = 0.0;
    std::uint64_t bytes = 0;

    std::uint64_t device_clocks() const { return read_clocks + process_clocks + write_clocks; }
};

/// One non-pipelined round trip for a single group: host overhead, read over
/// the bus, pipeline latency, write back over the same bus. Read and write
/// never overlap.
TransactionStats simulate_transaction(const PipelineConfig& cfg, double host_overhead_s);

/// Functional output of the accelerator for one group. Arithmetic is
/// delegated to fft(), so results match the host path bit for bit.
ComplexVec process_group(const PipelineConfig& cfg, std::span<const Complex> group);

double speedup(double baseline_seconds, double accel_seconds);

/// Stage and fill latencies that give a 1024-point first-group latency of
/// 4258 clocks: 34 fill + 10 stages * 320 + 1024 streaming clocks.
PipelineConfig reference_latency_config();

struct TransactionCalibration {
    PipelineConfig config;
    double host_overhead_s = 0.0;
};

/// Default config plus the host overhead that makes one 1024 x 8-byte round
/// trip take 18 us (2242 device clocks at 250 MHz + 9.032 us on the host).
TransactionCalibration reference_transaction_calibration();

}  // namespace adccal
