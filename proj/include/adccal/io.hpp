#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "adccal/dynparams.hpp"
#include "adccal/pipelinesim.hpp"
#include "adccal/signalgen.hpp"

namespace adccal {

inline constexpr std::string_view kToolkitVersion = "0.1.0";

// Binary capture layout, all fields little-endian:
//
//   offset  size  field
//        0     8  magic "ADCCAPT\0"
//        8     4  u32 version (1)
//       12     4  u32 encoding tag (1 = IEEE-754 binary64)
//       16     8  f64 sample_rate_hz
//       24     8  u64 n_points
//       32     8  f64 full_scale
//       40  8*n   f64 samples
inline constexpr std::string_view kCaptureMagic{"ADCCAPT\0", 8};
inline constexpr std::uint32_t kCaptureVersion = 1;
inline constexpr std::uint32_t kEncodingF64 = 1;
inline constexpr std::size_t kCaptureHeaderBytes = 40;

class CaptureError : public std::runtime_error {
public:
    enum class Kind { bad_magic, version_mismatch, length_mismatch, bad_header, io_failure };

    CaptureError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

std::string encode_capture(const SampleBlock& block);
SampleBlock decode_capture(std::string_view bytes);

void write_capture(const SampleBlock& block, const std::filesystem::path& path);
SampleBlock read_capture(const std::filesystem::path& path);

/// CSV with header "t,value". Optional leading "# key=value" lines carry
/// sample_rate_hz and full_scale; without them the rate comes from the time
/// spacing and full_scale defaults to 1.
std::string encode_capture_csv(const SampleBlock& block);
SampleBlock decode_capture_csv(std::string_view text);

void write_capture_csv(const SampleBlock& block, const std::filesystem::path& path);
SampleBlock read_capture_csv(const std::filesystem::path& path);

/// Dispatches on extension: ".csv" is CSV, anything else binary.
void save_capture(const SampleBlock& block, const std::filesystem::path& path);
SampleBlock load_capture(const std::filesystem::path& path);

struct BenchReport {
    double baseline_seconds = 0.0;
    double baseline_mad_seconds = 0.0;
    double accel_seconds = 0.0;
    double speedup = 0.0;
    double throughput_bytes_per_sec = 0.0;
    double stream_throughput_bytes_per_sec = 0.0;
    std::uint64_t repeats = 0;
    std::uint64_t warmup = 0;
    PipelineConfig config;
    double host_overhead_s = 0.0;
    std::string toolkit_version{kToolkitVersion};
    std::string timestamp;

    friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

enum class ReportFormat { json, csv };
ReportFormat parse_report_format(std::string_view name);

std::string emit_report(const DynReport& report, ReportFormat format);
std::string emit_report(const BenchReport& report, ReportFormat format);
std::string emit_report(const StreamStats& stats, ReportFormat format);
std::string emit_report(const TransactionStats& stats, ReportFormat format);

BenchReport parse_bench_report(std::string_view json_text);

/// "bin_hz,power_db" rows, one per single-sided bin; power in dBFS.
std::string spectrum_csv(const SpectrumRecord& spectrum);

/// Reads PipelineConfig fields (and optional host_overhead_s) from a JSON
/// object; keys absent from the file keep the values already in `cfg`.
void load_pipeline_config(std::string_view json_text, PipelineConfig& cfg, double* host_overhead_s = nullptr);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace adccal
