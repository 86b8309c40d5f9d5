#include "adccal/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "adccal/pow2.hpp"

namespace adccal {

using ordered_json = nlohmann::ordered_json;

namespace {

template <typename T>
void put_le(std::string& out, T value)
{
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    auto bits = std::bit_cast<U>(value);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        out.push_back(static_cast<char>(bits & 0xFFu));
        bits >>= 8;
    }
}

template <typename T>
T get_le(std::string_view bytes, std::size_t offset)
{
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    U bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        bits |= static_cast<U>(static_cast<unsigned char>(bytes[offset + i])) << (8 * i);
    }
    return std::bit_cast<T>(bits);
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CaptureError(CaptureError::Kind::io_failure, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw CaptureError(CaptureError::Kind::io_failure, "read failed: " + path.string());
    return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CaptureError(CaptureError::Kind::io_failure, "cannot create " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw CaptureError(CaptureError::Kind::io_failure, "write failed: " + path.string());
}

bool parse_double(std::string_view text, double& out)
{
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

ordered_json config_json(const PipelineConfig& cfg)
{
    ordered_json j;
    j["n_points"] = cfg.n_points;
    j["point_bytes"] = cfg.point_bytes;
    j["clock_hz"] = cfg.clock_hz;
    j["bus_bits"] = cfg.bus_bits;
    j["stage_latency"] = cfg.stage_latency;
    j["fill_overhead"] = cfg.fill_overhead;
    j["n_fft_modules"] = cfg.n_fft_modules;
    return j;
}

void apply_config_json(const nlohmann::json& j, PipelineConfig& cfg)
{
    if (!j.is_object()) throw std::invalid_argument("pipeline config must be a JSON object");
    static constexpr std::array known{"n_points",      "point_bytes",   "clock_hz",
                                      "bus_bits",      "stage_latency", "fill_overhead",
                                      "n_fft_modules", "host_overhead_s"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw std::invalid_argument("unknown pipeline config key '" + key + "'");
        }
    }
    if (j.contains("n_points")) cfg.n_points = j.at("n_points").get<std::size_t>();
    if (j.contains("point_bytes")) cfg.point_bytes = j.at("point_bytes").get<std::size_t>();
    if (j.contains("clock_hz")) cfg.clock_hz = j.at("clock_hz").get<double>();
    if (j.contains("bus_bits")) cfg.bus_bits = j.at("bus_bits").get<std::size_t>();
    if (j.contains("stage_latency")) cfg.stage_latency = j.at("stage_latency").get<std::uint64_t>();
    if (j.contains("fill_overhead")) cfg.fill_overhead = j.at("fill_overhead").get<std::uint64_t>();
    if (j.contains("n_fft_modules")) cfg.n_fft_modules = j.at("n_fft_modules").get<std::size_t>();
}

std::string csv_record(const ordered_json& flat)
{
    std::string header;
    std::string values;
    for (const auto& [key, value] : flat.items()) {
        if (!header.empty()) {
            header += ',';
            values += ',';
        }
        header += key;
        if (value.is_number_float()) {
            values += format_double(value.get<double>());
        } else if (value.is_string()) {
            values += value.get<std::string>();
        } else {
            values += value.dump();
        }
    }
    return header + '\n' + values + '\n';
}

std::string render(const ordered_json& j, ReportFormat format)
{
    if (format == ReportFormat::json) return j.dump(2) + '\n';
    ordered_json flat;
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            for (const auto& [sub, v] : value.items()) flat[key + "." + sub] = v;
        } else {
            flat[key] = value;
        }
    }
    return csv_record(flat);
}

}  // namespace

std::string format_double(double v)
{
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return ec == std::errc{} ? std::string(buf.data(), ptr) : std::string("nan");
}

std::string encode_capture(const SampleBlock& block)
{
    std::string out;
    out.reserve(kCaptureHeaderBytes + 8 * block.size());
    out.append(kCaptureMagic);
    put_le(out, kCaptureVersion);
    put_le(out, kEncodingF64);
    put_le(out, block.sample_rate_hz());
    put_le(out, static_cast<std::uint64_t>(block.size()));
    put_le(out, block.full_scale());
    for (double v : block.samples()) put_le(out, v);
    return out;
}

SampleBlock decode_capture(std::string_view bytes)
{
    using Kind = CaptureError::Kind;
    if (bytes.size() < kCaptureMagic.size() || bytes.substr(0, kCaptureMagic.size()) != kCaptureMagic) {
        throw CaptureError(Kind::bad_magic, "not a capture file (bad magic)");
    }
    if (bytes.size() < kCaptureHeaderBytes) {
        throw CaptureError(Kind::length_mismatch, "capture header truncated");
    }
    const auto version = get_le<std::uint32_t>(bytes, 8);
    if (version != kCaptureVersion) {
        throw CaptureError(Kind::version_mismatch,
                           "unsupported capture version " + std::to_string(version));
    }
    const auto encoding = get_le<std::uint32_t>(bytes, 12);
    if (encoding != kEncodingF64) {
        throw CaptureError(Kind::bad_header, "unsupported encoding tag " + std::to_string(encoding));
    }
    const auto sample_rate = get_le<double>(bytes, 16);
    const auto n_points = get_le<std::uint64_t>(bytes, 24);
    const auto full_scale = get_le<double>(bytes, 32);

    const std::uint64_t payload = bytes.size() - kCaptureHeaderBytes;
    if (n_points > payload / 8 || payload != n_points * 8) {
        throw CaptureError(Kind::length_mismatch, "payload is " + std::to_string(payload) +
                                                      " bytes, header declares " +
                                                      std::to_string(n_points) + " points");
    }

    std::vector<double> samples(n_points);
    for (std::uint64_t i = 0; i < n_points; ++i) {
        samples[i] = get_le<double>(bytes, kCaptureHeaderBytes + 8 * i);
    }
    try {
        return SampleBlock(std::move(samples), sample_rate, full_scale);
    } catch (const std::invalid_argument& e) {
        throw CaptureError(Kind::bad_header, e.what());
    }
}

void write_capture(const SampleBlock& block, const std::filesystem::path& path)
{
    write_file(path, encode_capture(block));
}

SampleBlock read_capture(const std::filesystem::path& path) { return decode_capture(read_file(path)); }

std::string encode_capture_csv(const SampleBlock& block)
{
    std::string out;
    out += "# sample_rate_hz=" + format_double(block.sample_rate_hz()) + '\n';
    out += "# full_scale=" + format_double(block.full_scale()) + '\n';
    out += "t,value\n";
    const auto samples = block.samples();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double t = static_cast<double>(i) / block.sample_rate_hz();
        out += format_double(t);
        out += ',';
        out += format_double(samples[i]);
        out += '\n';
    }
    return out;
}

SampleBlock decode_capture_csv(std::string_view text)
{
    using Kind = CaptureError::Kind;
    double sample_rate = 0.0;
    double full_scale = 1.0;
    bool header_seen = false;
    std::vector<double> times;
    std::vector<double> values;

    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        if (line.front() == '#') {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) continue;
            std::string_view key = line.substr(1, eq - 1);
            while (!key.empty() && key.front() == ' ') key.remove_prefix(1);
            double v = 0.0;
            if (!parse_double(line.substr(eq + 1), v)) {
                throw CaptureError(Kind::bad_header, "bad metadata on line " + std::to_string(line_no));
            }
            if (key == "sample_rate_hz") sample_rate = v;
            if (key == "full_scale") full_scale = v;
            continue;
        }
        if (!header_seen) {
            if (line != "t,value") {
                throw CaptureError(Kind::bad_header, "expected CSV header 't,value'");
            }
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        double t = 0.0;
        double v = 0.0;
        if (comma == std::string_view::npos || !parse_double(line.substr(0, comma), t) ||
            !parse_double(line.substr(comma + 1), v)) {
            throw CaptureError(Kind::bad_header, "malformed CSV row on line " + std::to_string(line_no));
        }
        times.push_back(t);
        values.push_back(v);
    }

    if (!header_seen) throw CaptureError(Kind::bad_header, "missing CSV header 't,value'");
    if (!is_power_of_two(values.size())) {
        throw CaptureError(Kind::length_mismatch,
                           "CSV holds " + std::to_string(values.size()) + " rows, not a power of two");
    }
    if (sample_rate <= 0.0) {
        if (values.size() < 2 || !(times.back() > times.front())) {
            throw CaptureError(Kind::bad_header, "cannot infer sample rate from CSV time column");
        }
        sample_rate = static_cast<double>(values.size() - 1) / (times.back() - times.front());
    }
    try {
        return SampleBlock(std::move(values), sample_rate, full_scale);
    } catch (const std::invalid_argument& e) {
        throw CaptureError(Kind::bad_header, e.what());
    }
}

void write_capture_csv(const SampleBlock& block, const std::filesystem::path& path)
{
    write_file(path, encode_capture_csv(block));
}

SampleBlock read_capture_csv(const std::filesystem::path& path)
{
    return decode_capture_csv(read_file(path));
}

void save_capture(const SampleBlock& block, const std::filesystem::path& path)
{
    if (path.extension() == ".csv") {
        write_capture_csv(block, path);
    } else {
        write_capture(block, path);
    }
}

SampleBlock load_capture(const std::filesystem::path& path)
{
    return path.extension() == ".csv" ? read_capture_csv(path) : read_capture(path);
}

ReportFormat parse_report_format(std::string_view name)
{
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    throw std::invalid_argument("unknown report format '" + std::string(name) + "'");
}

std::string emit_report(const DynReport& r, ReportFormat format)
{
    ordered_json j;
    j["snr_db"] = r.snr_db;
    j["sinad_db"] = r.sinad_db;
    j["enob_bits"] = r.enob_bits;
    j["thd_db"] = r.thd_db;
    j["sfdr_db"] = r.sfdr_db;
    j["fundamental_bin"] = r.fundamental_bin;
    j["fundamental_hz"] = r.fundamental_hz;
    j["spur_bin"] = r.spur_bin;
    j["dc_power"] = r.dc_power;
    j["fundamental_power"] = r.fundamental_power;
    j["harmonic_power"] = r.harmonic_power;
    j["noise_power"] = r.noise_power;
    j["noise_free"] = r.noise_free;
    j["window"] = std::string(to_string(r.window));
    j["n"] = r.n;
    j["sample_rate_hz"] = r.sample_rate_hz;

    if (format == ReportFormat::json) {
        auto harmonics = ordered_json::array();
        for (const auto& h : r.harmonic_bins) {
            ordered_json e;
            e["order"] = h.order;
            e["bin"] = h.bin;
            harmonics.push_back(std::move(e));
        }
        j["harmonic_bins"] = std::move(harmonics);
        return j.dump(2) + '\n';
    }
    std::string harmonics;
    for (const auto& h : r.harmonic_bins) {
        if (!harmonics.empty()) harmonics += ';';
        harmonics += std::to_string(h.order) + ':' + std::to_string(h.bin);
    }
    j["harmonic_bins"] = harmonics;
    return csv_record(j);
}

std::string emit_report(const BenchReport& r, ReportFormat format)
{
    ordered_json j;
    j["baseline_seconds"] = r.baseline_seconds;
    j["baseline_mad_seconds"] = r.baseline_mad_seconds;
    j["accel_seconds"] = r.accel_seconds;
    j["speedup"] = r.speedup;
    j["throughput_bytes_per_sec"] = r.throughput_bytes_per_sec;
    j["stream_throughput_bytes_per_sec"] = r.stream_throughput_bytes_per_sec;
    j["repeats"] = r.repeats;
    j["warmup"] = r.warmup;
    j["host_overhead_s"] = r.host_overhead_s;
    j["config"] = config_json(r.config);
    j["toolkit_version"] = r.toolkit_version;
    j["timestamp"] = r.timestamp;
    return render(j, format);
}

std::string emit_report(const StreamStats& s, ReportFormat format)
{
    ordered_json j;
    j["total_cycles"] = s.total_cycles;
    j["latency_first_group"] = s.latency_first_group;
    j["simulated_seconds"] = s.simulated_seconds;
    j["throughput_bytes_per_sec"] = s.throughput_bytes_per_sec;
    j["groups_processed"] = s.groups_processed;
    j["bytes_processed"] = s.bytes_processed;
    j["butterflies"] = s.butterflies;
    return render(j, format);
}

std::string emit_report(const TransactionStats& t, ReportFormat format)
{
    ordered_json j;
    j["host_overhead_s"] = t.host_overhead_s;
    j["read_clocks"] = t.read_clocks;
    j["process_clocks"] = t.process_clocks;
    j["write_clocks"] = t.write_clocks;
    j["device_clocks"] = t.device_clocks();
    j["wall_seconds"] = t.wall_seconds;
    j["throughput_bytes_per_sec"] = t.throughput_bytes_per_sec;
    j["bytes"] = t.bytes;
    return render(j, format);
}

BenchReport parse_bench_report(std::string_view json_text)
{
    const auto j = nlohmann::json::parse(json_text);
    BenchReport r;
    r.baseline_seconds = j.at("baseline_seconds").get<double>();
    r.baseline_mad_seconds = j.at("baseline_mad_seconds").get<double>();
    r.accel_seconds = j.at("accel_seconds").get<double>();
    r.speedup = j.at("speedup").get<double>();
    r.throughput_bytes_per_sec = j.at("throughput_bytes_per_sec").get<double>();
    r.stream_throughput_bytes_per_sec = j.at("stream_throughput_bytes_per_sec").get<double>();
    r.repeats = j.at("repeats").get<std::uint64_t>();
    r.warmup = j.at("warmup").get<std::uint64_t>();
    r.host_overhead_s = j.at("host_overhead_s").get<double>();
    apply_config_json(j.at("config"), r.config);
    r.toolkit_version = j.at("toolkit_version").get<std::string>();
    r.timestamp = j.at("timestamp").get<std::string>();
    return r;
}

std::string spectrum_csv(const SpectrumRecord& spectrum)
{
    std::string out = "bin_hz,power_db\n";
    for (std::size_t k = 0; k < spectrum.power.size(); ++k) {
        out += format_double(static_cast<double>(k) * spectrum.bin_hz);
        out += ',';
        out += format_double(spectrum.power_dbfs(k));
        out += '\n';
    }
    return out;
}

void load_pipeline_config(std::string_view json_text, PipelineConfig& cfg, double* host_overhead_s)
{
    const auto j = nlohmann::json::parse(json_text);
    apply_config_json(j, cfg);
    if (host_overhead_s && j.contains("host_overhead_s")) {
        *host_overhead_s = j.at("host_overhead_s").get<double>();
    }
}

}  // namespace adccal
