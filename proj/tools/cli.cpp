#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "adccal/bench.hpp"
#include "adccal/dynparams.hpp"
#include "adccal/io.hpp"
#include "adccal/pipelinesim.hpp"
#include "adccal/signalgen.hpp"

namespace adccal::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kOutputDirEnv = "ADCCAL_OUTPUT_DIR";

// Relative output paths land under $ADCCAL_OUTPUT_DIR when it is set.
fs::path resolve_output(const std::string& path)
{
    fs::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) return fs::path(dir) / p;
    }
    return p;
}

void write_text(const std::string& path, const std::string& text)
{
    const auto target = resolve_output(path);
    std::ofstream f(target, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + target.string());
    f << text;
    if (!f) throw std::runtime_error("write failed: " + target.string());
}

std::string read_text(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return std::move(buf).str();
}

double parse_number(const std::string& s, const std::string& what)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw std::invalid_argument("bad " + what + " '" + s + "'");
    return v;
}

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct PipelineFlags {
    std::string config_path;
    std::string calibration = "default";
    std::optional<std::size_t> n_points;
    std::optional<std::size_t> point_bytes;
    std::optional<double> clock_hz;
    std::optional<std::size_t> bus_bits;
    std::optional<std::uint64_t> stage_latency;
    std::optional<std::uint64_t> fill_overhead;
    std::optional<std::size_t> modules;
    std::optional<double> host_overhead_s;

    void attach(CLI::App& app)
    {
        app.add_option("--config", config_path, "JSON file with PipelineConfig keys")
            ->check(CLI::ExistingFile);
        app.add_option("--calibration", calibration, "Preset: default or reference")
            ->check(CLI::IsMember({"default", "reference"}));
        app.add_option("--points", n_points, "Points per group");
        app.add_option("--point-bytes", point_bytes, "Bytes per point");
        app.add_option("--clock", clock_hz, "Accelerator clock in Hz");
        app.add_option("--bus-bits", bus_bits, "Bus width in bits per clock");
        app.add_option("--stage-latency", stage_latency, "Clocks added per FFT stage");
        app.add_option("--fill-overhead", fill_overhead, "Fixed clocks per transaction");
        app.add_option("--modules", modules, "Parallel FFT engines");
        app.add_option("--host-overhead", host_overhead_s, "Host-side seconds per transaction");
    }

    // Preset, then config file, then individual flags.
    PipelineConfig resolve(bool stream_mode, double& host_overhead) const
    {
        PipelineConfig cfg;
        host_overhead = 0.0;
        if (calibration == "reference") {
            if (stream_mode) {
                cfg = reference_latency_config();
            } else {
                const auto cal = reference_transaction_calibration();
                cfg = cal.config;
                host_overhead = cal.host_overhead_s;
            }
        }
        if (!config_path.empty()) load_pipeline_config(read_text(config_path), cfg, &host_overhead);
        if (n_points) cfg.n_points = *n_points;
        if (point_bytes) cfg.point_bytes = *point_bytes;
        if (clock_hz) cfg.clock_hz = *clock_hz;
        if (bus_bits) cfg.bus_bits = *bus_bits;
        if (stage_latency) cfg.stage_latency = *stage_latency;
        if (fill_overhead) cfg.fill_overhead = *fill_overhead;
        if (modules) cfg.n_fft_modules = *modules;
        if (host_overhead_s) host_overhead = *host_overhead_s;
        cfg.validate();
        return cfg;
    }
};

struct GenerateArgs {
    bool reference_signal = false;
    std::optional<std::string> tones;
    std::optional<double> sigma;
    std::optional<std::size_t> n_points;
    std::optional<double> sample_rate;
    std::optional<std::uint64_t> seed;
    std::optional<int> bits;
    std::optional<double> full_scale;
    std::string output;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out)
{
    CaptureSpec spec = a.reference_signal ? reference_capture_spec() : CaptureSpec{};
    if (a.tones) spec.tones = parse_tones(*a.tones);
    if (a.sigma) spec.noise_sigma = *a.sigma;
    if (a.n_points) spec.n_points = *a.n_points;
    if (a.sample_rate) spec.sample_rate_hz = *a.sample_rate;
    if (a.seed) spec.seed = *a.seed;
    if (a.bits) spec.quantizer_bits = *a.bits;
    if (a.full_scale) spec.full_scale = *a.full_scale;

    const auto block = synthesize(spec);
    const auto target = resolve_output(a.output);
    save_capture(block, target);

    nlohmann::ordered_json summary;
    summary["output"] = target.string();
    summary["n_points"] = block.size();
    summary["sample_rate_hz"] = block.sample_rate_hz();
    auto tones = nlohmann::ordered_json::array();
    for (const auto& t : spec.tones) {
        tones.push_back({{"amplitude", t.amplitude}, {"frequency_hz", t.frequency_hz}, {"phase_rad", t.phase_rad}});
    }
    summary["tones"] = std::move(tones);
    summary["noise_sigma"] = spec.noise_sigma;
    summary["seed"] = spec.seed;
    summary["quantizer_bits"] = spec.quantizer_bits ? nlohmann::ordered_json(*spec.quantizer_bits) : nullptr;
    summary["full_scale"] = spec.full_scale;
    out << summary.dump(2) << '\n';
    return 0;
}

struct AnalyzeArgs {
    std::string input;
    std::string window = "rect";
    int harmonics = 6;
    std::string format = "json";
    std::string spectrum_csv_path;
    std::string output;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out)
{
    const auto block = load_capture(a.input);
    AnalysisOptions opts;
    opts.window = parse_window(a.window);
    opts.max_harmonic = a.harmonics;

    const auto spectrum = power_spectrum(block, opts.window);
    const auto report = analyze_spectrum(spectrum, opts);
    if (!a.spectrum_csv_path.empty()) write_text(a.spectrum_csv_path, spectrum_csv(spectrum));

    const auto text = emit_report(report, parse_report_format(a.format));
    if (a.output.empty()) {
        out << text;
    } else {
        write_text(a.output, text);
    }
    return 0;
}

struct SimulateArgs {
    PipelineFlags pipeline;
    std::string mode = "stream";
    std::uint64_t groups = 100000;
    std::string format = "json";
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out)
{
    const auto format = parse_report_format(a.format);
    double host_overhead = 0.0;

    if (a.mode == "stream") {
        const auto cfg = a.pipeline.resolve(true, host_overhead);
        out << emit_report(simulate_stream(cfg, a.groups), format);
        return 0;
    }
    if (a.mode == "transaction") {
        const auto cfg = a.pipeline.resolve(false, host_overhead);
        out << emit_report(simulate_transaction(cfg, host_overhead), format);
        return 0;
    }

    const auto stream_cfg = a.pipeline.resolve(true, host_overhead);
    const auto stream = emit_report(simulate_stream(stream_cfg, a.groups), format);
    const auto txn_cfg = a.pipeline.resolve(false, host_overhead);
    const auto txn = emit_report(simulate_transaction(txn_cfg, host_overhead), format);
    if (format == ReportFormat::json) {
        nlohmann::ordered_json j;
        j["stream"] = nlohmann::ordered_json::parse(stream);
        j["transaction"] = nlohmann::ordered_json::parse(txn);
        out << j.dump(2) << '\n';
    } else {
        out << stream << '\n' << txn;
    }
    return 0;
}

struct BenchArgs {
    PipelineFlags pipeline;
    std::size_t repeat = 1000;
    std::size_t warmup = 10;
    std::optional<double> baseline_seconds;
    bool baseline_simulated = false;
    std::string input;
    std::string format = "json";
};

int cmd_bench(const BenchArgs& a, std::ostream& out)
{
    if (a.repeat == 0) throw std::invalid_argument("--repeat must be >= 1");

    double host_overhead = 0.0;
    const auto cfg = a.pipeline.resolve(false, host_overhead);
    const auto txn = simulate_transaction(cfg, host_overhead);

    BenchReport r;
    r.repeats = a.repeat;
    r.warmup = a.warmup;
    r.config = cfg;
    r.host_overhead_s = host_overhead;
    r.accel_seconds = txn.wall_seconds;
    r.throughput_bytes_per_sec = txn.throughput_bytes_per_sec;
    r.stream_throughput_bytes_per_sec = steady_state_throughput(cfg);

    if (a.baseline_simulated) {
        r.baseline_seconds = r.accel_seconds;
    } else if (a.baseline_seconds) {
        r.baseline_seconds = *a.baseline_seconds;
    } else {
        const auto block = a.input.empty() ? synthesize(reference_capture_spec()) : load_capture(a.input);
        const auto timing = time_host_path(block, a.repeat, a.warmup);
        r.baseline_seconds = timing.median_seconds;
        r.baseline_mad_seconds = timing.mad_seconds;
    }
    r.speedup = speedup(r.baseline_seconds, r.accel_seconds);
    r.timestamp = utc_timestamp();

    out << emit_report(r, parse_report_format(a.format));
    return 0;
}

}  // namespace

std::vector<ToneSpec> parse_tones(const std::string& text)
{
    std::vector<ToneSpec> tones;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find(',', pos);
        if (end == std::string::npos) end = text.size();
        const std::string term = text.substr(pos, end - pos);
        pos = end + 1;
        if (term.empty()) continue;

        std::vector<std::string> parts;
        std::stringstream ss(term);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() < 2 || parts.size() > 3) {
            throw std::invalid_argument("tone '" + term + "' must be amp:freq[:phase]");
        }
        ToneSpec t;
        t.amplitude = parse_number(parts[0], "tone amplitude");
        t.frequency_hz = parse_number(parts[1], "tone frequency");
        if (parts.size() == 3) {
            if (parts[2] == "cos") {
                t.phase_rad = 0.0;
            } else if (parts[2] == "sin") {
                t.phase_rad = -std::numbers::pi / 2.0;
            } else {
                t.phase_rad = parse_number(parts[2], "tone phase");
            }
        }
        tones.push_back(t);
    }
    return tones;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"ADC dynamic-parameter calibration and accelerator stream model", "adccal"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolkitVersion));

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Synthesize a test capture");
    auto* reference = generate->add_flag("--reference-signal", gen.reference_signal,
                                         "0.7cos(50MHz) + sin(12MHz) + 0.1 randn, 1024 points at 1.024 GHz");
    generate->add_option("--tones", gen.tones, "amp:freq[:phase],... (empty for none)")->excludes(reference);
    generate->add_option("--sigma", gen.sigma, "Gaussian noise std-dev");
    generate->add_option("-n,--points", gen.n_points, "Record length (power of two)");
    generate->add_option("--fs", gen.sample_rate, "Sample rate in Hz");
    generate->add_option("--seed", gen.seed, "Noise seed");
    generate->add_option("--bits", gen.bits, "Ideal quantizer resolution");
    generate->add_option("--full-scale", gen.full_scale, "Quantizer full scale");
    generate->add_option("-o,--output", gen.output, "Capture path (.csv for CSV, else binary)")->required();

    AnalyzeArgs ana;
    auto* analyze_cmd = app.add_subcommand("analyze", "Compute SNR, SINAD, ENOB, THD, SFDR");
    analyze_cmd->add_option("input,-i,--input", ana.input, "Capture file")->required();
    analyze_cmd->add_option("--window", ana.window, "rect, hann or bh4")
        ->check(CLI::IsMember({"rect", "rectangular", "hann", "bh4", "blackman-harris"}));
    analyze_cmd->add_option("--harmonics", ana.harmonics, "Highest harmonic order")->check(CLI::Range(2, 64));
    analyze_cmd->add_option("--format", ana.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    analyze_cmd->add_option("--spectrum-csv", ana.spectrum_csv_path, "Write bin_hz,power_db rows");
    analyze_cmd->add_option("-o,--output", ana.output, "Report path (default stdout)");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Run the accelerator cycle model");
    sim.pipeline.attach(*simulate);
    simulate->add_option("--mode", sim.mode, "stream, transaction or both")
        ->check(CLI::IsMember({"stream", "transaction", "both"}));
    simulate->add_option("--groups", sim.groups, "Groups streamed")->check(CLI::PositiveNumber);
    simulate->add_option("--format", sim.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    BenchArgs bench;
    bench.pipeline.calibration = "reference";
    auto* bench_cmd = app.add_subcommand("bench", "Time the host path against the simulated accelerator");
    bench.pipeline.attach(*bench_cmd);
    bench_cmd->add_option("--repeat", bench.repeat, "Timed repeats (median reported)");
    bench_cmd->add_option("--warmup", bench.warmup, "Untimed warmup runs");
    auto* baseline = bench_cmd->add_option("--baseline-seconds", bench.baseline_seconds,
                                           "Use this baseline instead of measuring");
    bench_cmd->add_flag("--baseline-simulated", bench.baseline_simulated,
                        "Use the simulated accelerator time as baseline")
        ->excludes(baseline);
    bench_cmd->add_option("-i,--input", bench.input, "Capture to time (default: reference signal)");
    bench_cmd->add_option("--format", bench.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.push_back("adccal");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*generate) return cmd_generate(gen, out);
        if (*analyze_cmd) return cmd_analyze(ana, out);
        if (*simulate) return cmd_simulate(sim, out);
        if (*bench_cmd) return cmd_bench(bench, out);
    } catch (const NoSignalError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace adccal::cli
