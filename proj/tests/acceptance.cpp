// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "adccal/dynparams.hpp"
#include "adccal/fftcore.hpp"
#include "adccal/io.hpp"
#include "adccal/pipelinesim.hpp"
#include "adccal/signalgen.hpp"
#include "oracles.hpp"

using namespace adccal;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome fft_oracle_equivalence()
{
    std::mt19937_64 rng(1);
    double worst_ratio = 0.0;
    std::size_t worst_n = 0;
    for (std::size_t n = 2; n <= 4096; n *= 2) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto x = oracle::random_complex(n, rng);
            const double err = oracle::max_abs_diff(fft(x), dft_oracle(x));
            if (err / double(n) > worst_ratio) {
                worst_ratio = err / double(n);
                worst_n = n;
            }
        }
    }
    return {worst_ratio < 1e-9, fmt("max |fft - dft|/N = %.3e (N=%zu), limit 1e-9", worst_ratio, worst_n)};
}

Outcome parseval_and_round_trip()
{
    std::mt19937_64 rng(2);
    double worst_parseval = 0.0;
    double worst_round_trip = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto x = oracle::random_complex(1024, rng);
        const auto X = fft(x);
        double et = 0.0;
        double ef = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            et += std::norm(x[i]);
            ef += std::norm(X[i]);
        }
        worst_parseval = std::max(worst_parseval, std::abs(et - ef / 1024.0) / et);
        worst_round_trip = std::max(worst_round_trip, oracle::max_abs_diff(ifft(X), x));
    }
    return {worst_parseval < 1e-9 && worst_round_trip < 1e-10,
            fmt("Parseval rel err %.3e (limit 1e-9), round trip abs err %.3e (limit 1e-10)",
                worst_parseval, worst_round_trip)};
}

Outcome bus_limit()
{
    const PipelineConfig defaults;
    const auto s = simulate_stream(defaults, 100000);
    const double rel = std::abs(s.throughput_bytes_per_sec - 2.0e9) / 2.0e9;

    std::mt19937_64 rng(3);
    int exceeded = 0;
    const int configs = 64;
    for (int i = 0; i < configs; ++i) {
        PipelineConfig cfg;
        cfg.n_points = std::size_t{1} << std::uniform_int_distribution<int>(1, 13)(rng);
        cfg.point_bytes = std::uniform_int_distribution<std::size_t>(1, 16)(rng);
        cfg.clock_hz = std::uniform_real_distribution<double>(10e6, 1e9)(rng);
        cfg.bus_bits = std::uniform_int_distribution<std::size_t>(1, 1024)(rng);
        cfg.stage_latency = std::uniform_int_distribution<std::uint64_t>(0, 1000)(rng);
        cfg.fill_overhead = std::uniform_int_distribution<std::uint64_t>(0, 10000)(rng);
        cfg.n_fft_modules = std::uniform_int_distribution<std::size_t>(1, 16)(rng);
        const std::uint64_t groups = std::uniform_int_distribution<std::uint64_t>(1, 20000)(rng);
        if (simulate_stream(cfg, groups).throughput_bytes_per_sec > cfg.bus_limit_bytes_per_sec()) ++exceeded;
    }
    return {rel < 0.01 && s.throughput_bytes_per_sec <= 2.0e9 && exceeded == 0,
            fmt("defaults, 1e5 groups: %.6f GB/s (rel err %.2e, limit 1%%); %d/%d random configs over bus limit",
                s.throughput_bytes_per_sec / 1e9, rel, exceeded, configs)};
}

Outcome per_group_throughput()
{
    const auto cal = reference_transaction_calibration();
    const auto t = simulate_transaction(cal.config, cal.host_overhead_s);
    const double time_rel = std::abs(t.wall_seconds - 18e-6) / 18e-6;
    const double tp_rel = std::abs(t.throughput_bytes_per_sec - 440e6) / 440e6;
    return {t.bytes == 8192 && time_rel <= 0.02 && tp_rel <= 0.05,
            fmt("%.4f us (limit 18 us +-2%%), %.2f MB/s vs 440 MB/s (rel %.3f, limit 5%%)", t.wall_seconds * 1e6,
                t.throughput_bytes_per_sec / 1e6, tp_rel)};
}

Outcome speedup_reproduction()
{
    const double s = speedup(2.19e-3, 18e-6);
    return {std::abs(s - 121.67) <= 0.01 && s >= 100.0, fmt("speedup(2.19 ms, 18 us) = %.4f (121.67 +-0.01, >= 100)", s)};
}

Outcome latency_calibration()
{
    const auto cfg = reference_latency_config();
    const auto s = simulate_stream(cfg, 1);
    return {cfg.n_points == 1024 && s.latency_first_group == 4258,
            fmt("first-group latency %llu clocks (fill %llu + %zu stages x %llu + %llu streaming), target 4258",
                static_cast<unsigned long long>(s.latency_first_group),
                static_cast<unsigned long long>(cfg.fill_overhead), cfg.stages(),
                static_cast<unsigned long long>(cfg.stage_latency),
                static_cast<unsigned long long>(cfg.stream_clocks_per_group()))};
}

Outcome enob_correctness()
{
    // A = FS - LSB places the sine peak on the top code without overload.
    constexpr std::size_t n = 4096;
    constexpr std::size_t bin = 67;
    bool ok = true;
    std::string detail;
    for (int bits : {8, 10, 12, 14}) {
        const double amplitude = 1.0 - lsb_size(bits, 1.0);
        const auto ideal = oracle::coherent_cosine(n, bin, amplitude);
        std::vector<double> q(n);
        for (std::size_t i = 0; i < n; ++i) q[i] = quantize(ideal[i], bits, 1.0);
        const auto r = analyze(SampleBlock(q, kDefaultSampleRateHz, 1.0));
        const double td = oracle::time_domain_snr_db(ideal, q, amplitude);
        const bool this_ok = std::abs(r.enob_bits - bits) <= 0.2 && std::abs(r.sinad_db - td) <= 0.05;
        ok = ok && this_ok;
        detail += fmt("B=%d ENOB %.3f dSINAD %.4f dB; ", bits, r.enob_bits, r.sinad_db - td);
    }
    return {ok, detail + "limits +-0.2 bit, 0.05 dB"};
}

Outcome snr_vs_noise()
{
    bool ok = true;
    std::string detail;
    for (double sigma : {0.001, 0.01, 0.1}) {
        double sum = 0.0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            CaptureSpec spec;
            spec.n_points = 1024;
            spec.tones = {{1.0, bin_frequency(50, 1024, spec.sample_rate_hz), 0.0}};
            spec.noise_sigma = sigma;
            spec.seed = seed;
            sum += analyze(synthesize(spec)).snr_db;
        }
        const double mean = sum / 100.0;
        const double expected = 10.0 * std::log10(1.0 / (2.0 * sigma * sigma));
        ok = ok && std::abs(mean - expected) <= 0.5;
        detail += fmt("sigma=%g: %.3f vs %.3f dB; ", sigma, mean, expected);
    }
    return {ok, detail + "limit +-0.5 dB"};
}

Outcome reference_signal_spectrum()
{
    auto spec = reference_capture_spec();
    spec.noise_sigma = 0.0;
    const auto s = power_spectrum(synthesize(spec));
    std::vector<double> strong_hz;
    for (std::size_t k = 1; k < s.power.size(); ++k) {
        if (s.power_dbfs(k) > -100.0) strong_hz.push_back(double(k) * s.bin_hz);
    }
    const bool two_bins = strong_hz.size() == 2 && strong_hz[0] == 12e6 && strong_hz[1] == 50e6;
    const double ratio_db = 10.0 * std::log10(s.power[50] / s.power[12]);

    const auto noisy = reference_capture_spec(kReferenceSeed);
    const auto first = emit_report(analyze(synthesize(noisy)), ReportFormat::json);
    const auto second = emit_report(analyze(synthesize(noisy)), ReportFormat::json);
    const bool stable = first == second;

    return {two_bins && std::abs(ratio_db - (-3.098)) <= 0.01 && stable,
            fmt("%zu non-DC bins above -100 dBFS%s, P(50MHz)/P(12MHz) = %.4f dB (-3.098 +-0.01), report %s",
                strong_hz.size(), two_bins ? " at 12/50 MHz" : "", ratio_db, stable ? "byte-stable" : "UNSTABLE")};
}

Outcome result_equivalence()
{
    const PipelineConfig cfg;
    std::mt19937_64 rng(10);
    int mismatches = 0;
    for (int g = 0; g < 100; ++g) {
        const auto group = oracle::random_complex(cfg.n_points, rng);
        const auto accel = process_group(cfg, group);
        const auto host = fft(group);
        if (accel.size() != host.size() ||
            std::memcmp(accel.data(), host.data(), host.size() * sizeof(Complex)) != 0) {
            ++mismatches;
        }
    }
    return {mismatches == 0, fmt("%d/100 groups differ bitwise between accelerator model and host path", mismatches)};
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"AC1 FFT oracle equivalence", fft_oracle_equivalence},
        {"AC2 Parseval and round trip", parseval_and_round_trip},
        {"AC3 Bus-limit 2 GB/s", bus_limit},
        {"AC4 Per-group 18 us / 440 MB/s", per_group_throughput},
        {"AC5 Speedup > 100x", speedup_reproduction},
        {"AC6 Latency 4258 clocks", latency_calibration},
        {"AC7 ENOB of ideal quantizer", enob_correctness},
        {"AC8 SNR vs analytic noise", snr_vs_noise},
        {"AC9 Reference-signal spectrum", reference_signal_spectrum},
        {"AC10 Accelerator/host equivalence", result_equivalence},
    };

    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o{false, ""};
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
