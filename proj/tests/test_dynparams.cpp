#include <doctest.h>

#include <cmath>
#include <random>

#include "adccal/dynparams.hpp"
#include "oracles.hpp"

using namespace adccal;

namespace {

constexpr double kFs = kDefaultSampleRateHz;

SampleBlock tones_block(std::size_t n, std::vector<std::pair<std::size_t, double>> bins_amps,
                        double sigma = 0.0, std::uint64_t seed = 0)
{
    CaptureSpec spec;
    spec.n_points = n;
    for (auto [bin, amp] : bins_amps) spec.tones.push_back({amp, bin_frequency(bin, n, kFs), 0.3});
    spec.noise_sigma = sigma;
    spec.seed = seed;
    return synthesize(spec);
}

// A = FS - LSB: the largest sine whose samples stay on the codes.
SampleBlock quantized_full_scale_sine(std::size_t n, std::size_t bin, int bits,
                                      std::vector<double>* ideal_out = nullptr)
{
    const double amplitude = 1.0 - lsb_size(bits, 1.0);
    auto ideal = oracle::coherent_cosine(n, bin, amplitude);
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = quantize(ideal[i], bits, 1.0);
    if (ideal_out) *ideal_out = ideal;
    return SampleBlock(std::move(q), kFs, 1.0);
}

}  // namespace

TEST_CASE("power_spectrum: coherent unit cosine lands in one bin at A^2/2")
{
    const auto spec = power_spectrum(tones_block(1024, {{50, 1.0}}));
    REQUIRE(spec.power.size() == 513);
    CHECK(spec.bin_hz == doctest::Approx(1e6));
    CHECK(std::abs(spec.power[50] - 0.5) < 1e-12);
    for (std::size_t k = 1; k < spec.power.size(); ++k) {
        if (k != 50) CHECK(spec.power[k] < 1e-20);
    }
}

TEST_CASE("power_spectrum: noise-free reference signal tone ratio is -3.098 dB")
{
    auto spec = reference_capture_spec();
    spec.noise_sigma = 0.0;
    const auto s = power_spectrum(synthesize(spec));
    CHECK(s.power[50] / s.power[12] == doctest::Approx(0.49).epsilon(1e-12));
    CHECK(10.0 * std::log10(s.power[50] / s.power[12]) == doctest::Approx(-3.0980392).epsilon(1e-6));
}

TEST_CASE("power_spectrum: zero block gives zero bins")
{
    const SampleBlock zero(std::vector<double>(64, 0.0), kFs);
    const auto s = power_spectrum(zero);
    for (double p : s.power) CHECK(p == 0.0);
    CHECK_THROWS_AS(find_fundamental(s), NoSignalError);
    CHECK_THROWS_AS(analyze(zero), NoSignalError);
}

TEST_CASE("power_spectrum: bins sum to time-domain mean power")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto block = synthesize(reference_capture_spec(seed));
        const auto s = power_spectrum(block);
        const double td = mean_power(block.samples());
        CHECK(std::abs(s.total_power() - td) / td < 1e-9);
    }
}

TEST_CASE("power_spectrum: windowed tone sums to A^2/2 over its main lobe")
{
    const auto block = tones_block(1024, {{100, 0.8}});
    for (auto w : {WindowKind::hann, WindowKind::blackman_harris4}) {
        const auto s = power_spectrum(block, w);
        double lobe = 0.0;
        for (std::size_t k = 97; k <= 103; ++k) lobe += s.power[k];
        CHECK(lobe == doctest::Approx(0.32).epsilon(1e-9));
    }
}

TEST_CASE("find_fundamental: examples and tie-break")
{
    auto ref = reference_capture_spec();
    ref.noise_sigma = 0.0;
    CHECK(find_fundamental(power_spectrum(synthesize(ref))) == 12);
    CHECK(find_fundamental(power_spectrum(tones_block(1024, {{50, 1.0}}))) == 50);
    CHECK(find_fundamental(power_spectrum(tones_block(1024, {{12, 1.0}, {50, 1.0}}))) == 12);
    CHECK(find_fundamental(power_spectrum(tones_block(1024, {{50, 1.0}, {12, 1.0}}))) == 12);
}

TEST_CASE("fold_harmonic")
{
    CHECK(fold_harmonic(2, 100e6, 1.024e9) == doctest::Approx(200e6));
    CHECK(fold_harmonic(3, 400e6, 1e9) == doctest::Approx(200e6));
    CHECK(fold_harmonic(2, 0.5e9, 1e9) == doctest::Approx(0.0));
    CHECK(fold_harmonic(2, 400e6, 1.024e9) == doctest::Approx(224e6));
    CHECK_THROWS_AS(fold_harmonic(1, 1e6, 1e9), std::invalid_argument);
}

TEST_CASE("analyze: ideal 12-bit converter gives ENOB 12 and SINAD near 74 dB")
{
    std::vector<double> ideal;
    const auto block = quantized_full_scale_sine(4096, 67, 12, &ideal);
    const auto r = analyze(block);
    CHECK(r.enob_bits == doctest::Approx(12.0).epsilon(0.2 / 12.0));
    CHECK(std::abs(r.sinad_db - 74.0) < 6.02 * 0.2);

    const double td = oracle::time_domain_snr_db(ideal, block.samples(), 1.0 - lsb_size(12, 1.0));
    CHECK(std::abs(r.sinad_db - td) < 0.05);
}

TEST_CASE("analyze: SNR of sine plus sigma=0.01 noise averages 36.99 dB")
{
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        sum += analyze(tones_block(1024, {{50, 1.0}}, 0.01, seed)).snr_db;
    }
    CHECK(std::abs(sum / 100.0 - 10.0 * std::log10(0.5 / 1e-4)) < 0.5);
}

TEST_CASE("analyze: non-harmonic spur at 0.1 of the fundamental gives 20 dBc SFDR")
{
    const auto r = analyze(tones_block(1024, {{50, 1.0}, {77, 0.1}}));
    CHECK(r.fundamental_bin == 50);
    CHECK(r.spur_bin == 77);
    CHECK(std::abs(r.sfdr_db - 20.0) < 0.01);
}

TEST_CASE("analyze: harmonics are found at their folded bins")
{
    // f0 = bin 400 of 1024; 2nd folds to 224, 3rd to 176.
    const auto r = analyze(tones_block(1024, {{400, 1.0}, {224, 0.01}, {176, 0.001}}));
    REQUIRE(r.harmonic_bins.size() == 5);
    CHECK(r.harmonic_bins[0] == HarmonicBin{2, 224});
    CHECK(r.harmonic_bins[1] == HarmonicBin{3, 176});
    const double expected_thd = 10.0 * std::log10((1e-4 + 1e-6) / 1.0);
    CHECK(r.thd_db == doctest::Approx(expected_thd).epsilon(1e-9));
    CHECK(r.sfdr_db == doctest::Approx(40.0).epsilon(1e-9));
    // Everything but the fundamental is harmonic, so SNR saturates.
    CHECK(r.snr_db == kDbCap);
    CHECK_FALSE(r.noise_free);
}

TEST_CASE("analyze: noise-free tone reports the cap and sets the flag")
{
    const auto r = analyze(tones_block(1024, {{50, 1.0}}));
    CHECK(r.noise_free);
    CHECK(r.snr_db == kDbCap);
    CHECK(r.sinad_db == kDbCap);
    CHECK(r.sfdr_db == kDbCap);
    CHECK(r.thd_db == -kDbCap);
    CHECK(r.enob_bits == enob_from_sinad(kDbCap));
}

TEST_CASE("analyze: hann beats rectangular by >= 20 dB SFDR on a half-bin tone")
{
    CaptureSpec spec;
    spec.n_points = 1024;
    spec.tones = {{1.0, 100.5 * kFs / 1024.0, 0.0}};
    const auto block = synthesize(spec);
    const auto rect = analyze(block);
    AnalysisOptions hann_opts;
    hann_opts.window = WindowKind::hann;
    const auto hann = analyze(block, hann_opts);
    CHECK(hann.sfdr_db >= rect.sfdr_db + 20.0);
}

TEST_CASE("analyze properties over random captures")
{
    std::mt19937_64 rng(314);
    std::uniform_int_distribution<std::size_t> bin(20, 200);
    std::uniform_real_distribution<double> amp(0.05, 0.9);
    std::uniform_real_distribution<double> sig(1e-4, 0.05);
    std::uniform_real_distribution<double> gain(1e-3, 1e3);

    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t k0 = bin(rng);
        const auto block = tones_block(2048, {{k0, 1.0}, {2 * k0, 0.01 * amp(rng)}, {k0 + 331, 0.01 * amp(rng)}},
                                       sig(rng), static_cast<std::uint64_t>(trial));
        AnalysisOptions opts;
        opts.window = static_cast<WindowKind>(trial % 3);
        const auto r = analyze(block, opts);
        const auto spectrum = power_spectrum(block, opts.window);

        // Partition covers the spectrum exactly once.
        const double parts = r.dc_power + r.fundamental_power + r.harmonic_power + r.noise_power;
        CHECK(std::abs(parts - spectrum.total_power()) <= 1e-12 * spectrum.total_power());

        CHECK(r.sinad_db <= r.snr_db + 1e-9);
        CHECK(r.sfdr_db >= r.sinad_db - 1e-9);
        CHECK(r.sfdr_db >= 0.0);
        CHECK(sinad_from_enob(r.enob_bits) == doctest::Approx(r.sinad_db).epsilon(1e-12));

        const auto scaled = analyze(block.scaled(gain(rng)), opts);
        CHECK(std::abs(scaled.snr_db - r.snr_db) < 1e-9);
        CHECK(std::abs(scaled.sinad_db - r.sinad_db) < 1e-9);
        CHECK(std::abs(scaled.enob_bits - r.enob_bits) < 1e-9);
        CHECK(std::abs(scaled.thd_db - r.thd_db) < 1e-9);
        CHECK(std::abs(scaled.sfdr_db - r.sfdr_db) < 1e-9);
    }
}

TEST_CASE("analyze: harmonics below the noise floor barely separate SINAD and SNR")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto r = analyze(tones_block(4096, {{123, 1.0}}, 0.01, seed));
        CHECK(r.snr_db - r.sinad_db < 0.1);
        CHECK(r.snr_db - r.sinad_db >= 0.0);
    }
}

TEST_CASE("window parsing")
{
    CHECK(parse_window("rect") == WindowKind::rectangular);
    CHECK(parse_window("hann") == WindowKind::hann);
    CHECK(parse_window("bh4") == WindowKind::blackman_harris4);
    CHECK_THROWS_AS(parse_window("kaiser"), std::invalid_argument);
}

TEST_CASE("capped_db saturates at the documented cap")
{
    CHECK(capped_db(1.0, 0.0) == kDbCap);
    CHECK(capped_db(1.0, 1e-19) == kDbCap);
    CHECK(capped_db(1.0, 1e-17) == doctest::Approx(170.0));
    CHECK(capped_db(100.0, 1.0) == doctest::Approx(20.0));
}
