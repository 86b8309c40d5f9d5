#include "adccal/signalgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "adccal/pow2.hpp"

namespace adccal {

void CaptureSpec::validate() const
{
    if (!is_power_of_two(n_points) || n_points < 8) {
        throw std::invalid_argument("n_points must be a power of two >= 8, got " +
                                    std::to_string(n_points));
    }
    if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) {
        throw std::invalid_argument("sample_rate must be positive and finite");
    }
    double max_freq = 0.0;
    for (const auto& tone : tones) {
        if (!(tone.amplitude >= 0.0) || !std::isfinite(tone.amplitude)) {
            throw std::invalid_argument("tone amplitude must be finite and >= 0");
        }
        if (!(tone.frequency_hz >= 0.0) || !std::isfinite(tone.frequency_hz)) {
            throw std::invalid_argument("tone frequency must be finite and >= 0");
        }
        if (!std::isfinite(tone.phase_rad)) {
            throw std::invalid_argument("tone phase must be finite");
        }
        max_freq = std::max(max_freq, tone.frequency_hz);
    }
    if (!tones.empty() && !(sample_rate_hz > 2.0 * max_freq)) {
        throw std::invalid_argument("sample_rate must exceed twice the highest tone frequency");
    }
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
        throw std::invalid_argument("noise_sigma must be finite and >= 0");
    }
    if (!(full_scale > 0.0) || !std::isfinite(full_scale)) {
        throw std::invalid_argument("full_scale must be positive and finite");
    }
    if (quantizer_bits && (*quantizer_bits < 2 || *quantizer_bits > 52)) {
        throw std::invalid_argument("quantizer_bits must be in [2, 52]");
    }
}

SampleBlock::SampleBlock(std::vector<double> samples, double sample_rate_hz, double full_scale)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz), full_scale_(full_scale)
{
    if (!is_power_of_two(samples_.size())) {
        throw std::invalid_argument("sample block length must be a power of two, got " +
                                    std::to_string(samples_.size()));
    }
    if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_)) {
        throw std::invalid_argument("sample block sample_rate must be positive");
    }
    if (!(full_scale_ > 0.0) || !std::isfinite(full_scale_)) {
        throw std::invalid_argument("sample block full_scale must be positive");
    }
    if (!std::all_of(samples_.begin(), samples_.end(), [](double v) { return std::isfinite(v); })) {
        throw std::invalid_argument("sample block contains non-finite values");
    }
}

SampleBlock SampleBlock::scaled(double gain) const
{
    std::vector<double> out(samples_);
    for (auto& v : out) v *= gain;
    return SampleBlock(std::move(out), sample_rate_hz_, full_scale_);
}

double NormalGenerator::uniform()
{
    constexpr double kScale = 0x1.0p-53;
    return static_cast<double>((engine_() >> 11) + 1) * kScale;
}

double NormalGenerator::operator()()
{
    if (cached_) {
        double z1 = *cached_;
        cached_.reset();
        return z1;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_ = radius * std::sin(angle);
    return radius * std::cos(angle);
}

SampleBlock synthesize(const CaptureSpec& spec)
{
    spec.validate();

    std::vector<double> samples(spec.n_points, 0.0);
    for (const auto& tone : spec.tones) {
        // Reduce f/fs*i modulo one cycle before scaling by 2*pi so long records
        // keep full phase precision.
        const double cycles_per_sample = tone.frequency_hz / spec.sample_rate_hz;
        for (std::size_t i = 0; i < spec.n_points; ++i) {
            const double cycles = std::fmod(cycles_per_sample * static_cast<double>(i), 1.0);
            samples[i] +=
                tone.amplitude * std::cos(2.0 * std::numbers::pi * cycles + tone.phase_rad);
        }
    }

    if (spec.noise_sigma > 0.0) {
        NormalGenerator randn(spec.seed);
        for (auto& v : samples) v += spec.noise_sigma * randn();
    }

    if (spec.quantizer_bits) {
        for (auto& v : samples) v = quantize(v, *spec.quantizer_bits, spec.full_scale);
    }

    return SampleBlock(std::move(samples), spec.sample_rate_hz, spec.full_scale);
}

double lsb_size(int bits, double full_scale)
{
    return 2.0 * full_scale / std::ldexp(1.0, bits);
}

double quantize(double x, int bits, double full_scale)
{
    if (bits < 2 || bits > 52) throw std::invalid_argument("quantize: bits must be in [2, 52]");
    if (!(full_scale > 0.0)) throw std::invalid_argument("quantize: full_scale must be positive");

    const double lsb = lsb_size(bits, full_scale);
    const double top = std::ldexp(1.0, bits - 1) - 1.0;
    const double bottom = -std::ldexp(1.0, bits - 1);
    const double code = std::clamp(std::floor(x / lsb + 0.5), bottom, top);
    return code * lsb;
}

CaptureSpec reference_capture_spec(std::uint64_t seed)
{
    CaptureSpec spec;
    spec.tones = {
        {0.7, 50.0e6, 0.0},
        {1.0, 12.0e6, -std::numbers::pi / 2.0},
    };
    spec.noise_sigma = 0.1;
    spec.sample_rate_hz = kDefaultSampleRateHz;
    spec.n_points = 1024;
    spec.seed = seed;
    spec.full_scale = 2.0;
    return spec;
}

double bin_frequency(std::size_t bin, std::size_t n_points, double sample_rate_hz)
{
    return static_cast<double>(bin) * sample_rate_hz / static_cast<double>(n_points);
}

double mean_power(std::span<const double> samples)
{
    if (samples.empty()) return 0.0;
    double acc = 0.0;
    for (double v : samples) acc += v * v;
    return acc / static_cast<double>(samples.size());
}

}  // namespace adccal
