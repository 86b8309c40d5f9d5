#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace adccal {

inline constexpr double kDefaultSampleRateHz = 1.024e9;
inline constexpr std::uint64_t kReferenceSeed = 1;

/// One sinusoidal term a*cos(2*pi*f*t + phase). A sine is phase = -pi/2.
struct ToneSpec {
    double amplitude = 0.0;
    double frequency_hz = 0.0;
    double phase_rad = 0.0;
};

struct CaptureSpec {
    std::vector<ToneSpec> tones;
    double noise_sigma = 0.0;
    double sample_rate_hz = kDefaultSampleRateHz;
    std::size_t n_points = 1024;
    std::uint64_t seed = 0;
    std::optional<int> quantizer_bits;
    double full_scale = 1.0;

    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
};

/// A real-valued capture ("group"): power-of-two length, finite samples.
class SampleBlock {
public:
    SampleBlock(std::vector<double> samples, double sample_rate_hz, double full_scale = 1.0);

    std::span<const double> samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    double sample_rate_hz() const noexcept { return sample_rate_hz_; }
    double full_scale() const noexcept { return full_scale_; }

    /// Returns a copy with every sample multiplied by `gain`.
    SampleBlock scaled(double gain) const;

    friend bool operator==(const SampleBlock&, const SampleBlock&) = default;

private:
    std::vector<double> samples_;
    double sample_rate_hz_;
    double full_scale_;
};

/// Standard-normal stream, reproducible across platforms and languages.
///
/// Uniforms come from std::mt19937_64 (whose output sequence is fixed by the
/// C++ standard) as u = ((x >> 11) + 1) * 2^-53, which lies in (0, 1]. Pairs
/// are turned into normals with the Box-Muller transform
///   z0 = sqrt(-2 ln u1) * cos(2 pi u2),  z1 = sqrt(-2 ln u1) * sin(2 pi u2)
/// and emitted in the order z0, z1.
class NormalGenerator {
public:
    explicit NormalGenerator(std::uint64_t seed) : engine_(seed) {}

    double operator()();

private:
    double uniform();

    std::mt19937_64 engine_;
    std::optional<double> cached_;
};

/// Renders the spec; identical specs (seed included) give bit-identical blocks.
SampleBlock synthesize(const CaptureSpec& spec);

/// Ideal mid-tread quantizer with 2^bits levels at k*LSB for
/// k in [-2^(bits-1), 2^(bits-1) - 1], LSB = 2*full_scale / 2^bits.
/// Rounds to nearest (ties upward) and clips to the end codes.
double quantize(double x, int bits, double full_scale);

double lsb_size(int bits, double full_scale);

/// 0.7*cos(2*pi*50MHz*t) + sin(2*pi*12MHz*t) + 0.1*randn(), 1024 points at
/// 1.024 GHz so both tones sit on integer bins (50 and 12). full_scale is 2.0
/// so the peak of the composite (about 1.7) stays inside the range.
CaptureSpec reference_capture_spec(std::uint64_t seed = kReferenceSeed);

/// Frequency of integer bin `bin` for an n-point record at `sample_rate_hz`.
double bin_frequency(std::size_t bin, std::size_t n_points, double sample_rate_hz);

double mean_power(std::span<const double> samples);

}  // namespace adccal
