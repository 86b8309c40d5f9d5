#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adccal/signalgen.hpp"

namespace adccal {

enum class WindowKind { rectangular, hann, blackman_harris4 };

std::string_view to_string(WindowKind kind) noexcept;
/// Accepts "rect"/"rectangular", "hann", "bh4"/"blackman-harris".
WindowKind parse_window(std::string_view name);

/// Periodic (DFT-even) window coefficients of length n.
std::vector<double> window_coefficients(WindowKind kind, std::size_t n);

/// Single-sided power spectrum, N/2 + 1 bins.
///
/// Bin powers are scaled by 1/(N * sum(w^2)) (doubled for 0 < k < N/2), so a
/// coherent tone of amplitude A under the rectangular window shows exactly
/// A^2/2 in its bin and the bins sum to the time-domain mean power. Under the
/// other windows the same scaling makes the tone's main-lobe bins sum to A^2/2.
struct SpectrumRecord {
    std::vector<double> power;
    double bin_hz = 0.0;
    std::size_t n = 0;
    WindowKind window = WindowKind::rectangular;
    double full_scale = 1.0;

    double total_power() const;
    /// dB relative to a full-scale sine (power full_scale^2 / 2).
    double power_dbfs(std::size_t bin) const;
};

class NoSignalError : public std::runtime_error {
public:
    NoSignalError() : std::runtime_error("no signal: spectrum is all zero") {}
};

SpectrumRecord power_spectrum(const SampleBlock& block,
                              WindowKind window = WindowKind::rectangular);

/// argmax of power over the non-DC bins. Bins within 1e-12 relative of the
/// maximum count as ties and the lowest index wins. Throws NoSignalError when
/// every searched bin is zero.
std::size_t find_fundamental(const SpectrumRecord& spectrum);

/// order*f0 folded into [0, fs/2].
double fold_harmonic(int order, double fundamental_hz, double sample_rate_hz);

inline constexpr double kDbCap = 300.0;
/// Ratios whose denominator is below this fraction of the numerator report kDbCap.
inline constexpr double kDegenerateRatio = 1e-18;

struct AnalysisOptions {
    WindowKind window = WindowKind::rectangular;
    int max_harmonic = 6;
    /// Half-width of the bin span summed per tone; -1 picks 0 for the
    /// rectangular window and 3 otherwise.
    int tone_half_width = -1;
};

struct HarmonicBin {
    int order = 0;
    std::size_t bin = 0;
    friend bool operator==(const HarmonicBin&, const HarmonicBin&) = default;
};

struct DynReport {
    double snr_db = 0.0;
    double sinad_db = 0.0;
    double enob_bits = 0.0;
    double thd_db = 0.0;
    double sfdr_db = 0.0;
    std::size_t fundamental_bin = 0;
    double fundamental_hz = 0.0;
    std::vector<HarmonicBin> harmonic_bins;
    std::size_t spur_bin = 0;

    // Partition of the total spectrum power; the four parts sum to the total.
    double dc_power = 0.0;
    double fundamental_power = 0.0;
    double harmonic_power = 0.0;
    double noise_power = 0.0;

    /// Set when everything but the fundamental is below kDegenerateRatio of
    /// it; SNR and SINAD then carry kDbCap.
    bool noise_free = false;
    WindowKind window = WindowKind::rectangular;
    std::size_t n = 0;
    double sample_rate_hz = 0.0;
};

DynReport analyze(const SampleBlock& block, const AnalysisOptions& opts = {});
/// Analysis of a precomputed spectrum; opts.window is taken from the record.
DynReport analyze_spectrum(const SpectrumRecord& spectrum, const AnalysisOptions& opts = {});

/// Bins at the bottom of the spectrum owned by DC: the DC main lobe of the
/// window (0 for rectangular, 1 for Hann, 3 for Blackman-Harris).
std::size_t dc_exclusion_bins(WindowKind kind) noexcept;

double enob_from_sinad(double sinad_db) noexcept;
double sinad_from_enob(double enob_bits) noexcept;

/// 10*log10(num/den), saturating at kDbCap when den < kDegenerateRatio * num.
double capped_db(double num, double den) noexcept;

}  // namespace adccal
