#include "adccal/dynparams.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "adccal/fftcore.hpp"

namespace adccal {

std::string_view to_string(WindowKind kind) noexcept
{
    switch (kind) {
    case WindowKind::rectangular: return "rectangular";
    case WindowKind::hann: return "hann";
    case WindowKind::blackman_harris4: return "blackman-harris";
    }
    return "unknown";
}

WindowKind parse_window(std::string_view name)
{
    if (name == "rect" || name == "rectangular") return WindowKind::rectangular;
    if (name == "hann") return WindowKind::hann;
    if (name == "bh4" || name == "blackman-harris") return WindowKind::blackman_harris4;
    throw std::invalid_argument("unknown window '" + std::string(name) + "'");
}

std::vector<double> window_coefficients(WindowKind kind, std::size_t n)
{
    std::vector<double> w(n, 1.0);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    switch (kind) {
    case WindowKind::rectangular: break;
    case WindowKind::hann:
        for (std::size_t i = 0; i < n; ++i) w[i] = 0.5 - 0.5 * std::cos(step * static_cast<double>(i));
        break;
    case WindowKind::blackman_harris4:
        for (std::size_t i = 0; i < n; ++i) {
            const double x = step * static_cast<double>(i);
            w[i] = 0.35875 - 0.48829 * std::cos(x) + 0.14128 * std::cos(2.0 * x) -
                   0.01168 * std::cos(3.0 * x);
        }
        break;
    }
    return w;
}

std::size_t dc_exclusion_bins(WindowKind kind) noexcept
{
    switch (kind) {
    case WindowKind::rectangular: return 0;
    case WindowKind::hann: return 1;
    case WindowKind::blackman_harris4: return 3;
    }
    return 0;
}

double SpectrumRecord::total_power() const
{
    double acc = 0.0;
    for (double p : power) acc += p;
    return acc;
}

double SpectrumRecord::power_dbfs(std::size_t bin) const
{
    const double reference = full_scale * full_scale / 2.0;
    const double p = power.at(bin);
    if (p <= 0.0) return -kDbCap;
    return std::max(10.0 * std::log10(p / reference), -kDbCap);
}

SpectrumRecord power_spectrum(const SampleBlock& block, WindowKind window)
{
    const std::size_t n = block.size();
    if (n < 2) throw std::invalid_argument("power_spectrum: block needs at least 2 samples");

    const auto w = window_coefficients(window, n);
    const auto samples = block.samples();
    ComplexVec x(n);
    double sum_w2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = Complex(samples[i] * w[i], 0.0);
        sum_w2 += w[i] * w[i];
    }
    fft_inplace(x);

    SpectrumRecord rec;
    rec.n = n;
    rec.bin_hz = block.sample_rate_hz() / static_cast<double>(n);
    rec.window = window;
    rec.full_scale = block.full_scale();
    rec.power.resize(n / 2 + 1);

    const double scale = 1.0 / (static_cast<double>(n) * sum_w2);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        const double mag2 = std::norm(x[k]);
        const bool edge = (k == 0 || k == n / 2);
        rec.power[k] = (edge ? 1.0 : 2.0) * mag2 * scale;
    }
    return rec;
}

namespace {

// Lowest index among bins within 1e-12 relative of the maximum over [first, last].
std::size_t argmax_with_ties(const std::vector<double>& p, std::size_t first, std::size_t last)
{
    double best = 0.0;
    for (std::size_t k = first; k <= last; ++k) best = std::max(best, p[k]);
    const double floor = best * (1.0 - 1e-12);
    for (std::size_t k = first; k <= last; ++k) {
        if (p[k] >= floor) return k;
    }
    return first;
}

std::size_t resolved_half_width(const AnalysisOptions& opts, WindowKind window)
{
    if (opts.tone_half_width >= 0) return static_cast<std::size_t>(opts.tone_half_width);
    return window == WindowKind::rectangular ? 0 : 3;
}

enum class BinRole : unsigned char { noise, dc, fundamental, harmonic };

}  // namespace

std::size_t find_fundamental(const SpectrumRecord& spectrum)
{
    const std::size_t bins = spectrum.power.size();
    if (bins < 2) throw std::invalid_argument("find_fundamental: spectrum needs at least 2 bins");
    const std::size_t first = std::min(dc_exclusion_bins(spectrum.window) + 1, bins - 1);
    const std::size_t k = argmax_with_ties(spectrum.power, first, bins - 1);
    if (!(spectrum.power[k] > 0.0)) throw NoSignalError();
    return k;
}

double fold_harmonic(int order, double fundamental_hz, double sample_rate_hz)
{
    if (order < 2) throw std::invalid_argument("fold_harmonic: order must be >= 2");
    const double f = std::fmod(static_cast<double>(order) * fundamental_hz, sample_rate_hz);
    return f <= sample_rate_hz / 2.0 ? f : sample_rate_hz - f;
}

double capped_db(double num, double den) noexcept
{
    if (!(den >= kDegenerateRatio * num) || den <= 0.0) return kDbCap;
    return 10.0 * std::log10(num / den);
}

double enob_from_sinad(double sinad_db) noexcept { return (sinad_db - 1.76) / 6.02; }
double sinad_from_enob(double enob_bits) noexcept { return enob_bits * 6.02 + 1.76; }

DynReport analyze_spectrum(const SpectrumRecord& spectrum, const AnalysisOptions& opts)
{
    if (opts.max_harmonic < 1) throw std::invalid_argument("analyze: max_harmonic must be >= 1");

    const auto& p = spectrum.power;
    const std::size_t bins = p.size();
    const std::size_t k0 = find_fundamental(spectrum);
    const std::size_t half_width = resolved_half_width(opts, spectrum.window);
    const std::size_t dc_last = std::min(dc_exclusion_bins(spectrum.window), bins - 1);
    const double fs = spectrum.bin_hz * static_cast<double>(spectrum.n);

    std::vector<BinRole> role(bins, BinRole::noise);
    for (std::size_t k = 0; k <= dc_last; ++k) role[k] = BinRole::dc;

    auto claim = [&](std::size_t centre, BinRole as) {
        const std::size_t lo = centre > half_width ? centre - half_width : 0;
        const std::size_t hi = std::min(centre + half_width, bins - 1);
        for (std::size_t k = lo; k <= hi; ++k) {
            if (role[k] == BinRole::noise) role[k] = as;
        }
    };

    claim(k0, BinRole::fundamental);

    DynReport r;
    r.fundamental_bin = k0;
    r.fundamental_hz = static_cast<double>(k0) * spectrum.bin_hz;
    for (int order = 2; order <= opts.max_harmonic; ++order) {
        const double folded = fold_harmonic(order, r.fundamental_hz, fs);
        const auto kh = static_cast<std::size_t>(std::llround(folded / spectrum.bin_hz));
        r.harmonic_bins.push_back({order, std::min(kh, bins - 1)});
        claim(std::min(kh, bins - 1), BinRole::harmonic);
    }

    for (std::size_t k = 0; k < bins; ++k) {
        switch (role[k]) {
        case BinRole::dc: r.dc_power += p[k]; break;
        case BinRole::fundamental: r.fundamental_power += p[k]; break;
        case BinRole::harmonic: r.harmonic_power += p[k]; break;
        case BinRole::noise: r.noise_power += p[k]; break;
        }
    }

    // Largest spur: peak non-fundamental, non-DC bin, summed over the same
    // span a tone occupies.
    double spur_power = 0.0;
    {
        double peak = -1.0;
        for (std::size_t k = 0; k < bins; ++k) {
            if ((role[k] == BinRole::noise || role[k] == BinRole::harmonic) && p[k] > peak) {
                peak = p[k];
                r.spur_bin = k;
            }
        }
        if (peak >= 0.0) {
            const std::size_t lo = r.spur_bin > half_width ? r.spur_bin - half_width : 0;
            const std::size_t hi = std::min(r.spur_bin + half_width, bins - 1);
            for (std::size_t k = lo; k <= hi; ++k) {
                if (role[k] == BinRole::noise || role[k] == BinRole::harmonic) spur_power += p[k];
            }
        }
    }

    const double everything_else = r.noise_power + r.harmonic_power;
    r.sinad_db = capped_db(r.fundamental_power, everything_else);
    r.snr_db = capped_db(r.fundamental_power, r.noise_power);
    r.thd_db = -capped_db(r.fundamental_power, r.harmonic_power);
    r.sfdr_db = capped_db(r.fundamental_power, spur_power);
    r.enob_bits = enob_from_sinad(r.sinad_db);
    r.noise_free = everything_else < kDegenerateRatio * r.fundamental_power;

    r.window = spectrum.window;
    r.n = spectrum.n;
    r.sample_rate_hz = fs;
    return r;
}

DynReport analyze(const SampleBlock& block, const AnalysisOptions& opts)
{
    return analyze_spectrum(power_spectrum(block, opts.window), opts);
}

}  // namespace adccal
