#pragma once

// Reference computations used by the tests. They are written independently of
// the library code paths they check: no FFT, no shared helpers.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace adccal::oracle {

/// Nearest quantizer level by scanning every code. Ties go to the upper level.
inline double nearest_level_scan(double x, int bits, double full_scale)
{
    const double lsb = 2.0 * full_scale / std::ldexp(1.0, bits);
    const std::int64_t lo = -(std::int64_t{1} << (bits - 1));
    const std::int64_t hi = (std::int64_t{1} << (bits - 1)) - 1;
    double best = static_cast<double>(lo) * lsb;
    double best_err = std::abs(x - best);
    for (std::int64_t code = lo + 1; code <= hi; ++code) {
        const double level = static_cast<double>(code) * lsb;
        const double err = std::abs(x - level);
        if (err <= best_err) {
            best = level;
            best_err = err;
        }
    }
    return best;
}

/// SNR of an ideal converter from the time-domain error, 10*log10((A^2/2)/P_err).
inline double time_domain_snr_db(std::span<const double> ideal, std::span<const double> quantized,
                                 double amplitude)
{
    double err = 0.0;
    for (std::size_t i = 0; i < ideal.size(); ++i) {
        const double e = quantized[i] - ideal[i];
        err += e * e;
    }
    err /= static_cast<double>(ideal.size());
    return 10.0 * std::log10(amplitude * amplitude / 2.0 / err);
}

/// Coherent cosine with `cycles` periods in n samples, computed in long double.
inline std::vector<double> coherent_cosine(std::size_t n, std::size_t cycles, double amplitude,
                                           double phase = 0.0)
{
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long double angle = 2.0L * std::numbers::pi_v<long double> *
                                      static_cast<long double>((cycles * i) % n) /
                                      static_cast<long double>(n) +
                                  phase;
        x[i] = static_cast<double>(amplitude * std::cos(angle));
    }
    return x;
}

inline std::vector<std::complex<double>> random_complex(std::size_t n, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::complex<double>> x(n);
    for (auto& v : x) v = {u(rng), u(rng)};
    return x;
}

inline double max_abs_diff(std::span<const std::complex<double>> a,
                           std::span<const std::complex<double>> b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace adccal::oracle
