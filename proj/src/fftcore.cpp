#include "adccal/fftcore.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "adccal/pow2.hpp"

namespace adccal {

namespace {

void require_fft_size(std::size_t n)
{
    if (n < 2 || !is_power_of_two(n)) {
        throw std::invalid_argument("fft length must be a power of two >= 2, got " +
                                    std::to_string(n));
    }
}

void bit_reverse_permute(std::span<Complex> a)
{
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
}

}  // namespace

TwiddleTable::TwiddleTable(std::size_t n) : n_(n)
{
    require_fft_size(n);
    factors_.resize(n / 2);
    factors_[0] = Complex(1.0, 0.0);
    for (std::size_t k = 1; k < n / 2; ++k) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(n);
        factors_[k] = Complex(std::cos(angle), std::sin(angle));
    }
}

std::shared_ptr<const TwiddleTable> twiddles_for(std::size_t n)
{
    static std::mutex mutex;
    static std::map<std::size_t, std::shared_ptr<const TwiddleTable>> cache;

    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_shared<const TwiddleTable>(n);
    return slot;
}

void fft_inplace(std::span<Complex> a)
{
    const std::size_t n = a.size();
    require_fft_size(n);
    const auto table = twiddles_for(n);
    const auto w = table->factors();

    bit_reverse_permute(a);

    // One pass per stage, log2(n) stages of n/2 butterflies.
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t base = 0; base < n; base += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const Complex tw = w[j * stride];
                const Complex u = a[base + j];
                const Complex x = a[base + j + half];
                // Spelled out to avoid the Annex G NaN-recovery path of operator*.
                const Complex v(x.real() * tw.real() - x.imag() * tw.imag(),
                                x.real() * tw.imag() + x.imag() * tw.real());
                a[base + j] = u + v;
                a[base + j + half] = u - v;
            }
        }
    }
}

ComplexVec fft(std::span<const Complex> x)
{
    ComplexVec out(x.begin(), x.end());
    fft_inplace(out);
    return out;
}

ComplexVec ifft(std::span<const Complex> x)
{
    ComplexVec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::conj(x[i]);
    fft_inplace(out);
    const double inv_n = 1.0 / static_cast<double>(x.size());
    for (auto& v : out) v = std::conj(v) * inv_n;
    return out;
}

ComplexVec dft_oracle(std::span<const Complex> x)
{
    const std::size_t n = x.size();
    // Every exponent k*m reduces to one of n roots; each is evaluated directly.
    std::vector<Complex> roots(n);
    for (std::size_t r = 0; r < n; ++r) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
        roots[r] = Complex(std::cos(angle), std::sin(angle));
    }
    ComplexVec out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc(0.0, 0.0);
        std::size_t r = 0;
        for (std::size_t m = 0; m < n; ++m) {
            acc += x[m] * roots[r];
            r += k;
            if (r >= n) r -= n;
        }
        out[k] = acc;
    }
    return out;
}

std::size_t butterfly_count(std::size_t n)
{
    if (!is_power_of_two(n)) {
        throw std::invalid_argument("butterfly_count: n must be a power of two, got " +
                                    std::to_string(n));
    }
    return n * log2_exact(n);
}

}  // namespace adccal
