#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace adccal {

using Complex = std::complex<double>;
using ComplexVec = std::vector<Complex>;

/// Roots of unity e^{-2*pi*i*k/n} for k in [0, n/2), the half table a
/// radix-2 transform of size n needs.
class TwiddleTable {
public:
    explicit TwiddleTable(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    std::span<const Complex> factors() const noexcept { return factors_; }

private:
    std::size_t n_;
    std::vector<Complex> factors_;
};

/// Shared, lazily built table for size n. Thread-safe; each size is built once.
std::shared_ptr<const TwiddleTable> twiddles_for(std::size_t n);

/// Forward unnormalized DFT, X[k] = sum_n x[n] e^{-2*pi*i*k*n/N}.
/// Iterative radix-2 decimation in time. Throws std::invalid_argument unless
/// the length is a power of two >= 2.
ComplexVec fft(std::span<const Complex> x);

/// In-place variant of fft().
void fft_inplace(std::span<Complex> x);

/// Inverse transform via conj(fft(conj(X)))/N.
ComplexVec ifft(std::span<const Complex> x);

/// Direct O(N^2) evaluation of the DFT definition. Test oracle only.
ComplexVec dft_oracle(std::span<const Complex> x);

/// Complex multiplications of an N-point transform as counted for the
/// hardware model: N * log2(N).
std::size_t butterfly_count(std::size_t n);

}  // namespace adccal
