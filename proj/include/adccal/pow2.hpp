#pragma once

#include <bit>
#include <cstddef>

namespace adccal {

constexpr bool is_power_of_two(std::size_t n) noexcept { return std::has_single_bit(n); }

// Caller guarantees n is a power of two.
constexpr unsigned log2_exact(std::size_t n) noexcept
{
    return static_cast<unsigned>(std::countr_zero(n));
}

}  // namespace adccal
