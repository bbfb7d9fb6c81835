#pragma once

#include <bit>
#include <concepts>
#include <cstdint>

#if defined(__BMI2__)
#include <immintrin.h>
#endif

namespace bytestore::bits {

template <class T>
concept LaneWord = std::same_as<T, std::uint32_t> || std::same_as<T, std::uint64_t>;

// Reference loops. These define the semantics; the hardware paths below must
// agree with them bit for bit.

template <LaneWord T>
constexpr T pdep_reference(T src, T mask) noexcept {
    T out = 0;
    unsigned k = 0;
    for (unsigned pos = 0; pos < sizeof(T) * 8; ++pos) {
        if ((mask >> pos) & 1u) {
            out |= static_cast<T>((src >> k) & 1u) << pos;
            ++k;
        }
    }
    return out;
}

template <LaneWord T>
constexpr T pext_reference(T src, T mask) noexcept {
    T out = 0;
    unsigned k = 0;
    for (unsigned pos = 0; pos < sizeof(T) * 8; ++pos) {
        if ((mask >> pos) & 1u) {
            out |= static_cast<T>((src >> pos) & 1u) << k;
            ++k;
        }
    }
    return out;
}

/// Deposits the low popcount(mask) bits of src at the set positions of mask.
template <LaneWord T>
inline T pdep(T src, T mask) noexcept {
#if defined(__BMI2__)
    if constexpr (sizeof(T) == 4) {
        return _pdep_u32(src, mask);
    } else {
        return _pdep_u64(src, mask);
    }
#else
    T out = 0;
    for (T bb = 1; mask != 0; bb += bb) {
        if (src & bb) out |= mask & (T{0} - mask);
        mask &= mask - 1;
    }
    return out;
#endif
}

/// Gathers the bits of src at the set positions of mask into the low bits.
template <LaneWord T>
inline T pext(T src, T mask) noexcept {
#if defined(__BMI2__)
    if constexpr (sizeof(T) == 4) {
        return _pext_u32(src, mask);
    } else {
        return _pext_u64(src, mask);
    }
#else
    T out = 0;
    for (T bb = 1; mask != 0; bb += bb) {
        if (src & mask & (T{0} - mask)) out |= bb;
        mask &= mask - 1;
    }
    return out;
#endif
}

/// E(x): clears the lowest set bit.
template <std::unsigned_integral T>
constexpr T erase_rightmost(T x) noexcept {
    return static_cast<T>(x & static_cast<T>(x - 1));
}

/// P(x): sets every bit above the lowest set bit, clears it and everything below.
template <std::unsigned_integral T>
constexpr T propagate_rightmost(T x) noexcept {
    return static_cast<T>(x ^ static_cast<T>(T{0} - x));
}

/// Position of the lowest set bit expressed through P(x); x must be non-zero.
template <std::unsigned_integral T>
constexpr unsigned rightmost_index(T x) noexcept {
    return static_cast<unsigned>(sizeof(T) * 8) - 1u -
           static_cast<unsigned>(std::popcount(propagate_rightmost(x)));
}

template <std::unsigned_integral T>
constexpr unsigned popcount(T x) noexcept {
    return static_cast<unsigned>(std::popcount(x));
}

/// Mask with the low n bits set, n in [0, 64].
constexpr std::uint64_t low_mask(unsigned n) noexcept {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

}  // namespace bytestore::bits
