#include <gtest/gtest.h>

#include <cstdint>
#include <random>

#include "bytestore/bits.hpp"

namespace bs = bytestore::bits;

TEST(Pdep, ZeroSource) { EXPECT_EQ(bs::pdep<std::uint32_t>(0, 0b11010010), 0u); }

TEST(Pdep, IdentityMask) {
    std::mt19937 rng(7);
    for (int i = 0; i < 1000; ++i) {
        const std::uint32_t x = rng();
        EXPECT_EQ(bs::pdep<std::uint32_t>(x, 0xFFFFFFFFu), x);
    }
}

TEST(Pdep, DepositsLowBitsAtMaskPositions) {
    EXPECT_EQ(bs::pdep<std::uint32_t>(0b1011, 0b11010010), 0b10010010u);
    EXPECT_EQ(bs::pdep_reference<std::uint32_t>(0b1011, 0b11010010), 0b10010010u);
}

TEST(Pext, EmptyAndIdentityMask) {
    std::mt19937 rng(8);
    for (int i = 0; i < 1000; ++i) {
        const std::uint32_t x = rng();
        EXPECT_EQ(bs::pext<std::uint32_t>(x, 0), 0u);
        EXPECT_EQ(bs::pext<std::uint32_t>(x, 0xFFFFFFFFu), x);
    }
}

TEST(Pext, InverseOfDepositExample) {
    EXPECT_EQ(bs::pext<std::uint32_t>(0b10010010, 0b11010010), 0b1011u);
    EXPECT_EQ(bs::pext_reference<std::uint32_t>(0b10010010, 0b11010010), 0b1011u);
}

TEST(PdepPext, RoundTripExhaustive12Bit) {
    for (std::uint32_t mask = 0; mask < (1u << 12); ++mask) {
        const unsigned k = bs::popcount(mask);
        for (std::uint32_t src = 0; src < (1u << 12); src += 7) {
            const std::uint32_t dep = bs::pdep(src, mask);
            ASSERT_EQ(dep, bs::pdep_reference(src, mask));
            ASSERT_EQ(dep & ~mask, 0u);
            ASSERT_EQ(bs::pext(dep, mask), src & static_cast<std::uint32_t>(bs::low_mask(k)));
            ASSERT_EQ(bs::pext(src, mask), bs::pext_reference(src, mask));
        }
    }
}

TEST(PdepPext, RoundTripRandom32And64Bit) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200000; ++i) {
        const auto src = static_cast<std::uint32_t>(rng());
        const auto mask = static_cast<std::uint32_t>(rng() & rng());
        const unsigned k = bs::popcount(mask);
        ASSERT_EQ(bs::pdep(src, mask), bs::pdep_reference(src, mask));
        ASSERT_EQ(bs::pext(src, mask), bs::pext_reference(src, mask));
        ASSERT_EQ(bs::pdep(src, mask) & ~mask, 0u);
        ASSERT_EQ(bs::pext(bs::pdep(src, mask), mask), src & static_cast<std::uint32_t>(bs::low_mask(k)));

        const std::uint64_t s64 = rng();
        const std::uint64_t m64 = rng() | rng();
        ASSERT_EQ(bs::pdep(s64, m64), bs::pdep_reference(s64, m64));
        ASSERT_EQ(bs::pext(s64, m64), bs::pext_reference(s64, m64));
    }
}

TEST(EraseRightmost, WorkedExampleAndEdges) {
    EXPECT_EQ(bs::erase_rightmost<std::uint8_t>(0b01010010), 0b01010000);
    EXPECT_EQ(bs::erase_rightmost<std::uint32_t>(0b01010010), 0b01010000u);
    EXPECT_EQ(bs::erase_rightmost<std::uint32_t>(0), 0u);
    EXPECT_EQ(bs::erase_rightmost<std::uint32_t>(0b1000), 0u);
}

TEST(PropagateRightmost, WorkedExampleAndZero) {
    EXPECT_EQ(bs::propagate_rightmost<std::uint8_t>(0b01010010), 0b11111100);
    EXPECT_EQ(bs::propagate_rightmost<std::uint32_t>(0), 0u);
}

TEST(PropagateRightmost, PopcountIdentityExhaustive16Bit) {
    for (std::uint32_t v = 1; v < (1u << 16); ++v) {
        const auto x = static_cast<std::uint16_t>(v);
        const unsigned lowest = static_cast<unsigned>(std::countr_zero(x));
        ASSERT_EQ(bs::popcount(bs::propagate_rightmost(x)) + lowest + 1, 16u);
        ASSERT_EQ(bs::rightmost_index(x), lowest);
    }
}

TEST(RightmostIndex, MatchesCountTrailingZeros) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10000; ++i) {
        const std::uint64_t x = rng() | 1ull << (rng() % 64);
        ASSERT_EQ(bs::rightmost_index(x), static_cast<unsigned>(std::countr_zero(x)));
    }
}
