#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bytestore/bits.hpp"
#include "bytestore/error.hpp"

namespace bytestore {

/// Packed match indicator. Bit i lives at bit (i % 32) of word i / 32, LSB first;
/// bits at positions >= size() are always zero.
class ResultBitVector {
public:
    ResultBitVector() = default;
    explicit ResultBitVector(std::size_t n_rows, bool value = false)
        : n_rows_(n_rows), words_((n_rows + 31) / 32, value ? ~std::uint32_t{0} : 0u) {
        clear_tail();
    }

    static ResultBitVector from_words(std::size_t n_rows, std::vector<std::uint32_t> words) {
        if (words.size() != (n_rows + 31) / 32) {
            throw UsageError("bit vector word count does not match row count");
        }
        ResultBitVector v;
        v.n_rows_ = n_rows;
        v.words_ = std::move(words);
        v.clear_tail();
        return v;
    }

    std::size_t size() const noexcept { return n_rows_; }
    std::span<const std::uint32_t> words() const noexcept { return words_; }
    std::span<std::uint32_t> mutable_words() noexcept { return words_; }

    bool test(std::size_t i) const noexcept { return (words_[i >> 5] >> (i & 31)) & 1u; }
    void set(std::size_t i, bool value = true) noexcept {
        const std::uint32_t bit = std::uint32_t{1} << (i & 31);
        if (value) {
            words_[i >> 5] |= bit;
        } else {
            words_[i >> 5] &= ~bit;
        }
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool none() const noexcept {
        for (auto w : words_) {
            if (w != 0) return false;
        }
        return true;
    }

    /// Reads `width` bits (width a power of two <= 64) starting at a multiple of width.
    std::uint64_t segment(std::size_t first_bit, unsigned width) const noexcept {
        const std::size_t w = first_bit >> 5;
        if (width == 32) return words_[w];
        if (width == 64) {
            std::uint64_t lo = words_[w];
            std::uint64_t hi = (w + 1 < words_.size()) ? words_[w + 1] : 0u;
            return lo | (hi << 32);
        }
        return (words_[w] >> (first_bit & 31)) & bits::low_mask(width);
    }

    /// ORs `width` bits into the vector at a multiple of width. Bits past size() must be zero.
    void or_segment(std::size_t first_bit, unsigned width, std::uint64_t value) noexcept {
        const std::size_t w = first_bit >> 5;
        if (width == 64) {
            words_[w] |= static_cast<std::uint32_t>(value);
            if (w + 1 < words_.size()) words_[w + 1] |= static_cast<std::uint32_t>(value >> 32);
            return;
        }
        words_[w] |= static_cast<std::uint32_t>(value << (first_bit & 31));
    }

    std::vector<std::size_t> positions() const {
        std::vector<std::size_t> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint32_t x = words_[w];
            while (x) {
                out.push_back(w * 32 + static_cast<std::size_t>(std::countr_zero(x)));
                x = bits::erase_rightmost(x);
            }
        }
        return out;
    }

    ResultBitVector& operator&=(const ResultBitVector& other) {
        check_same(other);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
        return *this;
    }
    ResultBitVector& operator|=(const ResultBitVector& other) {
        check_same(other);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }
    ResultBitVector operator~() const {
        ResultBitVector out = *this;
        for (auto& w : out.words_) w = ~w;
        out.clear_tail();
        return out;
    }

    friend ResultBitVector operator&(ResultBitVector a, const ResultBitVector& b) { return a &= b; }
    friend ResultBitVector operator|(ResultBitVector a, const ResultBitVector& b) { return a |= b; }
    friend bool operator==(const ResultBitVector&, const ResultBitVector&) = default;

    std::string to_string() const {
        std::string s(n_rows_, '0');
        for (std::size_t i = 0; i < n_rows_; ++i) {
            if (test(i)) s[i] = '1';
        }
        return s;
    }

private:
    void check_same(const ResultBitVector& other) const {
        if (other.n_rows_ != n_rows_) throw UsageError("bit vector length mismatch");
    }
    void clear_tail() noexcept {
        if (n_rows_ % 32 != 0 && !words_.empty()) {
            words_.back() &= static_cast<std::uint32_t>(bits::low_mask(n_rows_ % 32));
        }
    }

    std::size_t n_rows_ = 0;
    std::vector<std::uint32_t> words_;
};

inline ResultBitVector bitvector_and(const ResultBitVector& a, const ResultBitVector& b) { return a & b; }
inline ResultBitVector bitvector_or(const ResultBitVector& a, const ResultBitVector& b) { return a | b; }
inline std::size_t popcount_vector(const ResultBitVector& v) { return v.count(); }

}  // namespace bytestore
