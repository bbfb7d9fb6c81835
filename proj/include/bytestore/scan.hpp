#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#if defined(__AVX2__)
#include <immintrin.h>
#endif

#include "bytestore/bits.hpp"
#include "bytestore/bitvector.hpp"
#include "bytestore/error.hpp"
#include "bytestore/predicate.hpp"

namespace bytestore {

/// Codes processed per scan word; also the block size of every layout.
struct LaneConfig {
    unsigned lanes = 32;

    static LaneConfig make(unsigned lanes) {
        if (lanes < 8 || lanes > 64 || (lanes & (lanes - 1)) != 0) {
            throw UsageError("lane count must be a power of two in [8, 64]");
        }
        return LaneConfig{lanes};
    }
    std::size_t block_count(std::size_t n_rows) const noexcept { return (n_rows + lanes - 1) / lanes; }
    /// Blocks per partition unit, so that partitions never share a result word.
    std::size_t partition_alignment() const noexcept { return lanes >= 32 ? 1 : 32 / lanes; }

    friend bool operator==(const LaneConfig&, const LaneConfig&) = default;
};

/// Scan instrumentation. Depths are 1-based slice (or plane) numbers; index 0 of
/// `blocks_by_depth` counts blocks that loaded nothing.
struct ScanStats {
    std::vector<std::uint64_t> slice_loads;      // [j-1]: blocks that loaded slice j
    std::vector<std::uint64_t> blocks_by_depth;  // [d]: blocks whose deepest load was d
    std::uint64_t mask_loads = 0;
    std::uint64_t bytes_loaded = 0;
    std::uint64_t blocks = 0;
    bool record_block_depth = false;
    std::vector<std::uint8_t> block_depth;  // per block, only when record_block_depth

    void note_block(std::size_t block, unsigned depth) {
        ++blocks;
        if (blocks_by_depth.size() <= depth) blocks_by_depth.resize(depth + 1, 0);
        ++blocks_by_depth[depth];
        if (record_block_depth) {
            if (block_depth.size() <= block) block_depth.resize(block + 1, 0);
            block_depth[block] = static_cast<std::uint8_t>(depth);
        }
    }
    void note_slice(unsigned depth, std::uint64_t bytes) {
        if (slice_loads.size() < depth) slice_loads.resize(depth, 0);
        ++slice_loads[depth - 1];
        bytes_loaded += bytes;
    }
    void note_mask(std::uint64_t bytes) {
        ++mask_loads;
        bytes_loaded += bytes;
    }

    void merge(const ScanStats& o) {
        auto add = [](std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
            if (a.size() < b.size()) a.resize(b.size(), 0);
            for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
        };
        add(slice_loads, o.slice_loads);
        add(blocks_by_depth, o.blocks_by_depth);
        mask_loads += o.mask_loads;
        bytes_loaded += o.bytes_loaded;
        blocks += o.blocks;
        if (record_block_depth) {
            if (block_depth.size() < o.block_depth.size()) block_depth.resize(o.block_depth.size(), 0);
            for (std::size_t i = 0; i < o.block_depth.size(); ++i) {
                block_depth[i] = std::max(block_depth[i], o.block_depth[i]);
            }
        }
    }
};

/// Counters for lookup: how many storage units were touched.
struct LookupStats {
    std::uint64_t codes = 0;
    std::uint64_t bytes_touched = 0;   // byte layouts
    std::uint64_t planes_touched = 0;  // bit-plane layouts
};

namespace detail {

template <unsigned Lanes>
using lane_word_t = std::conditional_t<(Lanes > 32), std::uint64_t, std::uint32_t>;

struct ByteMatch {
    std::uint64_t gt = 0;
    std::uint64_t eq = 0;
};

/// Unsigned byte comparison of `count` bytes against a literal byte; lane i -> bit i.
/// `p` must be readable for 32 bytes when count <= 32 (callers pad their buffers).
inline ByteMatch compare_bytes(const std::uint8_t* p, std::uint8_t literal, unsigned count) noexcept {
    ByteMatch m;
#if defined(__AVX2__)
    if (count <= 32) {
        const __m256i flip = _mm256_set1_epi8(static_cast<char>(0x80));
        const __m256i lit = _mm256_set1_epi8(static_cast<char>(literal ^ 0x80));
        const __m256i w = _mm256_xor_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)), flip);
        const auto gt = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpgt_epi8(w, lit)));
        const auto eq = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(w, lit)));
        const std::uint64_t keep = bits::low_mask(count);
        m.gt = gt & keep;
        m.eq = eq & keep;
        return m;
    }
    if (count <= 64) {
        ByteMatch lo = compare_bytes(p, literal, 32);
        ByteMatch hi = compare_bytes(p + 32, literal, count - 32);
        m.gt = lo.gt | (hi.gt << 32);
        m.eq = lo.eq | (hi.eq << 32);
        return m;
    }
#endif
    for (unsigned i = 0; i < count; ++i) {
        m.gt |= static_cast<std::uint64_t>(p[i] > literal) << i;
        m.eq |= static_cast<std::uint64_t>(p[i] == literal) << i;
    }
    return m;
}

/// Folds (active, gt, eq) lane masks into the result mask for a single-literal operator.
inline std::uint64_t finish_lanes(CompareOp op, std::uint64_t active, std::uint64_t gt, std::uint64_t eq) noexcept {
    const std::uint64_t lt = active & ~gt & ~eq;
    switch (op) {
        case CompareOp::Lt: return lt;
        case CompareOp::Gt: return gt;
        case CompareOp::Le: return lt | eq;
        case CompareOp::Ge: return gt | eq;
        case CompareOp::Eq: return eq;
        case CompareOp::Ne: return active & ~eq;
        case CompareOp::Between: break;
    }
    return 0;
}

/// Bits [row0, row0 + L) of a packed 32-bit word array with `n_words` words.
template <unsigned L>
inline lane_word_t<L> word_segment(const std::uint32_t* words, std::size_t n_words, std::size_t row0) noexcept {
    const std::size_t w = row0 >> 5;
    if constexpr (L == 64) {
        return words[w] | (w + 1 < n_words ? std::uint64_t{words[w + 1]} << 32 : 0);
    } else if constexpr (L == 32) {
        return words[w];
    } else {
        return static_cast<lane_word_t<L>>((words[w] >> (row0 & 31)) & bits::low_mask(L));
    }
}

/// Writes code_at(i) for every lane i set in `x` to `dst`, in lane order; returns the new end.
template <class Word, class CodeAt>
inline std::uint64_t* gather_lanes(Word x, std::uint64_t* dst, CodeAt&& code_at) {
    for (; x != 0; x &= static_cast<Word>(x - 1)) *dst++ = code_at(static_cast<unsigned>(std::countr_zero(x)));
    return dst;
}

/// Lanes of block `block` that hold a row.
inline std::uint64_t valid_lanes(std::size_t n_rows, std::size_t block, unsigned lanes) noexcept {
    const std::size_t first = block * lanes;
    const std::size_t remaining = n_rows - first;
    return remaining >= lanes ? bits::low_mask(lanes) : bits::low_mask(static_cast<unsigned>(remaining));
}

}  // namespace detail

/// Slice buffers carry this many zero bytes past their logical end so vector loads stay in bounds.
inline constexpr std::size_t kSlicePadding = 64;

}  // namespace bytestore
