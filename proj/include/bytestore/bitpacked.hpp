#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

#include "bytestore/bits.hpp"
#include "bytestore/bitvector.hpp"
#include "bytestore/error.hpp"
#include "bytestore/predicate.hpp"
#include "bytestore/scan.hpp"

namespace bytestore {

/// Codes packed back to back, most significant bit first, ignoring byte
/// boundaries: row i occupies stream bits [i*w, (i+1)*w).
class BitPackedColumn {
public:
    BitPackedColumn() = default;

    static BitPackedColumn build(std::span<const std::uint64_t> codes, unsigned bit_width, LaneConfig lanes = {}) {
        if (codes.empty()) throw UsageError("bit-packed column needs at least one row");
        if (bit_width < 1 || bit_width > 32) throw UsageError("bit-packed width must be in [1, 32]");
        BitPackedColumn col;
        col.init(codes.size(), bit_width, lanes);
        std::size_t bit = 0;
        for (auto code : codes) {
            if (code >> bit_width) throw DataError("code does not fit the column width");
            for (unsigned k = bit_width; k-- > 0; ++bit) {
                if ((code >> k) & 1u) col.bytes_[bit >> 3] |= static_cast<std::uint8_t>(0x80u >> (bit & 7));
            }
        }
        return col;
    }

    static BitPackedColumn from_parts(std::size_t n_rows, unsigned bit_width, LaneConfig lanes,
                                      std::span<const std::uint8_t> packed) {
        if (n_rows == 0 || bit_width < 1 || bit_width > 32) throw DataError("bad bit-packed header");
        BitPackedColumn col;
        col.init(n_rows, bit_width, lanes);
        if (packed.size() != col.packed_bytes()) throw DataError("bit-packed payload has the wrong length");
        std::memcpy(col.bytes_.data(), packed.data(), packed.size());
        const unsigned tail = static_cast<unsigned>(n_rows * bit_width % 8);
        if (tail && (packed.back() & bits::low_mask(8 - tail))) throw DataError("non-zero bit-packed padding");
        return col;
    }

    std::size_t size() const noexcept { return n_rows_; }
    unsigned bit_width() const noexcept { return w_; }
    LaneConfig lanes() const noexcept { return lanes_; }
    std::size_t block_count() const noexcept { return lanes_.block_count(n_rows_); }
    std::size_t packed_bytes() const noexcept { return (n_rows_ * w_ + 7) / 8; }
    std::span<const std::uint8_t> packed() const noexcept { return {bytes_.data(), packed_bytes()}; }

    /// Unpacks row i into a 32-bit lane.
    std::uint32_t unpack(std::size_t i) const noexcept {
        const std::size_t bit = i * w_;
        std::uint64_t window;
        std::memcpy(&window, bytes_.data() + (bit >> 3), sizeof(window));
        window = __builtin_bswap64(window);
        return static_cast<std::uint32_t>((window << (bit & 7)) >> (64 - w_));
    }

    /// Compares every row against the literal; there is no early stop. The
    /// input mask is applied after comparison.
    void scan_blocks(CompareOp op, CodeLiteral literal, const ResultBitVector* input, ResultBitVector& out,
                     std::size_t first_block, std::size_t last_block, ScanStats* stats) const {
        if (op == CompareOp::Between) throw UsageError("BETWEEN must be split before reaching a layout");
        const unsigned L = lanes_.lanes;
        const std::uint64_t c = literal.code;
        for (std::size_t b = first_block; b < last_block; ++b) {
            const std::size_t row0 = b * L;
            const std::uint64_t valid = detail::valid_lanes(n_rows_, b, L);
            std::uint64_t gt = 0;
            std::uint64_t eq = 0;
            const unsigned count = static_cast<unsigned>(std::min<std::size_t>(L, n_rows_ - row0));
            for (unsigned k = 0; k < count; ++k) {
                const std::uint64_t v = unpack(row0 + k);
                gt |= static_cast<std::uint64_t>(v > c) << k;
                eq |= static_cast<std::uint64_t>(v == c) << k;
            }
            std::uint64_t result = detail::finish_lanes(op, valid, gt, eq);
            if (input) result &= input->segment(row0, L);
            if (result) out.or_segment(row0, L, result);
            if (stats) {
                stats->note_slice(1, (static_cast<std::uint64_t>(count) * w_ + 7) / 8);
                stats->note_block(b, 1);
            }
        }
    }

    ResultBitVector scan(CompareOp op, CodeLiteral literal, const ResultBitVector* input = nullptr,
                         ScanStats* stats = nullptr) const {
        if (input && input->size() != n_rows_) throw UsageError("bit vector length does not match column");
        ResultBitVector out(n_rows_);
        scan_blocks(op, literal, input, out, 0, block_count(), stats);
        return out;
    }

    /// Number of bytes a lookup of row i must fetch.
    std::size_t spanned_bytes(std::size_t i) const noexcept { return (w_ + (i * w_) % 8 + 7) / 8; }

    std::vector<std::uint64_t> lookup(const ResultBitVector& selection, LookupStats* stats = nullptr) const {
        if (selection.size() != n_rows_) throw UsageError("bit vector length does not match column");
        std::vector<std::uint64_t> out(selection.count());
        std::uint64_t* dst = out.data();
        auto words = selection.words();
        for (std::size_t w = 0; w < words.size(); ++w) {
            if (words[w] == 0) continue;
            const std::size_t row0 = w * 32;
            dst = detail::gather_lanes(words[w], dst, [&](unsigned i) { return std::uint64_t{unpack(row0 + i)}; });
            if (stats) {
                for (std::uint32_t x = words[w]; x != 0; x = bits::erase_rightmost(x)) {
                    stats->bytes_touched += spanned_bytes(row0 + bits::rightmost_index(x));
                }
            }
        }
        if (stats) stats->codes += out.size();
        return out;
    }

    std::uint64_t memory_bytes() const noexcept { return packed_bytes(); }

private:
    void init(std::size_t n_rows, unsigned bit_width, LaneConfig lanes) {
        n_rows_ = n_rows;
        w_ = bit_width;
        lanes_ = LaneConfig::make(lanes.lanes);
        bytes_.assign(packed_bytes() + 8, 0);
    }

    std::size_t n_rows_ = 0;
    unsigned w_ = 1;
    LaneConfig lanes_;
    std::vector<std::uint8_t> bytes_;  // packed stream plus 8 zero bytes for unaligned reads
};

}  // namespace bytestore
