#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bytestore/bits.hpp"
#include "bytestore/bitvector.hpp"
#include "bytestore/error.hpp"
#include "bytestore/predicate.hpp"
#include "bytestore/scan.hpp"

namespace bytestore {

/// Fixed-width codes chopped into ceil(w/8) byte slices. The last slice holds
/// the low-order bits left-aligned, padded with zeros on the right.
class ByteSliceColumn {
public:
    ByteSliceColumn() = default;

    static ByteSliceColumn build(std::span<const std::uint64_t> codes, unsigned bit_width, LaneConfig lanes = {}) {
        if (codes.empty()) throw UsageError("ByteSlice column needs at least one row");
        if (bit_width < 1 || bit_width > 32) throw UsageError("ByteSlice width must be in [1, 32]");
        ByteSliceColumn col;
        col.init(codes.size(), bit_width, lanes);
        for (std::size_t i = 0; i < codes.size(); ++i) {
            if (codes[i] >> bit_width) throw DataError("code does not fit the column width");
            const std::uint64_t aligned = codes[i] << col.padding_bits();
            for (unsigned j = 0; j < col.n_slices_; ++j) {
                col.slices_[j][i] = static_cast<std::uint8_t>(aligned >> (8 * (col.n_slices_ - 1 - j)));
            }
        }
        return col;
    }

    static ByteSliceColumn from_parts(std::size_t n_rows, unsigned bit_width, LaneConfig lanes,
                                      std::vector<std::vector<std::uint8_t>> slices) {
        if (n_rows == 0 || bit_width < 1 || bit_width > 32) throw DataError("bad ByteSlice header");
        ByteSliceColumn col;
        col.init(n_rows, bit_width, lanes);
        if (slices.size() != col.n_slices_) throw DataError("bad ByteSlice slice count");
        const auto pad_mask = static_cast<std::uint8_t>(bits::low_mask(col.padding_bits()));
        for (unsigned j = 0; j < col.n_slices_; ++j) {
            if (slices[j].size() != n_rows) throw DataError("ByteSlice slice length differs from row count");
            std::copy(slices[j].begin(), slices[j].end(), col.slices_[j].begin());
        }
        for (std::size_t i = 0; i < n_rows; ++i) {
            if (col.slices_[col.n_slices_ - 1][i] & pad_mask) throw DataError("non-zero ByteSlice padding bits");
        }
        return col;
    }

    std::size_t size() const noexcept { return n_rows_; }
    unsigned bit_width() const noexcept { return w_; }
    unsigned slice_count() const noexcept { return n_slices_; }
    LaneConfig lanes() const noexcept { return lanes_; }
    std::size_t block_count() const noexcept { return lanes_.block_count(n_rows_); }
    std::span<const std::uint8_t> slice(unsigned j) const { return {slices_[j - 1].data(), n_rows_}; }
    unsigned padding_bits() const noexcept { return 8 * n_slices_ - w_; }

    void scan_blocks(CompareOp op, CodeLiteral literal, const ResultBitVector* input, ResultBitVector& out,
                     std::size_t first_block, std::size_t last_block, ScanStats* stats) const {
        if (op == CompareOp::Between) throw UsageError("BETWEEN must be split before reaching a layout");
        if (literal.code >> w_) {
            // literal beyond every representable code
            const bool below = op == CompareOp::Lt || op == CompareOp::Le || op == CompareOp::Ne;
            fill_blocks(below, input, out, first_block, last_block, stats);
            return;
        }
        switch (lanes_.lanes) {
            case 8: return scan_impl<8>(op, literal.code, input, out, first_block, last_block, stats);
            case 16: return scan_impl<16>(op, literal.code, input, out, first_block, last_block, stats);
            case 32: return scan_impl<32>(op, literal.code, input, out, first_block, last_block, stats);
            case 64: return scan_impl<64>(op, literal.code, input, out, first_block, last_block, stats);
        }
    }

    ResultBitVector scan(CompareOp op, CodeLiteral literal, const ResultBitVector* input = nullptr,
                         ScanStats* stats = nullptr) const {
        if (input && input->size() != n_rows_) throw UsageError("bit vector length does not match column");
        ResultBitVector out(n_rows_);
        scan_blocks(op, literal, input, out, 0, block_count(), stats);
        return out;
    }

    std::vector<std::uint64_t> lookup(const ResultBitVector& selection, LookupStats* stats = nullptr) const {
        if (selection.size() != n_rows_) throw UsageError("bit vector length does not match column");
        std::vector<std::uint64_t> out(selection.count());
        std::uint64_t* dst = out.data();
        auto words = selection.words();
        const unsigned shift = padding_bits();
        std::array<const std::uint8_t*, 4> slice{};
        for (unsigned j = 0; j < n_slices_; ++j) slice[j] = slices_[j].data();
        const unsigned n_slices = n_slices_;
        for (std::size_t w = 0; w < words.size(); ++w) {
            if (words[w] == 0) continue;
            const std::size_t row0 = w * 32;
            dst = detail::gather_lanes(words[w], dst, [&](unsigned i) {
                std::uint64_t code = 0;
                for (unsigned j = 0; j < n_slices; ++j) code = (code << 8) | slice[j][row0 + i];
                return code >> shift;
            });
        }
        if (stats) {
            stats->codes += out.size();
            stats->bytes_touched += out.size() * n_slices_;
        }
        return out;
    }

    std::uint64_t memory_bytes() const noexcept { return static_cast<std::uint64_t>(n_rows_) * n_slices_; }

private:
    void init(std::size_t n_rows, unsigned bit_width, LaneConfig lanes) {
        n_rows_ = n_rows;
        w_ = bit_width;
        n_slices_ = (bit_width + 7) / 8;
        lanes_ = LaneConfig::make(lanes.lanes);
        slices_.assign(n_slices_, std::vector<std::uint8_t>(n_rows + kSlicePadding, 0));
    }

    void fill_blocks(bool value, const ResultBitVector* input, ResultBitVector& out, std::size_t first_block,
                     std::size_t last_block, ScanStats* stats) const {
        const unsigned L = lanes_.lanes;
        for (std::size_t b = first_block; b < last_block; ++b) {
            if (value) {
                std::uint64_t m = detail::valid_lanes(n_rows_, b, L);
                if (input) m &= input->segment(b * L, L);
                out.or_segment(b * L, L, m);
            }
            if (stats) stats->note_block(b, 0);
        }
    }

    template <unsigned L>
    void scan_impl(CompareOp op, std::uint64_t literal, const ResultBitVector* input, ResultBitVector& out,
                   std::size_t first_block, std::size_t last_block, ScanStats* stats) const {
        using Word = detail::lane_word_t<L>;
        std::array<std::uint8_t, 4> c{};
        const std::uint64_t aligned = literal << padding_bits();
        for (unsigned j = 0; j < n_slices_; ++j) c[j] = static_cast<std::uint8_t>(aligned >> (8 * (n_slices_ - 1 - j)));

        std::array<const std::uint8_t*, 4> slice{};
        for (unsigned j = 0; j < n_slices_; ++j) slice[j] = slices_[j].data();
        const unsigned n_slices = n_slices_;

        for (std::size_t b = first_block; b < last_block; ++b) {
            const std::size_t row0 = b * L;
            const Word valid = static_cast<Word>(detail::valid_lanes(n_rows_, b, L));
            const Word active = input ? static_cast<Word>(input->segment(row0, L)) & valid : valid;
            Word eq = active;
            Word gt = 0;
            unsigned depth = 0;
            for (unsigned j = 0; j < n_slices && eq != 0; ++j) {
                const auto m = detail::compare_bytes(slice[j] + row0, c[j], L);
                gt |= eq & static_cast<Word>(m.gt);
                eq &= static_cast<Word>(m.eq);
                depth = j + 1;
                if (stats) stats->note_slice(depth, L);
            }
            const std::uint64_t result = detail::finish_lanes(op, active, gt, eq);
            if (result) out.or_segment(row0, L, result);
            if (stats) stats->note_block(b, depth);
        }
    }

    std::size_t n_rows_ = 0;
    unsigned w_ = 1;
    unsigned n_slices_ = 1;
    LaneConfig lanes_;
    std::vector<std::vector<std::uint8_t>> slices_;  // padded by kSlicePadding
};

}  // namespace bytestore
