#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "bytestore/bits.hpp"
#include "bytestore/bitvector.hpp"
#include "bytestore/error.hpp"
#include "bytestore/predicate.hpp"
#include "bytestore/scan.hpp"

namespace bytestore {

enum class VbpKind : std::uint8_t { Plain = 0, PaddedEncoding = 1 };

inline std::string_view to_string(VbpKind k) { return k == VbpKind::Plain ? "plain" : "padded_encoding"; }

/// Bit-vertical layout: plane j holds the j-th most significant bit of every
/// code. The padded-encoding kind stores prefix-free codes zero-padded on the
/// right to the longest code.
class VbpColumn {
public:
    VbpColumn() = default;

    /// `codes` are already padded to `width` bits.
    static VbpColumn build(std::span<const std::uint64_t> codes, unsigned width, VbpKind kind, LaneConfig lanes = {}) {
        if (codes.empty()) throw UsageError("VBP column needs at least one row");
        if (width < 1 || width > 64) throw UsageError("VBP width must be in [1, 64]");
        VbpColumn col;
        col.init(codes.size(), width, kind, lanes);
        for (std::size_t i = 0; i < codes.size(); ++i) {
            if (width < 64 && (codes[i] >> width)) throw DataError("code does not fit the column width");
            for (unsigned j = 0; j < width; ++j) {
                if ((codes[i] >> (width - 1 - j)) & 1u) col.planes_[j][i >> 5] |= std::uint32_t{1} << (i & 31);
            }
        }
        return col;
    }

    static VbpColumn from_parts(std::size_t n_rows, unsigned width, VbpKind kind, LaneConfig lanes,
                                std::vector<std::vector<std::uint32_t>> planes) {
        if (n_rows == 0 || width < 1 || width > 64) throw DataError("bad VBP header");
        if (kind != VbpKind::Plain && kind != VbpKind::PaddedEncoding) throw DataError("bad VBP kind");
        VbpColumn col;
        col.init(n_rows, width, kind, lanes);
        if (planes.size() != width) throw DataError("VBP plane count differs from width");
        const std::size_t words = (n_rows + 31) / 32;
        const unsigned tail = static_cast<unsigned>(n_rows % 32);
        for (unsigned j = 0; j < width; ++j) {
            if (planes[j].size() != words) throw DataError("VBP plane has the wrong length");
            if (tail && (planes[j].back() >> tail)) throw DataError("non-zero bits past the last VBP row");
            std::copy(planes[j].begin(), planes[j].end(), col.planes_[j].begin());
        }
        return col;
    }

    std::size_t size() const noexcept { return n_rows_; }
    unsigned bit_width() const noexcept { return w_; }
    VbpKind kind() const noexcept { return kind_; }
    LaneConfig lanes() const noexcept { return lanes_; }
    std::size_t block_count() const noexcept { return lanes_.block_count(n_rows_); }
    std::size_t word_count() const noexcept { return (n_rows_ + 31) / 32; }
    /// Plane j (1-based) as 32-bit words.
    std::span<const std::uint32_t> plane(unsigned j) const { return {planes_[j - 1].data(), word_count()}; }

    /// Literal code as it sits in the planes (prefix-free literals are padded).
    std::uint64_t stored_literal(CodeLiteral literal) const noexcept {
        if (kind_ == VbpKind::PaddedEncoding && literal.length < w_) return literal.code << (w_ - literal.length);
        return literal.code;
    }

    void scan_blocks(CompareOp op, CodeLiteral literal, const ResultBitVector* input, ResultBitVector& out,
                     std::size_t first_block, std::size_t last_block, ScanStats* stats) const {
        if (op == CompareOp::Between) throw UsageError("BETWEEN must be split before reaching a layout");
        if (kind_ == VbpKind::PaddedEncoding && literal.length > w_) throw UsageError("literal longer than the column codes");
        const std::uint64_t c = stored_literal(literal);
        if (w_ < 64 && (c >> w_)) {
            const bool below = op == CompareOp::Lt || op == CompareOp::Le || op == CompareOp::Ne;
            const unsigned L = lanes_.lanes;
            for (std::size_t b = first_block; b < last_block; ++b) {
                if (below) {
                    std::uint64_t m = detail::valid_lanes(n_rows_, b, L);
                    if (input) m &= input->segment(b * L, L);
                    out.or_segment(b * L, L, m);
                }
                if (stats) stats->note_block(b, 0);
            }
            return;
        }
        switch (lanes_.lanes) {
            case 8: return scan_impl<8>(op, c, input, out, first_block, last_block, stats);
            case 16: return scan_impl<16>(op, c, input, out, first_block, last_block, stats);
            case 32: return scan_impl<32>(op, c, input, out, first_block, last_block, stats);
            case 64: return scan_impl<64>(op, c, input, out, first_block, last_block, stats);
        }
    }

    ResultBitVector scan(CompareOp op, CodeLiteral literal, const ResultBitVector* input = nullptr,
                         ScanStats* stats = nullptr) const {
        if (input && input->size() != n_rows_) throw UsageError("bit vector length does not match column");
        ResultBitVector out(n_rows_);
        scan_blocks(op, literal, input, out, 0, block_count(), stats);
        return out;
    }

    /// Gathers every plane bit of each selected row.
    std::vector<std::uint64_t> lookup(const ResultBitVector& selection, LookupStats* stats = nullptr) const {
        if (selection.size() != n_rows_) throw UsageError("bit vector length does not match column");
        std::vector<std::uint64_t> out(selection.count());
        std::uint64_t* dst = out.data();
        auto words = selection.words();
        for (std::size_t w = 0; w < words.size(); ++w) {
            std::uint32_t x = words[w];
            for (; x != 0; x = bits::erase_rightmost(x)) {
                const unsigned bit = bits::rightmost_index(x);
                std::uint64_t code = 0;
                for (unsigned j = 0; j < w_; ++j) code = (code << 1) | ((planes_[j][w] >> bit) & 1u);
                *dst++ = code;
            }
        }
        if (stats) {
            stats->codes += out.size();
            stats->planes_touched += out.size() * w_;
        }
        return out;
    }

    std::uint64_t memory_bytes() const noexcept { return static_cast<std::uint64_t>(word_count()) * 4 * w_; }

private:
    void init(std::size_t n_rows, unsigned width, VbpKind kind, LaneConfig lanes) {
        n_rows_ = n_rows;
        w_ = width;
        kind_ = kind;
        lanes_ = LaneConfig::make(lanes.lanes);
        // one spare word so 64-lane segments never read past the end
        planes_.assign(width, std::vector<std::uint32_t>(word_count() + 1, 0));
    }

    template <unsigned L>
    static detail::lane_word_t<L> plane_segment(const std::uint32_t* words, std::size_t row0) noexcept {
        if constexpr (L == 64) {
            return words[row0 >> 5] | (std::uint64_t{words[(row0 >> 5) + 1]} << 32);
        } else if constexpr (L == 32) {
            return words[row0 >> 5];
        } else {
            return (words[row0 >> 5] >> (row0 & 31)) & static_cast<std::uint32_t>(bits::low_mask(L));
        }
    }

    template <unsigned L>
    void scan_impl(CompareOp op, std::uint64_t c, const ResultBitVector* input, ResultBitVector& out,
                   std::size_t first_block, std::size_t last_block, ScanStats* stats) const {
        using Word = detail::lane_word_t<L>;
        for (std::size_t b = first_block; b < last_block; ++b) {
            const std::size_t row0 = b * L;
            const Word valid = static_cast<Word>(detail::valid_lanes(n_rows_, b, L));
            const Word active = input ? static_cast<Word>(input->segment(row0, L)) & valid : valid;
            Word eq = active;
            Word gt = 0;
            unsigned depth = 0;
            for (unsigned j = 0; j < w_ && eq != 0; ++j) {
                const Word p = plane_segment<L>(planes_[j].data(), row0);
                if ((c >> (w_ - 1 - j)) & 1u) {
                    eq &= p;
                } else {
                    gt |= eq & p;
                    eq &= static_cast<Word>(~p);
                }
                depth = j + 1;
                if (stats) stats->note_slice(depth, L / 8);
            }
            const std::uint64_t result = detail::finish_lanes(op, active, gt, eq);
            if (result) out.or_segment(row0, L, result);
            if (stats) stats->note_block(b, depth);
        }
    }

    std::size_t n_rows_ = 0;
    unsigned w_ = 1;
    VbpKind kind_ = VbpKind::Plain;
    LaneConfig lanes_;
    std::vector<std::vector<std::uint32_t>> planes_;
};

}  // namespace bytestore
