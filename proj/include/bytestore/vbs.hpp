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

struct VbsSizeReport {
    std::vector<std::uint64_t> slice_bytes;  // [j-1] = |BS_j|
    std::uint64_t mask_bytes = 0;
    std::uint64_t directory_bytes = 0;
    std::uint64_t total_bytes = 0;
    double avg_bits_per_code = 0.0;  // slices and masks, directory excluded
};

/// Outcome of comparing two variable-length codes byte by byte.
struct CodeComparison {
    int order = 0;  // <0, 0, >0
    unsigned bytes_examined = 0;
};

/// Compares two prefix-preserving byte codes as if zero-padded to equal length,
/// looking only at the first min(len_a, len_b) bytes. Valid whenever the longer
/// code's bytes past the shorter one's length are not all zero, which every
/// prefix-preserving assignment guarantees.
inline CodeComparison compare_prefix_codes(CodeLiteral a, CodeLiteral b) noexcept {
    const unsigned m = std::min(a.length, b.length);
    CodeComparison r;
    for (unsigned j = 1; j <= m; ++j) {
        r.bytes_examined = j;
        const auto ab = static_cast<std::uint8_t>(a.code >> (8 * (a.length - j)));
        const auto bb = static_cast<std::uint8_t>(b.code >> (8 * (b.length - j)));
        if (ab != bb) {
            r.order = ab < bb ? -1 : 1;
            return r;
        }
    }
    r.order = a.length == b.length ? 0 : (a.length < b.length ? -1 : 1);
    return r;
}

/// Variable byte slice column: BS_1..BS_K byte slices, existence masks M_2..M_K
/// and a per-block offset directory into BS_2..BS_K.
class VbsColumn {
public:
    VbsColumn() = default;

    /// `codes[i]` is an integer of `lengths[i]` bytes (most significant byte first).
    static VbsColumn build(std::span<const std::uint64_t> codes, std::span<const std::uint8_t> lengths, unsigned max_length,
                           LaneConfig lanes = {}) {
        if (codes.size() != lengths.size()) throw UsageError("codes and lengths differ in size");
        if (codes.empty()) throw UsageError("VBS column needs at least one row");
        if (max_length < 1 || max_length > 8) throw UsageError("VBS code length must be in [1, 8]");

        VbsColumn col;
        col.n_rows_ = codes.size();
        col.k_ = max_length;
        col.lanes_ = LaneConfig::make(lanes.lanes);
        col.slices_.assign(max_length, {});
        col.slice_len_.assign(max_length, 0);
        col.masks_.assign(max_length - 1, ResultBitVector(col.n_rows_));

        for (std::size_t i = 0; i < codes.size(); ++i) {
            const unsigned len = lengths[i];
            if (len < 1 || len > max_length) throw UsageError("code length out of range");
            for (unsigned j = 1; j <= len; ++j) {
                col.slices_[j - 1].push_back(static_cast<std::uint8_t>(codes[i] >> (8 * (len - j))));
                if (j >= 2) col.masks_[j - 2].set(i);
            }
        }
        for (unsigned j = 0; j < max_length; ++j) {
            col.slice_len_[j] = col.slices_[j].size();
            col.slices_[j].resize(col.slice_len_[j] + kSlicePadding, 0);
        }
        col.build_directory();
        return col;
    }

    /// Reassembles a column from its stored parts and checks every invariant.
    static VbsColumn from_parts(std::size_t n_rows, unsigned max_length, LaneConfig lanes,
                                std::vector<std::vector<std::uint8_t>> slices, std::vector<ResultBitVector> masks,
                                std::vector<std::uint32_t> directory) {
        if (n_rows == 0 || max_length < 1 || max_length > 8) throw DataError("bad VBS header");
        if (slices.size() != max_length || masks.size() + 1 != max_length) throw DataError("bad VBS slice count");
        VbsColumn col;
        col.n_rows_ = n_rows;
        col.k_ = max_length;
        col.lanes_ = LaneConfig::make(lanes.lanes);
        col.masks_ = std::move(masks);
        if (slices[0].size() != n_rows) throw DataError("BS_1 length differs from row count");
        for (unsigned j = 2; j <= max_length; ++j) {
            const auto& m = col.masks_[j - 2];
            if (m.size() != n_rows) throw DataError("mask length differs from row count");
            if (m.count() != slices[j - 1].size()) throw DataError("mask popcount differs from slice length");
            if (j >= 3) {
                auto prev = col.masks_[j - 3].words();
                auto cur = m.words();
                for (std::size_t w = 0; w < cur.size(); ++w) {
                    if (cur[w] & ~prev[w]) throw DataError("byte existence masks are not prefix-closed");
                }
            }
        }
        col.slices_ = std::move(slices);
        col.slice_len_.resize(max_length);
        for (unsigned j = 0; j < max_length; ++j) {
            col.slice_len_[j] = col.slices_[j].size();
            col.slices_[j].resize(col.slice_len_[j] + kSlicePadding, 0);
        }
        col.build_directory();
        if (directory != col.directory_) throw DataError("VBS block directory is inconsistent with masks");
        return col;
    }

    std::size_t size() const noexcept { return n_rows_; }
    unsigned max_length() const noexcept { return k_; }
    LaneConfig lanes() const noexcept { return lanes_; }
    std::size_t block_count() const noexcept { return lanes_.block_count(n_rows_); }

    /// BS_j, 1-based.
    std::span<const std::uint8_t> slice(unsigned j) const { return {slices_[j - 1].data(), slice_len_[j - 1]}; }
    /// M_j for j >= 2.
    const ResultBitVector& mask(unsigned j) const { return masks_[j - 2]; }
    /// Offset into BS_j (j >= 2) of the first byte belonging to `block`.
    std::uint32_t directory(std::size_t block, unsigned j) const { return directory_[block * (k_ - 1) + (j - 2)]; }
    std::span<const std::uint32_t> directory_grid() const noexcept { return directory_; }

    /// Scans blocks [first_block, last_block) into `out` (which must be zero there).
    /// BETWEEN is composed by the caller from GE and LE.
    void scan_blocks(CompareOp op, CodeLiteral literal, const ResultBitVector* input, ResultBitVector& out,
                     std::size_t first_block, std::size_t last_block, ScanStats* stats) const {
        if (op == CompareOp::Between) throw UsageError("BETWEEN must be split before reaching a layout");
        if (literal.length < 1 || literal.length > k_) throw UsageError("literal length outside [1, K]");
        switch (lanes_.lanes) {
            case 8: return scan_impl<8>(op, literal, input, out, first_block, last_block, stats);
            case 16: return scan_impl<16>(op, literal, input, out, first_block, last_block, stats);
            case 32: return scan_impl<32>(op, literal, input, out, first_block, last_block, stats);
            case 64: return scan_impl<64>(op, literal, input, out, first_block, last_block, stats);
        }
    }

    ResultBitVector scan(CompareOp op, CodeLiteral literal, const ResultBitVector* input = nullptr,
                         ScanStats* stats = nullptr) const {
        check_input(input);
        ResultBitVector out(n_rows_);
        scan_blocks(op, literal, input, out, 0, block_count(), stats);
        return out;
    }

    /// Zero-padded K-byte codes of the selected rows, in row order.
    std::vector<std::uint64_t> lookup(const ResultBitVector& selection, LookupStats* stats = nullptr) const {
        check_input(&selection);
        switch (lanes_.lanes) {
            case 8: return lookup_impl<8>(selection, stats);
            case 16: return lookup_impl<16>(selection, stats);
            case 32: return lookup_impl<32>(selection, stats);
            default: return lookup_impl<64>(selection, stats);
        }
    }

    VbsSizeReport size_report() const {
        VbsSizeReport r;
        std::uint64_t slices = 0;
        for (unsigned j = 0; j < k_; ++j) {
            r.slice_bytes.push_back(slice_len_[j]);
            slices += slice_len_[j];
        }
        r.mask_bytes = static_cast<std::uint64_t>((n_rows_ + 7) / 8) * (k_ - 1);
        r.directory_bytes = directory_.size() * sizeof(std::uint32_t);
        r.total_bytes = slices + r.mask_bytes + r.directory_bytes;
        r.avg_bits_per_code = 8.0 * static_cast<double>(slices + r.mask_bytes) / static_cast<double>(n_rows_);
        return r;
    }

private:
    void check_input(const ResultBitVector* v) const {
        if (v && v->size() != n_rows_) throw UsageError("bit vector length does not match column");
    }

    void build_directory() {
        const std::size_t blocks = block_count();
        directory_.assign(blocks * (k_ - 1), 0);
        const unsigned L = lanes_.lanes;
        for (unsigned j = 2; j <= k_; ++j) {
            std::uint32_t running = 0;
            for (std::size_t b = 0; b < blocks; ++b) {
                directory_[b * (k_ - 1) + (j - 2)] = running;
                running += bits::popcount(masks_[j - 2].segment(b * L, L));
            }
        }
    }

    template <unsigned L>
    void scan_impl(CompareOp op, CodeLiteral literal, const ResultBitVector* input, ResultBitVector& out,
                   std::size_t first_block, std::size_t last_block, ScanStats* stats) const {
        using Word = detail::lane_word_t<L>;
        const unsigned l = literal.length;

        std::array<std::uint8_t, 9> c{};
        for (unsigned j = 1; j <= l; ++j) c[j] = static_cast<std::uint8_t>(literal.code >> (8 * (l - j)));
        // suffix_nonzero[j]: literal bytes j..l are not all zero.
        std::array<bool, 10> suffix_nonzero{};
        for (unsigned j = l; j >= 1; --j) suffix_nonzero[j] = suffix_nonzero[j + 1] || c[j] != 0;

        const std::uint8_t* bs1 = slices_[0].data();
        const std::uint32_t* m2 = k_ > 1 ? masks_[0].words().data() : nullptr;
        const std::size_t mask_words = (n_rows_ + 31) / 32;

        for (std::size_t b = first_block; b < last_block; ++b) {
            const std::size_t row0 = b * L;
            const Word valid = static_cast<Word>(detail::valid_lanes(n_rows_, b, L));
            const Word active = input ? static_cast<Word>(input->segment(row0, L)) & valid : valid;
            if (active == 0) {
                if (stats) stats->note_block(b, 0);
                continue;
            }

            const auto m = detail::compare_bytes(bs1 + row0, c[1], L);
            Word gt = active & static_cast<Word>(m.gt);
            Word eq = active & static_cast<Word>(m.eq);
            if (stats) stats->note_slice(1, L);
            unsigned depth = 1;
            if (k_ > 1) {
                if (l == 1) {
                    // Equal first byte but longer: the non-zero suffix makes it greater.
                    // Reading one mask word unconditionally beats a data-dependent branch.
                    const Word longer = detail::word_segment<L>(m2, mask_words, row0);
                    if (stats) stats->note_mask(L / 8);
                    gt |= eq & longer;
                    eq &= static_cast<Word>(~longer);
                } else if (eq != 0) {
                    depth = descend<L>(b, valid, literal.length, c, suffix_nonzero, eq, gt, stats);
                }
            }

            const std::uint64_t result = detail::finish_lanes(op, active, gt, eq);
            if (result) out.or_segment(row0, L, result);
            if (stats) stats->note_block(b, depth);
        }
    }

    /// Slices 2..l of one block for a literal of l >= 2 bytes, after the first
    /// slice left `eq` non-empty. Returns the deepest slice loaded.
    template <unsigned L>
    unsigned descend(std::size_t b, detail::lane_word_t<L> valid, unsigned l, const std::array<std::uint8_t, 9>& c,
                     const std::array<bool, 10>& suffix_nonzero, detail::lane_word_t<L>& eq,
                     detail::lane_word_t<L>& gt, ScanStats* stats) const {
        using Word = detail::lane_word_t<L>;
        const std::size_t row0 = b * L;
        // B_j is loaded only once a lane still undecided needs it.
        std::array<Word, 10> has{};
        unsigned loaded = 1;
        auto need_mask = [&](unsigned j) {
            for (; loaded < j; ++loaded) {
                has[loaded + 1] = static_cast<Word>(masks_[loaded - 1].segment(row0, L));
                if (stats) stats->note_mask(L / 8);
            }
            return has[j];
        };
        if (suffix_nonzero[2]) eq &= need_mask(2);
        unsigned depth = 1;
        for (unsigned j = 2; j <= l && eq != 0; ++j) {
            const Word h = need_mask(j);
            const unsigned present = bits::popcount(h);
            const auto m = detail::compare_bytes(slices_[j - 1].data() + directory(b, j), c[j], present);
            const Word m_gt = bits::pdep(static_cast<Word>(m.gt), h);
            Word m_eq = bits::pdep(static_cast<Word>(m.eq), h);
            // a missing byte reads as padding zero
            if (c[j] == 0) m_eq |= static_cast<Word>(~h) & valid;
            if (stats) stats->note_slice(j, present);
            depth = j;
            gt |= eq & m_gt;
            eq &= m_eq;
            if (j < l) {
                // codes ending here are below a literal whose remaining bytes are non-zero
                if (suffix_nonzero[j + 1] && eq) eq &= need_mask(j + 1);
            } else if (l < k_ && eq) {
                const Word longer = need_mask(l + 1);
                gt |= eq & longer;
                eq &= static_cast<Word>(~longer);
            }
        }
        return depth;
    }

    template <unsigned L>
    std::vector<std::uint64_t> lookup_impl(const ResultBitVector& selection, LookupStats* stats) const {
        using Word = detail::lane_word_t<L>;
        std::vector<std::uint64_t> out(selection.count());
        std::uint64_t* dst = out.data();
        std::array<const std::uint8_t*, 9> slice{};
        std::array<const std::uint32_t*, 9> mask{};
        for (unsigned j = 1; j <= k_; ++j) slice[j] = slices_[j - 1].data();
        for (unsigned j = 2; j <= k_; ++j) mask[j] = masks_[j - 2].words().data();
        const std::size_t mask_words = (n_rows_ + 31) / 32;
        const std::uint32_t* sel = selection.words().data();
        const std::size_t blocks = block_count();
        const unsigned k = k_;
        std::uint64_t touched = 0;

        for (std::size_t b = 0; b < blocks; ++b) {
            Word x = detail::word_segment<L>(sel, mask_words, b * L);
            if (x == 0) continue;

            std::array<Word, 9> has{};
            std::array<Word, 9> xs{};
            std::array<const std::uint8_t*, 9> base{};
            // deepest byte any selected code in this block has
            unsigned beta = 1;
            for (unsigned j = 2; j <= k; ++j) {
                has[j] = detail::word_segment<L>(mask[j], mask_words, b * L);
                if ((x & has[j]) == 0) break;
                xs[j] = bits::pext(x, has[j]);
                base[j] = slice[j] + directory(b, j);
                beta = j;
            }

            const std::uint8_t* bs1 = slice[1] + b * L;
            const unsigned count = bits::popcount(x);
            for (unsigned j = 2; j <= beta; ++j) touched += bits::popcount(static_cast<Word>(x & has[j]));
            // Slice-major: every selected row takes its first byte; a selected
            // row's j-th byte is found at the next set bit of pext(x, B_j).
            Word t = x;
            for (std::uint64_t* o = dst; t != 0; t = bits::erase_rightmost(t)) {
                *o++ = static_cast<std::uint64_t>(bs1[bits::rightmost_index(t)]) << (8 * (k - 1));
            }
            for (unsigned j = 2; j <= beta; ++j) {
                Word y = x & has[j];
                Word p = xs[j];
                const unsigned shift = 8 * (k - j);
                for (; y != 0; y = bits::erase_rightmost(y), p = bits::erase_rightmost(p)) {
                    const unsigned i = bits::rightmost_index(y);
                    const unsigned idx = bits::popcount(static_cast<Word>(x & ((Word{1} << i) - 1)));
                    dst[idx] |= static_cast<std::uint64_t>(base[j][bits::rightmost_index(p)]) << shift;
                }
            }
            dst += count;
        }
        if (stats) {
            stats->codes += out.size();
            stats->bytes_touched += out.size() + touched;
        }
        return out;
    }

    std::size_t n_rows_ = 0;
    unsigned k_ = 1;
    LaneConfig lanes_;
    std::vector<std::vector<std::uint8_t>> slices_;  // padded by kSlicePadding
    std::vector<std::size_t> slice_len_;
    std::vector<ResultBitVector> masks_;
    std::vector<std::uint32_t> directory_;
};

}  // namespace bytestore
