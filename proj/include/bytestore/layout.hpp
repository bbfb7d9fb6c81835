#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include "bytestore/bitpacked.hpp"
#include "bytestore/byteslice.hpp"
#include "bytestore/dictionary.hpp"
#include "bytestore/encoding.hpp"
#include "bytestore/vbp.hpp"
#include "bytestore/vbs.hpp"

namespace bytestore {

enum class Layout : std::uint8_t { BitPacked = 0, ByteSlice = 1, Vbp = 2, PeVbp = 3, PpVbs = 4 };

inline constexpr Layout kAllLayouts[] = {Layout::BitPacked, Layout::ByteSlice, Layout::Vbp, Layout::PeVbp,
                                         Layout::PpVbs};

inline std::string_view to_string(Layout l) {
    switch (l) {
        case Layout::BitPacked: return "bitpacked";
        case Layout::ByteSlice: return "byteslice";
        case Layout::Vbp: return "vbp";
        case Layout::PeVbp: return "pevbp";
        case Layout::PpVbs: return "ppvbs";
    }
    return "?";
}

inline std::optional<Layout> parse_layout(std::string_view s) {
    for (Layout l : kAllLayouts) {
        if (s == to_string(l)) return l;
    }
    if (s == "pp-vbs") return Layout::PpVbs;
    if (s == "pe-vbp") return Layout::PeVbp;
    if (s == "bit-packed") return Layout::BitPacked;
    return std::nullopt;
}

/// Dictionary encoding each layout stores.
constexpr DictEncoding dict_encoding_for(Layout l) noexcept {
    switch (l) {
        case Layout::PpVbs: return DictEncoding::Ppe;
        case Layout::PeVbp: return DictEncoding::PrefixFree;
        default: return DictEncoding::Fixed;
    }
}

using LayoutColumn = std::variant<BitPackedColumn, ByteSliceColumn, VbpColumn, VbsColumn>;

inline Layout layout_of(const LayoutColumn& col) {
    switch (col.index()) {
        case 0: return Layout::BitPacked;
        case 1: return Layout::ByteSlice;
        case 2: return std::get<VbpColumn>(col).kind() == VbpKind::Plain ? Layout::Vbp : Layout::PeVbp;
        default: return Layout::PpVbs;
    }
}

inline std::size_t row_count(const LayoutColumn& col) {
    return std::visit([](const auto& c) { return c.size(); }, col);
}

inline LaneConfig lanes_of(const LayoutColumn& col) {
    return std::visit([](const auto& c) { return c.lanes(); }, col);
}

/// Builds `layout` over rows given as dictionary value indices.
inline LayoutColumn build_layout(Layout layout, const CodeAssignment& codes, std::span<const std::uint32_t> rows,
                                 LaneConfig lanes = {}) {
    if (dict_encoding_for(layout) == DictEncoding::Fixed && codes.kind != CodeKind::Fixed) {
        throw UsageError("layout needs fixed-width codes");
    }
    if (layout == Layout::PeVbp && codes.kind != CodeKind::PrefixFree) throw UsageError("PE-VBP needs prefix-free codes");
    if (layout == Layout::PpVbs && codes.kind != CodeKind::PpeNumerical && codes.kind != CodeKind::PpeCategorical) {
        throw UsageError("PP-VBS needs prefix-preserving codes");
    }

    std::vector<std::uint64_t> row_codes(rows.size());
    const bool padded = layout == Layout::PeVbp;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] >= codes.size()) throw DataError("row refers to a value outside the dictionary");
        row_codes[i] = padded ? codes.padded(rows[i]) : codes.codes[rows[i]];
    }
    switch (layout) {
        case Layout::BitPacked: return BitPackedColumn::build(row_codes, codes.bit_width, lanes);
        case Layout::ByteSlice: return ByteSliceColumn::build(row_codes, codes.bit_width, lanes);
        case Layout::Vbp: return VbpColumn::build(row_codes, codes.bit_width, VbpKind::Plain, lanes);
        case Layout::PeVbp: return VbpColumn::build(row_codes, codes.max_length, VbpKind::PaddedEncoding, lanes);
        case Layout::PpVbs: {
            std::vector<std::uint8_t> lengths(rows.size());
            for (std::size_t i = 0; i < rows.size(); ++i) lengths[i] = codes.lengths[rows[i]];
            return VbsColumn::build(row_codes, lengths, codes.max_length, lanes);
        }
    }
    throw UsageError("unknown layout");
}

/// Bytes the column occupies (slices, masks, planes; excludes the VBS block directory).
inline std::uint64_t layout_memory_bytes(const LayoutColumn& col) {
    return std::visit(
        [](const auto& c) -> std::uint64_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(c)>, VbsColumn>) {
                const auto r = c.size_report();
                return r.total_bytes - r.directory_bytes;
            } else {
                return c.memory_bytes();
            }
        },
        col);
}

inline double bits_per_code(const LayoutColumn& col) {
    return 8.0 * static_cast<double>(layout_memory_bytes(col)) / static_cast<double>(row_count(col));
}

struct ScanOptions {
    unsigned threads = 1;
    ScanStats* stats = nullptr;
};

namespace detail {

inline void scan_single(const LayoutColumn& col, CompareOp op, CodeLiteral literal, const ResultBitVector* input,
                        ResultBitVector& out, unsigned threads, ScanStats* stats) {
    const LaneConfig lanes = lanes_of(col);
    const std::size_t blocks = lanes.block_count(row_count(col));
    auto run = [&](std::size_t b0, std::size_t b1, ScanStats* s) {
        std::visit([&](const auto& c) { c.scan_blocks(op, literal, input, out, b0, b1, s); }, col);
    };

    const std::size_t align = lanes.partition_alignment();
    const std::size_t units = (blocks + align - 1) / align;
    const std::size_t parts = std::min<std::size_t>(std::max(1u, threads), units);
    if (parts <= 1) {
        run(0, blocks, stats);
        return;
    }
    // Even split of aligned units, so partitions never share a result word.
    std::vector<ScanStats> part_stats(parts);
    std::vector<std::thread> workers;
    workers.reserve(parts);
    for (std::size_t p = 0; p < parts; ++p) {
        const std::size_t b0 = std::min(blocks, (units * p / parts) * align);
        const std::size_t b1 = std::min(blocks, (units * (p + 1) / parts) * align);
        ScanStats* s = nullptr;
        if (stats) {
            part_stats[p].record_block_depth = stats->record_block_depth;
            s = &part_stats[p];
        }
        workers.emplace_back(run, b0, b1, s);
    }
    for (auto& w : workers) w.join();
    if (stats) {
        for (const auto& s : part_stats) stats->merge(s);
    }
}

}  // namespace detail

/// Evaluates a resolved predicate, AND-ed with `input` when given. Constant
/// predicates never touch the column; BETWEEN runs GE then LE, pipelined.
inline ResultBitVector scan_layout(const LayoutColumn& col, const ResolvedPredicate& pred,
                                   const ResultBitVector* input = nullptr, ScanOptions options = {}) {
    const std::size_t n = row_count(col);
    if (input && input->size() != n) throw UsageError("bit vector length does not match column");
    switch (pred.kind) {
        case ResolvedPredicate::Kind::AlwaysFalse: return ResultBitVector(n);
        case ResolvedPredicate::Kind::AlwaysTrue: return input ? *input : ResultBitVector(n, true);
        case ResolvedPredicate::Kind::Compare: break;
    }
    if (pred.op == CompareOp::Between) {
        ResultBitVector lower(n);
        detail::scan_single(col, CompareOp::Ge, pred.literal, input, lower, options.threads, options.stats);
        ResultBitVector out(n);
        detail::scan_single(col, CompareOp::Le, pred.upper, &lower, out, options.threads, options.stats);
        return out;
    }
    ResultBitVector out(n);
    detail::scan_single(col, pred.op, pred.literal, input, out, options.threads, options.stats);
    return out;
}

/// Zero-padded codes of the selected rows in row order, ready for Dictionary::decode.
inline std::vector<std::uint64_t> lookup_layout(const LayoutColumn& col, const ResultBitVector& selection,
                                                LookupStats* stats = nullptr) {
    return std::visit([&](const auto& c) { return c.lookup(selection, stats); }, col);
}

}  // namespace bytestore
