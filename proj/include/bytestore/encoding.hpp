#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string_view>
#include <vector>

#include "bytestore/error.hpp"

namespace bytestore {

enum class CodeKind : std::uint8_t { Fixed = 0, PpeNumerical = 1, PpeCategorical = 2, PrefixFree = 3 };

inline std::string_view to_string(CodeKind k) {
    switch (k) {
        case CodeKind::Fixed: return "fixed";
        case CodeKind::PpeNumerical: return "ppe_numerical";
        case CodeKind::PpeCategorical: return "ppe_categorical";
        case CodeKind::PrefixFree: return "prefix_free";
    }
    return "?";
}

/// Codes for the distinct values of a frequency table, index-aligned with it.
///
/// `codes[i]` holds the concatenated sub-codes of value i as an integer of
/// `lengths[i]` units, most significant unit first. A unit is one byte for
/// every kind except PrefixFree, where it is one bit.
struct CodeAssignment {
    CodeKind kind = CodeKind::Fixed;
    std::vector<std::uint64_t> codes;
    std::vector<std::uint8_t> lengths;
    unsigned max_length = 0;  // K, in units
    unsigned bit_width = 0;   // fixed: w; otherwise max_length * unit_bits()

    std::size_t size() const noexcept { return codes.size(); }
    unsigned unit_bits() const noexcept { return kind == CodeKind::PrefixFree ? 1u : 8u; }
    bool order_preserving() const noexcept { return kind != CodeKind::PpeCategorical; }

    /// Code i zero-padded on the right to max_length units.
    std::uint64_t padded(std::size_t i) const noexcept {
        return pad(codes[i], lengths[i]);
    }
    std::uint64_t pad(std::uint64_t code, unsigned length) const noexcept {
        const unsigned shift = unit_bits() * (max_length - length);
        return shift >= 64 ? 0 : code << shift;
    }
};

namespace detail {

/// Smallest beta with 256^beta >= count (0 for count <= 1).
inline unsigned bytes_for_count(std::uint64_t count) noexcept {
    unsigned beta = 0;
    std::uint64_t cap = 1;
    while (cap < count) {
        ++beta;
        if (beta >= 8) break;
        cap <<= 8;
    }
    return beta;
}

inline void finish_lengths(CodeAssignment& a) {
    a.max_length = 0;
    for (auto l : a.lengths) a.max_length = std::max<unsigned>(a.max_length, l);
    if (a.kind != CodeKind::Fixed) a.bit_width = a.max_length * a.unit_bits();
}

class PpeNumericalBuilder {
public:
    PpeNumericalBuilder(std::span<const std::uint64_t> weights, CodeAssignment& out)
        : weights_(weights), codes_(out.codes), lengths_(out.lengths) {}

    // Encodes values [s, e) in the subtree whose parent sits at level b.
    void build(unsigned b, std::size_t s, std::size_t e) {
        if (e - s < 256 || b >= 2) {
            const unsigned beta = bytes_for_count(e - s + 1);
            if (b + beta > 8) throw DataError("prefix-preserving code exceeds 8 bytes");
            for (std::size_t i = s; i < e; ++i) {
                codes_[i] = (beta >= 8 ? 0 : (codes_[i] << (8 * beta))) + 1 + (i - s);
                lengths_[i] = static_cast<std::uint8_t>(b + beta);
            }
            return;
        }

        // 255 most frequent values in [s, e); ties go to the smaller index.
        std::vector<std::size_t> idx(e - s);
        std::iota(idx.begin(), idx.end(), s);
        auto heavier = [&](std::size_t x, std::size_t y) {
            return weights_[x] != weights_[y] ? weights_[x] > weights_[y] : x < y;
        };
        std::nth_element(idx.begin(), idx.begin() + 254, idx.end(), heavier);
        idx.resize(255);
        std::sort(idx.begin(), idx.end());

        for (std::size_t t = 0; t < 255; ++t) {
            lengths_[idx[t]] = static_cast<std::uint8_t>(b + 1);
            codes_[idx[t]] = (codes_[idx[t]] << 8) + t + 1;
        }
        for (std::size_t t = 0; t < 254; ++t) {
            for (std::size_t i = idx[t] + 1; i < idx[t + 1]; ++i) codes_[i] = (codes_[i] << 8) + t + 1;
            build(b + 1, idx[t] + 1, idx[t + 1]);
        }
        for (std::size_t i = s; i < idx[0]; ++i) codes_[i] <<= 8;
        build(b + 1, s, idx[0]);
        for (std::size_t i = idx[254] + 1; i < e; ++i) codes_[i] = (codes_[i] << 8) + 255;
        build(b + 1, idx[254] + 1, e);
    }

private:
    std::span<const std::uint64_t> weights_;
    std::vector<std::uint64_t>& codes_;
    std::vector<std::uint8_t>& lengths_;
};

}  // namespace detail

/// Order-preserving prefix-preserving codes over values sorted ascending.
/// Builds a 256-way tree depth first: the 255 heaviest values of a range fill
/// the node's slots (sub-codes 1..255, in value order), gaps recurse under
/// pointer sub-codes 0..255. Ranges smaller than 256, or below level 2, become
/// leaves whose suffix 1 + (i - s) occupies ceil(log256(e - s + 1)) bytes.
inline CodeAssignment ppe_numerical(std::span<const std::uint64_t> weights) {
    CodeAssignment a;
    a.kind = CodeKind::PpeNumerical;
    a.codes.assign(weights.size(), 0);
    a.lengths.assign(weights.size(), 0);
    if (!weights.empty()) {
        detail::PpeNumericalBuilder builder(weights, a);
        builder.build(0, 0, weights.size());
    }
    detail::finish_lengths(a);
    return a;
}

/// Balanced prefix-preserving codes for values sorted by descending weight.
/// Levels 1..B-1 are filled completely; the last level spreads the remaining
/// values round-robin over its subtrees.
inline CodeAssignment ppe_categorical(std::size_t n) {
    CodeAssignment a;
    a.kind = CodeKind::PpeCategorical;
    a.codes.reserve(n);
    a.lengths.reserve(n);
    if (n == 0) return a;

    const unsigned levels = detail::bytes_for_count(n + 1);
    if (levels > 8) throw DataError("categorical dictionary too large");
    for (unsigned b = 1; b < levels; ++b) {
        const std::uint64_t pointers = std::uint64_t{1} << (8 * (b - 1));
        for (std::uint64_t c = 0; c < pointers; ++c) {
            for (std::uint64_t i = 1; i <= 255; ++i) {
                a.codes.push_back((c << 8) + i);
                a.lengths.push_back(static_cast<std::uint8_t>(b));
            }
        }
    }
    const std::uint64_t pointers = std::uint64_t{1} << (8 * (levels - 1));
    for (std::uint64_t i = 1; i <= 255 && a.codes.size() < n; ++i) {
        for (std::uint64_t j = 0; j < pointers && a.codes.size() < n; ++j) {
            a.codes.push_back((j << 8) + i);
            a.lengths.push_back(static_cast<std::uint8_t>(levels));
        }
    }
    detail::finish_lengths(a);
    return a;
}

/// Dense order-preserving codes 0..n-1 with width max(1, ceil(log2 n)).
inline CodeAssignment fixed_dictionary(std::size_t n) {
    CodeAssignment a;
    a.kind = CodeKind::Fixed;
    a.bit_width = n <= 2 ? 1u : static_cast<unsigned>(std::bit_width(n - 1));
    if (a.bit_width > 32) throw DataError("dictionary wider than 32 bits");
    const auto bytes = static_cast<std::uint8_t>((a.bit_width + 7) / 8);
    a.codes.resize(n);
    std::iota(a.codes.begin(), a.codes.end(), std::uint64_t{0});
    a.lengths.assign(n, bytes);
    a.max_length = bytes;
    return a;
}

/// Order-preserving prefix-free bit codes over values sorted ascending.
/// Recursive weighted bisection: each range splits where the heavier half is
/// lightest, the left half takes bit 0. Frequent values end up near the root.
inline CodeAssignment prefix_free_encode(std::span<const std::uint64_t> weights) {
    CodeAssignment a;
    a.kind = CodeKind::PrefixFree;
    const std::size_t n = weights.size();
    a.codes.assign(n, 0);
    a.lengths.assign(n, 0);
    if (n == 0) return a;

    std::vector<std::uint64_t> prefix(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + weights[i];

    struct Range {
        std::size_t s, e;
        std::uint64_t code;
        unsigned depth;
    };
    std::vector<Range> stack{{0, n, 0, 0}};
    while (!stack.empty()) {
        Range r = stack.back();
        stack.pop_back();
        if (r.e - r.s == 1) {
            // A single-value table still needs one bit to be a code.
            const unsigned depth = r.depth == 0 ? 1 : r.depth;
            a.codes[r.s] = r.code;
            a.lengths[r.s] = static_cast<std::uint8_t>(depth);
            continue;
        }
        if (r.depth >= 64) throw DataError("prefix-free code exceeds 64 bits");
        // Split point p in (s, e) minimizing max(weight[s,p), weight[p,e)); first minimum wins.
        const std::uint64_t total = prefix[r.e] - prefix[r.s];
        auto it = std::lower_bound(prefix.begin() + static_cast<std::ptrdiff_t>(r.s) + 1,
                                   prefix.begin() + static_cast<std::ptrdiff_t>(r.e),
                                   prefix[r.s] + (total + 1) / 2);
        std::size_t best = static_cast<std::size_t>(it - prefix.begin());
        auto cost = [&](std::size_t p) {
            return std::max(prefix[p] - prefix[r.s], prefix[r.e] - prefix[p]);
        };
        best = std::clamp(best, r.s + 1, r.e - 1);
        if (best > r.s + 1 && cost(best - 1) <= cost(best)) --best;
        stack.push_back({best, r.e, (r.code << 1) | 1u, r.depth + 1});
        stack.push_back({r.s, best, r.code << 1, r.depth + 1});
    }
    detail::finish_lengths(a);
    return a;
}

}  // namespace bytestore
