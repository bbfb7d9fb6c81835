#pragma once

// Independent reference implementations used by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bytestore/bitvector.hpp"
#include "bytestore/encoding.hpp"
#include "bytestore/predicate.hpp"

namespace oracle {

using Bytes = std::vector<std::uint8_t>;

/// Code as a byte string, most significant byte first.
inline Bytes code_bytes(std::uint64_t code, unsigned length) {
    Bytes b(length);
    for (unsigned j = 0; j < length; ++j) b[j] = static_cast<std::uint8_t>(code >> (8 * (length - 1 - j)));
    return b;
}

/// Lexicographic comparison after zero padding both codes to `k` bytes.
inline int compare_padded(const Bytes& a, const Bytes& b, unsigned k) {
    for (unsigned j = 0; j < k; ++j) {
        const unsigned x = j < a.size() ? a[j] : 0u;
        const unsigned y = j < b.size() ? b[j] : 0u;
        if (x != y) return x < y ? -1 : 1;
    }
    return 0;
}

/// Row-at-a-time filter over raw values.
template <class T>
bytestore::ResultBitVector naive_filter(std::span<const T> values, const bytestore::Predicate<T>& p) {
    bytestore::ResultBitVector out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (p.matches(values[i])) out.set(i);
    }
    return out;
}

/// Same predicate evaluated on code integers, with an explicit comparison.
inline bool code_matches(bytestore::CompareOp op, std::uint64_t v, std::uint64_t c, std::uint64_t hi = 0) {
    using bytestore::CompareOp;
    switch (op) {
        case CompareOp::Lt: return v < c;
        case CompareOp::Gt: return v > c;
        case CompareOp::Le: return v <= c;
        case CompareOp::Ge: return v >= c;
        case CompareOp::Eq: return v == c;
        case CompareOp::Ne: return v != c;
        case CompareOp::Between: return c <= v && v <= hi;
    }
    return false;
}

/// Checks the 256-way tree shape of a numerical prefix-preserving assignment:
/// a range of >= 256 values above level 2 must be a full internal node (255
/// slot codes), any other range a leaf whose codes all share one length.
/// Returns an empty string on success.
inline std::string check_tree_shape(const bytestore::CodeAssignment& a) {
    std::vector<Bytes> codes;
    for (std::size_t i = 0; i < a.size(); ++i) codes.push_back(code_bytes(a.codes[i], a.lengths[i]));

    std::string err;
    auto visit = [&](auto&& self, std::vector<const Bytes*> members, unsigned level) -> void {
        if (!err.empty() || members.empty()) return;
        const std::size_t count = members.size();
        if (count < 256 || level >= 2) {
            const std::size_t len = members.front()->size();
            for (auto* m : members) {
                if (m->size() != len) {
                    err = "leaf at level " + std::to_string(level) + " has mixed code lengths";
                    return;
                }
            }
            unsigned beta = 0;
            for (std::uint64_t cap = 1; cap < count + 1; cap <<= 8) ++beta;
            if (len != level + beta) err = "leaf code length is not level + beta";
            return;
        }
        std::size_t slots = 0;
        std::map<std::uint8_t, std::vector<const Bytes*>> children;
        for (auto* m : members) {
            if (m->size() == level + 1) {
                ++slots;
                if ((*m)[level] == 0) err = "slot sub-code 0";
            } else {
                children[(*m)[level]].push_back(m);
            }
        }
        if (slots != 255) {
            err = "internal node at level " + std::to_string(level) + " has " + std::to_string(slots) + " slots";
            return;
        }
        for (auto& [byte, group] : children) self(self, group, level + 1);
    };
    std::vector<const Bytes*> all;
    for (auto& c : codes) all.push_back(&c);
    visit(visit, all, 0);
    return err;
}

/// Zipf-like weights over n ascending values, heaviest value at a random spot.
inline std::vector<std::uint64_t> random_weights(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::uint64_t> w(n);
    const double s = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = 1 + static_cast<std::uint64_t>(1e6 / std::pow(static_cast<double>(i + 1), s));
    }
    std::shuffle(w.begin(), w.end(), rng);
    return w;
}

}  // namespace oracle
