#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bytestore/encoding.hpp"
#include "bytestore/error.hpp"
#include "bytestore/predicate.hpp"

namespace bytestore {

enum class ColumnKind : std::uint8_t { Numeric = 0, Categorical = 1, SemiCategorical = 2 };

inline std::string_view to_string(ColumnKind k) {
    switch (k) {
        case ColumnKind::Numeric: return "numeric";
        case ColumnKind::Categorical: return "categorical";
        case ColumnKind::SemiCategorical: return "semi_categorical_string";
    }
    return "?";
}

inline std::optional<ColumnKind> parse_column_kind(std::string_view s) {
    if (s == "numeric") return ColumnKind::Numeric;
    if (s == "categorical") return ColumnKind::Categorical;
    if (s == "semi_categorical_string" || s == "semi_categorical") return ColumnKind::SemiCategorical;
    return std::nullopt;
}

enum class TableOrder : std::uint8_t { AscendingValue = 0, DescendingWeight = 1 };

/// Distinct values of a column with their occurrence counts.
template <class T>
struct FrequencyTable {
    TableOrder order = TableOrder::AscendingValue;
    std::vector<T> values;
    std::vector<std::uint64_t> weights;

    std::size_t size() const noexcept { return values.size(); }
    std::uint64_t total() const noexcept {
        return std::accumulate(weights.begin(), weights.end(), std::uint64_t{0});
    }
};

/// Counts a column. Weight ties in DescendingWeight order keep first-appearance order.
template <class T>
FrequencyTable<T> build_frequency_table(std::span<const T> column, TableOrder order) {
    if (column.empty()) throw DataError("cannot build a dictionary over an empty column");

    struct Entry {
        std::uint64_t count = 0;
        std::size_t first = 0;
    };
    std::unordered_map<T, Entry> counts;
    for (std::size_t i = 0; i < column.size(); ++i) {
        auto [it, inserted] = counts.try_emplace(column[i]);
        if (inserted) it->second.first = i;
        ++it->second.count;
    }

    std::vector<std::pair<const T*, Entry>> entries;
    entries.reserve(counts.size());
    for (const auto& [v, e] : counts) entries.emplace_back(&v, e);
    if (order == TableOrder::AscendingValue) {
        std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return *a.first < *b.first; });
    } else {
        std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
            return a.second.count != b.second.count ? a.second.count > b.second.count
                                                    : a.second.first < b.second.first;
        });
    }

    FrequencyTable<T> table;
    table.order = order;
    table.values.reserve(entries.size());
    table.weights.reserve(entries.size());
    for (const auto& [v, e] : entries) {
        table.values.push_back(*v);
        table.weights.push_back(e.count);
    }
    return table;
}

template <class T>
FrequencyTable<T> build_frequency_table(std::span<const std::optional<T>> column, TableOrder order) {
    std::vector<T> dense;
    dense.reserve(column.size());
    for (std::size_t i = 0; i < column.size(); ++i) {
        if (!column[i]) throw DataError("NULL value at row " + std::to_string(i + 1));
        dense.push_back(*column[i]);
    }
    return build_frequency_table<T>(std::span<const T>(dense), order);
}

/// Which code family a dictionary uses; the column kind refines Ppe.
enum class DictEncoding : std::uint8_t { Fixed = 0, Ppe = 1, PrefixFree = 2 };

/// Frequency table plus code assignment, with value and code reverse maps.
template <class T>
class Dictionary {
public:
    Dictionary() = default;

    Dictionary(FrequencyTable<T> table, CodeAssignment codes) : table_(std::move(table)), codes_(std::move(codes)) {
        if (codes_.size() != table_.size()) throw DataError("code assignment does not match dictionary size");
        if (table_.size() == 0) throw DataError("empty dictionary");
        index();
    }

    static Dictionary build(std::span<const T> column, ColumnKind kind, DictEncoding encoding) {
        const bool by_weight = encoding == DictEncoding::Ppe && kind == ColumnKind::Categorical;
        auto table = build_frequency_table<T>(column, by_weight ? TableOrder::DescendingWeight : TableOrder::AscendingValue);
        return from_table(std::move(table), kind, encoding);
    }

    static Dictionary from_table(FrequencyTable<T> table, ColumnKind kind, DictEncoding encoding) {
        CodeAssignment codes;
        switch (encoding) {
            case DictEncoding::Fixed:
                codes = fixed_dictionary(table.size());
                break;
            case DictEncoding::PrefixFree:
                codes = prefix_free_encode(table.weights);
                break;
            case DictEncoding::Ppe:
                codes = kind == ColumnKind::Categorical ? ppe_categorical(table.size()) : ppe_numerical(table.weights);
                break;
        }
        if (codes.order_preserving() && table.order != TableOrder::AscendingValue) {
            throw UsageError("order-preserving codes need an ascending frequency table");
        }
        return Dictionary(std::move(table), std::move(codes));
    }

    const FrequencyTable<T>& table() const noexcept { return table_; }
    const CodeAssignment& codes() const noexcept { return codes_; }
    std::size_t size() const noexcept { return table_.size(); }
    const T& value(std::size_t i) const { return table_.values[i]; }
    CodeLiteral literal(std::size_t i) const { return CodeLiteral{codes_.codes[i], codes_.lengths[i]}; }

    std::optional<std::uint32_t> index_of(const T& v) const {
        auto it = std::lower_bound(sorted_.begin(), sorted_.end(), v,
                                   [&](std::uint32_t i, const T& x) { return table_.values[i] < x; });
        if (it == sorted_.end() || !(table_.values[*it] == v)) return std::nullopt;
        return *it;
    }

    /// Value index of every row; throws DataError for values outside the dictionary.
    std::vector<std::uint32_t> encode_rows(std::span<const T> column) const {
        std::unordered_map<T, std::uint32_t> lookup;
        lookup.reserve(table_.size() * 2);
        for (std::uint32_t i = 0; i < table_.size(); ++i) lookup.emplace(table_.values[i], i);
        std::vector<std::uint32_t> out(column.size());
        for (std::size_t r = 0; r < column.size(); ++r) {
            auto it = lookup.find(column[r]);
            if (it == lookup.end()) throw DataError("value at row " + std::to_string(r + 1) + " not in dictionary");
            out[r] = it->second;
        }
        return out;
    }

    /// Encodes a value-space predicate. Range literals absent from the
    /// dictionary snap to the nearest present value on the admissible side;
    /// predicates that cover everything or nothing collapse to constants.
    ResolvedPredicate resolve(const Predicate<T>& p) const {
        if (!codes_.order_preserving() && is_range_op(p.op)) {
            throw UsageError("range predicate on a non-order-preserving (categorical) column");
        }
        const auto n = static_cast<std::ptrdiff_t>(table_.size());
        auto lower = [&](const T& v) {  // first index with value >= v
            return std::lower_bound(table_.values.begin(), table_.values.end(), v) - table_.values.begin();
        };
        auto upper = [&](const T& v) {  // first index with value > v
            return std::upper_bound(table_.values.begin(), table_.values.end(), v) - table_.values.begin();
        };
        auto at_most = [&](std::ptrdiff_t i) {  // rows with index <= i
            if (i < 0) return ResolvedPredicate::always(false);
            if (i >= n - 1) return ResolvedPredicate::always(true);
            return ResolvedPredicate::compare(CompareOp::Le, literal(static_cast<std::size_t>(i)));
        };
        auto at_least = [&](std::ptrdiff_t i) {  // rows with index >= i
            if (i >= n) return ResolvedPredicate::always(false);
            if (i <= 0) return ResolvedPredicate::always(true);
            return ResolvedPredicate::compare(CompareOp::Ge, literal(static_cast<std::size_t>(i)));
        };

        switch (p.op) {
            case CompareOp::Eq:
            case CompareOp::Ne: {
                auto idx = index_of(p.literal);
                if (!idx) return ResolvedPredicate::always(p.op == CompareOp::Ne);
                return ResolvedPredicate::compare(p.op, literal(*idx));
            }
            case CompareOp::Lt: return at_most(lower(p.literal) - 1);
            case CompareOp::Le: return at_most(upper(p.literal) - 1);
            case CompareOp::Gt: return at_least(upper(p.literal));
            case CompareOp::Ge: return at_least(lower(p.literal));
            case CompareOp::Between: {
                if (p.upper < p.literal) throw UsageError("BETWEEN requires lo <= hi");
                const auto lo = lower(p.literal);
                const auto hi = upper(p.upper) - 1;
                if (lo >= n || hi < 0 || lo > hi) return ResolvedPredicate::always(false);
                if (lo == 0) return at_most(hi);
                if (hi == n - 1) return at_least(lo);
                if (lo == hi) return ResolvedPredicate::compare(CompareOp::Eq, literal(static_cast<std::size_t>(lo)));
                return ResolvedPredicate::compare(CompareOp::Between, literal(static_cast<std::size_t>(lo)),
                                                  literal(static_cast<std::size_t>(hi)));
            }
        }
        return ResolvedPredicate::always(false);
    }

    /// Value index for a zero-padded code; DataError if no code pads to it.
    std::uint32_t decode_index(std::uint64_t padded) const {
        if (codes_.kind == CodeKind::Fixed) {
            if (padded >= table_.size()) throw DataError("unknown code in lookup");
            return static_cast<std::uint32_t>(padded);
        }
        auto it = std::lower_bound(by_code_.begin(), by_code_.end(), padded,
                                   [](const auto& e, std::uint64_t c) { return e.first < c; });
        if (it == by_code_.end() || it->first != padded) throw DataError("unknown code in lookup");
        return it->second;
    }
    const T& decode(std::uint64_t padded) const { return table_.values[decode_index(padded)]; }

private:
    void index() {
        const std::size_t n = table_.size();
        sorted_.resize(n);
        std::iota(sorted_.begin(), sorted_.end(), 0u);
        if (table_.order != TableOrder::AscendingValue) {
            std::sort(sorted_.begin(), sorted_.end(),
                      [&](std::uint32_t a, std::uint32_t b) { return table_.values[a] < table_.values[b]; });
        }
        for (std::size_t i = 1; i < n; ++i) {
            if (!(table_.values[sorted_[i - 1]] < table_.values[sorted_[i]])) {
                throw DataError("dictionary values are not distinct or not ordered");
            }
        }
        by_code_.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) by_code_[i] = {codes_.padded(i), i};
        std::sort(by_code_.begin(), by_code_.end());
        for (std::size_t i = 1; i < n; ++i) {
            if (by_code_[i - 1].first == by_code_[i].first) throw DataError("padded codes are not distinct");
        }
    }

    FrequencyTable<T> table_;
    CodeAssignment codes_;
    std::vector<std::uint32_t> sorted_;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> by_code_;
};

}  // namespace bytestore
