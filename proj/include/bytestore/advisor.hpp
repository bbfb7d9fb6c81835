#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bytestore/dictionary.hpp"
#include "bytestore/error.hpp"
#include "bytestore/layout.hpp"

namespace bytestore {

struct ProfilePoint {
    double selectivity = 0.0;
    double time = 0.0;
};

/// Trapezoidal area under time-over-selectivity. When every point shares one
/// selectivity the curve has no width, and the mean time is returned instead.
inline double auc(std::vector<ProfilePoint> points) {
    if (points.size() < 2) throw UsageError("AUC needs at least two points");
    std::stable_sort(points.begin(), points.end(),
                     [](const ProfilePoint& a, const ProfilePoint& b) { return a.selectivity < b.selectivity; });
    if (points.front().selectivity == points.back().selectivity) {
        double sum = 0.0;
        for (const auto& p : points) sum += p.time;
        return sum / static_cast<double>(points.size());
    }
    double area = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        area += (points[i].selectivity - points[i - 1].selectivity) * (points[i].time + points[i - 1].time) / 2.0;
    }
    return area;
}

enum class CostModel : std::uint8_t { WallTime = 0, ByteLoads = 1 };

inline std::string_view to_string(CostModel m) { return m == CostModel::WallTime ? "wall" : "bytes"; }

inline std::optional<CostModel> parse_cost_model(std::string_view s) {
    if (s == "wall") return CostModel::WallTime;
    if (s == "bytes") return CostModel::ByteLoads;
    return std::nullopt;
}

/// Cost of one whole-column scan of `pred`; smaller is better.
using CostFunction = std::function<double(Layout, const LayoutColumn&, const ResolvedPredicate&)>;

/// Seconds per scan: one warm-up, then the median of `reps` timed runs.
inline CostFunction wall_time_cost(unsigned reps = 5) {
    return [reps](Layout, const LayoutColumn& col, const ResolvedPredicate& pred) {
        std::vector<double> times;
        volatile std::uint32_t sink = 0;
        (void)scan_layout(col, pred);
        for (unsigned r = 0; r < std::max(1u, reps); ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto out = scan_layout(col, pred);
            const auto t1 = std::chrono::steady_clock::now();
            times.push_back(std::chrono::duration<double>(t1 - t0).count());
            sink = out.words().empty() ? 0u : out.words()[0];
        }
        (void)sink;
        std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
        return std::max(times[times.size() / 2], 1e-12);
    };
}

/// Bytes of slices, masks or planes a scan loads; deterministic.
inline CostFunction byte_load_cost() {
    return [](Layout, const LayoutColumn& col, const ResolvedPredicate& pred) {
        ScanStats stats;
        ScanOptions opts;
        opts.stats = &stats;
        (void)scan_layout(col, pred, nullptr, opts);
        return static_cast<double>(stats.bytes_loaded);
    };
}

struct AdvisorOptions {
    CostModel model = CostModel::WallTime;
    CostFunction custom;  // overrides `model` when set
    unsigned reps = 5;
    std::size_t literal_count = 100;
    bool subsample = false;
    std::size_t subsample_rows = 1'000'000;
    LaneConfig lanes;

    CostFunction cost() const {
        if (custom) return custom;
        return model == CostModel::WallTime ? wall_time_cost(reps) : byte_load_cost();
    }
};

struct Advice {
    Layout chosen = Layout::ByteSlice;
    bool degenerate = false;  // fewer than two distinct values; nothing profiled
    double auc_byteslice = 0.0;
    double auc_ppvbs = 0.0;
    std::vector<ProfilePoint> byteslice;
    std::vector<ProfilePoint> ppvbs;
};

template <class T>
struct ProfileLiteral {
    Predicate<T> predicate;
    double selectivity = 0.0;
};

/// Literals spanning the feasible selectivity range. Ordered columns get LT
/// literals at the nearest-rank quantiles k/count; categorical columns get EQ
/// literals at evenly spaced frequency ranks (every value when there are fewer).
template <class T>
std::vector<ProfileLiteral<T>> select_literals(std::span<const T> column, ColumnKind kind, std::size_t count = 100) {
    if (count < 2) throw UsageError("need at least two profiling literals");
    const double n = static_cast<double>(column.size());
    std::vector<ProfileLiteral<T>> out;
    if (kind == ColumnKind::Categorical) {
        const auto table = build_frequency_table<T>(column, TableOrder::DescendingWeight);
        const std::size_t m = table.size();
        const std::size_t picks = std::min(m, count);
        for (std::size_t k = 0; k < picks; ++k) {
            const std::size_t rank = picks == m ? k : (picks == 1 ? 0 : k * (m - 1) / (picks - 1));
            out.push_back({Predicate<T>::compare(CompareOp::Eq, table.values[rank]),
                           static_cast<double>(table.weights[rank]) / n});
        }
        return out;
    }
    const auto table = build_frequency_table<T>(column, TableOrder::AscendingValue);
    std::vector<std::uint64_t> before(table.size() + 1, 0);  // rows strictly below value i
    for (std::size_t i = 0; i < table.size(); ++i) before[i + 1] = before[i] + table.weights[i];
    const std::uint64_t total = before.back();
    for (std::size_t k = 1; k <= count; ++k) {
        const auto rank = static_cast<std::uint64_t>(
            std::max<double>(1.0, std::ceil(static_cast<double>(k) * static_cast<double>(total) / static_cast<double>(count))));
        // smallest value whose cumulative count reaches the rank
        const auto it = std::lower_bound(before.begin() + 1, before.end(), rank);
        const auto idx = static_cast<std::size_t>(it - before.begin()) - 1;
        out.push_back({Predicate<T>::compare(CompareOp::Lt, table.values[idx]), static_cast<double>(before[idx]) / n});
    }
    return out;
}

/// Every `stride`-th row so that at most `rows` remain.
template <class T>
std::vector<T> subsample_rows(std::span<const T> column, std::size_t rows) {
    if (rows == 0 || column.size() <= rows) return {column.begin(), column.end()};
    const std::size_t stride = (column.size() + rows - 1) / rows;
    std::vector<T> out;
    out.reserve(rows);
    for (std::size_t i = 0; i < column.size(); i += stride) out.push_back(column[i]);
    return out;
}

/// Encodes the column for ByteSlice and PP-VBS, profiles both with the same
/// literals, and picks the layout with the smaller area under the cost curve.
/// Ties go to ByteSlice.
template <class T>
Advice advise(std::span<const T> full_column, ColumnKind kind, const AdvisorOptions& options = {}) {
    std::vector<T> sampled;
    std::span<const T> column = full_column;
    if (options.subsample) {
        sampled = subsample_rows(full_column, options.subsample_rows);
        column = sampled;
    }
    Advice advice;
    {
        const auto table = build_frequency_table<T>(column, TableOrder::AscendingValue);
        if (table.size() < 2) {
            advice.degenerate = true;
            advice.chosen = Layout::ByteSlice;
            return advice;
        }
    }

    const auto bs_dict = Dictionary<T>::build(column, kind, DictEncoding::Fixed);
    const auto pp_dict = Dictionary<T>::build(column, kind, DictEncoding::Ppe);
    const auto bs_col = build_layout(Layout::ByteSlice, bs_dict.codes(), bs_dict.encode_rows(column), options.lanes);
    const auto pp_col = build_layout(Layout::PpVbs, pp_dict.codes(), pp_dict.encode_rows(column), options.lanes);

    const auto cost = options.cost();
    for (const auto& lit : select_literals(column, kind, options.literal_count)) {
        // Profile the two layouts back to back with the same literal.
        advice.byteslice.push_back({lit.selectivity, cost(Layout::ByteSlice, bs_col, bs_dict.resolve(lit.predicate))});
        advice.ppvbs.push_back({lit.selectivity, cost(Layout::PpVbs, pp_col, pp_dict.resolve(lit.predicate))});
    }
    advice.auc_byteslice = auc(advice.byteslice);
    advice.auc_ppvbs = auc(advice.ppvbs);
    advice.chosen = advice.auc_byteslice <= advice.auc_ppvbs ? Layout::ByteSlice : Layout::PpVbs;
    return advice;
}

}  // namespace bytestore
