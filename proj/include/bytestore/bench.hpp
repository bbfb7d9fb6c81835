#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "bytestore/csv.hpp"
#include "bytestore/dictionary.hpp"
#include "bytestore/layout.hpp"
#include "bytestore/zipf.hpp"

namespace bytestore {

struct BenchSweep {
    std::vector<double> skews{0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
    std::vector<unsigned> domain_bits{12};
    std::size_t n_rows = 1'000'000;
    std::vector<double> selectivities{0.1, 0.5, 0.9};
    std::vector<Layout> layouts{std::begin(kAllLayouts), std::end(kAllLayouts)};
    unsigned reps = 5;
    unsigned threads = 1;
    LaneConfig lanes;
    std::uint64_t seed = 1;
};

struct BenchRow {
    Layout layout = Layout::ByteSlice;
    double skew = 0.0;
    unsigned domain_bits = 0;
    std::size_t n_rows = 0;
    double target_selectivity = 0.0;
    double selectivity = 0.0;
    double scan_ns_per_code = 0.0;
    double lookup_ns_per_code = 0.0;  // per selected code
    double bits_per_code = 0.0;
    double scan_bytes_per_code = 0.0;
    double lookup_units_per_code = 0.0;  // bytes for byte layouts, planes for bit-plane layouts
};

inline const std::vector<std::string>& bench_header() {
    static const std::vector<std::string> h{"layout",           "skew",
                                            "d",                "n",
                                            "target_sel",       "sel",
                                            "scan_ns_per_code", "lookup_ns_per_code",
                                            "bits_per_code",    "scan_bytes_per_code",
                                            "lookup_units_per_code"};
    return h;
}

inline void write_bench_row(std::ostream& out, const BenchRow& r) {
    auto num = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return std::string(buf);
    };
    write_csv_row(out, {std::string(to_string(r.layout)), num(r.skew), std::to_string(r.domain_bits),
                        std::to_string(r.n_rows), num(r.target_selectivity), num(r.selectivity),
                        num(r.scan_ns_per_code), num(r.lookup_ns_per_code), num(r.bits_per_code),
                        num(r.scan_bytes_per_code), num(r.lookup_units_per_code)});
}

/// Median wall time of `reps` runs after one warm-up, in nanoseconds.
inline double median_ns(unsigned reps, const std::function<void()>& fn) {
    fn();
    std::vector<double> t;
    for (unsigned r = 0; r < std::max(1u, reps); ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        t.push_back(std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() - t0).count());
    }
    std::nth_element(t.begin(), t.begin() + t.size() / 2, t.end());
    return t[t.size() / 2];
}

/// Value-space predicate whose selectivity is closest to `target` without
/// collapsing to a constant: LT or LE on the nearest-rank quantile value.
inline Predicate<std::int64_t> predicate_for_selectivity(const FrequencyTable<std::int64_t>& table, double target) {
    std::vector<std::uint64_t> upto(table.size() + 1, 0);
    for (std::size_t i = 0; i < table.size(); ++i) upto[i + 1] = upto[i] + table.weights[i];
    const std::uint64_t total = upto.back();
    const auto rank = static_cast<std::uint64_t>(std::max(1.0, std::ceil(target * static_cast<double>(total))));
    const auto idx = static_cast<std::size_t>(std::lower_bound(upto.begin() + 1, upto.end(), rank) - upto.begin()) - 1;
    const bool lt_ok = idx > 0;                   // rows below the first value: none
    const bool le_ok = idx + 1 < table.size();    // rows up to the last value: all
    const double lt = static_cast<double>(upto[idx]) / static_cast<double>(total);
    const double le = static_cast<double>(upto[idx + 1]) / static_cast<double>(total);
    if (lt_ok && (!le_ok || std::abs(lt - target) <= std::abs(le - target))) {
        return Predicate<std::int64_t>::compare(CompareOp::Lt, table.values[idx]);
    }
    if (le_ok) return Predicate<std::int64_t>::compare(CompareOp::Le, table.values[idx]);
    return Predicate<std::int64_t>::compare(CompareOp::Eq, table.values[idx]);
}

/// Runs the sweep; `sink` receives each row as soon as it is measured.
inline std::vector<BenchRow> run_bench(const BenchSweep& sweep, const std::function<void(const BenchRow&)>& sink = {}) {
    if (sweep.n_rows == 0) throw UsageError("bench needs at least one row");
    for (double t : sweep.selectivities) {
        if (!(t >= 0.0 && t <= 1.0)) throw UsageError("selectivities must be in [0, 1]");
    }
    std::vector<BenchRow> rows;
    for (unsigned d : sweep.domain_bits) {
        for (double s : sweep.skews) {
            ZipfSpec spec{s, d, sweep.n_rows, sweep.seed};
            const auto data = gen_zipf(spec);
            std::span<const std::int64_t> column(data);
            for (Layout layout : sweep.layouts) {
                const auto dict = Dictionary<std::int64_t>::build(column, ColumnKind::Numeric, dict_encoding_for(layout));
                const auto col = build_layout(layout, dict.codes(), dict.encode_rows(column), sweep.lanes);
                const double bits = bits_per_code(col);
                for (double target : sweep.selectivities) {
                    const auto pred = dict.resolve(predicate_for_selectivity(dict.table(), target));
                    ScanOptions opts;
                    opts.threads = sweep.threads;
                    ScanStats stats;
                    opts.stats = &stats;
                    const ResultBitVector selection = scan_layout(col, pred, nullptr, opts);
                    opts.stats = nullptr;

                    volatile std::size_t sink_count = 0;
                    const double scan_ns = median_ns(sweep.reps, [&] { sink_count = scan_layout(col, pred, nullptr, opts).count(); });
                    const std::size_t selected = selection.count();
                    LookupStats lstats;
                    (void)lookup_layout(col, selection, &lstats);
                    const double lookup_ns =
                        median_ns(sweep.reps, [&] { sink_count = lookup_layout(col, selection).size(); });
                    (void)sink_count;

                    BenchRow r;
                    r.layout = layout;
                    r.skew = s;
                    r.domain_bits = d;
                    r.n_rows = sweep.n_rows;
                    r.target_selectivity = target;
                    r.selectivity = static_cast<double>(selected) / static_cast<double>(sweep.n_rows);
                    r.scan_ns_per_code = scan_ns / static_cast<double>(sweep.n_rows);
                    r.lookup_ns_per_code = selected ? lookup_ns / static_cast<double>(selected) : 0.0;
                    r.bits_per_code = bits;
                    r.scan_bytes_per_code = static_cast<double>(stats.bytes_loaded) / static_cast<double>(sweep.n_rows);
                    r.lookup_units_per_code =
                        selected ? static_cast<double>(lstats.bytes_touched + lstats.planes_touched) /
                                       static_cast<double>(selected)
                                 : 0.0;
                    if (sink) sink(r);
                    rows.push_back(r);
                }
            }
        }
    }
    return rows;
}

}  // namespace bytestore
