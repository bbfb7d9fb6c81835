#include <gtest/gtest.h>

#include <random>

#include "bytestore/dictionary.hpp"
#include "bytestore/layout.hpp"
#include "oracles.hpp"

using namespace bytestore;

namespace {

struct Encoded {
    Dictionary<std::int64_t> dict;
    LayoutColumn column;
};

Encoded encode(std::span<const std::int64_t> values, Layout layout, LaneConfig lanes = {}) {
    auto dict = Dictionary<std::int64_t>::build(values, ColumnKind::Numeric, dict_encoding_for(layout));
    const auto rows = dict.encode_rows(values);
    auto col = build_layout(layout, dict.codes(), rows, lanes);
    return {std::move(dict), std::move(col)};
}

std::vector<std::int64_t> skewed_values(std::size_t n, std::size_t domain, std::mt19937_64& rng) {
    std::vector<std::int64_t> v(n);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& x : v) x = static_cast<std::int64_t>(std::pow(u(rng), 3.0) * static_cast<double>(domain));
    return v;
}

}  // namespace

TEST(Layout, NamesRoundTrip) {
    for (Layout l : kAllLayouts) EXPECT_EQ(parse_layout(to_string(l)), l);
    EXPECT_FALSE(parse_layout("columnar"));
}

TEST(Layout, EveryLayoutMatchesValueOracle) {
    std::mt19937_64 rng(61);
    const CompareOp ops[] = {CompareOp::Lt, CompareOp::Gt, CompareOp::Le, CompareOp::Ge,
                             CompareOp::Eq, CompareOp::Ne, CompareOp::Between};
    const auto values = skewed_values(5000, 5000, rng);
    for (Layout layout : kAllLayouts) {
        const auto e = encode(values, layout);
        EXPECT_EQ(layout_of(e.column), layout);
        for (int t = 0; t < 15; ++t) {
            const std::int64_t a = static_cast<std::int64_t>(rng() % 5200) - 100;
            const std::int64_t b = a + static_cast<std::int64_t>(rng() % 800);
            for (auto op : ops) {
                const auto p = op == CompareOp::Between ? Predicate<std::int64_t>::between(a, b)
                                                        : Predicate<std::int64_t>::compare(op, a);
                const auto got = scan_layout(e.column, e.dict.resolve(p));
                ASSERT_EQ(got, oracle::naive_filter<std::int64_t>(values, p))
                    << to_string(layout) << " " << to_string(op) << " " << a;
            }
        }
    }
}

TEST(Layout, LookupDecodesOriginalColumn) {
    std::mt19937_64 rng(62);
    const auto values = skewed_values(3000, 100000, rng);
    for (Layout layout : kAllLayouts) {
        const auto e = encode(values, layout);
        const auto codes = lookup_layout(e.column, ResultBitVector(values.size(), true));
        ASSERT_EQ(codes.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) ASSERT_EQ(e.dict.decode(codes[i]), values[i]) << to_string(layout);
    }
}

TEST(Layout, ConstantPredicatesSkipTheColumn) {
    const std::vector<std::int64_t> values{3, 5, 9};
    const auto e = encode(values, Layout::PpVbs);
    ScanStats stats;
    ScanOptions opts;
    opts.stats = &stats;
    EXPECT_TRUE(scan_layout(e.column, ResolvedPredicate::always(false), nullptr, opts).none());
    EXPECT_EQ(scan_layout(e.column, ResolvedPredicate::always(true), nullptr, opts).count(), 3u);
    ResultBitVector input(3);
    input.set(1);
    EXPECT_EQ(scan_layout(e.column, ResolvedPredicate::always(true), &input, opts), input);
    EXPECT_EQ(stats.blocks, 0u);
}

TEST(Layout, ThreadedScanIsBitIdentical) {
    std::mt19937_64 rng(63);
    const auto values = skewed_values(100003, 4096, rng);
    for (unsigned lanes : {8u, 32u, 64u}) {
        for (Layout layout : kAllLayouts) {
            const auto e = encode(values, layout, LaneConfig::make(lanes));
            for (int t = 0; t < 5; ++t) {
                const auto p = Predicate<std::int64_t>::compare(CompareOp::Lt, static_cast<std::int64_t>(rng() % 4096));
                const auto r = e.dict.resolve(p);
                const auto single = scan_layout(e.column, r);
                for (unsigned threads : {2u, 3u, 4u, 7u}) {
                    ScanOptions opts;
                    opts.threads = threads;
                    ASSERT_EQ(scan_layout(e.column, r, nullptr, opts), single) << to_string(layout) << " " << threads;
                }
            }
        }
    }
}

TEST(Layout, MemoryAccounting) {
    std::vector<std::int64_t> values(1000);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = static_cast<std::int64_t>(i % 4096);
    EXPECT_DOUBLE_EQ(bits_per_code(encode(values, Layout::ByteSlice).column), 16.0);
    EXPECT_DOUBLE_EQ(bits_per_code(encode(values, Layout::BitPacked).column), 10.0);
    EXPECT_NEAR(bits_per_code(encode(values, Layout::Vbp).column), 10.0, 0.4);
}
