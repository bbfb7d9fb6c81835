#include <gtest/gtest.h>

#include <random>

#include "bytestore/byteslice.hpp"
#include "bytestore/encoding.hpp"
#include "bytestore/vbp.hpp"
#include "oracles.hpp"

using namespace bytestore;

TEST(VbpBuild, PlanesHoldBitsMostSignificantFirst) {
    const std::vector<std::uint64_t> codes{0b1100000001111, 0};
    const auto col = VbpColumn::build(codes, 13, VbpKind::Plain);
    EXPECT_EQ(col.plane(1)[0] & 1u, 1u);
    EXPECT_EQ(col.plane(2)[0] & 1u, 1u);
    EXPECT_EQ(col.plane(3)[0] & 1u, 0u);
    EXPECT_EQ(col.plane(13)[0] & 1u, 1u);
    EXPECT_EQ(col.plane(13)[0] & 2u, 0u);
}

TEST(VbpBuild, AllZeroCodes) {
    const std::vector<std::uint64_t> codes(100, 0);
    const auto col = VbpColumn::build(codes, 5, VbpKind::Plain);
    for (unsigned j = 1; j <= 5; ++j) {
        for (auto w : col.plane(j)) EXPECT_EQ(w, 0u);
    }
    EXPECT_THROW(VbpColumn::build(std::vector<std::uint64_t>{32}, 5, VbpKind::Plain), DataError);
}

TEST(VbpScan, EarlyStopBeforeLastPlane) {
    // 32 codes whose top 12 bits all differ from the literal's
    std::vector<std::uint64_t> codes(32);
    for (std::size_t i = 0; i < 32; ++i) codes[i] = (i % 2) ? 0b1100000001110 : 0b0000000001100;
    const auto col = VbpColumn::build(codes, 13, VbpKind::Plain);
    ScanStats stats;
    const auto r = col.scan(CompareOp::Eq, CodeLiteral{6156, 2}, nullptr, &stats);  // 1100000001100
    EXPECT_TRUE(r.none());
    EXPECT_LE(stats.slice_loads.size(), 12u);
    EXPECT_EQ(stats.blocks_by_depth.size(), 13u);
    EXPECT_EQ(stats.blocks_by_depth[12], 1u);
}

TEST(VbpScan, PaddedEncodingStopsWithinShortCodes) {
    std::vector<std::uint64_t> weights(1000, 1);
    for (std::size_t i = 0; i < 8; ++i) weights[100 * i] = 1000000;
    const auto a = prefix_free_encode(weights);
    std::vector<std::uint64_t> rows;
    for (std::size_t i = 0; i < 32; ++i) rows.push_back(a.padded(100 * (i % 4)));
    const auto col = VbpColumn::build(rows, a.max_length, VbpKind::PaddedEncoding);
    EXPECT_EQ(col.bit_width(), a.max_length);
    const unsigned short_len = std::max({a.lengths[0], a.lengths[100], a.lengths[200], a.lengths[300], a.lengths[700]});
    ScanStats stats;
    const auto r = col.scan(CompareOp::Eq, CodeLiteral{a.codes[700], a.lengths[700]}, nullptr, &stats);
    EXPECT_TRUE(r.none());
    EXPECT_LE(stats.blocks_by_depth.size() - 1, short_len);
    EXPECT_LT(short_len, a.max_length);
}

TEST(VbpScan, AgreesWithByteSlice) {
    std::mt19937_64 rng(51);
    const CompareOp ops[] = {CompareOp::Lt, CompareOp::Gt, CompareOp::Le, CompareOp::Ge, CompareOp::Eq, CompareOp::Ne};
    for (unsigned w : {1u, 9u, 13u, 24u}) {
        for (unsigned lanes : {8u, 16u, 32u, 64u}) {
            std::vector<std::uint64_t> codes(1500);
            for (auto& c : codes) c = rng() & bits::low_mask(w);
            const auto vbp = VbpColumn::build(codes, w, VbpKind::Plain, LaneConfig::make(lanes));
            const auto bs = ByteSliceColumn::build(codes, w, LaneConfig::make(lanes));
            ResultBitVector input(codes.size());
            for (std::size_t i = 0; i < codes.size(); ++i) input.set(i, rng() & 1u);
            for (int t = 0; t < 10; ++t) {
                const CodeLiteral lit{codes[rng() % codes.size()], 0};
                for (auto op : ops) {
                    ASSERT_EQ(vbp.scan(op, lit), bs.scan(op, lit));
                    ASSERT_EQ(vbp.scan(op, lit, &input), bs.scan(op, lit, &input));
                }
            }
        }
    }
}

TEST(VbpScan, PaddedEncodingRangeAndEqualityMatchOracle) {
    std::mt19937_64 rng(52);
    const CompareOp ops[] = {CompareOp::Lt, CompareOp::Gt, CompareOp::Le, CompareOp::Ge, CompareOp::Eq, CompareOp::Ne};
    const auto w = oracle::random_weights(3000, rng);
    const auto a = prefix_free_encode(w);
    std::vector<std::uint32_t> rows(4000);
    std::vector<std::uint64_t> padded(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i] = static_cast<std::uint32_t>(rng() % 3000);
        padded[i] = a.padded(rows[i]);
    }
    const auto col = VbpColumn::build(padded, a.max_length, VbpKind::PaddedEncoding);
    for (int t = 0; t < 20; ++t) {
        const auto v = static_cast<std::uint32_t>(rng() % 3000);
        for (auto op : ops) {
            const auto got = col.scan(op, CodeLiteral{a.codes[v], a.lengths[v]});
            for (std::size_t i = 0; i < rows.size(); ++i) {
                ASSERT_EQ(got.test(i), oracle::code_matches(op, rows[i], v)) << "row " << i;
            }
        }
    }
}

TEST(VbpLookup, GathersEveryPlane) {
    std::mt19937_64 rng(53);
    std::vector<std::uint64_t> codes(500);
    for (auto& c : codes) c = rng() % 8192;
    const auto col = VbpColumn::build(codes, 13, VbpKind::Plain);
    LookupStats stats;
    EXPECT_EQ(col.lookup(ResultBitVector(codes.size(), true), &stats), codes);
    EXPECT_EQ(stats.planes_touched, 13u * codes.size());
    EXPECT_TRUE(col.lookup(ResultBitVector(codes.size())).empty());

    const auto pe = VbpColumn::build(codes, 16, VbpKind::PaddedEncoding);
    ResultBitVector one(codes.size());
    one.set(9);
    LookupStats pe_stats;
    pe.lookup(one, &pe_stats);
    EXPECT_EQ(pe_stats.planes_touched, 16u);
}
