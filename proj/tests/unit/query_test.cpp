#include <gtest/gtest.h>

#include <random>

#include "bytestore/query.hpp"
#include "bytestore/zipf.hpp"

using namespace bytestore;

namespace {

// Row-at-a-time evaluation over the original CSV strings.
template <typename T>
bool compare(const T& v, CompareOp op, const T& a, const T& b) {
    switch (op) {
        case CompareOp::Lt: return v < a;
        case CompareOp::Gt: return v > a;
        case CompareOp::Le: return v <= a;
        case CompareOp::Ge: return v >= a;
        case CompareOp::Eq: return v == a;
        case CompareOp::Ne: return v != a;
        case CompareOp::Between: return a <= v && v <= b;
    }
    return false;
}

std::vector<std::size_t> naive_rows(const CsvTable& t, const Schema& schema, const Query& q) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < t.row_count(); ++r) {
        bool any = q.disjuncts.empty();
        for (const auto& conj : q.disjuncts) {
            bool all = true;
            for (const auto& c : conj) {
                std::size_t col = 0;
                while (t.header[col] != c.column) ++col;
                const auto& cell = t.columns[col][r];
                if (schema.columns[col].kind == ColumnKind::Numeric) {
                    const std::int64_t hi = c.op == CompareOp::Between ? std::stoll(c.upper) : 0;
                    all = all && compare<std::int64_t>(std::stoll(cell), c.op, std::stoll(c.literal), hi);
                } else {
                    all = all && compare<std::string>(cell, c.op, c.literal, c.upper);
                }
            }
            any = any || all;
        }
        if (any) rows.push_back(r);
    }
    return rows;
}

struct Fixture {
    CsvTable table;
    Schema schema;
};

Fixture random_fixture(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double skews[] = {0.0, 0.5, 1.0, 1.5};
    const unsigned bits[] = {4, 8, 12, 16};
    const auto a = gen_zipf({skews[rng() % 4], bits[rng() % 4], n, seed});
    const auto b = gen_zipf({skews[rng() % 4], bits[rng() % 4], n, seed + 1});
    std::string text = "a,b,cat,semi\n";
    for (std::size_t i = 0; i < n; ++i) {
        text += std::to_string(a[i]) + "," + std::to_string(b[i] - 1000) + ",c" + std::to_string(rng() % 7) + ",k" +
                std::to_string(rng() % 300) + "\n";
    }
    Fixture f{parse_csv(text), Schema::parse_json(R"({"columns":[{"name":"a","kind":"numeric"},
        {"name":"b","kind":"numeric"},{"name":"cat","kind":"categorical"},
        {"name":"semi","kind":"semi_categorical_string"}]})")};
    return f;
}

std::string random_condition(std::mt19937_64& rng, const CsvTable& t) {
    static const char* ops[] = {"<", ">", "<=", ">=", "=", "!="};
    const std::size_t col = rng() % 4;
    const auto& cell = t.columns[col][rng() % t.row_count()];
    if (col == 2) return std::string("cat ") + (rng() % 2 ? "=" : "!=") + " '" + cell + "'";
    if (col == 3 && rng() % 5 == 0) {
        const auto& other = t.columns[col][rng() % t.row_count()];
        return "semi BETWEEN '" + std::min(cell, other) + "' AND '" + std::max(cell, other) + "'";
    }
    if (col < 2 && rng() % 5 == 0) {
        const std::int64_t v = std::stoll(cell);
        return t.header[col] + " BETWEEN " + std::to_string(v - 3) + " AND " + std::to_string(v + 40);
    }
    // numeric literals may also miss the dictionary
    std::string lit = cell;
    if (col < 2 && rng() % 4 == 0) lit = std::to_string(std::stoll(cell) + 1);
    if (col == 3) lit = "'" + lit + "'";
    return t.header[col] + " " + ops[rng() % 6] + " " + lit;
}

std::vector<std::string> column_values(const QueryResult& r, const std::string& name) {
    for (std::size_t i = 0; i < r.header.size(); ++i) {
        if (r.header[i] == name) return r.columns[i];
    }
    return {};
}

}  // namespace

TEST(ParseWhere, ConjunctionsAndDisjunctions) {
    const auto q = parse_where("a < 5 AND b >= -3 or c = 'x y' AND d BETWEEN 1 and 9");
    ASSERT_EQ(q.size(), 2u);
    ASSERT_EQ(q[0].size(), 2u);
    EXPECT_EQ(q[0][0].column, "a");
    EXPECT_EQ(q[0][0].op, CompareOp::Lt);
    EXPECT_EQ(q[0][1].literal, "-3");
    EXPECT_EQ(q[1][0].literal, "x y");
    EXPECT_EQ(q[1][1].op, CompareOp::Between);
    EXPECT_EQ(q[1][1].literal, "1");
    EXPECT_EQ(q[1][1].upper, "9");
}

TEST(ParseWhere, OperatorSpellingsAndQuotes) {
    EXPECT_EQ(parse_where("a<>1")[0][0].op, CompareOp::Ne);
    EXPECT_EQ(parse_where("a!=1")[0][0].op, CompareOp::Ne);
    EXPECT_EQ(parse_where("a==1")[0][0].op, CompareOp::Eq);
    EXPECT_EQ(parse_where("a<=1")[0][0].op, CompareOp::Le);
    EXPECT_EQ(parse_where("s = 'it''s'")[0][0].literal, "it's");
    EXPECT_EQ(parse_where("s = \"AND\"")[0][0].literal, "AND");
    EXPECT_TRUE(parse_where("   ").empty());
}

TEST(ParseWhere, Errors) {
    for (const char* bad : {"a", "a <", "a < 1 AND", "a ~ 1", "< 1", "a < 1 b > 2", "a BETWEEN 1 9", "s = 'open",
                            "a < <"}) {
        EXPECT_THROW(parse_where(bad), UsageError) << bad;
    }
}

TEST(Execute, MatchesNaiveEvaluatorOnRandomQueries) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto f = random_fixture(seed % 2 ? 3000 : 40000, seed);
        IngestOptions opts;
        opts.advisor.model = CostModel::ByteLoads;
        opts.advisor.literal_count = 10;
        opts.layout = kAllLayouts[seed % std::size(kAllLayouts)];
        const auto store = Store::ingest(f.table, f.schema, opts);
        std::mt19937_64 rng(seed * 31);
        for (int trial = 0; trial < 40; ++trial) {
            std::string where = random_condition(rng, f.table);
            const int extra = static_cast<int>(rng() % 4);
            for (int e = 0; e < extra; ++e) where += (rng() % 3 ? " AND " : " OR ") + random_condition(rng, f.table);
            Query q{parse_where(where), parse_projection("a,semi", store)};
            const auto got = execute(store, q);
            const auto expect = naive_rows(f.table, f.schema, q);
            ASSERT_EQ(got.row_count(), expect.size()) << where;
            std::vector<std::string> a, semi;
            for (auto r : expect) {
                a.push_back(f.table.columns[0][r]);
                semi.push_back(f.table.columns[3][r]);
            }
            EXPECT_EQ(column_values(got, "a"), a) << where;
            EXPECT_EQ(column_values(got, "semi"), semi) << where;
        }
    }
}

TEST(Execute, EveryLayoutGivesTheSameAnswer) {
    const auto f = random_fixture(20000, 77);
    Query q{parse_where("a >= 2 AND b < -990 OR semi BETWEEN 'k1' AND 'k3'"), {}};
    std::optional<std::vector<std::vector<std::string>>> first;
    for (Layout l : kAllLayouts) {
        IngestOptions opts;
        opts.layout = l;
        const auto store = Store::ingest(f.table, f.schema, opts);
        q.projection = parse_projection("*", store);
        const auto r = execute(store, q);
        if (!first) first = r.columns;
        EXPECT_EQ(r.columns, *first) << to_string(l);
    }
}

TEST(Execute, ConstantFalseSkipsLookup) {
    const auto f = random_fixture(5000, 3);
    IngestOptions opts;
    opts.layout = Layout::PpVbs;
    const auto store = Store::ingest(f.table, f.schema, opts);
    const auto r = execute(store, {parse_where("cat = 'nope'"), parse_projection("*", store)});
    EXPECT_EQ(r.row_count(), 0u);
    for (const auto& c : r.columns) EXPECT_TRUE(c.empty());
    for (const auto& t : r.timings) EXPECT_EQ(t.lookup_ms, 0.0);
}

TEST(Execute, NoFilterReturnsEveryRow) {
    const auto f = random_fixture(1000, 4);
    IngestOptions opts;
    opts.layout = Layout::ByteSlice;
    const auto store = Store::ingest(f.table, f.schema, opts);
    const auto r = execute(store, {{}, parse_projection("cat", store)});
    EXPECT_EQ(r.columns[0], f.table.columns[2]);
}

TEST(Execute, ThreadCountDoesNotChangeTheResult) {
    const auto f = random_fixture(50000, 5);
    IngestOptions opts;
    opts.layout = Layout::PpVbs;
    const auto store = Store::ingest(f.table, f.schema, opts);
    const Query q{parse_where("a < 3 OR semi > 'k2'"), parse_projection("*", store)};
    const auto one = execute(store, q, {1});
    const auto four = execute(store, q, {4});
    EXPECT_EQ(one.selection, four.selection);
    EXPECT_EQ(one.columns, four.columns);
}

TEST(Execute, UsageErrors) {
    const auto f = random_fixture(500, 6);
    const auto store = Store::ingest(f.table, f.schema, {});
    EXPECT_THROW(execute(store, {{}, parse_projection("a,zzz", store)}), UsageError);
    EXPECT_THROW(execute(store, {parse_where("zzz = 1"), {"a"}}), UsageError);
    EXPECT_THROW(execute(store, {parse_where("cat < 'c1'"), {"a"}}), UsageError);
    EXPECT_THROW(execute(store, {parse_where("a = x"), {"a"}}), UsageError);
}
