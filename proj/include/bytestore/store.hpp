#pragma once

#include <charconv>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bytestore/advisor.hpp"
#include "bytestore/csv.hpp"
#include "bytestore/dictionary.hpp"
#include "bytestore/error.hpp"
#include "bytestore/io.hpp"
#include "bytestore/layout.hpp"
#include "bytestore/zipf.hpp"

namespace bytestore {

inline constexpr std::uint32_t kFormatVersion = 1;
inline constexpr std::string_view kMagic = "BYST";

struct ColumnSchema {
    std::string name;
    ColumnKind kind = ColumnKind::Numeric;
    std::optional<Layout> layout;  // forced layout; the advisor decides otherwise
};

struct Schema {
    std::vector<ColumnSchema> columns;

    /// `{"columns": [{"name": "a", "kind": "numeric", "layout": "ppvbs"}, ...]}`; layout is optional.
    static Schema parse_json(std::string_view text) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(std::string("schema is not valid JSON: ") + e.what());
        }
        if (!j.is_object() || !j.contains("columns") || !j["columns"].is_array()) {
            throw UsageError("schema needs a \"columns\" array");
        }
        Schema s;
        for (const auto& c : j["columns"]) {
            if (!c.is_object() || !c.contains("name") || !c["name"].is_string()) {
                throw UsageError("every schema column needs a string \"name\"");
            }
            ColumnSchema col;
            col.name = c["name"].get<std::string>();
            const std::string kind = c.value("kind", std::string("numeric"));
            const auto k = parse_column_kind(kind);
            if (!k) throw UsageError("unknown column kind '" + kind + "'");
            col.kind = *k;
            if (c.contains("layout") && !c["layout"].is_null()) {
                const std::string layout = c["layout"].get<std::string>();
                if (layout != "advisor") {
                    const auto l = parse_layout(layout);
                    if (!l) throw UsageError("unknown layout '" + layout + "'");
                    col.layout = *l;
                }
            }
            s.columns.push_back(std::move(col));
        }
        s.validate();
        return s;
    }

    /// Columns whose every cell is an integer are numeric, the rest categorical.
    static Schema infer(const CsvTable& t) {
        Schema s;
        for (std::size_t c = 0; c < t.header.size(); ++c) {
            bool numeric = true;
            for (const auto& cell : t.columns[c]) {
                std::int64_t v;
                const auto r = std::from_chars(cell.data(), cell.data() + cell.size(), v);
                if (r.ec != std::errc{} || r.ptr != cell.data() + cell.size()) {
                    numeric = false;
                    break;
                }
            }
            s.columns.push_back({t.header[c], numeric ? ColumnKind::Numeric : ColumnKind::Categorical, std::nullopt});
        }
        return s;
    }

    void validate() const {
        if (columns.empty()) throw UsageError("schema has no columns");
        for (std::size_t i = 0; i < columns.size(); ++i) {
            for (std::size_t k = 0; k < i; ++k) {
                if (columns[k].name == columns[i].name) throw UsageError("duplicate column '" + columns[i].name + "'");
            }
        }
    }
};

/// Dictionary plus physical column for one value type.
template <class T>
struct EncodedColumn {
    Dictionary<T> dict;
    LayoutColumn layout;
};

using ColumnData = std::variant<EncodedColumn<std::int64_t>, EncodedColumn<std::string>>;

struct ColumnAdvice {
    CostModel model = CostModel::ByteLoads;
    bool degenerate = false;
    double auc_byteslice = 0.0;
    double auc_ppvbs = 0.0;
};

struct StoredColumn {
    ColumnSchema schema;
    Layout layout = Layout::ByteSlice;
    std::optional<ColumnAdvice> advice;
    ColumnData data;

    bool is_numeric() const noexcept { return data.index() == 0; }
    std::size_t distinct() const {
        return std::visit([](const auto& e) { return e.dict.size(); }, data);
    }
    const LayoutColumn& physical() const {
        return std::visit([](const auto& e) -> const LayoutColumn& { return e.layout; }, data);
    }
};

struct IngestOptions {
    std::optional<Layout> layout;  // applies to columns the schema leaves open
    AdvisorOptions advisor;
    LaneConfig lanes;
    std::optional<std::uint64_t> seed;  // recorded in the manifest when the data came from the generator
};

struct IngestReportRow {
    std::string name;
    ColumnKind kind = ColumnKind::Numeric;
    Layout layout = Layout::ByteSlice;
    std::string chosen_by;  // advisor | forced | degenerate
    std::size_t distinct = 0;
    double encode_ms = 0.0;
    double advise_ms = 0.0;
    double bits_per_code = 0.0;
    std::optional<ColumnAdvice> advice;
};

namespace detail {

inline std::int64_t parse_int(std::string_view s, std::size_t row, std::string_view column) {
    std::int64_t v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
        throw DataError("row " + std::to_string(row + 1) + ", column '" + std::string(column) + "': '" +
                        std::string(s) + "' is not a 64-bit integer");
    }
    return v;
}

inline double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

template <class T>
EncodedColumn<T> encode_column(std::span<const T> values, ColumnKind kind, Layout layout, LaneConfig lanes) {
    auto dict = Dictionary<T>::build(values, kind, dict_encoding_for(layout));
    const auto rows = dict.encode_rows(values);
    auto col = build_layout(layout, dict.codes(), rows, lanes);
    return {std::move(dict), std::move(col)};
}

// ---- binary sections ----

inline void write_dictionary_section(ByteWriter& w, const ColumnData& data) {
    std::visit(
        [&](const auto& e) {
            using T = std::decay_t<decltype(e.dict.value(0))>;
            const auto& codes = e.dict.codes();
            const auto& table = e.dict.table();
            w.u8(std::is_same_v<T, std::int64_t> ? 0 : 1);
            w.u8(static_cast<std::uint8_t>(codes.kind));
            w.u8(static_cast<std::uint8_t>(codes.max_length));
            w.u8(static_cast<std::uint8_t>(codes.bit_width));
            w.u64(table.size());
            for (const auto& v : table.values) {
                if constexpr (std::is_same_v<T, std::int64_t>) {
                    w.i64(v);
                } else {
                    w.str(v);
                }
            }
            for (auto c : codes.codes) w.u64(c);
            for (auto l : codes.lengths) w.u8(l);
            for (auto q : table.weights) w.u64(q);
        },
        data);
}

inline void write_layout_section(ByteWriter& w, const LayoutColumn& col) {
    w.u8(static_cast<std::uint8_t>(layout_of(col)));
    std::visit(
        [&](const auto& c) {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, VbsColumn>) {
                w.u8(static_cast<std::uint8_t>(c.max_length()));
                w.u64(c.size());
                for (unsigned j = 1; j <= c.max_length(); ++j) {
                    w.u64(c.slice(j).size());
                    w.bytes(c.slice(j));
                }
                for (unsigned j = 2; j <= c.max_length(); ++j) {
                    for (auto word : c.mask(j).words()) w.u32(word);
                }
                for (auto d : c.directory_grid()) w.u32(d);
            } else if constexpr (std::is_same_v<C, ByteSliceColumn>) {
                w.u8(static_cast<std::uint8_t>(c.bit_width()));
                w.u64(c.size());
                for (unsigned j = 1; j <= c.slice_count(); ++j) w.bytes(c.slice(j));
            } else if constexpr (std::is_same_v<C, BitPackedColumn>) {
                w.u8(static_cast<std::uint8_t>(c.bit_width()));
                w.u64(c.size());
                w.bytes(c.packed());
            } else {
                w.u8(static_cast<std::uint8_t>(c.bit_width()));
                w.u8(static_cast<std::uint8_t>(c.kind()));
                w.u64(c.size());
                for (unsigned j = 1; j <= c.bit_width(); ++j) {
                    for (auto word : c.plane(j)) w.u32(word);
                }
            }
        },
        col);
}

inline std::vector<std::uint32_t> read_words(ByteReader& r, std::size_t n_bits) {
    std::vector<std::uint32_t> words((n_bits + 31) / 32);
    for (auto& x : words) x = r.u32();
    if (n_bits % 32 && !words.empty() && (words.back() >> (n_bits % 32))) {
        throw DataError("bits set past the last row");
    }
    return words;
}

inline LayoutColumn read_layout_section(ByteReader& r, LaneConfig lanes) {
    const std::uint8_t tag = r.u8();
    switch (static_cast<Layout>(tag)) {
        case Layout::PpVbs: {
            const unsigned k = r.u8();
            const std::uint64_t n = r.u64();
            if (k < 1 || k > 8 || n == 0) throw DataError("bad VBS header");
            std::vector<std::vector<std::uint8_t>> slices;
            for (unsigned j = 1; j <= k; ++j) {
                const std::uint64_t len = r.u64();
                if (len > n) throw DataError("VBS slice longer than the column");
                auto b = r.bytes(len);
                slices.emplace_back(b.begin(), b.end());
            }
            std::vector<ResultBitVector> masks;
            for (unsigned j = 2; j <= k; ++j) masks.push_back(ResultBitVector::from_words(n, read_words(r, n)));
            const std::size_t blocks = lanes.block_count(n);
            std::vector<std::uint32_t> dir(blocks * (k - 1));
            for (auto& d : dir) d = r.u32();
            return VbsColumn::from_parts(n, k, lanes, std::move(slices), std::move(masks), std::move(dir));
        }
        case Layout::ByteSlice: {
            const unsigned w = r.u8();
            const std::uint64_t n = r.u64();
            if (w < 1 || w > 32 || n == 0) throw DataError("bad ByteSlice header");
            std::vector<std::vector<std::uint8_t>> slices;
            for (unsigned j = 0; j < (w + 7) / 8; ++j) {
                auto b = r.bytes(n);
                slices.emplace_back(b.begin(), b.end());
            }
            return ByteSliceColumn::from_parts(n, w, lanes, std::move(slices));
        }
        case Layout::BitPacked: {
            const unsigned w = r.u8();
            const std::uint64_t n = r.u64();
            if (w < 1 || w > 32 || n == 0) throw DataError("bad bit-packed header");
            return BitPackedColumn::from_parts(n, w, lanes, r.bytes((n * w + 7) / 8));
        }
        case Layout::Vbp:
        case Layout::PeVbp: {
            const unsigned w = r.u8();
            const auto kind = static_cast<VbpKind>(r.u8());
            const std::uint64_t n = r.u64();
            if (w < 1 || w > 64 || n == 0) throw DataError("bad VBP header");
            if ((kind == VbpKind::Plain) != (static_cast<Layout>(tag) == Layout::Vbp)) {
                throw DataError("VBP kind does not match the layout tag");
            }
            std::vector<std::vector<std::uint32_t>> planes;
            for (unsigned j = 0; j < w; ++j) planes.push_back(read_words(r, n));
            return VbpColumn::from_parts(n, w, kind, lanes, std::move(planes));
        }
    }
    throw DataError("unknown layout tag " + std::to_string(tag));
}

template <class T>
Dictionary<T> read_dictionary_body(ByteReader& r, CodeKind kind, unsigned max_length, unsigned bit_width,
                                   std::uint64_t n, ColumnKind column_kind) {
    FrequencyTable<T> table;
    table.order = kind == CodeKind::PpeCategorical ? TableOrder::DescendingWeight : TableOrder::AscendingValue;
    CodeAssignment codes;
    codes.kind = kind;
    codes.max_length = max_length;
    codes.bit_width = bit_width;
    if (n == 0 || n > r.remaining()) throw DataError("bad dictionary size");
    table.values.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        if constexpr (std::is_same_v<T, std::int64_t>) {
            table.values.push_back(r.i64());
        } else {
            table.values.push_back(r.str());
        }
    }
    codes.codes.resize(n);
    codes.lengths.resize(n);
    table.weights.resize(n);
    for (auto& c : codes.codes) c = r.u64();
    for (auto& l : codes.lengths) l = r.u8();
    for (auto& q : table.weights) q = r.u64();

    // The stored codes must be exactly what the encoder derives from the stored weights.
    DictEncoding enc = DictEncoding::Fixed;
    if (kind == CodeKind::PrefixFree) enc = DictEncoding::PrefixFree;
    if (kind == CodeKind::PpeNumerical || kind == CodeKind::PpeCategorical) enc = DictEncoding::Ppe;
    if ((kind == CodeKind::PpeCategorical) != (enc == DictEncoding::Ppe && column_kind == ColumnKind::Categorical)) {
        throw DataError("dictionary code kind does not match the column kind");
    }
    Dictionary<T> rebuilt;
    try {
        rebuilt = Dictionary<T>::from_table(table, column_kind, enc);
    } catch (const UsageError& e) {
        throw DataError(std::string("corrupt dictionary: ") + e.what());
    }
    const auto& expect = rebuilt.codes();
    if (expect.codes != codes.codes || expect.lengths != codes.lengths || expect.max_length != codes.max_length ||
        expect.bit_width != codes.bit_width) {
        throw DataError("stored codes do not match the dictionary weights");
    }
    return rebuilt;
}

}  // namespace detail

/// A set of equally long encoded columns plus the manifest describing them.
class Store {
public:
    Store() = default;

    static Store ingest(const CsvTable& csv, const Schema& schema, const IngestOptions& options = {},
                        std::vector<IngestReportRow>* report = nullptr) {
        schema.validate();
        Store s;
        s.n_rows_ = csv.row_count();
        s.lanes_ = LaneConfig::make(options.lanes.lanes);
        s.seed_ = options.seed;
        if (s.n_rows_ == 0) throw DataError("no rows to ingest");
        if (s.n_rows_ > UINT32_MAX) throw DataError("more rows than the format supports");
        AdvisorOptions advisor = options.advisor;
        advisor.lanes = s.lanes_;

        for (const auto& col : schema.columns) {
            std::size_t idx = csv.header.size();
            for (std::size_t c = 0; c < csv.header.size(); ++c) {
                if (csv.header[c] == col.name) idx = c;
            }
            if (idx == csv.header.size()) throw UsageError("schema column '" + col.name + "' is not in the CSV header");
            const auto& cells = csv.columns[idx];

            StoredColumn stored;
            stored.schema = col;
            IngestReportRow row;
            row.name = col.name;
            row.kind = col.kind;

            auto process = [&](auto values) {
                using T = typename decltype(values)::value_type;
                std::span<const T> view(values);
                std::optional<Layout> forced = col.layout ? col.layout : options.layout;
                if (forced) {
                    stored.layout = *forced;
                    row.chosen_by = "forced";
                } else {
                    const auto t0 = std::chrono::steady_clock::now();
                    const Advice advice = advise<T>(view, col.kind, advisor);
                    row.advise_ms = detail::ms_since(t0);
                    stored.layout = advice.chosen;
                    stored.advice = ColumnAdvice{advisor.model, advice.degenerate, advice.auc_byteslice, advice.auc_ppvbs};
                    row.chosen_by = advice.degenerate ? "degenerate" : "advisor";
                }
                const auto t0 = std::chrono::steady_clock::now();
                stored.data = detail::encode_column<T>(view, col.kind, stored.layout, s.lanes_);
                row.encode_ms = detail::ms_since(t0);
            };
            if (col.kind == ColumnKind::Numeric) {
                std::vector<std::int64_t> values(cells.size());
                for (std::size_t r = 0; r < cells.size(); ++r) values[r] = detail::parse_int(cells[r], r, col.name);
                process(std::move(values));
            } else {
                process(cells);
            }
            row.layout = stored.layout;
            row.distinct = stored.distinct();
            row.bits_per_code = bits_per_code(stored.physical());
            row.advice = stored.advice;
            s.columns_.push_back(std::move(stored));
            if (report) report->push_back(std::move(row));
        }
        return s;
    }

    std::size_t row_count() const noexcept { return n_rows_; }
    LaneConfig lanes() const noexcept { return lanes_; }
    const std::vector<StoredColumn>& columns() const noexcept { return columns_; }

    const StoredColumn& column(std::string_view name) const {
        for (const auto& c : columns_) {
            if (c.schema.name == name) return c;
        }
        throw UsageError("unknown column '" + std::string(name) + "'");
    }

    nlohmann::json manifest() const {
        nlohmann::json m;
        m["format_version"] = kFormatVersion;
        m["n_rows"] = n_rows_;
        m["lane_count"] = lanes_.lanes;
        m["prng"] = std::string(kPrngName);
        if (seed_) m["seed"] = *seed_;
        m["columns"] = nlohmann::json::array();
        for (const auto& c : columns_) {
            nlohmann::json j;
            j["name"] = c.schema.name;
            j["kind"] = std::string(to_string(c.schema.kind));
            j["layout"] = std::string(to_string(c.layout));
            j["forced_layout"] = c.schema.layout ? nlohmann::json(std::string(to_string(*c.schema.layout))) : nlohmann::json();
            j["dictionary"] = std::string(std::visit([](const auto& e) { return to_string(e.dict.codes().kind); }, c.data));
            j["distinct"] = c.distinct();
            if (c.advice) {
                j["advice"] = {{"cost_model", std::string(to_string(c.advice->model))},
                               {"degenerate", c.advice->degenerate},
                               {"auc_byteslice", c.advice->auc_byteslice},
                               {"auc_ppvbs", c.advice->auc_ppvbs}};
            }
            m["columns"].push_back(std::move(j));
        }
        return m;
    }

    std::vector<std::uint8_t> serialize() const {
        ByteWriter w;
        for (char ch : kMagic) w.u8(static_cast<std::uint8_t>(ch));
        w.u32(kFormatVersion);
        const std::string manifest_text = manifest().dump();
        ByteWriter m;
        m.bytes(std::span(reinterpret_cast<const std::uint8_t*>(manifest_text.data()), manifest_text.size()));
        w.section(m);
        for (const auto& c : columns_) {
            ByteWriter dict;
            detail::write_dictionary_section(dict, c.data);
            w.section(dict);
            ByteWriter layout;
            detail::write_layout_section(layout, c.physical());
            w.section(layout);
        }
        return w.take();
    }

    static Store deserialize(std::span<const std::uint8_t> bytes) {
        ByteReader r(bytes);
        for (char ch : kMagic) {
            if (r.remaining() == 0 || r.u8() != static_cast<std::uint8_t>(ch)) throw DataError("not a store file (bad magic)");
        }
        const std::uint32_t version = r.u32();
        if (version != kFormatVersion) throw DataError("unsupported store format version " + std::to_string(version));

        auto manifest_reader = r.section();
        const auto text = manifest_reader.bytes(manifest_reader.remaining());
        nlohmann::json m;
        try {
            m = nlohmann::json::parse(text.begin(), text.end());
        } catch (const nlohmann::json::exception& e) {
            throw DataError(std::string("corrupt manifest: ") + e.what());
        }

        Store s;
        try {
            if (m.at("format_version").get<std::uint32_t>() != kFormatVersion) throw DataError("manifest version mismatch");
            s.n_rows_ = m.at("n_rows").get<std::size_t>();
            s.lanes_ = LaneConfig::make(m.at("lane_count").get<unsigned>());
            if (m.contains("seed")) s.seed_ = m["seed"].get<std::uint64_t>();
            for (const auto& jc : m.at("columns")) {
                StoredColumn c;
                c.schema.name = jc.at("name").get<std::string>();
                const auto kind = parse_column_kind(jc.at("kind").get<std::string>());
                const auto layout = parse_layout(jc.at("layout").get<std::string>());
                if (!kind || !layout) throw DataError("manifest names an unknown kind or layout");
                c.schema.kind = *kind;
                c.layout = *layout;
                if (jc.contains("forced_layout") && !jc["forced_layout"].is_null()) {
                    c.schema.layout = parse_layout(jc["forced_layout"].get<std::string>());
                }
                if (jc.contains("advice")) {
                    const auto& a = jc["advice"];
                    const auto model = parse_cost_model(a.at("cost_model").get<std::string>());
                    if (!model) throw DataError("manifest names an unknown cost model");
                    c.advice = ColumnAdvice{*model, a.at("degenerate").get<bool>(), a.at("auc_byteslice").get<double>(),
                                            a.at("auc_ppvbs").get<double>()};
                }

                auto dict_reader = r.section();
                const std::uint8_t value_type = dict_reader.u8();
                const auto code_kind = static_cast<CodeKind>(dict_reader.u8());
                if (static_cast<std::uint8_t>(code_kind) > 3) throw DataError("unknown code kind");
                const unsigned max_length = dict_reader.u8();
                const unsigned bit_width = dict_reader.u8();
                const std::uint64_t n = dict_reader.u64();
                if ((value_type == 0) != (c.schema.kind == ColumnKind::Numeric) || value_type > 1) {
                    throw DataError("dictionary value type does not match the column kind");
                }

                auto layout_reader = r.section();
                LayoutColumn physical = detail::read_layout_section(layout_reader, s.lanes_);
                layout_reader.expect_done("layout section");
                if (layout_of(physical) != c.layout) throw DataError("layout section does not match the manifest");
                if (bytestore::row_count(physical) != s.n_rows_) throw DataError("column length does not match the manifest");

                if (value_type == 0) {
                    auto d = detail::read_dictionary_body<std::int64_t>(dict_reader, code_kind, max_length, bit_width, n,
                                                                        c.schema.kind);
                    c.data = EncodedColumn<std::int64_t>{std::move(d), std::move(physical)};
                } else {
                    auto d = detail::read_dictionary_body<std::string>(dict_reader, code_kind, max_length, bit_width, n,
                                                                       c.schema.kind);
                    c.data = EncodedColumn<std::string>{std::move(d), std::move(physical)};
                }
                dict_reader.expect_done("dictionary section");
                const auto expected = dict_encoding_for(c.layout);
                const auto actual = std::visit([](const auto& e) { return e.dict.codes().kind; }, c.data);
                const bool ok = expected == DictEncoding::Fixed    ? actual == CodeKind::Fixed
                                : expected == DictEncoding::PrefixFree ? actual == CodeKind::PrefixFree
                                                                       : actual == CodeKind::PpeNumerical ||
                                                                             actual == CodeKind::PpeCategorical;
                if (!ok) throw DataError("dictionary code kind does not match the layout");
                s.columns_.push_back(std::move(c));
            }
        } catch (const nlohmann::json::exception& e) {
            throw DataError(std::string("corrupt manifest: ") + e.what());
        } catch (const UsageError& e) {
            throw DataError(std::string("corrupt store: ") + e.what());
        }
        r.expect_done("store file");
        return s;
    }

    void save(const std::string& path) const {
        const auto bytes = serialize();
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw UsageError("cannot open '" + path + "' for writing");
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw DataError("failed writing '" + path + "'");
    }

    static Store load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw UsageError("cannot open store '" + path + "'");
        std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        return deserialize(bytes);
    }

private:
    std::size_t n_rows_ = 0;
    LaneConfig lanes_;
    std::optional<std::uint64_t> seed_;
    std::vector<StoredColumn> columns_;
};

/// Encodes a textual literal for a column; range operators on categorical
/// columns are rejected whatever the layout.
inline ResolvedPredicate resolve_literal(const StoredColumn& col, CompareOp op, std::string_view literal,
                                         std::string_view upper = {}) {
    if (col.schema.kind == ColumnKind::Categorical && is_range_op(op)) {
        throw UsageError("range predicate on categorical column '" + col.schema.name + "'");
    }
    return std::visit(
        [&](const auto& e) {
            using T = std::decay_t<decltype(e.dict.value(0))>;
            auto parse = [&](std::string_view s) -> T {
                if constexpr (std::is_same_v<T, std::int64_t>) {
                    std::int64_t v = 0;
                    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
                    if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
                        throw UsageError("literal '" + std::string(s) + "' is not an integer (column '" +
                                         col.schema.name + "' is numeric)");
                    }
                    return v;
                } else {
                    return std::string(s);
                }
            };
            const auto p = op == CompareOp::Between ? Predicate<T>::between(parse(literal), parse(upper))
                                                    : Predicate<T>::compare(op, parse(literal));
            return e.dict.resolve(p);
        },
        col.data);
}

/// Looks up and decodes the selected rows as text.
inline std::vector<std::string> decode_selection(const StoredColumn& col, const ResultBitVector& selection,
                                                 LookupStats* stats = nullptr) {
    return std::visit(
        [&](const auto& e) {
            const auto codes = lookup_layout(e.layout, selection, stats);
            std::vector<std::string> out;
            out.reserve(codes.size());
            for (auto c : codes) {
                if constexpr (std::is_same_v<std::decay_t<decltype(e.dict.value(0))>, std::int64_t>) {
                    out.push_back(std::to_string(e.dict.decode(c)));
                } else {
                    out.push_back(e.dict.decode(c));
                }
            }
            return out;
        },
        col.data);
}

}  // namespace bytestore
