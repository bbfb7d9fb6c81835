#pragma once

#include <cstddef>
#include <istream>
#include <iterator>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "bytestore/error.hpp"

namespace bytestore {

/// A parsed CSV file, stored column-major.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> columns;

    std::size_t row_count() const noexcept { return columns.empty() ? 0 : columns.front().size(); }
};

/// RFC 4180 reader: quoted fields may hold commas, doubled quotes and line
/// breaks; CRLF or LF line ends. The first record is the header. An unquoted
/// empty cell is a NULL, which is rejected; `""` is an empty string.
inline CsvTable parse_csv(std::string_view text) {
    CsvTable t;
    std::vector<std::string> record;
    std::vector<bool> record_quoted;
    std::string field;
    std::size_t line = 1;
    std::size_t record_line = 1;
    bool quoted = false;
    bool was_quoted = false;
    bool any = false;  // current record has content

    auto fail = [&](const std::string& what) {
        throw DataError("CSV line " + std::to_string(record_line) + ": " + what);
    };
    auto end_field = [&] {
        record.push_back(std::move(field));
        record_quoted.push_back(was_quoted);
        field.clear();
        was_quoted = false;
    };
    auto end_record = [&] {
        if (!any && field.empty()) return;  // blank line
        end_field();
        if (t.header.empty()) {
            t.header = std::move(record);
            for (std::size_t c = 0; c < t.header.size(); ++c) {
                if (t.header[c].empty()) fail("empty column name in header");
                for (std::size_t d = 0; d < c; ++d) {
                    if (t.header[d] == t.header[c]) fail("duplicate column name '" + t.header[c] + "'");
                }
            }
            t.columns.assign(t.header.size(), {});
        } else {
            if (record.size() != t.header.size()) {
                fail("expected " + std::to_string(t.header.size()) + " fields, found " + std::to_string(record.size()));
            }
            const std::size_t row = t.row_count() + 1;
            for (std::size_t c = 0; c < record.size(); ++c) {
                if (record[c].empty() && !record_quoted[c]) {
                    throw DataError("CSV row " + std::to_string(row) + ", column '" + t.header[c] +
                                    "': empty cell (NULL values are not supported)");
                }
                t.columns[c].push_back(std::move(record[c]));
            }
        }
        record.clear();
        record_quoted.clear();
        any = false;
    };

    const std::size_t n = text.size();
    for (std::size_t i = 0; i < n; ++i) {
        const char ch = text[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < n && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (ch == '\n') ++line;
                field.push_back(ch);
            }
            continue;
        }
        switch (ch) {
            case '"':
                if (!field.empty() || was_quoted) fail("stray quote inside a field");
                quoted = true;
                was_quoted = true;
                any = true;
                break;
            case ',':
                end_field();
                any = true;
                break;
            case '\r':
                if (i + 1 >= n || text[i + 1] != '\n') fail("bare carriage return");
                break;
            case '\n':
                end_record();
                ++line;
                record_line = line;
                break;
            default:
                if (was_quoted) fail("text after closing quote");
                field.push_back(ch);
                any = true;
        }
    }
    if (quoted) fail("unterminated quoted field");
    end_record();
    if (t.header.empty()) throw DataError("CSV input is empty");
    if (t.row_count() == 0) throw DataError("CSV input has a header but no rows");
    return t;
}

inline CsvTable read_csv(std::istream& in) {
    std::string text(std::istreambuf_iterator<char>(in), {});
    return parse_csv(text);
}

/// Quotes a field when it contains a comma, quote or line break.
inline std::string csv_field(std::string_view s) {
    if (!s.empty() && s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_field(fields[i]);
    }
    out << '\n';
}

}  // namespace bytestore
