#pragma once

#include <cctype>
#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bytestore/error.hpp"
#include "bytestore/layout.hpp"
#include "bytestore/store.hpp"

namespace bytestore {

struct Condition {
    std::string column;
    CompareOp op = CompareOp::Eq;
    std::string literal;
    std::string upper;  // BETWEEN only
};

/// OR of conjunctions. Each conjunction is pipelined left to right; the
/// conjunctions are evaluated separately and OR-ed.
struct Query {
    std::vector<std::vector<Condition>> disjuncts;  // empty: every row
    std::vector<std::string> projection;
};

namespace detail {

struct Token {
    enum class Kind { Word, Quoted, Op } kind;
    std::string text;
};

inline bool is_keyword(const Token& t, std::string_view kw) {
    if (t.kind != Token::Kind::Word || t.text.size() != kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
        if (std::toupper(static_cast<unsigned char>(t.text[i])) != kw[i]) return false;
    }
    return true;
}

inline std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '\'' || c == '"') {
            std::string text;
            ++i;
            for (;;) {
                if (i >= s.size()) throw UsageError("unterminated quoted literal in predicate");
                if (s[i] == c) {
                    if (i + 1 < s.size() && s[i + 1] == c) {
                        text.push_back(c);
                        i += 2;
                        continue;
                    }
                    ++i;
                    break;
                }
                text.push_back(s[i++]);
            }
            out.push_back({Token::Kind::Quoted, std::move(text)});
        } else if (c == '<' || c == '>' || c == '=' || c == '!') {
            std::string op(1, c);
            if (i + 1 < s.size() && (s[i + 1] == '=' || (c == '<' && s[i + 1] == '>'))) op.push_back(s[i + 1]);
            i += op.size();
            if (op == "!") throw UsageError("'!' must be followed by '='");
            out.push_back({Token::Kind::Op, std::move(op)});
        } else {
            const std::size_t start = i;
            while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '<' && s[i] != '>' &&
                   s[i] != '=' && s[i] != '!' && s[i] != '\'' && s[i] != '"') {
                ++i;
            }
            out.push_back({Token::Kind::Word, std::string(s.substr(start, i - start))});
        }
    }
    return out;
}

}  // namespace detail

/// Parses `col OP lit [AND col OP lit ...] [OR ...]`; OP is one of
/// < > <= >= = == != <> or `BETWEEN lo AND hi`. Literals may be quoted with
/// single or double quotes (doubled to escape). An empty string means no filter.
inline std::vector<std::vector<Condition>> parse_where(std::string_view text) {
    const auto tokens = detail::tokenize(text);
    std::vector<std::vector<Condition>> out;
    if (tokens.empty()) return out;
    std::size_t i = 0;
    auto next = [&](std::string_view what) -> const detail::Token& {
        if (i >= tokens.size()) throw UsageError("predicate ends early; expected " + std::string(what));
        return tokens[i++];
    };
    auto literal = [&]() {
        const auto& t = next("a literal");
        if (t.kind == detail::Token::Kind::Op) throw UsageError("expected a literal, got '" + t.text + "'");
        return t.text;
    };
    out.emplace_back();
    for (;;) {
        Condition c;
        const auto& col = next("a column name");
        if (col.kind != detail::Token::Kind::Word) throw UsageError("expected a column name, got '" + col.text + "'");
        c.column = col.text;
        const auto& op = next("an operator");
        if (detail::is_keyword(op, "BETWEEN")) {
            c.op = CompareOp::Between;
            c.literal = literal();
            if (!detail::is_keyword(next("AND"), "AND")) throw UsageError("BETWEEN needs 'lo AND hi'");
            c.upper = literal();
        } else {
            const auto parsed = op.kind == detail::Token::Kind::Op ? parse_compare_op(op.text) : std::nullopt;
            if (!parsed) throw UsageError("unknown operator '" + op.text + "'");
            c.op = *parsed;
            c.literal = literal();
        }
        out.back().push_back(std::move(c));
        if (i == tokens.size()) break;
        const auto& joiner = next("AND or OR");
        if (detail::is_keyword(joiner, "OR")) {
            out.emplace_back();
        } else if (!detail::is_keyword(joiner, "AND")) {
            throw UsageError("expected AND or OR, got '" + joiner.text + "'");
        }
    }
    return out;
}

/// Comma-separated column names; "*" alone expands to every column of the store.
inline std::vector<std::string> parse_projection(std::string_view text, const Store& store) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view name = text.substr(start, end - start);
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) name.remove_prefix(1);
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.remove_suffix(1);
        if (name == "*") {
            for (const auto& c : store.columns()) out.push_back(c.schema.name);
        } else if (!name.empty()) {
            out.emplace_back(name);
        }
        start = end + 1;
    }
    return out;
}

struct ColumnTiming {
    std::string column;
    double scan_ms = 0.0;
    double lookup_ms = 0.0;
};

struct QueryResult {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> columns;  // column-major, same order as header
    ResultBitVector selection;
    std::vector<ColumnTiming> timings;  // every referenced column, first reference first

    std::size_t row_count() const noexcept { return selection.count(); }
};

struct ExecuteOptions {
    unsigned threads = 1;
};

inline QueryResult execute(const Store& store, const Query& query, const ExecuteOptions& options = {}) {
    QueryResult result;
    auto timing = [&](const std::string& name) -> ColumnTiming& {
        for (auto& t : result.timings) {
            if (t.column == name) return t;
        }
        result.timings.push_back({name, 0.0, 0.0});
        return result.timings.back();
    };
    using clock = std::chrono::steady_clock;

    // Resolve everything up front so that errors surface before any scan.
    struct Step {
        const StoredColumn* column;
        ResolvedPredicate pred;
    };
    std::vector<std::vector<Step>> plan;
    for (const auto& conj : query.disjuncts) {
        auto& steps = plan.emplace_back();
        for (const auto& c : conj) {
            const auto& col = store.column(c.column);
            steps.push_back({&col, resolve_literal(col, c.op, c.literal, c.upper)});
        }
    }
    std::vector<const StoredColumn*> projected;
    for (const auto& name : query.projection) projected.push_back(&store.column(name));

    const std::size_t n = store.row_count();
    if (plan.empty()) {
        result.selection = ResultBitVector(n, true);
    } else {
        result.selection = ResultBitVector(n);
        for (const auto& steps : plan) {
            std::optional<ResultBitVector> running;
            for (const auto& s : steps) {
                const auto t0 = clock::now();
                ScanOptions so;
                so.threads = options.threads;
                running = scan_layout(s.column->physical(), s.pred, running ? &*running : nullptr, so);
                timing(s.column->schema.name).scan_ms +=
                    std::chrono::duration<double, std::milli>(clock::now() - t0).count();
            }
            result.selection |= *running;
        }
    }

    const bool any = !result.selection.none();
    for (const auto* col : projected) {
        result.header.push_back(col->schema.name);
        auto& t = timing(col->schema.name);
        if (!any) {
            result.columns.emplace_back();
            continue;
        }
        const auto t0 = clock::now();
        result.columns.push_back(decode_selection(*col, result.selection));
        t.lookup_ms += std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    }
    return result;
}

}  // namespace bytestore
