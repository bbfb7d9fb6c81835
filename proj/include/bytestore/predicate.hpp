#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "bytestore/error.hpp"

namespace bytestore {

enum class CompareOp : std::uint8_t { Lt, Gt, Le, Ge, Eq, Ne, Between };

inline std::string_view to_string(CompareOp op) {
    switch (op) {
        case CompareOp::Lt: return "<";
        case CompareOp::Gt: return ">";
        case CompareOp::Le: return "<=";
        case CompareOp::Ge: return ">=";
        case CompareOp::Eq: return "=";
        case CompareOp::Ne: return "!=";
        case CompareOp::Between: return "BETWEEN";
    }
    return "?";
}

inline std::optional<CompareOp> parse_compare_op(std::string_view s) {
    if (s == "<") return CompareOp::Lt;
    if (s == ">") return CompareOp::Gt;
    if (s == "<=") return CompareOp::Le;
    if (s == ">=") return CompareOp::Ge;
    if (s == "=" || s == "==") return CompareOp::Eq;
    if (s == "!=" || s == "<>") return CompareOp::Ne;
    if (s == "BETWEEN" || s == "between") return CompareOp::Between;
    return std::nullopt;
}

constexpr bool is_range_op(CompareOp op) noexcept {
    return op != CompareOp::Eq && op != CompareOp::Ne;
}

/// Evaluates `lhs op rhs` (and `lhs <= hi` for BETWEEN) under the native order of T.
template <class T>
bool evaluate(CompareOp op, const T& lhs, const T& rhs, const T& hi) {
    switch (op) {
        case CompareOp::Lt: return lhs < rhs;
        case CompareOp::Gt: return rhs < lhs;
        case CompareOp::Le: return !(rhs < lhs);
        case CompareOp::Ge: return !(lhs < rhs);
        case CompareOp::Eq: return lhs == rhs;
        case CompareOp::Ne: return !(lhs == rhs);
        case CompareOp::Between: return !(lhs < rhs) && !(hi < lhs);
    }
    return false;
}

/// A predicate over raw column values.
template <class T>
struct Predicate {
    CompareOp op = CompareOp::Eq;
    T literal{};
    T upper{};  // BETWEEN only

    static Predicate compare(CompareOp op, T literal) {
        if (op == CompareOp::Between) throw UsageError("BETWEEN needs two literals");
        return Predicate{op, std::move(literal), T{}};
    }
    static Predicate between(T lo, T hi) {
        if (hi < lo) throw UsageError("BETWEEN requires lo <= hi");
        return Predicate{CompareOp::Between, std::move(lo), std::move(hi)};
    }

    bool matches(const T& v) const { return evaluate(op, v, literal, upper); }
};

/// A code-space literal. `length` is in the unit of the owning code assignment
/// (bytes for byte-oriented codes, bits for prefix-free codes).
struct CodeLiteral {
    std::uint64_t code = 0;
    std::uint8_t length = 0;

    friend bool operator==(const CodeLiteral&, const CodeLiteral&) = default;
};

/// A predicate resolved into code space; may collapse to a constant.
struct ResolvedPredicate {
    enum class Kind : std::uint8_t { Compare, AlwaysTrue, AlwaysFalse };

    Kind kind = Kind::Compare;
    CompareOp op = CompareOp::Eq;
    CodeLiteral literal;
    CodeLiteral upper;  // BETWEEN only

    static ResolvedPredicate always(bool value) {
        ResolvedPredicate p;
        p.kind = value ? Kind::AlwaysTrue : Kind::AlwaysFalse;
        return p;
    }
    static ResolvedPredicate compare(CompareOp op, CodeLiteral literal, CodeLiteral upper = {}) {
        ResolvedPredicate p;
        p.op = op;
        p.literal = literal;
        p.upper = upper;
        return p;
    }

    bool is_constant() const noexcept { return kind != Kind::Compare; }

    friend bool operator==(const ResolvedPredicate&, const ResolvedPredicate&) = default;
};

}  // namespace bytestore
