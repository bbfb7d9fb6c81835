#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bytestore/error.hpp"

namespace bytestore {

/// Appends little-endian integers and raw bytes to a buffer.
class ByteWriter {
public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u32(std::uint32_t v) { put(v, 4); }
    void u64(std::uint64_t v) { put(v, 8); }
    void i64(std::int64_t v) { put(static_cast<std::uint64_t>(v), 8); }
    void bytes(std::span<const std::uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
    void str(std::string_view s) {
        if (s.size() > UINT32_MAX) throw DataError("string too long to store");
        u32(static_cast<std::uint32_t>(s.size()));
        buf_.insert(buf_.end(), s.begin(), s.end());
    }
    /// A u64 length followed by the section body.
    void section(const ByteWriter& body) {
        u64(body.size());
        bytes(body.data());
    }

    std::size_t size() const noexcept { return buf_.size(); }
    std::span<const std::uint8_t> data() const noexcept { return buf_; }
    std::vector<std::uint8_t> take() { return std::move(buf_); }

private:
    void put(std::uint64_t v, unsigned n) {
        for (unsigned i = 0; i < n; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    std::vector<std::uint8_t> buf_;
};

/// Reads what ByteWriter wrote; truncation is a DataError.
class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
    std::uint64_t u64() { return get(8); }
    std::int64_t i64() { return static_cast<std::int64_t>(get(8)); }
    std::span<const std::uint8_t> bytes(std::uint64_t n) {
        need(n);
        auto out = data_.subspan(pos_, static_cast<std::size_t>(n));
        pos_ += static_cast<std::size_t>(n);
        return out;
    }
    std::string str() {
        const auto n = u32();
        auto b = bytes(n);
        return std::string(b.begin(), b.end());
    }
    ByteReader section() { return ByteReader(bytes(u64())); }

    bool done() const noexcept { return pos_ == data_.size(); }
    std::size_t remaining() const noexcept { return data_.size() - pos_; }
    void expect_done(std::string_view what) const {
        if (!done()) throw DataError(std::string("trailing bytes in ") + std::string(what));
    }

private:
    void need(std::uint64_t n) const {
        if (n > data_.size() - pos_) throw DataError("store file is truncated");
    }
    std::uint64_t get(unsigned n) {
        need(n);
        std::uint64_t v = 0;
        for (unsigned i = 0; i < n; ++i) v |= std::uint64_t{data_[pos_ + i]} << (8 * i);
        pos_ += n;
        return v;
    }
    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

}  // namespace bytestore
