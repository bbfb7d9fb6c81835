#pragma once

#include <stdexcept>
#include <string>

namespace bytestore {

/// Caller violated an API contract (mismatched lengths, bad option values).
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input data is malformed or a stored structure is inconsistent.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bytestore
