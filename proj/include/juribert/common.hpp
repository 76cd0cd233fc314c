#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace juribert {

#ifdef JURIBERT_SINGLE_PRECISION
using real_t = float;
#else
using real_t = double;
#endif

// Exit-code contract: 0 success, 2 missing input, 3 empty/degenerate data,
// 4 config mismatch, 1 everything else.
struct MissingInputError : std::runtime_error {
    explicit MissingInputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptyDataError : std::runtime_error {
    explicit EmptyDataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigMismatchError : std::runtime_error {
    explicit ConfigMismatchError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace juribert
