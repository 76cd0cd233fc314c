#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace juribert {

constexpr char32_t kInvalidCodepoint = 0xFFFFFFFF;

// Strict UTF-8 decoder: rejects overlong forms, surrogates and values past
// U+10FFFF. Advances pos past the decoded sequence, or past one byte and
// returns kInvalidCodepoint on malformed input.
char32_t utf8_decode_next(std::string_view text, size_t& pos);

void utf8_append(std::string& out, char32_t cp);

bool utf8_valid(std::string_view text);

}  // namespace juribert
