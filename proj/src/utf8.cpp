#include "juribert/utf8.hpp"

namespace juribert {

char32_t utf8_decode_next(std::string_view text, size_t& pos) {
    const auto byte = [&](size_t i) { return static_cast<uint8_t>(text[i]); };
    const uint8_t b0 = byte(pos);

    if (b0 < 0x80) {
        pos += 1;
        return b0;
    }

    auto fail = [&]() {
        pos += 1;
        return kInvalidCodepoint;
    };

    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return fail();
    }

    if (pos + len > text.size()) {
        return fail();
    }
    for (int i = 1; i < len; ++i) {
        const uint8_t b = byte(pos + i);
        if ((b & 0xC0) != 0x80) {
            return fail();
        }
        cp = (cp << 6) | (b & 0x3F);
    }

    // Overlong encodings, surrogates, out-of-range values.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000)) {
        return fail();
    }
    if (cp >= 0xD800 && cp <= 0xDFFF) {
        return fail();
    }
    if (cp > 0x10FFFF) {
        return fail();
    }

    pos += len;
    return cp;
}

void utf8_append(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool utf8_valid(std::string_view text) {
    size_t pos = 0;
    while (pos < text.size()) {
        if (utf8_decode_next(text, pos) == kInvalidCodepoint) {
            return false;
        }
    }
    return true;
}

}  // namespace juribert
