#include "termvar/unicode.h"

#include <algorithm>

namespace termvar::uni {

namespace {

struct CodepointRange {
    char32_t first;
    char32_t last;
};

struct FoldPair {
    char32_t from;
    char32_t to;
};

#include "unicode_tables.inc"

}  // namespace

Decoded decode_utf8(std::string_view text, std::size_t offset) {
    const auto* bytes = reinterpret_cast<const unsigned char*>(text.data());
    const std::size_t size = text.size();
    if (offset >= size) return {0xFFFD, 0};

    const unsigned char b0 = bytes[offset];
    if (b0 < 0x80) return {b0, 1};

    std::size_t length = 0;
    char32_t code = 0;
    if ((b0 & 0xE0) == 0xC0) {
        length = 2;
        code = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        length = 3;
        code = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        length = 4;
        code = b0 & 0x07;
    } else {
        return {0xFFFD, 1};
    }
    if (offset + length > size) return {0xFFFD, 1};
    for (std::size_t i = 1; i < length; ++i) {
        const unsigned char b = bytes[offset + i];
        if ((b & 0xC0) != 0x80) return {0xFFFD, 1};
        code = (code << 6) | (b & 0x3F);
    }
    // Reject overlong encodings, surrogates, and out-of-range values.
    static constexpr char32_t kMinForLength[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (code < kMinForLength[length] || code > 0x10FFFF ||
        (code >= 0xD800 && code <= 0xDFFF)) {
        return {0xFFFD, 1};
    }
    return {code, length};
}

void encode_utf8(char32_t code, std::string& out) {
    if (code < 0x80) {
        out.push_back(static_cast<char>(code));
    } else if (code < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (code >> 6)));
        out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
    } else if (code < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (code >> 12)));
        out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (code >> 18)));
        out.push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
    }
}

bool is_alnum(char32_t code) {
    // ASCII fast path; everything in the corpus is mostly here.
    if (code < 0x80) {
        return (code >= '0' && code <= '9') || (code >= 'A' && code <= 'Z') ||
               (code >= 'a' && code <= 'z');
    }
    const auto* end = kAlnumRanges + std::size(kAlnumRanges);
    const auto* it = std::upper_bound(
        kAlnumRanges, end, code,
        [](char32_t c, const CodepointRange& r) { return c < r.first; });
    return it != kAlnumRanges && code <= (it - 1)->last;
}

char32_t fold(char32_t code) {
    if (code < 0x80) {
        if (code >= 'A' && code <= 'Z') return code + ('a' - 'A');
        return code;
    }
    const auto* end = kFoldPairs + std::size(kFoldPairs);
    const auto* it = std::lower_bound(
        kFoldPairs, end, code,
        [](const FoldPair& p, char32_t c) { return p.from < c; });
    if (it != end && it->from == code) return it->to;
    return code;
}

std::vector<Run> alnum_runs(std::string_view text) {
    std::vector<Run> runs;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const Decoded d = decode_utf8(text, pos);
        if (is_alnum(d.code)) {
            const std::size_t begin = pos;
            std::size_t end = pos + d.length;
            while (end < text.size()) {
                const Decoded n = decode_utf8(text, end);
                if (!is_alnum(n.code)) break;
                end += n.length;
            }
            runs.push_back({begin, end});
            pos = end;
        } else {
            pos += d.length;
        }
    }
    return runs;
}

}  // namespace termvar::uni
