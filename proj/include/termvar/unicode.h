#ifndef TERMVAR_UNICODE_H_
#define TERMVAR_UNICODE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace termvar::uni {

// One decoded scalar value plus the number of bytes it consumed.
// Invalid sequences decode as U+FFFD with length 1 so the caller
// always makes progress.
struct Decoded {
    char32_t code;
    std::size_t length;
};

Decoded decode_utf8(std::string_view text, std::size_t offset);
void encode_utf8(char32_t code, std::string& out);

// True for Unicode letters and decimal digits.
bool is_alnum(char32_t code);

// One-to-one simple case folding; identity for everything else.
char32_t fold(char32_t code);

// Byte range of one maximal alphanumeric run.
struct Run {
    std::size_t begin;
    std::size_t end;
};

// Maximal alphanumeric runs of `text`, in order.
std::vector<Run> alnum_runs(std::string_view text);

}  // namespace termvar::uni

#endif  // TERMVAR_UNICODE_H_
