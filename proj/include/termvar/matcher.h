#ifndef TERMVAR_MATCHER_H_
#define TERMVAR_MATCHER_H_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "termvar/lexicon.h"

namespace termvar {

// Aho-Corasick automaton over the byte stream of normalized keys.
// Immutable after build; safe to share across threads.
class Matcher {
public:
    struct KeyEntry {
        std::string key;
        std::vector<std::string> entities;  // sorted, deduplicated
    };

    const std::vector<KeyEntry>& keys() const { return entries_; }

    // Reports every key occurrence in the normalized stream as
    // (key_index, end) with `end` exclusive; the match starts at
    // end - keys()[key_index].key.size().
    void scan(std::string_view normalized,
              const std::function<void(std::uint32_t, std::size_t)>& on_match) const;

    friend Matcher build_matcher(const Lexicon& lexicon);

private:
    struct Node {
        std::int32_t fail = 0;
        std::int32_t out_link = -1;  // nearest proper-suffix state with a key
        std::int32_t key = -1;
        std::vector<std::pair<unsigned char, std::int32_t>> next;  // sorted by byte
    };

    std::int32_t step(std::int32_t state, unsigned char byte) const;

    std::vector<Node> nodes_;
    std::array<std::int32_t, 256> root_next_{};
    std::vector<KeyEntry> entries_;
};

// Throws ParseError when the lexicon has no terms.
Matcher build_matcher(const Lexicon& lexicon);

}  // namespace termvar

#endif  // TERMVAR_MATCHER_H_
