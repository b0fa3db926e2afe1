#ifndef TERMVAR_TAGGER_H_
#define TERMVAR_TAGGER_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "termvar/corpus.h"
#include "termvar/lexicon.h"
#include "termvar/matcher.h"

namespace termvar {

enum class Field { title, abstract };

std::string_view to_string(Field field);

struct ByteSpan {
    std::size_t begin;
    std::size_t end;
};

// Normalized stream of one document field plus, per normalized byte,
// the original byte span of the character it came from.
struct OffsetMap {
    std::string normalized;
    std::vector<ByteSpan> spans;
};

OffsetMap normalize_with_offsets(std::string_view text);

struct Mention {
    std::string doc_id;
    Field field = Field::title;
    std::size_t start = 0;  // byte offsets into the original field text
    std::size_t end = 0;
    std::string surface;
    std::string term_key;
    std::string entity;

    friend bool operator==(const Mention&, const Mention&) = default;
};

// All key occurrences whose normalized start and end align with
// maximal-alphanumeric-run boundaries of the original text, translated
// to original byte offsets. Overlapping and embedded matches are all
// present; keys bound to several entities yield one candidate per
// entity.
std::vector<Mention> raw_matches(const Matcher& matcher, const OffsetMap& map,
                                 std::string_view original,
                                 std::string_view doc_id = {},
                                 Field field = Field::title);

// Drops mentions strictly contained in another candidate's span, then
// resolves partial overlaps leftmost-longest. Output spans are
// pairwise disjoint and sorted.
std::vector<Mention> resolve_spans(std::vector<Mention> candidates);

struct MentionIndex {
    std::vector<Mention> mentions;  // sorted by (doc_id, field, start)
    std::uint64_t documents = 0;
    std::uint64_t documents_skipped = 0;
};

// Tags title and abstract of every document; output is invariant under
// the number of worker threads.
MentionIndex tag_corpus(const Matcher& matcher, CorpusReader& reader,
                        unsigned jobs = 1);

// Retains exactly the candidate terms whose (entity, key) has at least
// one resolved mention.
Lexicon filter_unattested(const Lexicon& candidates, const MentionIndex& index,
                          std::vector<std::string>* warnings = nullptr);

struct Snippet {
    std::string doc_id;
    Field field = Field::title;
    std::string text;
};

// Up to k context snippets (mention +/- 80 bytes, clipped to field
// bounds on character boundaries, mention wrapped in [[...]]), chosen
// by seeded deterministic sampling over the key's mentions.
std::vector<Snippet> export_review_samples(
    const MentionIndex& index,
    const std::unordered_map<std::string, DocumentRecord>& documents,
    std::string_view term_key, std::size_t k, std::uint64_t seed = 0,
    std::vector<std::string>* warnings = nullptr);

// Mention TSV:
// doc_id<TAB>field<TAB>start<TAB>end<TAB>surface<TAB>term_key<TAB>entity
// with backslash escapes for tab, newline, carriage return and
// backslash inside the surface column.
void write_mentions_tsv(const MentionIndex& index, std::ostream& out);
MentionIndex read_mentions_tsv(std::istream& in);
MentionIndex read_mentions_file(const std::string& path);

}  // namespace termvar

#endif  // TERMVAR_TAGGER_H_
