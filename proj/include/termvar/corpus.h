#ifndef TERMVAR_CORPUS_H_
#define TERMVAR_CORPUS_H_

#include <chrono>
#include <cstdint>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace termvar {

struct DocumentRecord {
    std::string doc_id;
    std::chrono::sys_days date_added;
    std::string date_string;  // as read, ISO YYYY-MM-DD
    std::string title;
    std::string abstract;     // may be empty
    std::uint64_t token_count = 0;
};

// Maximal alphanumeric runs in title plus abstract.
std::uint64_t count_tokens(const DocumentRecord& record);

// Weeks numbered from Monday 2019-12-30 (week 1). Throws
// std::out_of_range for earlier dates.
int week_of(std::chrono::sys_days date);

// nullopt for anything that is not a valid YYYY-MM-DD calendar date.
std::optional<std::chrono::sys_days> parse_date(std::string_view text);

// Streaming JSON-Lines reader. One object per line with required
// string fields doc_id, date_added, title and optional abstract.
// Malformed lines and duplicate doc_ids are skipped with a warning and
// counted; reading never aborts mid-corpus.
class CorpusReader {
public:
    explicit CorpusReader(std::istream& stream);

    // Opens `path`; throws ParseError when the file cannot be read.
    explicit CorpusReader(const std::string& path);

    std::optional<DocumentRecord> next();

    std::uint64_t records_read() const { return records_read_; }
    std::uint64_t records_skipped() const { return records_skipped_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    std::unique_ptr<std::ifstream> owned_;
    std::istream& stream_;
    std::unordered_set<std::string> seen_ids_;
    std::vector<std::string> warnings_;
    std::uint64_t line_number_ = 0;
    std::uint64_t records_read_ = 0;
    std::uint64_t records_skipped_ = 0;
};

}  // namespace termvar

#endif  // TERMVAR_CORPUS_H_
