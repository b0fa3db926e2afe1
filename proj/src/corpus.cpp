#include "termvar/corpus.h"

#include <charconv>
#include <stdexcept>

#include <json.hpp>

#include "termvar/lexicon.h"
#include "termvar/unicode.h"

namespace termvar {

namespace {

// Monday 2019-12-30.
constexpr std::chrono::sys_days week_epoch() {
    using namespace std::chrono;
    return sys_days{year{2019} / December / 30};
}

bool parse_int(std::string_view text, int& value) {
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

std::uint64_t count_tokens(const DocumentRecord& record) {
    return uni::alnum_runs(record.title).size() +
           uni::alnum_runs(record.abstract).size();
}

int week_of(std::chrono::sys_days date) {
    const auto days = (date - week_epoch()).count();
    if (days < 0) {
        throw std::out_of_range("date precedes the week-1 epoch (2019-12-30)");
    }
    return 1 + static_cast<int>(days / 7);
}

std::optional<std::chrono::sys_days> parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    int y = 0, m = 0, d = 0;
    if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) ||
        !parse_int(text.substr(8, 2), d)) {
        return std::nullopt;
    }
    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)},
                             day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    return sys_days{ymd};
}

CorpusReader::CorpusReader(std::istream& stream) : stream_(stream) {}

CorpusReader::CorpusReader(const std::string& path)
    : owned_(std::make_unique<std::ifstream>(path, std::ios::binary)),
      stream_(*owned_) {
    if (!*owned_) throw ParseError("cannot open corpus file '" + path + "'");
}

std::optional<DocumentRecord> CorpusReader::next() {
    std::string line;
    while (std::getline(stream_, line)) {
        ++line_number_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        const auto skip = [&](const std::string& why) {
            ++records_skipped_;
            warnings_.push_back("line " + std::to_string(line_number_) + ": " + why);
        };

        const nlohmann::json doc = nlohmann::json::parse(line, nullptr, false);
        if (doc.is_discarded() || !doc.is_object()) {
            skip("not a JSON object, record skipped");
            continue;
        }

        DocumentRecord record;
        bool valid = true;
        for (const char* field : {"doc_id", "date_added", "title"}) {
            if (!doc.contains(field) || !doc[field].is_string()) {
                skip(std::string("missing string field '") + field + "', record skipped");
                valid = false;
                break;
            }
        }
        if (!valid) continue;

        record.doc_id = doc["doc_id"].get<std::string>();
        record.date_string = doc["date_added"].get<std::string>();
        record.title = doc["title"].get<std::string>();
        if (doc.contains("abstract")) {
            if (!doc["abstract"].is_string()) {
                skip("field 'abstract' must be a string, record skipped");
                continue;
            }
            record.abstract = doc["abstract"].get<std::string>();
        }
        if (record.doc_id.empty()) {
            skip("empty doc_id, record skipped");
            continue;
        }
        const auto date = parse_date(record.date_string);
        if (!date) {
            skip("date_added '" + record.date_string + "' is not YYYY-MM-DD, record skipped");
            continue;
        }
        record.date_added = *date;
        if (!seen_ids_.insert(record.doc_id).second) {
            skip("duplicate doc_id '" + record.doc_id + "', record skipped");
            continue;
        }
        record.token_count = count_tokens(record);
        ++records_read_;
        return record;
    }
    return std::nullopt;
}

}  // namespace termvar
