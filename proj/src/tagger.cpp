#include "termvar/tagger.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <thread>

#include "termvar/unicode.h"

namespace termvar {

namespace {

bool mention_order(const Mention& a, const Mention& b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.end != b.end) return a.end > b.end;  // longest first
    if (a.term_key != b.term_key) return a.term_key < b.term_key;
    return a.entity < b.entity;
}

bool index_order(const Mention& a, const Mention& b) {
    if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
    if (a.field != b.field) return a.field < b.field;
    if (a.start != b.start) return a.start < b.start;
    return a.end < b.end;
}

void warn(std::vector<std::string>* warnings, std::string message) {
    if (warnings) warnings->push_back(std::move(message));
}

// Moves `pos` forward to the next UTF-8 character boundary.
std::size_t snap_forward(std::string_view text, std::size_t pos) {
    while (pos < text.size() &&
           (static_cast<unsigned char>(text[pos]) & 0xC0) == 0x80) {
        ++pos;
    }
    return pos;
}

std::string escape_surface(std::string_view surface) {
    std::string out;
    out.reserve(surface.size());
    for (const char c : surface) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string unescape_surface(std::string_view text, std::size_t line) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '\\') {
            out.push_back(text[i]);
            continue;
        }
        if (i + 1 >= text.size()) throw ParseError("dangling escape", line);
        switch (text[++i]) {
            case '\\': out.push_back('\\'); break;
            case 't': out.push_back('\t'); break;
            case 'n': out.push_back('\n'); break;
            case 'r': out.push_back('\r'); break;
            default: throw ParseError("unknown escape sequence", line);
        }
    }
    return out;
}

std::vector<std::string_view> split_tabs(std::string_view text) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = text.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(text.substr(start));
            return fields;
        }
        fields.push_back(text.substr(start, tab - start));
        start = tab + 1;
    }
}

const std::string& field_text(const DocumentRecord& doc, Field field) {
    return field == Field::title ? doc.title : doc.abstract;
}

std::size_t parse_offset(std::string_view text, std::size_t line) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError("offset must be a non-negative integer", line);
    }
    return value;
}

void tag_field(const Matcher& matcher, std::string_view text,
               const std::string& doc_id, Field field,
               std::vector<Mention>& out) {
    if (text.empty()) return;
    const OffsetMap map = normalize_with_offsets(text);
    std::vector<Mention> resolved =
        resolve_spans(raw_matches(matcher, map, text, doc_id, field));
    out.insert(out.end(), std::make_move_iterator(resolved.begin()),
               std::make_move_iterator(resolved.end()));
}

}  // namespace

std::string_view to_string(Field field) {
    return field == Field::title ? "title" : "abstract";
}

OffsetMap normalize_with_offsets(std::string_view text) {
    OffsetMap map;
    map.normalized.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        const uni::Decoded d = uni::decode_utf8(text, pos);
        const std::size_t next = pos + d.length;
        if (uni::is_alnum(d.code)) {
            uni::encode_utf8(uni::fold(d.code), map.normalized);
            map.spans.resize(map.normalized.size(), ByteSpan{pos, next});
        }
        pos = next;
    }
    return map;
}

std::vector<Mention> raw_matches(const Matcher& matcher, const OffsetMap& map,
                                 std::string_view original,
                                 std::string_view doc_id, Field field) {
    std::vector<Mention> candidates;
    const auto& spans = map.spans;
    matcher.scan(map.normalized, [&](std::uint32_t key_index, std::size_t end) {
        const Matcher::KeyEntry& entry = matcher.keys()[key_index];
        const std::size_t start = end - entry.key.size();
        // The match may not begin or end inside a maximal alphanumeric
        // run of the original text; adjacent characters of one run have
        // contiguous byte spans.
        if (start > 0 && spans[start - 1].end >= spans[start].begin) return;
        if (end < spans.size() && spans[end].begin <= spans[end - 1].end) return;
        const std::size_t byte_start = spans[start].begin;
        const std::size_t byte_end = spans[end - 1].end;
        for (const std::string& entity : entry.entities) {
            Mention mention;
            mention.doc_id = std::string(doc_id);
            mention.field = field;
            mention.start = byte_start;
            mention.end = byte_end;
            mention.surface = std::string(original.substr(byte_start, byte_end - byte_start));
            mention.term_key = entry.key;
            mention.entity = entity;
            candidates.push_back(std::move(mention));
        }
    });
    std::sort(candidates.begin(), candidates.end(), mention_order);
    return candidates;
}

std::vector<Mention> resolve_spans(std::vector<Mention> candidates) {
    std::sort(candidates.begin(), candidates.end(), mention_order);

    // Pass 1: drop spans strictly contained in any candidate span, and
    // collapse identical spans onto the first in (key, entity) order.
    std::vector<Mention> survivors;
    std::size_t max_end_before = 0;  // over candidates with strictly smaller start
    bool have_before = false;
    std::size_t group_start = 0, group_max_end = 0;
    bool in_group = false;
    std::size_t last_start = 0, last_end = 0;
    bool have_last = false;
    for (Mention& mention : candidates) {
        if (!in_group || mention.start != group_start) {
            if (in_group) {
                max_end_before = std::max(max_end_before, group_max_end);
                have_before = true;
            }
            group_start = mention.start;
            group_max_end = mention.end;  // first of the group is longest
            in_group = true;
        }
        if (have_before && max_end_before >= mention.end) continue;
        if (mention.end < group_max_end) continue;
        if (have_last && mention.start == last_start && mention.end == last_end) {
            continue;
        }
        last_start = mention.start;
        last_end = mention.end;
        have_last = true;
        survivors.push_back(std::move(mention));
    }

    // Pass 2: leftmost-longest sweep over the survivors.
    std::vector<Mention> resolved;
    std::size_t covered_end = 0;
    bool covering = false;
    for (Mention& mention : survivors) {
        if (covering && mention.start < covered_end) continue;
        covered_end = mention.end;
        covering = true;
        resolved.push_back(std::move(mention));
    }
    return resolved;
}

MentionIndex tag_corpus(const Matcher& matcher, CorpusReader& reader,
                        unsigned jobs) {
    MentionIndex index;
    if (jobs == 0) jobs = 1;
    constexpr std::size_t kChunk = 512;

    std::vector<DocumentRecord> batch;
    batch.reserve(kChunk);
    for (;;) {
        batch.clear();
        while (batch.size() < kChunk) {
            auto record = reader.next();
            if (!record) break;
            batch.push_back(std::move(*record));
        }
        if (batch.empty()) break;

        std::vector<std::vector<Mention>> results(batch.size());
        const auto worker = [&](std::atomic<std::size_t>& cursor) {
            for (;;) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= batch.size()) return;
                tag_field(matcher, batch[i].title, batch[i].doc_id, Field::title,
                          results[i]);
                tag_field(matcher, batch[i].abstract, batch[i].doc_id,
                          Field::abstract, results[i]);
            }
        };
        std::atomic<std::size_t> cursor{0};
        if (jobs == 1 || batch.size() == 1) {
            worker(cursor);
        } else {
            std::vector<std::thread> threads;
            const unsigned n = std::min<std::size_t>(jobs, batch.size());
            threads.reserve(n);
            for (unsigned t = 0; t < n; ++t) threads.emplace_back(worker, std::ref(cursor));
            for (std::thread& t : threads) t.join();
        }
        for (std::vector<Mention>& result : results) {
            index.mentions.insert(index.mentions.end(),
                                  std::make_move_iterator(result.begin()),
                                  std::make_move_iterator(result.end()));
        }
        index.documents += batch.size();
    }
    index.documents_skipped = reader.records_skipped();
    std::sort(index.mentions.begin(), index.mentions.end(), index_order);
    return index;
}

Lexicon filter_unattested(const Lexicon& candidates, const MentionIndex& index,
                          std::vector<std::string>* warnings) {
    std::set<std::pair<std::string, std::string>> attested;  // (entity, key)
    for (const Mention& mention : index.mentions) {
        attested.emplace(mention.entity, mention.term_key);
    }
    Lexicon filtered;
    for (const Entity& entity : candidates.entities()) filtered.add_entity(entity);
    for (const Term& term : candidates.terms()) {
        if (attested.count({term.entity, term.key})) filtered.add_term(term);
    }
    if (filtered.terms().empty()) {
        warn(warnings, "no candidate term is attested in the corpus");
    }
    return filtered;
}

std::vector<Snippet> export_review_samples(
    const MentionIndex& index,
    const std::unordered_map<std::string, DocumentRecord>& documents,
    std::string_view term_key, std::size_t k, std::uint64_t seed,
    std::vector<std::string>* warnings) {
    constexpr std::size_t kContextBytes = 80;

    std::vector<const Mention*> hits;
    for (const Mention& mention : index.mentions) {
        if (mention.term_key == term_key) hits.push_back(&mention);
    }
    if (hits.empty()) {
        warn(warnings, "no mentions for key '" + std::string(term_key) + "'");
        return {};
    }

    std::vector<std::size_t> chosen(hits.size());
    for (std::size_t i = 0; i < chosen.size(); ++i) chosen[i] = i;
    if (hits.size() > k) {
        // Partial Fisher-Yates; engine output used directly so the
        // selection is identical across standard libraries.
        std::mt19937_64 rng(seed);
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng() % (chosen.size() - i));
            std::swap(chosen[i], chosen[j]);
        }
        chosen.resize(k);
        std::sort(chosen.begin(), chosen.end());
    }

    std::vector<Snippet> snippets;
    snippets.reserve(chosen.size());
    for (const std::size_t i : chosen) {
        const Mention& mention = *hits[i];
        const auto doc = documents.find(mention.doc_id);
        if (doc == documents.end()) {
            warn(warnings, "mention references unknown doc_id '" + mention.doc_id + "'");
            continue;
        }
        const std::string& text = field_text(doc->second, mention.field);
        const std::size_t from =
            snap_forward(text, mention.start >= kContextBytes
                                   ? mention.start - kContextBytes
                                   : 0);
        const std::size_t to = snap_forward(
            text, std::min(text.size(), mention.end + kContextBytes));
        std::string snippet;
        snippet.append(text.substr(from, mention.start - from));
        snippet.append("[[");
        snippet.append(text.substr(mention.start, mention.end - mention.start));
        snippet.append("]]");
        snippet.append(text.substr(mention.end, to - mention.end));
        for (char& c : snippet) {
            if (c == '\n' || c == '\r' || c == '\t') c = ' ';
        }
        snippets.push_back({mention.doc_id, mention.field, std::move(snippet)});
    }
    return snippets;
}

void write_mentions_tsv(const MentionIndex& index, std::ostream& out) {
    for (const Mention& mention : index.mentions) {
        out << mention.doc_id << '\t' << to_string(mention.field) << '\t'
            << mention.start << '\t' << mention.end << '\t'
            << escape_surface(mention.surface) << '\t' << mention.term_key << '\t'
            << mention.entity << '\n';
    }
}

MentionIndex read_mentions_tsv(std::istream& in) {
    MentionIndex index;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto fields = split_tabs(line);
        if (fields.size() != 7) {
            throw ParseError("expected 7 tab-separated columns", line_number);
        }
        Mention mention;
        mention.doc_id = std::string(fields[0]);
        if (fields[1] == "title") {
            mention.field = Field::title;
        } else if (fields[1] == "abstract") {
            mention.field = Field::abstract;
        } else {
            throw ParseError("unknown field '" + std::string(fields[1]) + "'",
                             line_number);
        }
        mention.start = parse_offset(fields[2], line_number);
        mention.end = parse_offset(fields[3], line_number);
        if (mention.start >= mention.end) {
            throw ParseError("mention span must be non-empty", line_number);
        }
        mention.surface = unescape_surface(fields[4], line_number);
        mention.term_key = std::string(fields[5]);
        mention.entity = std::string(fields[6]);
        if (mention.term_key.empty() || mention.entity.empty()) {
            throw ParseError("term_key and entity must be non-empty", line_number);
        }
        index.mentions.push_back(std::move(mention));
    }
    std::sort(index.mentions.begin(), index.mentions.end(), index_order);
    return index;
}

MentionIndex read_mentions_file(const std::string& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) throw ParseError("cannot open mentions file '" + path + "'");
    return read_mentions_tsv(stream);
}

}  // namespace termvar
