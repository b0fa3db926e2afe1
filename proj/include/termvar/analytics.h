#ifndef TERMVAR_ANALYTICS_H_
#define TERMVAR_ANALYTICS_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "termvar/corpus.h"
#include "termvar/lexicon.h"
#include "termvar/tagger.h"

namespace termvar {

struct TermStats {
    std::string entity;
    std::string term_key;
    std::uint64_t mention_count = 0;
    std::uint64_t document_count = 0;
    int first_week = 0;
};

// Per-document metadata needed by the analytics; built in one
// streaming pass over the corpus.
struct CorpusSummary {
    std::unordered_map<std::string, int> doc_week;
    std::map<int, std::uint64_t> docs_per_week;
    int min_week = 0;  // 0 when the corpus is empty
    int max_week = 0;
    std::uint64_t documents = 0;
    std::uint64_t total_tokens = 0;
};

CorpusSummary summarize_corpus(CorpusReader& reader);

// One TermStats per attested (entity, key), sorted by entity, then
// descending mention_count, then key. Throws when a mention references
// a doc_id missing from the corpus.
std::vector<TermStats> term_frequencies(const MentionIndex& index,
                                        const CorpusSummary& corpus);

// Contiguous slice of `stats` (sorted as above) for one entity.
std::span<const TermStats> entity_stats(const std::vector<TermStats>& stats,
                                        std::string_view entity);

std::vector<std::string> entities_in(const std::vector<TermStats>& stats);

struct EntitySummary {
    std::string entity;
    std::uint64_t unique_terms = 0;
    std::uint64_t total_mentions = 0;
    double mean = 0.0;
    double median = 0.0;
};

std::vector<EntitySummary> entity_summaries(const std::vector<TermStats>& stats);

// Fraction of the entity's mentions carried by `canonical_key`; 0 when
// absent (with a warning). Throws when the slice has no mentions.
double canonical_share(std::span<const TermStats> stats,
                       std::string_view canonical_key,
                       std::vector<std::string>* warnings = nullptr);

// Ranks 1..n in descending count order.
std::vector<std::pair<std::uint32_t, std::uint64_t>> rank_frequency(
    std::span<const TermStats> stats);

// Least-squares slope of log(count) against log(rank).
double loglog_slope(
    const std::vector<std::pair<std::uint32_t, std::uint64_t>>& rank_counts);

// Minimal number of most-frequent terms covering at least fraction p
// of the entity's mentions. Requires 0 < p <= 1.
std::size_t coverage_at(std::span<const TermStats> stats, double p);

// A term is redundant iff a strictly more frequent term of the same
// entity is a contiguous substring of its key. Descending count order.
std::vector<std::string> non_redundant_terms(std::span<const TermStats> stats);

// Per entity: (week, number of distinct keys first seen on or before
// that week) for every corpus week; non-decreasing.
std::map<std::string, std::vector<std::pair<int, std::uint64_t>>>
unique_terms_over_time(const std::vector<TermStats>& stats,
                       const CorpusSummary& corpus);

enum class ShareDenominator { entity_articles, all_articles };

// Per entity: weekly fraction of articles that mention the entity via
// one of its k globally most frequent terms. Weeks with a zero
// denominator are omitted.
std::map<std::string, std::vector<std::pair<int, double>>>
common_term_article_share(const MentionIndex& index, const CorpusSummary& corpus,
                          std::size_t k,
                          ShareDenominator denominator =
                              ShareDenominator::entity_articles);

// 3-set decomposition over corpus-attested keys, per entity. Region
// order is fixed: A, B, C, AB, AC, BC, ABC.
struct VennReport {
    struct Region {
        std::array<bool, 3> members{};
        std::vector<std::string> keys;  // sorted
    };
    std::array<std::string, 3> names;
    std::map<std::string, std::array<Region, 7>> by_entity;
};

// Requires exactly 3 conflict-free dictionaries. Attestation is
// key-level: a key counts as attested when the index holds at least
// one resolved mention of it.
VennReport compare_dictionaries(
    const std::vector<std::pair<std::string, const Lexicon*>>& dictionaries,
    const MentionIndex& index);

// CSV emitters; fractions use 4 decimal places.
void write_term_stats_csv(const std::vector<TermStats>& stats, std::ostream& out);
void write_rank_frequency_csv(const std::vector<TermStats>& stats, std::ostream& out);
void write_coverage_csv(const std::vector<TermStats>& stats,
                        const std::vector<double>& fractions, std::ostream& out);
void write_nonredundant_csv(const std::vector<TermStats>& stats, std::ostream& out);
void write_weekly_unique_csv(
    const std::map<std::string, std::vector<std::pair<int, std::uint64_t>>>& series,
    std::ostream& out);
void write_weekly_share_csv(
    const std::vector<std::pair<
        std::size_t, std::map<std::string, std::vector<std::pair<int, double>>>>>&
        series_by_k,
    std::ostream& out);
void write_venn_csv(const VennReport& report, std::ostream& out);
void write_venn_audit_csv(const VennReport& report, std::ostream& out);

}  // namespace termvar

#endif  // TERMVAR_ANALYTICS_H_
