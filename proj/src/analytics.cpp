#include "termvar/analytics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>

namespace termvar {

namespace {

std::string format_fraction(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4f", value);
    return buffer;
}

void require_doc(const CorpusSummary& corpus, const std::string& doc_id) {
    if (!corpus.doc_week.count(doc_id)) {
        throw std::runtime_error("mention references doc_id '" + doc_id +
                                 "' absent from the corpus");
    }
}

// Region order: A, B, C, AB, AC, BC, ABC.
constexpr std::array<std::array<bool, 3>, 7> kRegionMembers = {{
    {true, false, false},
    {false, true, false},
    {false, false, true},
    {true, true, false},
    {true, false, true},
    {false, true, true},
    {true, true, true},
}};

}  // namespace

CorpusSummary summarize_corpus(CorpusReader& reader) {
    CorpusSummary summary;
    while (auto record = reader.next()) {
        const int week = week_of(record->date_added);
        summary.doc_week.emplace(record->doc_id, week);
        ++summary.docs_per_week[week];
        summary.total_tokens += record->token_count;
        ++summary.documents;
        if (summary.min_week == 0 || week < summary.min_week) summary.min_week = week;
        if (week > summary.max_week) summary.max_week = week;
    }
    return summary;
}

std::vector<TermStats> term_frequencies(const MentionIndex& index,
                                        const CorpusSummary& corpus) {
    std::map<std::pair<std::string, std::string>, TermStats> grouped;
    std::map<std::pair<std::string, std::string>, std::set<std::string>> docs;
    for (const Mention& mention : index.mentions) {
        require_doc(corpus, mention.doc_id);
        const int week = corpus.doc_week.at(mention.doc_id);
        auto [it, inserted] =
            grouped.try_emplace({mention.entity, mention.term_key});
        TermStats& stats = it->second;
        if (inserted) {
            stats.entity = mention.entity;
            stats.term_key = mention.term_key;
            stats.first_week = week;
        }
        ++stats.mention_count;
        stats.first_week = std::min(stats.first_week, week);
        docs[{mention.entity, mention.term_key}].insert(mention.doc_id);
    }
    std::vector<TermStats> result;
    result.reserve(grouped.size());
    for (auto& [id, stats] : grouped) {
        stats.document_count = docs.at(id).size();
        result.push_back(std::move(stats));
    }
    std::sort(result.begin(), result.end(), [](const TermStats& a, const TermStats& b) {
        if (a.entity != b.entity) return a.entity < b.entity;
        if (a.mention_count != b.mention_count) return a.mention_count > b.mention_count;
        return a.term_key < b.term_key;
    });
    return result;
}

std::span<const TermStats> entity_stats(const std::vector<TermStats>& stats,
                                        std::string_view entity) {
    const auto begin = std::find_if(stats.begin(), stats.end(), [&](const TermStats& s) {
        return s.entity == entity;
    });
    auto end = begin;
    while (end != stats.end() && end->entity == entity) ++end;
    return {begin, end};
}

std::vector<std::string> entities_in(const std::vector<TermStats>& stats) {
    std::vector<std::string> entities;
    for (const TermStats& s : stats) {
        if (entities.empty() || entities.back() != s.entity) entities.push_back(s.entity);
    }
    return entities;
}

std::vector<EntitySummary> entity_summaries(const std::vector<TermStats>& stats) {
    std::vector<EntitySummary> summaries;
    for (const std::string& entity : entities_in(stats)) {
        const auto slice = entity_stats(stats, entity);
        EntitySummary summary;
        summary.entity = entity;
        summary.unique_terms = slice.size();
        std::vector<std::uint64_t> counts;
        counts.reserve(slice.size());
        for (const TermStats& s : slice) {
            summary.total_mentions += s.mention_count;
            counts.push_back(s.mention_count);
        }
        std::sort(counts.begin(), counts.end());
        summary.mean = static_cast<double>(summary.total_mentions) /
                       static_cast<double>(counts.size());
        const std::size_t n = counts.size();
        summary.median = n % 2 == 1 ? static_cast<double>(counts[n / 2])
                                    : (static_cast<double>(counts[n / 2 - 1]) +
                                       static_cast<double>(counts[n / 2])) /
                                          2.0;
        summaries.push_back(std::move(summary));
    }
    return summaries;
}

double canonical_share(std::span<const TermStats> stats,
                       std::string_view canonical_key,
                       std::vector<std::string>* warnings) {
    std::uint64_t total = 0;
    std::uint64_t canonical = 0;
    for (const TermStats& s : stats) {
        total += s.mention_count;
        if (s.term_key == canonical_key) canonical = s.mention_count;
    }
    if (total == 0) throw std::runtime_error("canonical_share: no mentions");
    if (canonical == 0 && warnings) {
        warnings->push_back("canonical key '" + std::string(canonical_key) +
                            "' has no mentions");
    }
    return static_cast<double>(canonical) / static_cast<double>(total);
}

std::vector<std::pair<std::uint32_t, std::uint64_t>> rank_frequency(
    std::span<const TermStats> stats) {
    std::vector<std::pair<std::uint32_t, std::uint64_t>> ranks;
    ranks.reserve(stats.size());
    // stats are already in descending count order.
    for (std::size_t i = 0; i < stats.size(); ++i) {
        ranks.emplace_back(static_cast<std::uint32_t>(i + 1), stats[i].mention_count);
    }
    return ranks;
}

double loglog_slope(
    const std::vector<std::pair<std::uint32_t, std::uint64_t>>& rank_counts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const auto& [rank, count] : rank_counts) {
        if (count == 0) continue;
        const double x = std::log(static_cast<double>(rank));
        const double y = std::log(static_cast<double>(count));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return 0.0;
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    return denom == 0.0 ? 0.0 : (static_cast<double>(n) * sxy - sx * sy) / denom;
}

std::size_t coverage_at(std::span<const TermStats> stats, double p) {
    if (p <= 0.0 || p > 1.0) {
        throw std::invalid_argument("coverage fraction must be in (0, 1]");
    }
    std::uint64_t total = 0;
    for (const TermStats& s : stats) total += s.mention_count;
    std::uint64_t covered = 0;
    std::size_t k = 0;
    for (const TermStats& s : stats) {
        if (static_cast<double>(covered) >= p * static_cast<double>(total)) break;
        covered += s.mention_count;
        ++k;
    }
    return k;
}

std::vector<std::string> non_redundant_terms(std::span<const TermStats> stats) {
    std::vector<std::string> keys;
    for (const TermStats& term : stats) {
        bool redundant = false;
        for (const TermStats& other : stats) {
            if (other.mention_count <= term.mention_count) break;  // sorted desc
            if (term.term_key.find(other.term_key) != std::string::npos) {
                redundant = true;
                break;
            }
        }
        if (!redundant) keys.push_back(term.term_key);
    }
    return keys;
}

std::map<std::string, std::vector<std::pair<int, std::uint64_t>>>
unique_terms_over_time(const std::vector<TermStats>& stats,
                       const CorpusSummary& corpus) {
    std::map<std::string, std::vector<std::pair<int, std::uint64_t>>> series;
    if (stats.empty() || corpus.min_week == 0) return series;
    for (const std::string& entity : entities_in(stats)) {
        const auto slice = entity_stats(stats, entity);
        std::vector<std::pair<int, std::uint64_t>> points;
        points.reserve(static_cast<std::size_t>(corpus.max_week - corpus.min_week + 1));
        for (int week = corpus.min_week; week <= corpus.max_week; ++week) {
            std::uint64_t seen = 0;
            for (const TermStats& s : slice) {
                if (s.first_week <= week) ++seen;
            }
            points.emplace_back(week, seen);
        }
        series.emplace(entity, std::move(points));
    }
    return series;
}

std::map<std::string, std::vector<std::pair<int, double>>>
common_term_article_share(const MentionIndex& index, const CorpusSummary& corpus,
                          std::size_t k, ShareDenominator denominator) {
    if (k == 0) throw std::invalid_argument("k must be at least 1");
    const std::vector<TermStats> stats = term_frequencies(index, corpus);

    // doc -> entity -> keys used in that article.
    std::map<std::string, std::map<std::string, std::set<std::string>>> usage;
    for (const Mention& mention : index.mentions) {
        usage[mention.doc_id][mention.entity].insert(mention.term_key);
    }

    std::map<std::string, std::vector<std::pair<int, double>>> series;
    for (const std::string& entity : entities_in(stats)) {
        const auto slice = entity_stats(stats, entity);
        std::set<std::string> top_keys;
        for (std::size_t i = 0; i < slice.size() && i < k; ++i) {
            top_keys.insert(slice[i].term_key);
        }
        std::map<int, std::pair<std::uint64_t, std::uint64_t>> weekly;  // num, den
        if (denominator == ShareDenominator::all_articles) {
            for (const auto& [week, count] : corpus.docs_per_week) {
                weekly[week] = {0, count};
            }
        }
        for (const auto& [doc_id, by_entity] : usage) {
            const auto it = by_entity.find(entity);
            if (it == by_entity.end()) continue;
            const int week = corpus.doc_week.at(doc_id);
            auto& [num, den] = weekly[week];
            if (denominator == ShareDenominator::entity_articles) ++den;
            const bool uses_common = std::any_of(
                it->second.begin(), it->second.end(),
                [&](const std::string& key) { return top_keys.count(key) > 0; });
            if (uses_common) ++num;
        }
        std::vector<std::pair<int, double>> points;
        for (const auto& [week, counts] : weekly) {
            if (counts.second == 0) continue;
            points.emplace_back(week, static_cast<double>(counts.first) /
                                          static_cast<double>(counts.second));
        }
        series.emplace(entity, std::move(points));
    }
    return series;
}

VennReport compare_dictionaries(
    const std::vector<std::pair<std::string, const Lexicon*>>& dictionaries,
    const MentionIndex& index) {
    if (dictionaries.size() != 3) {
        throw std::invalid_argument("dictionary comparison requires exactly 3 inputs");
    }
    for (const auto& [name, lexicon] : dictionaries) {
        const auto conflicts = detect_entity_conflicts(*lexicon);
        if (!conflicts.empty()) {
            std::string message = "dictionary '" + name + "' has entity conflicts:";
            for (const auto& [key, entities] : conflicts) {
                message += " " + key;
            }
            throw std::runtime_error(message);
        }
    }

    std::set<std::string> attested;
    for (const Mention& mention : index.mentions) attested.insert(mention.term_key);

    VennReport report;
    std::set<std::string> entities;
    for (std::size_t i = 0; i < 3; ++i) {
        report.names[i] = dictionaries[i].first;
        for (const Entity& entity : dictionaries[i].second->entities()) {
            entities.insert(entity.id);
        }
    }

    for (const std::string& entity : entities) {
        std::array<std::set<std::string>, 3> sets;
        for (std::size_t i = 0; i < 3; ++i) {
            for (const Term& term : dictionaries[i].second->terms()) {
                if (term.entity == entity && attested.count(term.key)) {
                    sets[i].insert(term.key);
                }
            }
        }
        std::set<std::string> all;
        for (const auto& s : sets) all.insert(s.begin(), s.end());
        std::array<VennReport::Region, 7> regions;
        for (std::size_t r = 0; r < 7; ++r) regions[r].members = kRegionMembers[r];
        for (const std::string& key : all) {
            const std::array<bool, 3> membership = {sets[0].count(key) > 0,
                                                    sets[1].count(key) > 0,
                                                    sets[2].count(key) > 0};
            for (std::size_t r = 0; r < 7; ++r) {
                if (kRegionMembers[r] == membership) {
                    regions[r].keys.push_back(key);
                    break;
                }
            }
        }
        report.by_entity.emplace(entity, std::move(regions));
    }
    return report;
}

void write_term_stats_csv(const std::vector<TermStats>& stats, std::ostream& out) {
    out << "entity,term_key,mention_count,document_count,first_week\n";
    for (const TermStats& s : stats) {
        out << s.entity << ',' << s.term_key << ',' << s.mention_count << ','
            << s.document_count << ',' << s.first_week << '\n';
    }
}

void write_rank_frequency_csv(const std::vector<TermStats>& stats, std::ostream& out) {
    out << "entity,rank,mention_count\n";
    for (const std::string& entity : entities_in(stats)) {
        for (const auto& [rank, count] : rank_frequency(entity_stats(stats, entity))) {
            out << entity << ',' << rank << ',' << count << '\n';
        }
    }
}

void write_coverage_csv(const std::vector<TermStats>& stats,
                        const std::vector<double>& fractions, std::ostream& out) {
    out << "entity,p,terms_required\n";
    for (const std::string& entity : entities_in(stats)) {
        const auto slice = entity_stats(stats, entity);
        for (const double p : fractions) {
            out << entity << ',' << format_fraction(p) << ',' << coverage_at(slice, p)
                << '\n';
        }
    }
}

void write_nonredundant_csv(const std::vector<TermStats>& stats, std::ostream& out) {
    out << "entity,term_key,mention_count\n";
    for (const std::string& entity : entities_in(stats)) {
        const auto slice = entity_stats(stats, entity);
        for (const std::string& key : non_redundant_terms(slice)) {
            const auto it = std::find_if(slice.begin(), slice.end(), [&](const TermStats& s) {
                return s.term_key == key;
            });
            out << entity << ',' << key << ',' << it->mention_count << '\n';
        }
    }
}

void write_weekly_unique_csv(
    const std::map<std::string, std::vector<std::pair<int, std::uint64_t>>>& series,
    std::ostream& out) {
    out << "entity,week,cumulative_unique_terms\n";
    for (const auto& [entity, points] : series) {
        for (const auto& [week, count] : points) {
            out << entity << ',' << week << ',' << count << '\n';
        }
    }
}

void write_weekly_share_csv(
    const std::vector<std::pair<
        std::size_t, std::map<std::string, std::vector<std::pair<int, double>>>>>&
        series_by_k,
    std::ostream& out) {
    out << "entity,week,k,share\n";
    std::set<std::string> entities;
    for (const auto& [k, series] : series_by_k) {
        for (const auto& [entity, points] : series) entities.insert(entity);
    }
    for (const std::string& entity : entities) {
        for (const auto& [k, series] : series_by_k) {
            const auto it = series.find(entity);
            if (it == series.end()) continue;
            for (const auto& [week, share] : it->second) {
                out << entity << ',' << week << ',' << k << ','
                    << format_fraction(share) << '\n';
            }
        }
    }
}

void write_venn_csv(const VennReport& report, std::ostream& out) {
    out << "entity,in_a,in_b,in_c,count\n";
    for (const auto& [entity, regions] : report.by_entity) {
        for (const VennReport::Region& region : regions) {
            out << entity << ',' << region.members[0] << ',' << region.members[1]
                << ',' << region.members[2] << ',' << region.keys.size() << '\n';
        }
    }
}

void write_venn_audit_csv(const VennReport& report, std::ostream& out) {
    out << "entity,in_a,in_b,in_c,term_key\n";
    for (const auto& [entity, regions] : report.by_entity) {
        for (const VennReport::Region& region : regions) {
            for (const std::string& key : region.keys) {
                out << entity << ',' << region.members[0] << ',' << region.members[1]
                    << ',' << region.members[2] << ',' << key << '\n';
            }
        }
    }
}

}  // namespace termvar
