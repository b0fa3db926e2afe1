#include "termvar/rules.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

namespace termvar {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

bool entity_known(const std::vector<Entity>& entities, std::string_view id) {
    return std::any_of(entities.begin(), entities.end(),
                       [&](const Entity& e) { return e.id == id; });
}

Relation parse_relation(std::string_view text, std::size_t line) {
    if (text == "synonym") return Relation::synonym;
    if (text == "near_synonym") return Relation::near_synonym;
    if (text == "hypernym") return Relation::hypernym;
    throw ParseError("unknown relation '" + std::string(text) + "'", line);
}

std::uint64_t parse_count(std::string_view text, std::size_t line) {
    std::uint64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
        throw ParseError("limit value must be a positive integer", line);
    }
    return value;
}

}  // namespace

std::string_view to_string(Relation relation) {
    switch (relation) {
        case Relation::synonym: return "synonym";
        case Relation::near_synonym: return "near_synonym";
        case Relation::hypernym: return "hypernym";
    }
    return "synonym";
}

RuleSet parse_ruleset(std::istream& stream, const std::vector<Entity>& entities) {
    RuleSet rules;
    std::set<std::string> seen_ids;
    std::string line;
    std::size_t line_number = 0;

    const auto check_id = [&](std::string_view id, std::size_t at) {
        if (id.empty()) throw ParseError("rule id must be non-empty", at);
        if (!seen_ids.insert(std::string(id)).second) {
            throw ParseError("duplicate rule id '" + std::string(id) + "'", at);
        }
    };

    while (std::getline(stream, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto fields = split_tabs(line);

        if (fields[0] == "sub") {
            if (fields.size() != 6) {
                throw ParseError("substitution line needs 6 columns", line_number);
            }
            SubstitutionRule rule;
            check_id(fields[1], line_number);
            rule.id = std::string(fields[1]);
            rule.lhs = std::string(fields[2]);
            rule.rhs = std::string(fields[3]);
            rule.relation = parse_relation(fields[4], line_number);
            if (fields[5] == "bidir") {
                rule.bidirectional = true;
            } else if (fields[5] == "uni") {
                rule.bidirectional = false;
            } else {
                throw ParseError("direction must be 'bidir' or 'uni'", line_number);
            }
            const std::string lhs_key = normalize(rule.lhs);
            const std::string rhs_key = normalize(rule.rhs);
            if (lhs_key.empty() || rhs_key.empty()) {
                throw ParseError("substitution phrases must be non-empty", line_number);
            }
            if (lhs_key == rhs_key) {
                throw ParseError("substitution sides equal after normalization",
                                 line_number);
            }
            rules.substitutions.push_back(std::move(rule));
        } else if (fields[0] == "exp") {
            if (fields.size() != 6) {
                throw ParseError("expansion line needs 6 columns", line_number);
            }
            ExpansionRule rule;
            check_id(fields[1], line_number);
            rule.id = std::string(fields[1]);
            rule.affix = std::string(fields[2]);
            if (normalize(rule.affix).empty()) {
                throw ParseError("affix must contain an alphanumeric character",
                                 line_number);
            }
            if (fields[3] == "prefix") {
                rule.position = AffixPosition::prefix;
            } else if (fields[3] == "suffix") {
                rule.position = AffixPosition::suffix;
            } else {
                throw ParseError("position must be 'prefix' or 'suffix'", line_number);
            }
            rule.source_entity = std::string(fields[4]);
            rule.target_entity = std::string(fields[5]);
            if (!entity_known(entities, rule.source_entity)) {
                throw ParseError("unknown entity id '" + rule.source_entity + "'",
                                 line_number);
            }
            if (!entity_known(entities, rule.target_entity)) {
                throw ParseError("unknown entity id '" + rule.target_entity + "'",
                                 line_number);
            }
            rules.expansions.push_back(std::move(rule));
        } else if (fields[0] == "limit") {
            if (fields.size() != 3) {
                throw ParseError("limit line needs 3 columns", line_number);
            }
            const std::uint64_t value = parse_count(fields[2], line_number);
            if (fields[1] == "max_rule_applications_per_derivation") {
                rules.limits.max_rule_applications_per_derivation =
                    static_cast<std::uint32_t>(value);
            } else if (fields[1] == "max_term_tokens") {
                rules.limits.max_term_tokens = static_cast<std::uint32_t>(value);
            } else if (fields[1] == "max_candidates") {
                rules.limits.max_candidates = value;
            } else {
                throw ParseError("unknown limit '" + std::string(fields[1]) + "'",
                                 line_number);
            }
        } else {
            throw ParseError("unknown rule type '" + std::string(fields[0]) + "'",
                             line_number);
        }
    }
    return rules;
}

RuleSet parse_ruleset_file(const std::string& path,
                           const std::vector<Entity>& entities) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) throw ParseError("cannot open rules file '" + path + "'");
    return parse_ruleset(stream, entities);
}

}  // namespace termvar
