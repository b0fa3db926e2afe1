#ifndef TERMVAR_RULES_H_
#define TERMVAR_RULES_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "termvar/lexicon.h"

namespace termvar {

enum class Relation { synonym, near_synonym, hypernym };

std::string_view to_string(Relation relation);

// Rewrites one token-aligned site of a term, same entity.
struct SubstitutionRule {
    std::string id;
    std::string lhs;
    std::string rhs;
    Relation relation = Relation::synonym;
    bool bidirectional = false;
};

enum class AffixPosition { prefix, suffix };

// Attaches an affix phrase and maps the term onto the target entity
// (equal to the source entity for same-entity rules).
struct ExpansionRule {
    std::string id;
    std::string affix;
    AffixPosition position = AffixPosition::suffix;
    std::string source_entity;
    std::string target_entity;
};

struct GenerationLimits {
    std::uint32_t max_rule_applications_per_derivation = 1;
    std::uint32_t max_term_tokens = 12;
    std::uint64_t max_candidates = 500000;
};

struct RuleSet {
    std::vector<SubstitutionRule> substitutions;
    std::vector<ExpansionRule> expansions;
    GenerationLimits limits;
};

// Rules TSV: `sub<TAB>id<TAB>lhs<TAB>rhs<TAB>relation<TAB>bidir|uni`,
// `exp<TAB>id<TAB>affix<TAB>prefix|suffix<TAB>source<TAB>target`, and
// `limit<TAB>name<TAB>value` overrides. Entity ids are validated
// against `entities`.
RuleSet parse_ruleset(std::istream& stream, const std::vector<Entity>& entities);
RuleSet parse_ruleset_file(const std::string& path,
                           const std::vector<Entity>& entities);

}  // namespace termvar

#endif  // TERMVAR_RULES_H_
