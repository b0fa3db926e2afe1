#ifndef TERMVAR_GENERATOR_H_
#define TERMVAR_GENERATOR_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "termvar/lexicon.h"
#include "termvar/rules.h"

namespace termvar {

// Thrown when expansion exceeds a configured limit.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(std::string limit)
        : std::runtime_error("capacity exceeded: " + limit),
          limit_(std::move(limit)) {}

    const std::string& limit() const { return limit_; }

private:
    std::string limit_;
};

// One rewritten term per occurrence site of the rule's phrase in the
// term's token sequence (token-boundary, case/punctuation-insensitive);
// bidirectional rules also rewrite rhs back to lhs. Empty when no site
// matches.
std::vector<Term> apply_substitution(const Term& term, const SubstitutionRule& rule);

// Attaches the affix (single-space join) and moves the term to the
// rule's target entity. nullopt when the term's entity is not the
// rule's source entity.
std::optional<Term> apply_expansion(const Term& term, const ExpansionRule& rule);

// Breadth-first closure of the seed lexicon under the rule set,
// deduplicated by (entity, key), each rule id applied at most
// limits.max_rule_applications_per_derivation times per derivation.
// Output is sorted by (entity, key). Throws CapacityError past
// limits.max_candidates.
Lexicon expand_fixpoint(const Lexicon& seed, const RuleSet& rules);

}  // namespace termvar

#endif  // TERMVAR_GENERATOR_H_
