#include "termvar/generator.h"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "termvar/unicode.h"

namespace termvar {

namespace {

struct TokenizedPhrase {
    std::vector<uni::Run> runs;        // byte ranges in the source string
    std::vector<std::string> folded;   // normalized text per token
};

TokenizedPhrase tokenize(std::string_view text) {
    TokenizedPhrase result;
    result.runs = uni::alnum_runs(text);
    result.folded.reserve(result.runs.size());
    for (const uni::Run& run : result.runs) {
        result.folded.push_back(normalize(text.substr(run.begin, run.end - run.begin)));
    }
    return result;
}

// Replaces the token span [first, last] of `surface` with `replacement`,
// keeping the surrounding text (including punctuation) verbatim.
std::string splice(std::string_view surface, const std::vector<uni::Run>& runs,
                   std::size_t first, std::size_t last,
                   std::string_view replacement) {
    std::string out;
    out.reserve(surface.size() + replacement.size());
    out.append(surface.substr(0, runs[first].begin));
    out.append(replacement);
    out.append(surface.substr(runs[last].end));
    return out;
}

void rewrite_sites(const Term& term, const TokenizedPhrase& tokens,
                   const std::vector<std::string>& pattern,
                   std::string_view replacement, const std::string& rule_id,
                   std::vector<Term>& out) {
    if (pattern.empty() || tokens.folded.size() < pattern.size()) return;
    for (std::size_t i = 0; i + pattern.size() <= tokens.folded.size(); ++i) {
        if (!std::equal(pattern.begin(), pattern.end(), tokens.folded.begin() + i)) {
            continue;
        }
        Term rewritten;
        rewritten.surface = splice(term.surface, tokens.runs, i,
                                   i + pattern.size() - 1, replacement);
        rewritten.entity = term.entity;
        rewritten.provenance = Provenance::generated;
        rewritten.derivation = term.derivation;
        rewritten.derivation.push_back(rule_id);
        rewritten.key = normalize(rewritten.surface);
        out.push_back(std::move(rewritten));
    }
}

std::vector<std::string> fold_phrase(std::string_view phrase) {
    std::vector<std::string> folded;
    for (const uni::Run& run : uni::alnum_runs(phrase)) {
        folded.push_back(normalize(phrase.substr(run.begin, run.end - run.begin)));
    }
    return folded;
}

std::size_t rule_uses(const std::vector<std::string>& derivation,
                      const std::string& rule_id) {
    return static_cast<std::size_t>(
        std::count(derivation.begin(), derivation.end(), rule_id));
}

}  // namespace

std::vector<Term> apply_substitution(const Term& term, const SubstitutionRule& rule) {
    const TokenizedPhrase tokens = tokenize(term.surface);
    std::vector<Term> out;
    rewrite_sites(term, tokens, fold_phrase(rule.lhs), rule.rhs, rule.id, out);
    if (rule.bidirectional) {
        rewrite_sites(term, tokens, fold_phrase(rule.rhs), rule.lhs, rule.id, out);
    }
    // Distinct sites can collide on the same surface; keep one of each.
    std::unordered_set<std::string> seen;
    std::erase_if(out, [&](const Term& t) { return !seen.insert(t.surface).second; });
    return out;
}

std::optional<Term> apply_expansion(const Term& term, const ExpansionRule& rule) {
    if (term.entity != rule.source_entity) return std::nullopt;
    Term expanded;
    expanded.surface = rule.position == AffixPosition::prefix
                           ? rule.affix + " " + term.surface
                           : term.surface + " " + rule.affix;
    expanded.entity = rule.target_entity;
    expanded.provenance = Provenance::generated;
    expanded.derivation = term.derivation;
    expanded.derivation.push_back(rule.id);
    expanded.key = normalize(expanded.surface);
    return expanded;
}

Lexicon expand_fixpoint(const Lexicon& seed, const RuleSet& rules) {
    const GenerationLimits& limits = rules.limits;

    std::vector<Term> accepted;
    std::unordered_map<std::string, std::unordered_set<std::string>> seen;  // entity -> keys
    std::deque<std::size_t> frontier;

    const auto accept = [&](Term term) {
        if (!seen[term.entity].insert(term.key).second) return;
        if (accepted.size() >= limits.max_candidates) {
            throw CapacityError("max_candidates");
        }
        frontier.push_back(accepted.size());
        accepted.push_back(std::move(term));
    };

    for (const Term& term : seed.terms()) accept(term);

    const auto consider = [&](Term&& candidate) {
        if (uni::alnum_runs(candidate.surface).size() > limits.max_term_tokens) return;
        accept(std::move(candidate));
    };

    while (!frontier.empty()) {
        const std::size_t index = frontier.front();
        frontier.pop_front();
        // accepted may reallocate while we append; copy the term out.
        const Term term = accepted[index];

        for (const SubstitutionRule& rule : rules.substitutions) {
            if (rule_uses(term.derivation, rule.id) >=
                limits.max_rule_applications_per_derivation) {
                continue;
            }
            for (Term& rewritten : apply_substitution(term, rule)) {
                consider(std::move(rewritten));
            }
        }
        for (const ExpansionRule& rule : rules.expansions) {
            if (rule_uses(term.derivation, rule.id) >=
                limits.max_rule_applications_per_derivation) {
                continue;
            }
            if (auto expanded = apply_expansion(term, rule)) {
                consider(std::move(*expanded));
            }
        }
    }

    std::sort(accepted.begin(), accepted.end(), [](const Term& a, const Term& b) {
        if (a.entity != b.entity) return a.entity < b.entity;
        return a.key < b.key;
    });

    Lexicon out;
    for (const Entity& entity : seed.entities()) out.add_entity(entity);
    for (Term& term : accepted) out.add_term(std::move(term));
    return out;
}

}  // namespace termvar
