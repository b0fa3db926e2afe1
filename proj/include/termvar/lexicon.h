#ifndef TERMVAR_LEXICON_H_
#define TERMVAR_LEXICON_H_

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace termvar {

// Raised for any malformed input file; `line` is 1-based, 0 when the
// error is not tied to a specific line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t line = 0)
        : std::runtime_error(line == 0
                                 ? std::move(message)
                                 : "line " + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

enum class EntityKind { disease, virus, other };

std::string_view to_string(EntityKind kind);

struct Entity {
    std::string id;
    EntityKind kind = EntityKind::other;

    friend bool operator==(const Entity&, const Entity&) = default;
};

enum class Provenance { base, generated, external };

std::string_view to_string(Provenance provenance);

// Case folds and strips everything that is not a Unicode letter or
// digit; the result is the unit of matching and deduplication.
std::string normalize(std::string_view surface);

struct Term {
    std::string surface;
    std::string entity;
    Provenance provenance = Provenance::base;
    std::vector<std::string> derivation;  // rule ids, empty for base/external
    std::string key;                      // normalize(surface), cached

    friend bool operator==(const Term&, const Term&) = default;
};

class Lexicon {
public:
    void add_entity(Entity entity);  // throws ParseError on duplicate id

    // Returns false when (entity, key) is already present; first wins.
    bool add_term(Term term);

    const std::vector<Entity>& entities() const { return entities_; }
    const std::vector<Term>& terms() const { return terms_; }
    const Entity* find_entity(std::string_view id) const;
    bool has_key(std::string_view entity, std::string_view key) const;

    // Indices into terms() for every term sharing `key`, any entity.
    std::vector<std::size_t> terms_for_key(std::string_view key) const;

    friend bool operator==(const Lexicon&, const Lexicon&) = default;

private:
    std::vector<Entity> entities_;
    std::vector<Term> terms_;
    std::unordered_map<std::string, std::vector<std::size_t>> index_;
};

// Dictionary TSV: `#entity<TAB>id<TAB>kind` header lines declare
// entities, then one term per line as
// `entity_id<TAB>surface<TAB>provenance[<TAB>derivation]` with the
// derivation column a comma-separated rule id list. `#` starts a
// comment. Duplicate (entity, key) rows collapse to the first
// occurrence with a warning.
Lexicon load_dictionary(std::istream& stream,
                        std::vector<std::string>* warnings = nullptr);
Lexicon load_dictionary_file(const std::string& path,
                             std::vector<std::string>* warnings = nullptr);

void save_dictionary(const Lexicon& lexicon, std::ostream& out);
std::string dictionary_to_string(const Lexicon& lexicon);

// Every normalized key bound to two or more entities, sorted by key;
// entity ids sorted within each entry.
std::vector<std::pair<std::string, std::vector<std::string>>>
detect_entity_conflicts(const Lexicon& lexicon);

}  // namespace termvar

#endif  // TERMVAR_LEXICON_H_
