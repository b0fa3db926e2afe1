#include "termvar/lexicon.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "termvar/unicode.h"

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

std::vector<std::string> split_commas(std::string_view text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos) {
            parts.emplace_back(text.substr(start));
            break;
        }
        parts.emplace_back(text.substr(start, comma - start));
        start = comma + 1;
    }
    return parts;
}

EntityKind parse_kind(std::string_view text, std::size_t line) {
    if (text == "disease") return EntityKind::disease;
    if (text == "virus") return EntityKind::virus;
    if (text == "other") return EntityKind::other;
    throw ParseError("unknown entity kind '" + std::string(text) + "'", line);
}

Provenance parse_provenance(std::string_view text, std::size_t line) {
    if (text == "base") return Provenance::base;
    if (text == "generated") return Provenance::generated;
    if (text == "external") return Provenance::external;
    throw ParseError("unknown provenance '" + std::string(text) + "'", line);
}

void warn(std::vector<std::string>* warnings, std::string message) {
    if (warnings) warnings->push_back(std::move(message));
}

}  // namespace

std::string_view to_string(EntityKind kind) {
    switch (kind) {
        case EntityKind::disease: return "disease";
        case EntityKind::virus: return "virus";
        case EntityKind::other: return "other";
    }
    return "other";
}

std::string_view to_string(Provenance provenance) {
    switch (provenance) {
        case Provenance::base: return "base";
        case Provenance::generated: return "generated";
        case Provenance::external: return "external";
    }
    return "base";
}

std::string normalize(std::string_view surface) {
    std::string key;
    key.reserve(surface.size());
    std::size_t pos = 0;
    while (pos < surface.size()) {
        const uni::Decoded d = uni::decode_utf8(surface, pos);
        if (uni::is_alnum(d.code)) uni::encode_utf8(uni::fold(d.code), key);
        pos += d.length;
    }
    return key;
}

void Lexicon::add_entity(Entity entity) {
    if (entity.id.empty()) throw ParseError("entity id must be non-empty");
    if (find_entity(entity.id)) {
        throw ParseError("duplicate entity id '" + entity.id + "'");
    }
    entities_.push_back(std::move(entity));
}

bool Lexicon::add_term(Term term) {
    if (term.key.empty()) term.key = normalize(term.surface);
    if (has_key(term.entity, term.key)) return false;
    index_[term.key].push_back(terms_.size());
    terms_.push_back(std::move(term));
    return true;
}

const Entity* Lexicon::find_entity(std::string_view id) const {
    for (const Entity& entity : entities_) {
        if (entity.id == id) return &entity;
    }
    return nullptr;
}

bool Lexicon::has_key(std::string_view entity, std::string_view key) const {
    const auto it = index_.find(std::string(key));
    if (it == index_.end()) return false;
    for (const std::size_t i : it->second) {
        if (terms_[i].entity == entity) return true;
    }
    return false;
}

std::vector<std::size_t> Lexicon::terms_for_key(std::string_view key) const {
    const auto it = index_.find(std::string(key));
    if (it == index_.end()) return {};
    return it->second;
}

Lexicon load_dictionary(std::istream& stream, std::vector<std::string>* warnings) {
    Lexicon lexicon;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto fields = split_tabs(line);
            if (fields[0] != "#entity") continue;  // plain comment
            if (fields.size() != 3) {
                throw ParseError("entity declaration needs 3 columns", line_number);
            }
            try {
                lexicon.add_entity(
                    {std::string(fields[1]), parse_kind(fields[2], line_number)});
            } catch (const ParseError& e) {
                throw ParseError(e.what(), line_number);
            }
            continue;
        }

        const auto fields = split_tabs(line);
        if (fields.size() < 3 || fields.size() > 4) {
            throw ParseError("expected 3 or 4 tab-separated columns, got " +
                                 std::to_string(fields.size()),
                             line_number);
        }
        Term term;
        term.entity = std::string(fields[0]);
        term.surface = std::string(fields[1]);
        term.provenance = parse_provenance(fields[2], line_number);
        if (!lexicon.find_entity(term.entity)) {
            throw ParseError("unknown entity id '" + term.entity + "'", line_number);
        }
        term.key = normalize(term.surface);
        if (term.surface.empty() || term.key.empty()) {
            throw ParseError("surface must contain an alphanumeric character",
                             line_number);
        }
        if (fields.size() == 4 && !fields[3].empty()) {
            if (term.provenance != Provenance::generated) {
                throw ParseError("derivation column only valid for generated terms",
                                 line_number);
            }
            term.derivation = split_commas(fields[3]);
            for (const std::string& id : term.derivation) {
                if (id.empty()) throw ParseError("empty rule id in derivation", line_number);
            }
        }
        if (!lexicon.add_term(std::move(term))) {
            warn(warnings, "line " + std::to_string(line_number) +
                               ": duplicate key for entity '" +
                               std::string(fields[0]) + "', keeping first");
        }
    }
    return lexicon;
}

Lexicon load_dictionary_file(const std::string& path,
                             std::vector<std::string>* warnings) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) throw ParseError("cannot open dictionary file '" + path + "'");
    return load_dictionary(stream, warnings);
}

void save_dictionary(const Lexicon& lexicon, std::ostream& out) {
    for (const Entity& entity : lexicon.entities()) {
        out << "#entity\t" << entity.id << '\t' << to_string(entity.kind) << '\n';
    }
    for (const Term& term : lexicon.terms()) {
        out << term.entity << '\t' << term.surface << '\t'
            << to_string(term.provenance);
        if (!term.derivation.empty()) {
            out << '\t';
            for (std::size_t i = 0; i < term.derivation.size(); ++i) {
                if (i > 0) out << ',';
                out << term.derivation[i];
            }
        }
        out << '\n';
    }
}

std::string dictionary_to_string(const Lexicon& lexicon) {
    std::ostringstream out;
    save_dictionary(lexicon, out);
    return out.str();
}

std::vector<std::pair<std::string, std::vector<std::string>>>
detect_entity_conflicts(const Lexicon& lexicon) {
    std::map<std::string, std::set<std::string>> by_key;
    for (const Term& term : lexicon.terms()) {
        by_key[term.key].insert(term.entity);
    }
    std::vector<std::pair<std::string, std::vector<std::string>>> conflicts;
    for (const auto& [key, entities] : by_key) {
        if (entities.size() < 2) continue;
        conflicts.emplace_back(key,
                               std::vector<std::string>(entities.begin(), entities.end()));
    }
    return conflicts;
}

}  // namespace termvar
