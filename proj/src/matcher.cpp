#include "termvar/matcher.h"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace termvar {

namespace {

std::int32_t find_edge(const std::vector<std::pair<unsigned char, std::int32_t>>& edges,
                       unsigned char byte) {
    for (const auto& [b, target] : edges) {
        if (b == byte) return target;
        if (b > byte) break;
    }
    return -1;
}

}  // namespace

Matcher build_matcher(const Lexicon& lexicon) {
    if (lexicon.terms().empty()) {
        throw ParseError("cannot build a matcher from an empty lexicon");
    }

    Matcher matcher;
    matcher.nodes_.emplace_back();  // root
    matcher.root_next_.fill(-1);

    // Unique keys in first-seen term order; entities per key sorted.
    std::unordered_map<std::string, std::size_t> key_index;
    for (const Term& term : lexicon.terms()) {
        auto [it, inserted] = key_index.try_emplace(term.key, matcher.entries_.size());
        if (inserted) matcher.entries_.push_back({term.key, {term.entity}});
        else {
            auto& entities = matcher.entries_[it->second].entities;
            if (std::find(entities.begin(), entities.end(), term.entity) ==
                entities.end()) {
                entities.push_back(term.entity);
            }
        }
    }
    for (Matcher::KeyEntry& entry : matcher.entries_) {
        std::sort(entry.entities.begin(), entry.entities.end());
    }

    for (std::size_t k = 0; k < matcher.entries_.size(); ++k) {
        std::int32_t state = 0;
        for (const char ch : matcher.entries_[k].key) {
            const auto byte = static_cast<unsigned char>(ch);
            std::int32_t next = find_edge(matcher.nodes_[state].next, byte);
            if (next < 0) {
                next = static_cast<std::int32_t>(matcher.nodes_.size());
                matcher.nodes_.emplace_back();
                auto& edges = matcher.nodes_[state].next;
                edges.insert(std::upper_bound(edges.begin(), edges.end(),
                                              std::make_pair(byte, std::int32_t{0})),
                             {byte, next});
            }
            state = next;
        }
        matcher.nodes_[state].key = static_cast<std::int32_t>(k);
    }

    // Breadth-first failure and output links.
    std::deque<std::int32_t> queue;
    for (const auto& [byte, child] : matcher.nodes_[0].next) {
        matcher.root_next_[byte] = child;
        matcher.nodes_[child].fail = 0;
        queue.push_back(child);
    }
    while (!queue.empty()) {
        const std::int32_t state = queue.front();
        queue.pop_front();
        const std::int32_t fail = matcher.nodes_[state].fail;
        matcher.nodes_[state].out_link = matcher.nodes_[fail].key >= 0
                                             ? fail
                                             : matcher.nodes_[fail].out_link;
        for (const auto& [byte, child] : matcher.nodes_[state].next) {
            matcher.nodes_[child].fail = matcher.step(fail, byte);
            queue.push_back(child);
        }
    }
    return matcher;
}

std::int32_t Matcher::step(std::int32_t state, unsigned char byte) const {
    for (;;) {
        if (state == 0) {
            const std::int32_t next = root_next_[byte];
            return next >= 0 ? next : 0;
        }
        const std::int32_t next = find_edge(nodes_[state].next, byte);
        if (next >= 0) return next;
        state = nodes_[state].fail;
    }
}

void Matcher::scan(
    std::string_view normalized,
    const std::function<void(std::uint32_t, std::size_t)>& on_match) const {
    std::int32_t state = 0;
    for (std::size_t pos = 0; pos < normalized.size(); ++pos) {
        state = step(state, static_cast<unsigned char>(normalized[pos]));
        if (nodes_[state].key >= 0) {
            on_match(static_cast<std::uint32_t>(nodes_[state].key), pos + 1);
        }
        for (std::int32_t out = nodes_[state].out_link; out >= 0;
             out = nodes_[out].out_link) {
            on_match(static_cast<std::uint32_t>(nodes_[out].key), pos + 1);
        }
    }
}

}  // namespace termvar
