#ifndef NOUNCLASS_CORPUS_HPP
#define NOUNCLASS_CORPUS_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "core.hpp"
#include "io.hpp"
#include "unicode.hpp"

/**
 * @file corpus.hpp
 *
 * @brief Noun-candidate extraction from raw target-language text.
 *
 * No tagger exists for most target languages, so candidates are frequent word types that look
 * like words (letters with internal apostrophes). Verbs pass the filter too.
 */

namespace nounclass {

struct CorpusStats {
    std::size_t sentences = 0;
    std::size_t tokens = 0;
    std::size_t types = 0;
    std::size_t candidates = 0;
    std::size_t replaced_bytes = 0;
    /// Types dropped, keyed by the first rule that rejected them.
    std::map<std::string, std::size_t> dropped_by_rule;
};

struct CandidateOptions {
    std::size_t min_len = 3;
    std::size_t min_freq = 2;
    std::set<std::string> stoplist;
};

struct Candidate {
    std::string word;
    std::size_t frequency = 0;
};

struct CandidateList {
    std::vector<Candidate> candidates;
    CorpusStats stats;

    std::vector<std::string> words() const {
        std::vector<std::string> out;
        out.reserve(candidates.size());
        for (const auto& c : candidates) out.push_back(c.word);
        return out;
    }
};

namespace detail {

/// Strip leading/trailing apostrophes (quote marks) from a token.
inline icu::UnicodeString trim_apostrophes(const icu::UnicodeString& token) {
    int32_t begin = 0;
    int32_t end = token.length();
    while (begin < end && token.charAt(begin) == unicode::apostrophe) ++begin;
    while (end > begin && token.charAt(end - 1) == unicode::apostrophe) --end;
    return icu::UnicodeString(token, begin, end - begin);
}

inline bool word_shaped(const icu::UnicodeString& token) {
    bool ok = true;
    for (int32_t i = 0; i < token.length() && ok;) {
        UChar32 c = token.char32At(i);
        ok = unicode::is_letter(c) || c == unicode::apostrophe;
        i += U16_LENGTH(c);
    }
    return ok;
}

}

/**
 * Tokenize text (one sentence per line) and count normalized word types.
 */
inline std::unordered_map<std::string, std::size_t> count_types(std::string_view text, CorpusStats& stats) {
    std::size_t replaced = 0;
    auto decoded = unicode::decode_utf8(text, &replaced);
    stats.replaced_bytes += replaced;

    std::unordered_map<std::string, std::size_t> counts;
    icu::UnicodeString token;
    bool line_has_content = false;
    auto flush = [&] {
        if (token.isEmpty()) return;
        auto trimmed = detail::trim_apostrophes(unicode::normalize(token));
        token.remove();
        if (trimmed.isEmpty()) return;
        ++stats.tokens;
        ++counts[unicode::to_utf8(trimmed)];
    };

    for (int32_t i = 0; i < decoded.length();) {
        UChar32 c = decoded.char32At(i);
        i += U16_LENGTH(c);
        if (c == '\n') {
            flush();
            if (line_has_content) ++stats.sentences;
            line_has_content = false;
            continue;
        }
        if (unicode::is_separator(c)) {
            flush();
        } else {
            token.append(c);
            line_has_content = true;
        }
    }
    flush();
    if (line_has_content) ++stats.sentences;
    return counts;
}

/**
 * Extract candidate word types, sorted by descending frequency then ascending word.
 * Rules are applied in order charset, min_len, stoplist, min_freq; each dropped type is
 * counted under the first rule it fails.
 */
inline CandidateList extract_candidates(std::string_view corpus, const CandidateOptions& options = {}) {
    CandidateList out;
    auto& stats = out.stats;
    auto counts = count_types(corpus, stats);
    stats.types = counts.size();
    for (const char* rule : {"charset", "min_len", "stoplist", "min_freq"}) {
        stats.dropped_by_rule[rule] = 0;
    }

    std::set<std::string> stop;
    for (const auto& s : options.stoplist) stop.insert(unicode::normalize_word(s));

    for (const auto& [word, freq] : counts) {
        if (!detail::word_shaped(unicode::decode_utf8(word))) {
            ++stats.dropped_by_rule["charset"];
        } else if (unicode::length(word) < options.min_len) {
            ++stats.dropped_by_rule["min_len"];
        } else if (stop.contains(word)) {
            ++stats.dropped_by_rule["stoplist"];
        } else if (freq < options.min_freq) {
            ++stats.dropped_by_rule["min_freq"];
        } else {
            out.candidates.push_back(Candidate{word, freq});
        }
    }
    std::sort(out.candidates.begin(), out.candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.frequency != b.frequency) return a.frequency > b.frequency;
        return a.word < b.word;
    });
    stats.candidates = out.candidates.size();
    return out;
}

inline io::json corpus_stats_to_json(const CorpusStats& s) {
    return io::json{
        {"sentences", s.sentences},
        {"tokens", s.tokens},
        {"types", s.types},
        {"candidates", s.candidates},
        {"replaced_bytes", s.replaced_bytes},
        {"dropped_by_rule", s.dropped_by_rule},
    };
}

/// Candidate file: one word per line.
inline std::string render_candidates(const CandidateList& list) {
    std::string out;
    for (const auto& c : list.candidates) {
        out += c.word;
        out += '\n';
    }
    return out;
}

inline std::vector<std::string> parse_word_list(std::string_view text) {
    std::vector<std::string> out;
    for (auto line : io::split_lines(text)) {
        auto w = unicode::normalize_word(line);
        if (!w.empty()) out.push_back(std::move(w));
    }
    return out;
}

}

#endif
