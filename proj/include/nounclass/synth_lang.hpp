#ifndef NOUNCLASS_SYNTH_LANG_HPP
#define NOUNCLASS_SYNTH_LANG_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "core.hpp"
#include "embedding_store.hpp"
#include "io.hpp"
#include "prefix_mapper.hpp"
#include "rng.hpp"
#include "unicode.hpp"

/**
 * @file synth_lang.hpp
 *
 * @brief Synthetic prefix+stem language pairs with planted classes, cognates and innovations.
 *
 * Pseudo-embeddings are signed feature hashes of character 1-3-grams over "^" + word, each
 * n-gram weighted by `position_decay` raised to its start position, L2-normalized, plus Gaussian
 * noise. Shared prefixes and shared stems therefore land close together.
 */

namespace nounclass::synth {

struct ClassPlan {
    NounClass id;
    std::string prefix;
    double weight = 1.0;
};

struct InnovationPlan {
    std::string novel_prefix;
    std::string replaced_prefix;
    double rate = 0;
};

struct Spec {
    std::vector<ClassPlan> classes;
    /// Target-language word count.
    std::size_t stems = 1000;
    /// Source-language word count; 0 means the same as `stems`.
    std::size_t source_stems = 0;
    double cognate_overlap = 0.6;
    std::vector<InnovationPlan> innovations;
    std::uint64_t seed = 42;
    std::size_t embedding_dim = 64;
    double noise = 0.01;
    double position_decay = 0.5;
    std::string source_lang = "src";
    std::string target_lang = "tgt";
    /// Corpus occurrences per target word are drawn from [min, max].
    std::size_t min_occurrences = 2;
    std::size_t max_occurrences = 5;

    void validate() const {
        if (classes.empty()) throw ValidationError("synth: no classes");
        std::set<std::string> prefixes;
        std::set<NounClass> ids;
        for (const auto& c : classes) {
            if (c.prefix.empty()) throw ValidationError("synth: empty prefix");
            if (!prefixes.insert(c.prefix).second) throw ValidationError("synth: duplicate prefix '" + c.prefix + "'");
            if (!ids.insert(c.id).second) throw ValidationError("synth: duplicate class " + c.id.to_string());
            if (!(c.weight > 0)) throw ValidationError("synth: class weights must be positive");
        }
        if (!(cognate_overlap >= 0 && cognate_overlap <= 1)) throw ValidationError("synth: overlap outside [0, 1]");
        for (const auto& inn : innovations) {
            if (!(inn.rate >= 0 && inn.rate <= 1)) throw ValidationError("synth: innovation rate outside [0, 1]");
            if (!prefixes.contains(inn.replaced_prefix)) {
                throw ValidationError("synth: innovation replaces unknown prefix '" + inn.replaced_prefix + "'");
            }
            if (inn.novel_prefix.empty() || prefixes.contains(inn.novel_prefix)) {
                throw ValidationError("synth: novel prefix '" + inn.novel_prefix + "' must be new and non-empty");
            }
        }
        if (stems == 0) throw ValidationError("synth: stems must be positive");
        if (embedding_dim == 0) throw ValidationError("synth: embedding_dim must be positive");
        if (!(noise >= 0)) throw ValidationError("synth: noise must be non-negative");
        if (min_occurrences == 0 || max_occurrences < min_occurrences) throw ValidationError("synth: bad occurrence range");
    }
};

/// Twelve Swahili-like classes with distinct prefixes.
inline std::vector<ClassPlan> standard_classes() {
    return {
        {NounClass(1), "mu", 1.0}, {NounClass(2), "wa", 1.0}, {NounClass(4), "mi", 1.0}, {NounClass(5), "ji", 1.0},
        {NounClass(6), "ma", 1.0}, {NounClass(7), "ki", 1.0}, {NounClass(8), "vi", 1.0}, {NounClass(9), "n", 1.0},
        {NounClass(11), "u", 1.0}, {NounClass(14), "bu", 1.0}, {NounClass(15), "ku", 1.0}, {NounClass(16), "pa", 1.0},
    };
}

/**
 * Named presets: "default" (12 classes, 0.6 overlap, 1000 words), "overlap60" (12 classes, 0.6 overlap,
 * 3000 words), "full-overlap" (overlap 1.0, no noise), "innovation" (11 classes with 300 class-2 words of
 * which half switch wa- to a-), "no-innovation" (the same without the rewrite).
 */
inline Spec preset(std::string_view name) {
    Spec s;
    s.classes = standard_classes();
    if (name == "default") {
        return s;
    }
    if (name == "overlap60") {
        s.stems = 3000;
        return s;
    }
    if (name == "full-overlap") {
        s.cognate_overlap = 1.0;
        s.noise = 0.0;
        return s;
    }
    if (name == "innovation" || name == "no-innovation") {
        // Drop class 5 so the eleven classes plus the a- variant give twelve prefix groups.
        std::erase_if(s.classes, [](const ClassPlan& c) { return c.id == NounClass(5); });
        // 2700 words over 11 classes: exactly 300 in class 2 and 240 in each other class.
        s.stems = 2700;
        for (auto& c : s.classes) {
            c.weight = c.id == NounClass(2) ? 1.25 : 1.0;
        }
        if (name == "innovation") {
            s.innovations.push_back({"a", "wa", 0.5});
        }
        return s;
    }
    throw ValidationError("unknown synth preset '" + std::string(name) + "'");
}

struct TargetTruth {
    std::string word;
    std::string stem;
    NounClass noun_class;
    std::string prefix;
    bool cognate = false;
    bool innovated = false;
};

struct Pair {
    EmbeddingDump source;
    EmbeddingDump target;
    std::vector<TargetTruth> truth;
    std::string corpus;
    PrefixInventory source_inventory;
};

namespace detail {

inline constexpr std::string_view consonants = "bdfghjklmnprstvwyz";
inline constexpr std::string_view vowels = "aeiou";

inline std::string make_stem(Rng& rng) {
    const std::size_t syllables = 2 + static_cast<std::size_t>(rng.below(2));
    std::string s;
    for (std::size_t i = 0; i < syllables; ++i) {
        s += consonants[static_cast<std::size_t>(rng.below(consonants.size()))];
        s += vowels[static_cast<std::size_t>(rng.below(vowels.size()))];
    }
    return s;
}

/// Largest-remainder apportionment of `total` items by weight (remainder ties to the earlier class).
inline std::vector<std::size_t> apportion(const std::vector<ClassPlan>& classes, std::size_t total) {
    double wsum = 0;
    for (const auto& c : classes) wsum += c.weight;
    std::vector<std::size_t> counts(classes.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const double exact = static_cast<double>(total) * classes[i].weight / wsum;
        counts[i] = static_cast<std::size_t>(std::floor(exact + 1e-9));
        assigned += counts[i];
        remainders.emplace_back(exact - static_cast<double>(counts[i]), i);
    }
    std::stable_sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t r = 0; assigned < total; ++r, ++assigned) ++counts[remainders[r % remainders.size()].second];
    return counts;
}

inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t salt) {
    std::uint64_t h = 1469598103934665603ULL ^ salt;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}

/**
 * Deterministic n-gram hash features (before noise), unit length.
 */
inline std::vector<double> hash_features(std::string_view word, std::size_t dim, double position_decay) {
    std::vector<double> v(dim, 0.0);
    const std::string padded = "^" + std::string(word);
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < padded.size(); ++i) {
        if ((static_cast<unsigned char>(padded[i]) & 0xC0) != 0x80) starts.push_back(i);
    }
    starts.push_back(padded.size());
    const std::size_t cps = starts.size() - 1;
    for (std::size_t n = 1; n <= 3; ++n) {
        for (std::size_t pos = 0; pos + n <= cps; ++pos) {
            std::string_view gram(padded.data() + starts[pos], starts[pos + n] - starts[pos]);
            const std::uint64_t h = detail::fnv1a(gram, n);
            const double sign = (h >> 63) ? -1.0 : 1.0;
            v[static_cast<std::size_t>(h % dim)] += sign * std::pow(position_decay, static_cast<double>(pos));
        }
    }
    double norm = 0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm > 0) {
        for (double& x : v) x /= norm;
    }
    return v;
}

/**
 * Pseudo-embedding: hash features plus N(0, noise^2) per component, rounded to float precision so
 * the 9-digit dump format reproduces it exactly.
 */
inline std::vector<double> embed_word(std::string_view word, const Spec& spec, Rng& noise_rng) {
    auto v = hash_features(word, spec.embedding_dim, spec.position_decay);
    for (double& x : v) {
        if (spec.noise > 0) x += spec.noise * noise_rng.normal();
        x = static_cast<double>(static_cast<float>(x));
    }
    return v;
}

/**
 * Generate a labeled source language, an unlabeled target language sharing `cognate_overlap` of
 * each class's stems, ground truth for every target word, and a target corpus in which each
 * target word occurs between `min_occurrences` and `max_occurrences` times.
 */
inline Pair generate_pair(const Spec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    Rng noise_rng(spec.seed ^ 0x9E3779B97F4A7C15ULL);

    const std::size_t n_source = spec.source_stems ? spec.source_stems : spec.stems;
    const auto source_counts = detail::apportion(spec.classes, n_source);
    const auto target_counts = detail::apportion(spec.classes, spec.stems);

    std::unordered_set<std::string> used_stems;
    auto fresh_stem = [&] {
        for (;;) {
            auto s = detail::make_stem(rng);
            if (used_stems.insert(s).second) return s;
        }
    };

    Pair out;
    out.source.dim = spec.embedding_dim;
    out.source.lang = spec.source_lang;
    out.target.dim = spec.embedding_dim;
    out.target.lang = spec.target_lang;

    std::vector<std::vector<std::string>> source_stems(spec.classes.size());
    for (std::size_t c = 0; c < spec.classes.size(); ++c) {
        for (std::size_t i = 0; i < source_counts[c]; ++i) source_stems[c].push_back(fresh_stem());
    }

    for (std::size_t c = 0; c < spec.classes.size(); ++c) {
        const auto& plan = spec.classes[c];
        auto pool = source_stems[c];
        rng.shuffle(pool);
        std::size_t cognates = static_cast<std::size_t>(std::llround(spec.cognate_overlap * static_cast<double>(target_counts[c])));
        cognates = std::min(cognates, pool.size());
        for (std::size_t i = 0; i < target_counts[c]; ++i) {
            TargetTruth t;
            t.cognate = i < cognates;
            t.stem = t.cognate ? pool[i] : fresh_stem();
            t.noun_class = plan.id;
            t.prefix = plan.prefix;
            out.truth.push_back(std::move(t));
        }
    }

    for (const auto& inn : spec.innovations) {
        std::vector<std::size_t> eligible;
        for (std::size_t i = 0; i < out.truth.size(); ++i) {
            if (out.truth[i].prefix == inn.replaced_prefix && !out.truth[i].innovated) eligible.push_back(i);
        }
        rng.shuffle(eligible);
        const auto take = static_cast<std::size_t>(std::llround(inn.rate * static_cast<double>(eligible.size())));
        std::sort(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(take));
        for (std::size_t j = 0; j < take; ++j) {
            out.truth[eligible[j]].prefix = inn.novel_prefix;
            out.truth[eligible[j]].innovated = true;
        }
    }

    // Records are emitted in a shuffled order so nothing downstream can lean on class grouping.
    std::vector<std::pair<std::string, NounClass>> source_words;
    for (std::size_t c = 0; c < spec.classes.size(); ++c) {
        for (const auto& stem : source_stems[c]) source_words.emplace_back(spec.classes[c].prefix + stem, spec.classes[c].id);
    }
    rng.shuffle(source_words);
    rng.shuffle(out.truth);

    for (const auto& [word, cls] : source_words) {
        out.source.records.push_back(WordEmbedding{word, spec.source_lang, embed_word(word, spec, noise_rng), cls});
    }
    std::unordered_set<std::string> target_seen;
    std::vector<TargetTruth> unique_truth;
    for (auto& t : out.truth) {
        t.word = t.prefix + t.stem;
        if (!target_seen.insert(t.word).second) continue;
        out.target.records.push_back(WordEmbedding{t.word, spec.target_lang, embed_word(t.word, spec, noise_rng), std::nullopt});
        unique_truth.push_back(std::move(t));
    }
    out.truth = std::move(unique_truth);

    std::vector<std::string> tokens;
    for (const auto& t : out.truth) {
        const auto reps = spec.min_occurrences + static_cast<std::size_t>(rng.below(spec.max_occurrences - spec.min_occurrences + 1));
        for (std::size_t r = 0; r < reps; ++r) tokens.push_back(t.word);
    }
    rng.shuffle(tokens);
    std::size_t pos = 0;
    while (pos < tokens.size()) {
        const std::size_t len = std::min<std::size_t>(5 + static_cast<std::size_t>(rng.below(8)), tokens.size() - pos);
        for (std::size_t i = 0; i < len; ++i) {
            std::string tok = tokens[pos + i];
            if (i == 0) tok[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0])));
            out.corpus += tok;
            out.corpus += (i + 1 == len) ? ".\n" : (rng.below(6) == 0 ? ", " : " ");
        }
        pos += len;
    }

    std::vector<InventoryEntry> entries;
    for (const auto& c : spec.classes) entries.push_back(InventoryEntry{c.prefix, {c.id}, "synthetic plant"});
    out.source_inventory = PrefixInventory(std::move(entries));
    return out;
}

inline io::json spec_to_json(const Spec& s) {
    io::json classes = io::json::array();
    for (const auto& c : s.classes) classes.push_back(io::json{{"class", c.id.id()}, {"prefix", c.prefix}, {"weight", c.weight}});
    io::json innovations = io::json::array();
    for (const auto& i : s.innovations) {
        innovations.push_back(io::json{{"novel_prefix", i.novel_prefix}, {"replaced_prefix", i.replaced_prefix}, {"rate", i.rate}});
    }
    return io::json{
        {"classes", classes},
        {"stems", s.stems},
        {"source_stems", s.source_stems ? s.source_stems : s.stems},
        {"cognate_overlap", s.cognate_overlap},
        {"innovations", innovations},
        {"seed", s.seed},
        {"rng", std::string(Rng::algorithm)},
        {"embedding_dim", s.embedding_dim},
        {"noise", s.noise},
        {"position_decay", s.position_decay},
    };
}

inline io::json truth_to_json(const TargetTruth& t) {
    return io::json{
        {"word", t.word}, {"class", t.noun_class.id()}, {"stem", t.stem},
        {"prefix", t.prefix}, {"cognate", t.cognate}, {"innovated", t.innovated},
    };
}

/**
 * Manifest: the generator settings plus every planted innovation with its member count.
 */
inline io::json manifest(const Spec& spec, const Pair& pair) {
    io::json plants = io::json::array();
    for (const auto& inn : spec.innovations) {
        std::size_t members = 0;
        NounClass cls;
        for (const auto& t : pair.truth) {
            if (t.innovated && t.prefix == inn.novel_prefix) {
                ++members;
                cls = t.noun_class;
            }
        }
        plants.push_back(io::json{{"novel_prefix", inn.novel_prefix}, {"replaced_prefix", inn.replaced_prefix},
                                  {"rate", inn.rate}, {"members", members}, {"class", io::class_to_json(cls)}});
    }
    std::map<std::string, std::size_t> per_class;
    std::size_t cognates = 0;
    for (const auto& t : pair.truth) {
        ++per_class[t.noun_class.to_string()];
        if (t.cognate) ++cognates;
    }
    return io::json{
        {"spec", spec_to_json(spec)},
        {"source_words", pair.source.records.size()},
        {"target_words", pair.truth.size()},
        {"cognate_targets", cognates},
        {"target_class_counts", per_class},
        {"innovations", plants},
    };
}

}

#endif
