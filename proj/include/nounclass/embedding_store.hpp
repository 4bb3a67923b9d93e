#ifndef NOUNCLASS_EMBEDDING_STORE_HPP
#define NOUNCLASS_EMBEDDING_STORE_HPP

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "core.hpp"
#include "io.hpp"
#include "unicode.hpp"

/**
 * @file embedding_store.hpp
 *
 * @brief Loading, validating and querying word-embedding dumps.
 *
 * Dump format (`.embjsonl`): a header line `{"dim": D, "lang": code, "count": N}` followed by one
 * `{"word": str, "vector": [D reals], "label": optional class}` object per line.
 */

namespace nounclass {

struct WordEmbedding {
    std::string word;
    std::string lang;
    std::vector<double> vector;
    std::optional<NounClass> label;
};

struct LoadDiagnostics {
    std::size_t duplicates = 0;
    std::size_t non_finite = 0;
    std::size_t empty_words = 0;
    bool count_mismatch = false;
    std::vector<std::string> messages;

    std::size_t warning_count() const {
        return duplicates + non_finite + empty_words + (count_mismatch ? 1 : 0);
    }
};

struct EmbeddingDump {
    std::size_t dim = 0;
    std::string lang;
    std::vector<WordEmbedding> records;
    LoadDiagnostics diagnostics;
};

/**
 * Parse a dump from text. Dimension mismatches reject the whole file; non-finite vectors
 * and repeated words reject only the record (the first occurrence of a word is kept).
 */
inline EmbeddingDump parse_embeddings(std::string_view text, const std::string& source,
                                      ClassUniverse universe = {}) {
    auto lines = io::split_lines(text);
    if (lines.empty()) {
        throw ValidationError(source + ": missing header line");
    }

    EmbeddingDump dump;
    auto header = io::parse_line(lines.front(), source, 1);
    std::optional<std::size_t> declared_count;
    try {
        auto dim = header.at("dim").get<long long>();
        if (dim <= 0) {
            throw ValidationError(source + ": header dim must be positive");
        }
        dump.dim = static_cast<std::size_t>(dim);
        dump.lang = header.at("lang").get<std::string>();
        if (header.contains("count")) {
            declared_count = header.at("count").get<std::size_t>();
        }
    } catch (const io::json::exception& e) {
        throw ValidationError(source + ": bad header (" + e.what() + ")");
    }

    std::unordered_set<std::string> seen;
    auto& diag = dump.diagnostics;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        io::json record;
        try {
            record = io::parse_line(lines[i], source, lineno);
        } catch (const io::NumberOverflow& e) {
            ++diag.non_finite;
            diag.messages.push_back(std::string(e.what()) + "; record skipped");
            continue;
        }
        if (io::is_meta(record)) continue;

        WordEmbedding emb;
        emb.lang = dump.lang;
        try {
            emb.word = unicode::normalize_word(record.at("word").get<std::string>());
            const auto& vec = record.at("vector");
            if (!vec.is_array()) {
                throw ValidationError(source + ":" + std::to_string(lineno) + ": vector is not an array");
            }
            if (vec.size() != dump.dim) {
                throw ValidationError(source + ":" + std::to_string(lineno) + ": dimension mismatch (header " +
                                      std::to_string(dump.dim) + ", record " + std::to_string(vec.size()) + ")");
            }
            emb.vector.reserve(dump.dim);
            for (const auto& x : vec) {
                // JSON has no literal for NaN/Inf; writers that emit null for them get flagged below.
                emb.vector.push_back(x.is_null() ? std::nan("") : x.get<double>());
            }
            if (record.contains("label") && !record.at("label").is_null()) {
                auto label = io::class_from_json(record.at("label"));
                if (!label.is_unknown()) {
                    if (!universe.contains(label)) {
                        throw ValidationError(source + ":" + std::to_string(lineno) + ": class " + label.to_string() +
                                              " outside the class universe");
                    }
                    emb.label = label;
                }
            }
        } catch (const io::json::exception& e) {
            throw ValidationError(source + ":" + std::to_string(lineno) + ": bad record (" + e.what() + ")");
        }

        if (emb.word.empty()) {
            ++diag.empty_words;
            diag.messages.push_back(source + ":" + std::to_string(lineno) + ": empty word skipped");
            continue;
        }
        if (!std::all_of(emb.vector.begin(), emb.vector.end(), [](double x) { return std::isfinite(x); })) {
            ++diag.non_finite;
            diag.messages.push_back(source + ":" + std::to_string(lineno) + ": non-finite vector for '" + emb.word + "' skipped");
            continue;
        }
        if (!seen.insert(emb.word).second) {
            ++diag.duplicates;
            diag.messages.push_back(source + ":" + std::to_string(lineno) + ": duplicate word '" + emb.word + "' skipped");
            continue;
        }
        dump.records.push_back(std::move(emb));
    }

    std::size_t parsed = dump.records.size() + diag.duplicates + diag.non_finite + diag.empty_words;
    if (declared_count && *declared_count != parsed) {
        diag.count_mismatch = true;
        diag.messages.push_back(source + ": header count " + std::to_string(*declared_count) + " but " +
                                std::to_string(parsed) + " records present");
    }
    return dump;
}

inline EmbeddingDump load_embeddings(const std::filesystem::path& path, ClassUniverse universe = {}) {
    return parse_embeddings(io::read_file(path), path.string(), universe);
}

/**
 * Serialize a dump. Reals are written with 9 significant digits; `extra_header` keys
 * (e.g. provenance) are merged into the header object.
 */
inline std::string render_embeddings(const EmbeddingDump& dump, const io::json& extra_header = io::json::object()) {
    io::json header = extra_header;
    header["dim"] = dump.dim;
    header["lang"] = dump.lang;
    header["count"] = dump.records.size();

    std::string out = header.dump();
    out += '\n';
    for (const auto& r : dump.records) {
        out += "{\"word\":";
        out += io::json(r.word).dump();
        out += ",\"vector\":[";
        for (std::size_t j = 0; j < r.vector.size(); ++j) {
            if (j) out += ',';
            io::append_real(out, r.vector[j], 9);
        }
        out += ']';
        if (r.label) {
            out += ",\"label\":";
            out += std::to_string(r.label->id());
        }
        out += "}\n";
    }
    return out;
}

/**
 * @brief Source-language (word, class) pairs.
 */
struct LabeledParadigmSet {
    std::string lang;
    std::vector<std::pair<std::string, NounClass>> entries;

    std::set<NounClass> class_set() const {
        std::set<NounClass> out;
        for (const auto& e : entries) out.insert(e.second);
        return out;
    }
};

/**
 * Paradigm file: header `{"lang": code}`, then `{"word": str, "class": id}` lines.
 * Words must be unique after normalization and at least one entry must exist.
 */
inline LabeledParadigmSet parse_paradigms(std::string_view text, const std::string& source, ClassUniverse universe = {}) {
    auto lines = io::split_lines(text);
    if (lines.empty()) {
        throw ValidationError(source + ": missing header line");
    }
    LabeledParadigmSet set;
    try {
        set.lang = io::parse_line(lines.front(), source, 1).at("lang").get<std::string>();
    } catch (const io::json::exception& e) {
        throw ValidationError(source + ": bad header (" + e.what() + ")");
    }
    std::unordered_set<std::string> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto record = io::parse_line(lines[i], source, i + 1);
        if (io::is_meta(record)) continue;
        std::string word;
        NounClass cls;
        try {
            word = unicode::normalize_word(record.at("word").get<std::string>());
            cls = io::class_from_json(record.at("class"));
        } catch (const io::json::exception& e) {
            throw ValidationError(source + ":" + std::to_string(i + 1) + ": bad record (" + e.what() + ")");
        }
        if (word.empty()) {
            throw ValidationError(source + ":" + std::to_string(i + 1) + ": empty word");
        }
        if (!universe.contains(cls)) {
            throw ValidationError(source + ":" + std::to_string(i + 1) + ": class " + cls.to_string() + " outside the class universe");
        }
        if (!seen.insert(word).second) {
            throw ValidationError(source + ":" + std::to_string(i + 1) + ": duplicate word '" + word + "'");
        }
        set.entries.emplace_back(std::move(word), cls);
    }
    if (set.entries.empty()) {
        throw ValidationError(source + ": paradigm set has no entries");
    }
    return set;
}

inline LabeledParadigmSet load_paradigms(const std::filesystem::path& path, ClassUniverse universe = {}) {
    return parse_paradigms(io::read_file(path), path.string(), universe);
}

inline std::string render_paradigms(const LabeledParadigmSet& set) {
    std::string out = io::json{{"lang", set.lang}}.dump() + "\n";
    for (const auto& [word, cls] : set.entries) {
        out += io::json{{"word", word}, {"class", cls.id()}}.dump();
        out += '\n';
    }
    return out;
}

/**
 * Overwrite record labels from a paradigm set. Returns the number of records that
 * received a label from `paradigms`.
 */
inline std::size_t attach_labels(EmbeddingDump& dump, const LabeledParadigmSet& paradigms) {
    std::map<std::string, NounClass, std::less<>> lookup(paradigms.entries.begin(), paradigms.entries.end());
    std::size_t attached = 0;
    for (auto& r : dump.records) {
        auto it = lookup.find(r.word);
        if (it != lookup.end()) {
            r.label = it->second;
            ++attached;
        }
    }
    return attached;
}

inline double squared_norm(std::span<const double> a) {
    double s = 0;
    for (double x : a) s += x * x;
    return s;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/**
 * Cosine similarity from a dot product and the two norms, clamped to [-1, 1].
 */
inline double cosine_from_parts(double ab, double norm_a, double norm_b) {
    return std::clamp(ab / (norm_a * norm_b), -1.0, 1.0);
}

inline double cosine(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ValidationError("cosine: dimension mismatch");
    }
    const double na = std::sqrt(squared_norm(a));
    const double nb = std::sqrt(squared_norm(b));
    if (na == 0 || nb == 0) {
        throw ValidationError("degenerate vector");
    }
    return cosine_from_parts(dot(a, b), na, nb);
}

struct Neighbor {
    std::size_t index = 0;
    std::string word;
    double similarity = 0;
};

struct NearestResult {
    std::vector<Neighbor> neighbors;
    bool short_result = false;
};

/**
 * @brief Immutable exhaustive-scan cosine index.
 *
 * Zero vectors cannot take part in cosine queries and are left out at construction;
 * `skipped()` reports how many. Safe for concurrent `nearest()` calls.
 */
class EmbeddingIndex {
public:
    EmbeddingIndex() = default;

    explicit EmbeddingIndex(std::vector<WordEmbedding> records) {
        records_.reserve(records.size());
        for (auto& r : records) {
            if (dim_ == 0) {
                dim_ = r.vector.size();
            } else if (r.vector.size() != dim_) {
                throw ValidationError("index: dimension mismatch for '" + r.word + "'");
            }
            double n = std::sqrt(squared_norm(r.vector));
            if (n == 0) {
                ++skipped_;
                continue;
            }
            norms_.push_back(n);
            records_.push_back(std::move(r));
        }
    }

    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }
    std::size_t dim() const { return dim_; }
    std::size_t skipped() const { return skipped_; }
    const WordEmbedding& record(std::size_t i) const { return records_[i]; }
    const std::vector<WordEmbedding>& records() const { return records_; }

    /**
     * Top-k by descending similarity, ties by ascending word. If `k` exceeds the index
     * size every entry is returned and `short_result` is set.
     */
    NearestResult nearest(std::span<const double> query, std::size_t k) const {
        if (k == 0) {
            throw ValidationError("nearest: k must be at least 1");
        }
        if (records_.empty()) {
            throw ValidationError("nearest: index is empty");
        }
        if (query.size() != dim_) {
            throw ValidationError("nearest: query dimension mismatch");
        }
        const double nq = std::sqrt(squared_norm(query));
        if (nq == 0) {
            throw ValidationError("degenerate vector");
        }

        std::vector<Neighbor> all(records_.size());
        for (std::size_t i = 0; i < records_.size(); ++i) {
            all[i].index = i;
            all[i].similarity = cosine_from_parts(dot(query, records_[i].vector), nq, norms_[i]);
        }
        auto better = [this](const Neighbor& a, const Neighbor& b) {
            if (a.similarity != b.similarity) return a.similarity > b.similarity;
            return records_[a.index].word < records_[b.index].word;
        };

        NearestResult out;
        std::size_t take = k;
        if (k > all.size()) {
            take = all.size();
            out.short_result = true;
        }
        std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(), better);
        all.resize(take);
        for (auto& n : all) n.word = records_[n.index].word;
        out.neighbors = std::move(all);
        return out;
    }

private:
    std::vector<WordEmbedding> records_;
    std::vector<double> norms_;
    std::size_t dim_ = 0;
    std::size_t skipped_ = 0;
};

}

#endif
