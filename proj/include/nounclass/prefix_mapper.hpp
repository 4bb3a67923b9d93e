#ifndef NOUNCLASS_PREFIX_MAPPER_HPP
#define NOUNCLASS_PREFIX_MAPPER_HPP

#include <algorithm>
#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core.hpp"
#include "embedding_store.hpp"
#include "io.hpp"
#include "kmeans.hpp"
#include "unicode.hpp"

/**
 * @file prefix_mapper.hpp
 *
 * @brief Cluster prefix profiling, prefix-to-class mapping and innovation detection.
 */

namespace nounclass {

inline constexpr std::size_t max_prefix_length = 3;

struct InventoryEntry {
    std::string prefix;
    std::vector<NounClass> classes;
    std::string source;
};

/**
 * @brief Prefix to candidate-class table.
 *
 * Prefixes are 1-3 code points (apostrophe included) and unique; candidate classes keep file order.
 */
class PrefixInventory {
public:
    PrefixInventory() = default;

    explicit PrefixInventory(std::vector<InventoryEntry> entries, ClassUniverse universe = {}) {
        for (auto& e : entries) add(std::move(e), universe);
    }

    void add(InventoryEntry entry, ClassUniverse universe = {}) {
        entry.prefix = unicode::normalize_word(entry.prefix);
        const auto len = unicode::length(entry.prefix);
        if (len < 1 || len > max_prefix_length) {
            throw ValidationError("inventory prefix '" + entry.prefix + "' must be 1-3 characters");
        }
        if (entry.classes.empty()) {
            throw ValidationError("inventory prefix '" + entry.prefix + "' has no classes");
        }
        for (auto c : entry.classes) {
            if (!universe.contains(c)) {
                throw ValidationError("inventory prefix '" + entry.prefix + "' maps to class " + c.to_string() +
                                      " outside the class universe");
            }
        }
        if (lookup_.contains(entry.prefix)) {
            throw ValidationError("duplicate inventory prefix '" + entry.prefix + "'");
        }
        lookup_.emplace(entry.prefix, entries_.size());
        entries_.push_back(std::move(entry));
    }

    const std::vector<InventoryEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    const InventoryEntry* find(std::string_view prefix) const {
        auto it = lookup_.find(prefix);
        return it == lookup_.end() ? nullptr : &entries_[it->second];
    }

    /// Longest entry that is a prefix of `word`.
    const InventoryEntry* longest_match(std::string_view word) const {
        for (std::size_t len = max_prefix_length; len >= 1; --len) {
            auto p = unicode::prefix(word, len);
            if (!p) continue;
            if (auto* e = find(*p)) return e;
        }
        return nullptr;
    }

private:
    std::vector<InventoryEntry> entries_;
    std::map<std::string, std::size_t, std::less<>> lookup_;
};

/**
 * Common Bantu nominal prefixes with their usual classes.
 * Mirrors data/bantu_prefixes.jsonl.
 */
inline PrefixInventory default_inventory() {
    auto e = [](const char* p, std::initializer_list<int> ids, const char* source) {
        InventoryEntry entry{p, {}, source};
        for (int id : ids) entry.classes.emplace_back(id);
        return entry;
    };
    return PrefixInventory({
        e("mu", {1, 3}, "common"),
        e("wa", {2}, "common"),
        e("a", {2}, "coastal coalescence of wa-"),
        e("mi", {4}, "common"),
        e("ji", {5}, "common"),
        e("li", {5}, "common"),
        e("ma", {6}, "common"),
        e("ki", {7}, "common"),
        e("chi", {7}, "zone variant of ki-"),
        e("vi", {8}, "common"),
        e("zvi", {8}, "S-zone reflex of *bi-"),
        e("n", {9, 10}, "common"),
        e("u", {11, 14}, "common"),
        e("bu", {14}, "common"),
        e("ku", {15}, "common"),
        e("k'", {15}, "elided ku-"),
        e("pa", {16}, "common"),
        e("oku", {15}, "J-zone augment infinitive"),
    });
}

/**
 * Inventory file: one `{"prefix": str, "classes": [ids], "source": str}` per line.
 */
inline PrefixInventory parse_inventory(std::string_view text, const std::string& source, ClassUniverse universe = {}) {
    PrefixInventory inv;
    std::size_t lineno = 0;
    for (auto line : io::split_lines(text)) {
        ++lineno;
        auto record = io::parse_line(line, source, lineno);
        if (io::is_meta(record)) continue;
        InventoryEntry entry;
        try {
            entry.prefix = record.at("prefix").get<std::string>();
            for (const auto& c : record.at("classes")) entry.classes.push_back(io::class_from_json(c));
            entry.source = record.value("source", std::string("file"));
        } catch (const io::json::exception& e) {
            throw ValidationError(source + ":" + std::to_string(lineno) + ": bad inventory record (" + e.what() + ")");
        }
        inv.add(std::move(entry), universe);
    }
    return inv;
}

inline PrefixInventory load_inventory(const std::filesystem::path& path, ClassUniverse universe = {}) {
    return parse_inventory(io::read_file(path), path.string(), universe);
}

inline std::string render_inventory(const PrefixInventory& inv) {
    std::string out;
    for (const auto& e : inv.entries()) {
        io::json classes = io::json::array();
        for (auto c : e.classes) classes.push_back(c.id());
        out += io::json{{"prefix", e.prefix}, {"classes", classes}, {"source", e.source}}.dump();
        out += '\n';
    }
    return out;
}

struct ClusterProfile {
    std::size_t cluster_id = 0;
    std::size_t size = 0;
    std::string dominant_prefix;
    std::size_t dominant_count = 0;
    double consistency = 0;
    NounClass mapped_class = NounClass::unknown();
    bool mapped = false;
    bool ambiguous = false;
    std::map<std::string, std::size_t> prefix_histogram;
    /// Member words in the order supplied (the pipeline supplies them by descending frequency).
    std::vector<std::string> members;
};

/**
 * Count 1-3 character prefixes of the members and pick the dominant one: the best prefix of each
 * length (most frequent, then lexicographically first) competes on coverage, longer winning ties.
 */
inline ClusterProfile profile_cluster(const std::vector<std::string>& members, std::size_t cluster_id = 0) {
    if (members.empty()) {
        throw ValidationError("profile_cluster: cluster " + std::to_string(cluster_id) + " has no members");
    }
    ClusterProfile out;
    out.cluster_id = cluster_id;
    out.size = members.size();
    out.members = members;

    std::array<std::map<std::string, std::size_t>, max_prefix_length + 1> by_length;
    for (const auto& w : members) {
        if (w.empty()) {
            throw ValidationError("profile_cluster: empty member word");
        }
        for (std::size_t len = 1; len <= max_prefix_length; ++len) {
            auto p = unicode::prefix(w, len);
            if (!p) break;
            ++by_length[len][std::string(*p)];
        }
    }

    for (std::size_t len = max_prefix_length; len >= 1; --len) {
        const auto& counts = by_length[len];
        for (const auto& [prefix, count] : counts) {
            out.prefix_histogram[prefix] = count;
        }
        // Map order is lexicographic, so strict > keeps the first of equal counts.
        const std::pair<const std::string, std::size_t>* best = nullptr;
        for (const auto& kv : counts) {
            if (!best || kv.second > best->second) best = &kv;
        }
        if (best && best->second > out.dominant_count) {
            out.dominant_prefix = best->first;
            out.dominant_count = best->second;
        }
    }
    out.consistency = 100.0 * static_cast<double>(out.dominant_count) / static_cast<double>(out.size);
    return out;
}

/**
 * Map the dominant prefix through the inventory (longest matching entry, first listed class).
 * Entries with several classes set `ambiguous`; no match leaves the class unknown.
 */
inline ClusterProfile map_cluster(ClusterProfile profile, const PrefixInventory& inventory) {
    profile.mapped = true;
    profile.ambiguous = false;
    profile.mapped_class = NounClass::unknown();
    if (const auto* entry = inventory.longest_match(profile.dominant_prefix)) {
        profile.mapped_class = entry->classes.front();
        profile.ambiguous = entry->classes.size() > 1;
    }
    return profile;
}

/**
 * Group words by cluster id and profile each cluster. `words` must align with the assignments.
 */
inline std::vector<ClusterProfile> profile_clusters(const std::vector<std::string>& words, const Clustering& clustering) {
    if (words.size() != clustering.assignments.size()) {
        throw ValidationError("profile_clusters: words and assignments differ in length");
    }
    const auto k = static_cast<std::size_t>(clustering.centroids.rows());
    std::vector<std::vector<std::string>> members(k);
    for (std::size_t i = 0; i < words.size(); ++i) members[clustering.assignments[i]].push_back(words[i]);
    std::vector<ClusterProfile> out;
    for (std::size_t c = 0; c < k; ++c) {
        if (!members[c].empty()) out.push_back(profile_cluster(members[c], c));
    }
    return out;
}

/**
 * Source-attested prefixes: the dominant prefix of each labeled class. Classes sharing a dominant
 * prefix are merged, larger class first.
 */
inline PrefixInventory infer_inventory(const std::vector<std::pair<std::string, NounClass>>& labeled,
                                       ClassUniverse universe = {}) {
    std::map<NounClass, std::vector<std::string>> by_class;
    for (const auto& [w, c] : labeled) {
        if (!c.is_unknown()) by_class[c].push_back(w);
    }
    std::map<std::string, std::vector<std::pair<std::size_t, NounClass>>> merged;
    for (const auto& [cls, words] : by_class) {
        auto profile = profile_cluster(words);
        merged[profile.dominant_prefix].emplace_back(words.size(), cls);
    }
    PrefixInventory inv;
    for (auto& [prefix, classes] : merged) {
        std::stable_sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        InventoryEntry entry{prefix, {}, "source-attested"};
        for (const auto& [n, c] : classes) entry.classes.push_back(c);
        inv.add(std::move(entry), universe);
    }
    return inv;
}

inline PrefixInventory infer_inventory(const std::vector<WordEmbedding>& labeled, ClassUniverse universe = {}) {
    std::vector<std::pair<std::string, NounClass>> pairs;
    for (const auto& r : labeled) {
        if (r.label) pairs.emplace_back(r.word, *r.label);
    }
    return infer_inventory(pairs, universe);
}

struct InnovationOptions {
    double min_consistency = 90.0;
    std::size_t min_size = 20;
    /// Optional expected class per prefix; a mapped class that disagrees counts as an innovation.
    std::map<std::string, NounClass> expectations;
};

struct Innovation {
    std::size_t cluster_id = 0;
    std::string dominant_prefix;
    double consistency = 0;
    std::size_t size = 0;
    NounClass mapped_class = NounClass::unknown();
    std::string reason;
    std::vector<std::string> exemplars;
};

/**
 * A prefix is attested when a reference entry is a prefix of it (a longer spelling of a known
 * prefix) or it is a prefix of a reference entry (a cluster merging classes that share onsets).
 */
inline bool prefix_attested(const PrefixInventory& reference, std::string_view prefix) {
    if (reference.longest_match(prefix)) return true;
    for (const auto& e : reference.entries()) {
        if (e.prefix.starts_with(prefix)) return true;
    }
    return false;
}

/**
 * Clusters with a dominant prefix not attested in `reference`,
 * or mapped against a configured expectation, that pass the consistency and size thresholds.
 * Exemplars are the first ten members carrying the dominant prefix.
 */
inline std::vector<Innovation> detect_innovations(const std::vector<ClusterProfile>& profiles,
                                                  const PrefixInventory& reference,
                                                  const InnovationOptions& options = {}) {
    std::vector<Innovation> out;
    for (const auto& p : profiles) {
        if (p.consistency < options.min_consistency || p.size < options.min_size) continue;
        std::string reason;
        if (!prefix_attested(reference, p.dominant_prefix)) {
            reason = "prefix absent from reference inventory";
        } else if (auto it = options.expectations.find(p.dominant_prefix); it != options.expectations.end() &&
                                                                          it->second != p.mapped_class) {
            reason = "mapped class " + p.mapped_class.to_string() + " differs from expected " + it->second.to_string();
        } else {
            continue;
        }
        Innovation inn;
        inn.cluster_id = p.cluster_id;
        inn.dominant_prefix = p.dominant_prefix;
        inn.consistency = p.consistency;
        inn.size = p.size;
        inn.mapped_class = p.mapped_class;
        inn.reason = std::move(reason);
        for (const auto& w : p.members) {
            if (inn.exemplars.size() == 10) break;
            if (w.starts_with(p.dominant_prefix)) inn.exemplars.push_back(w);
        }
        out.push_back(std::move(inn));
    }
    return out;
}

enum class ClusterOutcome { mapped, unknown, innovation };

/**
 * Exactly one outcome per profile: innovation if flagged, else mapped if it has a class, else unknown.
 */
inline ClusterOutcome outcome(const ClusterProfile& profile, const std::vector<Innovation>& innovations) {
    for (const auto& inn : innovations) {
        if (inn.cluster_id == profile.cluster_id) return ClusterOutcome::innovation;
    }
    return profile.mapped_class.is_unknown() ? ClusterOutcome::unknown : ClusterOutcome::mapped;
}

/**
 * Each word takes its cluster's mapped class with confidence consistency / 100.
 */
inline std::vector<Prediction> cluster_predictions(const std::vector<std::string>& words, const Clustering& clustering,
                                                   const std::vector<ClusterProfile>& profiles) {
    if (words.size() != clustering.assignments.size()) {
        throw ValidationError("cluster_predictions: words and assignments differ in length");
    }
    std::map<std::size_t, const ClusterProfile*> by_id;
    for (const auto& p : profiles) by_id[p.cluster_id] = &p;
    std::vector<Prediction> out;
    out.reserve(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
        auto it = by_id.find(clustering.assignments[i]);
        if (it == by_id.end() || !it->second->mapped) {
            throw ValidationError("cluster_predictions: cluster " + std::to_string(clustering.assignments[i]) +
                                  " has no mapped profile");
        }
        out.push_back(Prediction{words[i], it->second->mapped_class, it->second->consistency / 100.0, Method::clustering});
    }
    return out;
}

inline io::json profile_to_json(const ClusterProfile& p) {
    return io::json{
        {"cluster", p.cluster_id},
        {"size", p.size},
        {"dominant_prefix", p.dominant_prefix},
        {"consistency", p.consistency},
        {"class", io::class_to_json(p.mapped_class)},
        {"ambiguous", p.ambiguous},
        {"prefix_histogram", p.prefix_histogram},
    };
}

inline io::json innovation_to_json(const Innovation& inn) {
    return io::json{
        {"cluster", inn.cluster_id},
        {"dominant_prefix", inn.dominant_prefix},
        {"consistency", inn.consistency},
        {"size", inn.size},
        {"class", io::class_to_json(inn.mapped_class)},
        {"reason", inn.reason},
        {"exemplars", inn.exemplars},
    };
}

}

#endif
