#ifndef NOUNCLASS_PIPELINE_HPP
#define NOUNCLASS_PIPELINE_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "corpus.hpp"
#include "embedding_store.hpp"
#include "ensemble.hpp"
#include "io.hpp"
#include "kmeans.hpp"
#include "prefix_mapper.hpp"
#include "reduce.hpp"
#include "report.hpp"
#include "synth_lang.hpp"
#include "transfer_knn.hpp"

/**
 * @file pipeline.hpp
 *
 * @brief File-based stages over a workspace directory.
 *
 * Each stage reads its inputs from files and writes its outputs into the workspace, so stages can
 * be run and tested in isolation. Every artifact opens with a `{"meta": ...}` header carrying the
 * tool version, stage name and flags (seed included). Headers hold no timestamps or host data.
 */

namespace nounclass::pipeline {

namespace fs = std::filesystem;
using io::json;

namespace files {
inline constexpr const char* candidates = "candidates.jsonl";
inline constexpr const char* transfer = "transfer.jsonl";
inline constexpr const char* clusters = "clusters.jsonl";
inline constexpr const char* profiles = "profiles.jsonl";
inline constexpr const char* clustering = "clustering.jsonl";
inline constexpr const char* innovations = "innovations.jsonl";
inline constexpr const char* ensemble = "ensemble.jsonl";
inline constexpr const char* rejected = "ensemble_rejected.jsonl";
inline constexpr const char* summary = "summary.json";
inline constexpr const char* report = "report.txt";
inline constexpr const char* plot = "clusters.svg";
}

struct Config {
    fs::path workspace = ".";

    fs::path corpus;
    fs::path source;
    fs::path target;
    std::optional<fs::path> paradigms;
    std::optional<fs::path> stoplist;
    std::optional<fs::path> inventory;
    std::optional<fs::path> reference_inventory;
    std::optional<fs::path> gold;
    std::optional<fs::path> generated_forms;
    std::optional<fs::path> reference_values;

    CandidateOptions candidates;
    TransferOptions transfer;
    Reduction reduction = Reduction::pca;
    std::size_t dim = 50;
    UmapParameters umap;
    KMeansOptions kmeans;
    InnovationOptions innovation;
    EnsembleOptions ensemble;
    bool plot = true;

    fs::path in_workspace(const char* name) const { return workspace / name; }
};

struct Artifact {
    json meta;
    std::vector<json> records;
};

inline Artifact read_artifact(const fs::path& path) {
    Artifact out;
    const auto text = io::read_file(path);
    std::size_t lineno = 0;
    for (auto line : io::split_lines(text)) {
        ++lineno;
        auto record = io::parse_line(line, path.string(), lineno);
        if (io::is_meta(record)) {
            out.meta = record.at("meta");
        } else {
            out.records.push_back(std::move(record));
        }
    }
    return out;
}

inline void write_artifact(const fs::path& path, const json& meta, const std::vector<json>& records) {
    io::write_file(path, io::render_jsonl(meta, records));
}

namespace detail {

inline std::string path_flag(const std::optional<fs::path>& p) {
    return p ? p->generic_string() : std::string();
}

inline json with_stats(json meta, json stats) {
    meta["stats"] = std::move(stats);
    return meta;
}

inline std::vector<std::string> words_of(const std::vector<json>& records) {
    std::vector<std::string> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.at("word").get<std::string>());
    return out;
}

inline void require(const fs::path& p, const char* what) {
    if (p.empty()) {
        throw ValidationError(std::string("missing required input: ") + what);
    }
}

}

/**
 * Source embeddings with labels. A paradigm file, when given, overrides inline labels.
 */
inline EmbeddingDump load_source(const Config& cfg) {
    detail::require(cfg.source, "source embeddings");
    auto dump = load_embeddings(cfg.source);
    if (cfg.paradigms) {
        attach_labels(dump, load_paradigms(*cfg.paradigms));
    }
    return dump;
}

/// Words from a previous extract stage, if that stage has run.
inline std::optional<std::vector<std::string>> workspace_candidates(const Config& cfg) {
    const auto path = cfg.in_workspace(files::candidates);
    if (!fs::exists(path)) return std::nullopt;
    return detail::words_of(read_artifact(path).records);
}

struct TargetSelection {
    std::vector<WordEmbedding> records;
    std::size_t without_embedding = 0;
};

/**
 * Target embeddings restricted to the candidate list (candidate order) when one exists,
 * otherwise every target record in file order.
 */
inline TargetSelection select_targets(const EmbeddingDump& target, const std::optional<std::vector<std::string>>& candidates) {
    TargetSelection out;
    if (!candidates) {
        out.records = target.records;
        return out;
    }
    std::map<std::string_view, const WordEmbedding*> by_word;
    for (const auto& r : target.records) by_word.emplace(r.word, &r);
    for (const auto& w : *candidates) {
        auto it = by_word.find(w);
        if (it == by_word.end()) {
            ++out.without_embedding;
        } else {
            out.records.push_back(*it->second);
        }
    }
    return out;
}

inline CandidateList run_extract(const Config& cfg) {
    detail::require(cfg.corpus, "corpus");
    auto options = cfg.candidates;
    if (cfg.stoplist) {
        for (auto& w : parse_word_list(io::read_file(*cfg.stoplist))) options.stoplist.insert(std::move(w));
    }
    auto list = extract_candidates(io::read_file(cfg.corpus), options);
    json flags{{"corpus", cfg.corpus.generic_string()}, {"min_len", options.min_len}, {"min_freq", options.min_freq},
               {"stoplist", detail::path_flag(cfg.stoplist)}, {"seed", cfg.kmeans.seed}};
    std::vector<json> records;
    records.reserve(list.candidates.size());
    for (const auto& c : list.candidates) records.push_back(json{{"word", c.word}, {"frequency", c.frequency}});
    write_artifact(cfg.in_workspace(files::candidates),
                   detail::with_stats(io::make_meta("extract", flags), corpus_stats_to_json(list.stats)), records);
    return list;
}

inline TransferRun run_transfer(const Config& cfg) {
    detail::require(cfg.target, "target embeddings");
    const auto source = load_source(cfg);
    std::size_t unlabeled = 0;
    const auto index = make_labeled_index(source.records, &unlabeled);
    const auto selection = select_targets(load_embeddings(cfg.target), workspace_candidates(cfg));
    auto run = classify_corpus(selection.records, index, cfg.transfer);

    json flags{{"source", cfg.source.generic_string()}, {"target", cfg.target.generic_string()},
               {"paradigms", detail::path_flag(cfg.paradigms)}, {"k", cfg.transfer.k},
               {"threshold", cfg.transfer.threshold}, {"exclude_self", cfg.transfer.exclude_self}, {"seed", cfg.kmeans.seed}};
    auto stats = transfer_stats_to_json(run);
    stats["source_unlabeled"] = unlabeled;
    stats["candidates_without_embedding"] = selection.without_embedding;
    std::vector<json> records;
    records.reserve(run.retained.size());
    for (const auto& p : run.retained) records.push_back(transfer_to_json(p));
    write_artifact(cfg.in_workspace(files::transfer), detail::with_stats(io::make_meta("transfer", flags), stats), records);
    return run;
}

struct ClusterRun {
    ReducedMatrix reduced;
    Clustering clustering;
};

inline ClusterRun run_cluster(const Config& cfg) {
    detail::require(cfg.target, "target embeddings");
    const auto selection = select_targets(load_embeddings(cfg.target), workspace_candidates(cfg));
    std::vector<WordEmbedding> usable;
    for (const auto& r : selection.records) {
        if (squared_norm(r.vector) > 0) usable.push_back(r);
    }
    ClusterRun out;
    if (cfg.reduction == Reduction::umap) {
        auto params = cfg.umap;
        params.seed = cfg.kmeans.seed;
        out.reduced = reduce_umap(usable, cfg.dim, params);
    } else {
        out.reduced = reduce_pca(usable, cfg.dim);
    }
    out.clustering = kmeans(out.reduced, cfg.kmeans);

    json flags{{"target", cfg.target.generic_string()}, {"reduction", std::string(reduction_name(cfg.reduction))},
               {"dim", cfg.dim}, {"clusters", cfg.kmeans.k}, {"seed", cfg.kmeans.seed},
               {"max_iter", cfg.kmeans.max_iter}, {"tol", cfg.kmeans.tol}, {"n_init", cfg.kmeans.n_init}};
    if (cfg.reduction == Reduction::umap) {
        flags["n_neighbors"] = cfg.umap.n_neighbors;
        flags["min_dist"] = cfg.umap.min_dist;
    }
    auto meta = io::make_meta("cluster", flags);
    meta["clustering"] = clustering_meta(out.clustering, out.reduced, cfg.kmeans);
    meta["stats"] = json{{"points", usable.size()},
                         {"skipped_zero_vectors", selection.records.size() - usable.size()},
                         {"candidates_without_embedding", selection.without_embedding}};

    std::vector<json> records;
    records.reserve(out.reduced.words.size());
    const bool has_y = out.reduced.coords.cols() > 1;
    for (std::size_t i = 0; i < out.reduced.words.size(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        json xy = json::array({out.reduced.coords(row, 0), has_y ? out.reduced.coords(row, 1) : 0.0});
        records.push_back(json{{"word", out.reduced.words[i]}, {"cluster", out.clustering.assignments[i]}, {"xy", xy}});
    }
    write_artifact(cfg.in_workspace(files::clusters), meta, records);
    return out;
}

/// Words and assignments read back from a cluster artifact.
struct ClusterAssignments {
    std::vector<std::string> words;
    Clustering clustering;
    std::vector<std::pair<double, double>> xy;
};

inline ClusterAssignments read_clusters(const fs::path& path) {
    const auto art = read_artifact(path);
    ClusterAssignments out;
    std::size_t k = 0;
    try {
        k = art.meta.at("clustering").at("k").get<std::size_t>();
        for (const auto& r : art.records) {
            out.words.push_back(r.at("word").get<std::string>());
            const auto c = r.at("cluster").get<std::size_t>();
            if (c >= k) {
                throw ValidationError(path.string() + ": cluster id " + std::to_string(c) + " out of range");
            }
            out.clustering.assignments.push_back(c);
            const auto& xy = r.at("xy");
            out.xy.emplace_back(xy.at(0).get<double>(), xy.at(1).get<double>());
        }
    } catch (const json::exception& e) {
        throw ValidationError(path.string() + ": bad cluster artifact (" + e.what() + ")");
    }
    out.clustering.centroids = RowMatrix(static_cast<Eigen::Index>(k), 0);
    return out;
}

/**
 * Mapping inventory: the configured file, else the built-in default.
 */
inline PrefixInventory mapping_inventory(const Config& cfg) {
    return cfg.inventory ? load_inventory(*cfg.inventory) : default_inventory();
}

/**
 * Reference inventory for innovation detection: the configured file, else the prefixes attested
 * in the labeled source data.
 */
inline PrefixInventory reference_inventory(const Config& cfg) {
    if (cfg.reference_inventory) return load_inventory(*cfg.reference_inventory);
    if (cfg.source.empty()) {
        throw ValidationError("innovation detection needs --reference-inventory or labeled --source embeddings");
    }
    return infer_inventory(load_source(cfg).records);
}

struct MapRun {
    std::vector<ClusterProfile> profiles;
    std::vector<Innovation> innovations;
    std::vector<Prediction> predictions;
};

inline MapRun run_map(const Config& cfg) {
    const auto clusters = read_clusters(cfg.in_workspace(files::clusters));
    const auto inventory = mapping_inventory(cfg);
    const auto reference = reference_inventory(cfg);

    MapRun out;
    out.profiles = profile_clusters(clusters.words, clusters.clustering);
    for (auto& p : out.profiles) p = map_cluster(std::move(p), inventory);
    out.innovations = detect_innovations(out.profiles, reference, cfg.innovation);
    out.predictions = cluster_predictions(clusters.words, clusters.clustering, out.profiles);

    json expectations = json::object();
    for (const auto& [prefix, cls] : cfg.innovation.expectations) expectations[prefix] = io::class_to_json(cls);
    json flags{{"inventory", cfg.inventory ? cfg.inventory->generic_string() : std::string("builtin")},
               {"reference_inventory", cfg.reference_inventory ? cfg.reference_inventory->generic_string() : std::string("source-attested")},
               {"source", cfg.source.generic_string()}, {"paradigms", detail::path_flag(cfg.paradigms)},
               {"min_consistency", cfg.innovation.min_consistency}, {"min_size", cfg.innovation.min_size},
               {"expectations", expectations}, {"seed", cfg.kmeans.seed}};

    std::vector<json> profiles;
    std::size_t unknown = 0;
    for (const auto& p : out.profiles) {
        profiles.push_back(profile_to_json(p));
        if (p.mapped_class.is_unknown()) ++unknown;
    }
    std::vector<json> predictions;
    for (const auto& p : out.predictions) predictions.push_back(io::prediction_to_json(p));
    std::vector<json> innovations;
    for (const auto& inn : out.innovations) innovations.push_back(innovation_to_json(inn));

    const json stats{{"clusters", out.profiles.size()}, {"unknown_clusters", unknown}, {"innovations", out.innovations.size()},
                     {"inventory_entries", inventory.entries().size()}, {"reference_entries", reference.entries().size()}};
    write_artifact(cfg.in_workspace(files::profiles), detail::with_stats(io::make_meta("map", flags), stats), profiles);
    write_artifact(cfg.in_workspace(files::clustering), io::make_meta("map", flags), predictions);
    write_artifact(cfg.in_workspace(files::innovations), io::make_meta("map", flags), innovations);
    return out;
}

inline std::vector<Prediction> read_predictions(const fs::path& path) {
    return io::load_predictions(path);
}

inline EnsembleOutput run_ensemble(const Config& cfg) {
    const auto transfer = read_predictions(cfg.in_workspace(files::transfer));
    const auto clustering = read_predictions(cfg.in_workspace(files::clustering));
    auto out = ensemble_vote(transfer, clustering, cfg.ensemble);

    json flags{{"weights", cfg.ensemble.weights}, {"min_conf", cfg.ensemble.min_conf},
               {"require_multi", cfg.ensemble.require_multi}, {"seed", cfg.kmeans.seed}};
    std::vector<json> accepted;
    for (const auto& r : out.accepted) accepted.push_back(ensemble_to_json(r));
    std::vector<json> rejected;
    for (const auto& r : out.rejected) rejected.push_back(ensemble_to_json(r));
    const json stats{{"accepted", accepted.size()}, {"rejected", rejected.size()}};
    write_artifact(cfg.in_workspace(files::ensemble), detail::with_stats(io::make_meta("ensemble", flags), stats), accepted);
    write_artifact(cfg.in_workspace(files::rejected), detail::with_stats(io::make_meta("ensemble", flags), stats), rejected);
    return out;
}

inline EnsembleResult ensemble_from_json(const json& r) {
    EnsembleResult out;
    out.word = r.at("word").get<std::string>();
    out.final_class = io::class_from_json(r.at("class"));
    out.combined_confidence = r.at("confidence").get<double>();
    out.raw_score = r.at("raw_score").get<double>();
    out.weight_sum = r.at("weight_sum").get<double>();
    out.agreed = r.at("agreed").get<bool>();
    out.reject_reason = r.value("reason", std::string());
    for (const auto& [name, v] : r.at("per_method").items()) {
        auto m = parse_method(name);
        if (!m) throw ValidationError("unknown method '" + name + "' in ensemble record");
        out.per_method[*m] = MethodVote{io::class_from_json(v.at("class")), v.at("confidence").get<double>(), v.at("weight").get<double>()};
    }
    return out;
}

inline std::vector<EnsembleResult> read_ensemble(const fs::path& path) {
    std::vector<EnsembleResult> out;
    try {
        for (const auto& r : read_artifact(path).records) out.push_back(ensemble_from_json(r));
    } catch (const json::exception& e) {
        throw ValidationError(path.string() + ": bad ensemble record (" + e.what() + ")");
    }
    return out;
}

inline std::vector<ClusterProfile> read_profiles(const fs::path& path) {
    std::vector<ClusterProfile> out;
    try {
        for (const auto& r : read_artifact(path).records) {
            ClusterProfile p;
            p.cluster_id = r.at("cluster").get<std::size_t>();
            p.size = r.at("size").get<std::size_t>();
            p.dominant_prefix = r.at("dominant_prefix").get<std::string>();
            p.consistency = r.at("consistency").get<double>();
            p.mapped_class = io::class_from_json(r.at("class"));
            p.mapped = true;
            p.ambiguous = r.at("ambiguous").get<bool>();
            p.prefix_histogram = r.at("prefix_histogram").get<std::map<std::string, std::size_t>>();
            p.dominant_count = p.prefix_histogram.count(p.dominant_prefix) ? p.prefix_histogram.at(p.dominant_prefix) : 0;
            out.push_back(std::move(p));
        }
    } catch (const json::exception& e) {
        throw ValidationError(path.string() + ": bad profile record (" + e.what() + ")");
    }
    return out;
}

inline std::vector<Innovation> read_innovations(const fs::path& path) {
    std::vector<Innovation> out;
    try {
        for (const auto& r : read_artifact(path).records) {
            Innovation inn;
            inn.cluster_id = r.at("cluster").get<std::size_t>();
            inn.dominant_prefix = r.at("dominant_prefix").get<std::string>();
            inn.consistency = r.at("consistency").get<double>();
            inn.size = r.at("size").get<std::size_t>();
            inn.mapped_class = io::class_from_json(r.at("class"));
            inn.reason = r.at("reason").get<std::string>();
            inn.exemplars = r.at("exemplars").get<std::vector<std::string>>();
            out.push_back(std::move(inn));
        }
    } catch (const json::exception& e) {
        throw ValidationError(path.string() + ": bad innovation record (" + e.what() + ")");
    }
    return out;
}

/// Gold labels in the paradigm file format.
inline std::map<std::string, NounClass> load_gold(const fs::path& path) {
    const auto set = load_paradigms(path);
    return {set.entries.begin(), set.entries.end()};
}

/// Generated surface forms: `{"word": str, "form": str}` per line.
inline std::map<std::string, std::string> load_generated_forms(const fs::path& path) {
    std::map<std::string, std::string> out;
    for (const auto& r : read_artifact(path).records) {
        try {
            out.emplace(unicode::normalize_word(r.at("word").get<std::string>()),
                        unicode::normalize_word(r.at("form").get<std::string>()));
        } catch (const json::exception& e) {
            throw ValidationError(path.string() + ": bad generated-form record (" + e.what() + ")");
        }
    }
    return out;
}

inline json run_report(const Config& cfg) {
    const auto transfer = read_predictions(cfg.in_workspace(files::transfer));
    const auto clustering = read_predictions(cfg.in_workspace(files::clustering));
    const auto accepted = read_ensemble(cfg.in_workspace(files::ensemble));
    const auto rejected = read_ensemble(cfg.in_workspace(files::rejected));
    const auto profiles = read_profiles(cfg.in_workspace(files::profiles));
    const auto innovations = read_innovations(cfg.in_workspace(files::innovations));

    SummaryInputs in;
    in.transfer = &transfer;
    in.clustering = &clustering;
    in.accepted = &accepted;
    in.rejected = &rejected;
    in.profiles = &profiles;
    in.innovations = &innovations;
    auto summary = discovery_summary(in);

    std::vector<Prediction> final_predictions;
    for (const auto& r : accepted) final_predictions.push_back(Prediction{r.word, r.final_class, r.combined_confidence, Method::transfer});
    if (cfg.gold) {
        const auto gold = load_gold(*cfg.gold);
        summary["label_accuracy"] = accuracy_to_json(label_accuracy(final_predictions, gold));
        summary["label_accuracy_by_method"] = json{{"transfer", accuracy_to_json(label_accuracy(transfer, gold))},
                                                   {"clustering", accuracy_to_json(label_accuracy(clustering, gold))}};
    }
    if (cfg.generated_forms) {
        const auto check = internal_consistency(final_predictions, load_generated_forms(*cfg.generated_forms));
        summary["internal_consistency"] = json{{"percent", optional_json(check.percent())}, {"matched", check.matched},
                                               {"with_form", check.with_form}, {"missing_form", check.missing_form}};
    }
    json reference = nullptr;
    if (cfg.reference_values) reference = json::parse(io::read_file(*cfg.reference_values));

    json flags{{"gold", detail::path_flag(cfg.gold)}, {"generated_forms", detail::path_flag(cfg.generated_forms)},
               {"plot", cfg.plot}, {"seed", cfg.kmeans.seed}};
    const auto meta = io::make_meta("report", flags);
    json document{{"meta", meta}, {"summary", summary}};
    io::write_file(cfg.in_workspace(files::summary), document.dump(2) + "\n");
    io::write_file(cfg.in_workspace(files::report), "# " + json{{"meta", meta}}.dump() + "\n" + render_text_report(summary, reference));
    if (cfg.plot) {
        const auto clusters = read_clusters(cfg.in_workspace(files::clusters));
        auto svg = render_scatter_svg(clusters.xy, clusters.clustering.assignments);
        svg.insert(svg.find('\n') + 1, "<!-- " + json{{"meta", meta}}.dump() + " -->\n");
        io::write_file(cfg.in_workspace(files::plot), svg);
    }
    return summary;
}

/**
 * extract, transfer, cluster, map, ensemble and report in sequence.
 */
inline json run_pipeline(const Config& cfg) {
    run_extract(cfg);
    run_transfer(cfg);
    run_cluster(cfg);
    run_map(cfg);
    run_ensemble(cfg);
    return run_report(cfg);
}

enum class BaselineKind { frequency, random };

/**
 * Baseline predictions for `targets` from the source class distribution, written to
 * `baseline_<kind>.jsonl`.
 */
inline std::vector<Prediction> run_baseline(const Config& cfg, BaselineKind kind, const std::vector<std::string>& targets) {
    std::vector<std::pair<std::string, NounClass>> labeled;
    if (cfg.paradigms && cfg.source.empty()) {
        labeled = load_paradigms(*cfg.paradigms).entries;
    } else {
        for (const auto& r : load_source(cfg).records) {
            if (r.label && !r.label->is_unknown()) labeled.emplace_back(r.word, *r.label);
        }
    }
    const auto distribution = class_distribution(labeled);
    std::vector<Prediction> out;
    const char* name = kind == BaselineKind::frequency ? "frequency" : "random";
    if (kind == BaselineKind::frequency) {
        out = frequency_baseline(distribution, targets);
    } else {
        std::set<NounClass> classes;
        for (const auto& [c, n] : distribution) classes.insert(c);
        out = random_baseline(classes, targets, cfg.kmeans.seed);
    }
    json flags{{"kind", name}, {"source", cfg.source.generic_string()}, {"paradigms", detail::path_flag(cfg.paradigms)},
               {"seed", cfg.kmeans.seed}, {"targets", targets.size()}};
    std::vector<json> records;
    for (const auto& p : out) records.push_back(io::prediction_to_json(p));
    write_artifact(cfg.workspace / (std::string("baseline_") + name + ".jsonl"), io::make_meta("baseline", flags), records);
    return out;
}

/**
 * Write a synthetic pair: labeled source and unlabeled target embeddings, source paradigms,
 * target gold labels (paradigm format), corpus text, planted inventory and manifest.
 */
inline void write_synth(const synth::Spec& spec, const synth::Pair& pair, const fs::path& dir, const std::string& preset_name) {
    json flags = synth::spec_to_json(spec);
    flags["preset"] = preset_name;
    const auto meta = io::make_meta("synth", flags);
    const json header{{"meta", meta}};
    io::write_file(dir / "source.embjsonl", render_embeddings(pair.source, header));
    io::write_file(dir / "target.embjsonl", render_embeddings(pair.target, header));

    LabeledParadigmSet source_labels{pair.source.lang, {}};
    for (const auto& r : pair.source.records) source_labels.entries.emplace_back(r.word, *r.label);
    LabeledParadigmSet gold{pair.target.lang, {}};
    for (const auto& t : pair.truth) gold.entries.emplace_back(t.word, t.noun_class);
    io::write_file(dir / "source_paradigms.jsonl", render_paradigms(source_labels));
    io::write_file(dir / "gold.jsonl", render_paradigms(gold));

    std::vector<json> truth;
    for (const auto& t : pair.truth) truth.push_back(synth::truth_to_json(t));
    write_artifact(dir / "truth.jsonl", meta, truth);
    io::write_file(dir / "corpus.txt", pair.corpus);
    io::write_file(dir / "inventory.jsonl", json{{"meta", meta}}.dump() + "\n" + render_inventory(pair.source_inventory));
    io::write_file(dir / "manifest.json", json{{"meta", meta}, {"manifest", synth::manifest(spec, pair)}}.dump(2) + "\n");
}

}

#endif
