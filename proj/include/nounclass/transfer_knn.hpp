#ifndef NOUNCLASS_TRANSFER_KNN_HPP
#define NOUNCLASS_TRANSFER_KNN_HPP

#include <map>
#include <string>
#include <vector>

#include "core.hpp"
#include "embedding_store.hpp"
#include "io.hpp"

/**
 * @file transfer_knn.hpp
 *
 * @brief Cross-lingual K-nearest-neighbor noun class transfer.
 */

namespace nounclass {

struct LabeledNeighbor {
    std::string word;
    NounClass noun_class;
    double similarity = 0;
};

/**
 * Result of classifying one target word.
 * `confidence` is always `vote_conf * sim_conf`.
 */
struct TransferPrediction {
    std::string word;
    NounClass predicted_class;
    double confidence = 0;
    double vote_conf = 0;
    double sim_conf = 0;
    std::vector<LabeledNeighbor> neighbors;

    Prediction as_prediction() const {
        return Prediction{word, predicted_class, confidence, Method::transfer};
    }
};

struct TransferOptions {
    std::size_t k = 5;
    double threshold = 0.60;
    /// Drop source entries spelled like the target (same-language experiments).
    bool exclude_self = false;
};

/**
 * @brief Labeled source index; every entry carries a class.
 */
class LabeledIndex {
public:
    explicit LabeledIndex(std::vector<WordEmbedding> records) {
        for (const auto& r : records) {
            if (!r.label || r.label->is_unknown()) {
                throw ValidationError("source entry '" + r.word + "' has no class label");
            }
        }
        index_ = EmbeddingIndex(std::move(records));
        if (index_.empty()) {
            throw ValidationError("source index is empty");
        }
    }

    const EmbeddingIndex& index() const { return index_; }
    NounClass label(std::size_t i) const { return *index_.record(i).label; }

private:
    EmbeddingIndex index_;
};

/**
 * Drop unlabeled records (returned as a count) and build a labeled index.
 */
inline LabeledIndex make_labeled_index(std::vector<WordEmbedding> records, std::size_t* dropped = nullptr) {
    std::vector<WordEmbedding> kept;
    std::size_t n_dropped = 0;
    for (auto& r : records) {
        if (r.label && !r.label->is_unknown()) {
            kept.push_back(std::move(r));
        } else {
            ++n_dropped;
        }
    }
    if (dropped) *dropped = n_dropped;
    return LabeledIndex(std::move(kept));
}

/**
 * Plurality vote over the k nearest labeled neighbors.
 *
 * Ties in vote count go to the class with the larger summed similarity, then to the lower id.
 * `vote_conf` is winner votes over neighbors consulted; `sim_conf` is the mean similarity of
 * the winner's supporters clamped to [0, 1]. Throws ValidationError on a zero target vector.
 */
inline TransferPrediction classify_word(const WordEmbedding& target, const LabeledIndex& source,
                                        const TransferOptions& options = {}) {
    const auto& index = source.index();
    std::size_t request = options.exclude_self ? options.k + 1 : options.k;
    auto found = index.nearest(target.vector, request);

    TransferPrediction out;
    out.word = target.word;
    for (const auto& n : found.neighbors) {
        if (options.exclude_self && n.word == target.word) continue;
        if (out.neighbors.size() == options.k) break;
        out.neighbors.push_back(LabeledNeighbor{n.word, source.label(n.index), n.similarity});
    }
    if (out.neighbors.empty()) {
        throw ValidationError("no neighbors available for '" + target.word + "'");
    }

    struct Tally {
        std::size_t votes = 0;
        double sim_sum = 0;
    };
    std::map<NounClass, Tally> tallies;
    for (const auto& n : out.neighbors) {
        auto& t = tallies[n.noun_class];
        ++t.votes;
        t.sim_sum += n.similarity;
    }

    // std::map iterates by ascending id, so strict comparisons keep the lower id on full ties.
    auto best = tallies.begin();
    for (auto it = std::next(tallies.begin()); it != tallies.end(); ++it) {
        const auto& a = it->second;
        const auto& b = best->second;
        if (a.votes > b.votes || (a.votes == b.votes && a.sim_sum > b.sim_sum)) {
            best = it;
        }
    }

    out.predicted_class = best->first;
    out.vote_conf = static_cast<double>(best->second.votes) / static_cast<double>(out.neighbors.size());
    out.sim_conf = std::clamp(best->second.sim_sum / static_cast<double>(best->second.votes), 0.0, 1.0);
    out.confidence = out.vote_conf * out.sim_conf;
    return out;
}

struct TransferRun {
    std::vector<TransferPrediction> retained;
    std::size_t attempted = 0;
    std::size_t classified = 0;
    std::size_t skipped_degenerate = 0;
    double mean_confidence_all = 0;
    double mean_confidence_retained = 0;
};

/**
 * Classify every target and keep predictions with confidence at or above the threshold,
 * in input order. Zero-vector targets are skipped and counted.
 */
inline TransferRun classify_corpus(const std::vector<WordEmbedding>& targets, const LabeledIndex& source,
                                   const TransferOptions& options = {}) {
    TransferRun run;
    double sum_all = 0;
    double sum_kept = 0;
    for (const auto& t : targets) {
        ++run.attempted;
        if (squared_norm(t.vector) == 0) {
            ++run.skipped_degenerate;
            continue;
        }
        auto p = classify_word(t, source, options);
        ++run.classified;
        sum_all += p.confidence;
        if (p.confidence >= options.threshold) {
            sum_kept += p.confidence;
            run.retained.push_back(std::move(p));
        }
    }
    if (run.classified) run.mean_confidence_all = sum_all / static_cast<double>(run.classified);
    if (!run.retained.empty()) run.mean_confidence_retained = sum_kept / static_cast<double>(run.retained.size());
    return run;
}

inline io::json transfer_to_json(const TransferPrediction& p) {
    io::json neighbors = io::json::array();
    for (const auto& n : p.neighbors) {
        neighbors.push_back(io::json{{"word", n.word}, {"class", io::class_to_json(n.noun_class)}, {"similarity", n.similarity}});
    }
    return io::json{
        {"word", p.word},
        {"class", io::class_to_json(p.predicted_class)},
        {"confidence", p.confidence},
        {"vote_conf", p.vote_conf},
        {"sim_conf", p.sim_conf},
        {"neighbors", neighbors},
        {"method", "transfer"},
    };
}

inline io::json transfer_stats_to_json(const TransferRun& run) {
    return io::json{
        {"attempted", run.attempted},
        {"classified", run.classified},
        {"retained", run.retained.size()},
        {"skipped_degenerate", run.skipped_degenerate},
        {"mean_confidence_all", run.mean_confidence_all},
        {"mean_confidence_retained", run.mean_confidence_retained},
    };
}

}

#endif
