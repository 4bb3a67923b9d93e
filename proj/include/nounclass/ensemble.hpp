#ifndef NOUNCLASS_ENSEMBLE_HPP
#define NOUNCLASS_ENSEMBLE_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core.hpp"
#include "io.hpp"
#include "rng.hpp"

/**
 * @file ensemble.hpp
 *
 * @brief Weighted multi-method voting, cross-method agreement and the two reference baselines.
 */

namespace nounclass {

struct EnsembleOptions {
    std::map<std::string, double> weights{{"transfer", 1.0}, {"clustering", 0.8}};
    double min_conf = 0.70;
    /// Only accept words predicted by at least two methods.
    bool require_multi = false;
};

struct MethodVote {
    NounClass noun_class;
    double confidence = 0;
    double weight = 0;
};

/**
 * One scored word.
 *
 * `raw_score` is the winning class's sum of weight x confidence; `combined_confidence` divides it
 * by the summed weight of the methods that predicted the word.
 */
struct EnsembleResult {
    std::string word;
    NounClass final_class;
    double combined_confidence = 0;
    double raw_score = 0;
    double weight_sum = 0;
    std::map<Method, MethodVote> per_method;
    bool agreed = false;
    std::string reject_reason;
};

struct EnsembleOutput {
    std::vector<EnsembleResult> accepted;
    std::vector<EnsembleResult> rejected;
};

namespace detail {

inline std::map<Method, double> resolve_weights(const std::map<std::string, double>& weights) {
    std::map<Method, double> out;
    for (const auto& [name, w] : weights) {
        auto m = parse_method(name);
        if (!m || (*m != Method::transfer && *m != Method::clustering)) {
            throw ValidationError("unknown method '" + name + "' in ensemble weights");
        }
        if (!std::isfinite(w) || w <= 0) {
            throw ValidationError("ensemble weight for '" + name + "' must be positive");
        }
        out[*m] = w;
    }
    return out;
}

}

/**
 * Score every word predicted by at least one method. Predictions with class "unknown" do not vote.
 * Per class: score = sum over methods of weight x confidence; the argmax wins (lower id on ties).
 * Results at or above `min_conf` are accepted, the rest rejected with a reason.
 * Output is ordered by word.
 */
inline EnsembleOutput ensemble_vote(const std::vector<std::pair<Method, const std::vector<Prediction>*>>& inputs,
                                    const EnsembleOptions& options = {}) {
    const auto weights = detail::resolve_weights(options.weights);

    std::map<std::string, EnsembleResult> by_word;
    for (const auto& [method, predictions] : inputs) {
        auto w = weights.find(method);
        if (w == weights.end()) {
            throw ValidationError("no ensemble weight for method '" + std::string(method_name(method)) + "'");
        }
        for (const auto& p : *predictions) {
            if (p.noun_class.is_unknown()) continue;
            if (!(p.confidence >= 0 && p.confidence <= 1)) {
                throw ValidationError("confidence for '" + p.word + "' outside [0, 1]");
            }
            auto& r = by_word[p.word];
            r.word = p.word;
            if (!r.per_method.emplace(method, MethodVote{p.noun_class, p.confidence, w->second}).second) {
                throw ValidationError("duplicate " + std::string(method_name(method)) + " prediction for '" + p.word + "'");
            }
        }
    }

    EnsembleOutput out;
    for (auto& [word, r] : by_word) {
        std::map<NounClass, double> scores;
        r.weight_sum = 0;
        for (const auto& [m, vote] : r.per_method) {
            scores[vote.noun_class] += vote.weight * vote.confidence;
            r.weight_sum += vote.weight;
        }
        auto best = scores.begin();
        for (auto it = std::next(scores.begin()); it != scores.end(); ++it) {
            if (it->second > best->second) best = it;
        }
        r.final_class = best->first;
        r.raw_score = best->second;
        r.combined_confidence = std::clamp(r.raw_score / r.weight_sum, 0.0, 1.0);
        r.agreed = scores.size() == 1;
        if (r.agreed) {
            // A weighted mean stays within the range of its terms; keep rounding from breaking that.
            double lo = 1, hi = 0;
            for (const auto& [m, vote] : r.per_method) {
                lo = std::min(lo, vote.confidence);
                hi = std::max(hi, vote.confidence);
            }
            r.combined_confidence = std::clamp(r.combined_confidence, lo, hi);
        }

        if (options.require_multi && r.per_method.size() < 2) {
            r.reject_reason = "single method";
        } else if (r.combined_confidence < options.min_conf) {
            r.reject_reason = "below minimum confidence";
        }
        (r.reject_reason.empty() ? out.accepted : out.rejected).push_back(std::move(r));
    }
    return out;
}

inline EnsembleOutput ensemble_vote(const std::vector<Prediction>& transfer, const std::vector<Prediction>& clustering,
                                    const EnsembleOptions& options = {}) {
    return ensemble_vote({{Method::transfer, &transfer}, {Method::clustering, &clustering}}, options);
}

inline io::json ensemble_to_json(const EnsembleResult& r) {
    io::json per = io::json::object();
    for (const auto& [m, v] : r.per_method) {
        per[std::string(method_name(m))] = io::json{
            {"class", io::class_to_json(v.noun_class)}, {"confidence", v.confidence}, {"weight", v.weight}};
    }
    io::json out{
        {"word", r.word},
        {"class", io::class_to_json(r.final_class)},
        {"confidence", r.combined_confidence},
        {"raw_score", r.raw_score},
        {"weight_sum", r.weight_sum},
        {"agreed", r.agreed},
        {"per_method", per},
        {"method", "ensemble"},
    };
    if (!r.reject_reason.empty()) out["reason"] = r.reject_reason;
    return out;
}

struct AgreementStats {
    std::size_t shared = 0;
    std::size_t matching = 0;

    /// Absent when the two methods share no words.
    std::optional<double> rate() const {
        if (shared == 0) return std::nullopt;
        return 100.0 * static_cast<double>(matching) / static_cast<double>(shared);
    }
};

/**
 * Words predicted with a known class by both methods, and how many of them agree.
 */
inline AgreementStats agreement(const std::vector<Prediction>& a, const std::vector<Prediction>& b) {
    std::map<std::string_view, NounClass> left;
    for (const auto& p : a) {
        if (!p.noun_class.is_unknown()) left.emplace(p.word, p.noun_class);
    }
    std::set<std::string_view> seen;
    AgreementStats s;
    for (const auto& p : b) {
        if (p.noun_class.is_unknown() || !seen.insert(p.word).second) continue;
        auto it = left.find(p.word);
        if (it == left.end()) continue;
        ++s.shared;
        if (it->second == p.noun_class) ++s.matching;
    }
    return s;
}

inline std::optional<double> agreement_rate(const std::vector<Prediction>& a, const std::vector<Prediction>& b) {
    return agreement(a, b).rate();
}

inline std::map<NounClass, std::size_t> class_distribution(const std::vector<std::pair<std::string, NounClass>>& labeled) {
    std::map<NounClass, std::size_t> out;
    for (const auto& [w, c] : labeled) ++out[c];
    return out;
}

/**
 * Every target gets the modal class (lowest id on ties) with confidence equal to its share.
 */
inline std::vector<Prediction> frequency_baseline(const std::map<NounClass, std::size_t>& distribution,
                                                  const std::vector<std::string>& targets) {
    std::size_t total = 0;
    auto best = distribution.end();
    for (auto it = distribution.begin(); it != distribution.end(); ++it) {
        total += it->second;
        if (best == distribution.end() || it->second > best->second) best = it;
    }
    if (total == 0) {
        throw ValidationError("frequency_baseline: empty class distribution");
    }
    const double share = static_cast<double>(best->second) / static_cast<double>(total);
    std::vector<Prediction> out;
    out.reserve(targets.size());
    for (const auto& w : targets) out.push_back(Prediction{w, best->first, share, Method::frequency});
    return out;
}

/**
 * Uniform seeded draw per target (classes taken in ascending id order); confidence 1 / |classes|.
 */
inline std::vector<Prediction> random_baseline(const std::set<NounClass>& classes, const std::vector<std::string>& targets,
                                               std::uint64_t seed) {
    if (classes.empty()) {
        throw ValidationError("random_baseline: empty class set");
    }
    std::vector<NounClass> pool(classes.begin(), classes.end());
    Rng rng(seed);
    const double conf = 1.0 / static_cast<double>(pool.size());
    std::vector<Prediction> out;
    out.reserve(targets.size());
    for (const auto& w : targets) {
        out.push_back(Prediction{w, pool[static_cast<std::size_t>(rng.below(pool.size()))], conf, Method::random});
    }
    return out;
}

}

#endif
