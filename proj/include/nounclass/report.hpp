#ifndef NOUNCLASS_REPORT_HPP
#define NOUNCLASS_REPORT_HPP

#include <algorithm>
#include <cstdio>
#include <iterator>
#include <map>
#include <set>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "ensemble.hpp"
#include "io.hpp"
#include "prefix_mapper.hpp"

/**
 * @file report.hpp
 *
 * @brief Summary statistics and evaluation metrics over pipeline outputs.
 */

namespace nounclass {

struct ConsistencyCheck {
    std::size_t matched = 0;
    std::size_t with_form = 0;
    std::size_t missing_form = 0;

    std::optional<double> percent() const {
        if (with_form == 0) return std::nullopt;
        return 100.0 * static_cast<double>(matched) / static_cast<double>(with_form);
    }
};

/**
 * Share of predicted words whose externally generated surface form equals the word itself.
 * Words without a generated form are counted separately and left out of the ratio.
 */
inline ConsistencyCheck internal_consistency(const std::vector<Prediction>& predictions,
                                             const std::map<std::string, std::string>& generated_forms) {
    ConsistencyCheck out;
    std::set<std::string_view> seen;
    for (const auto& p : predictions) {
        if (!seen.insert(p.word).second) continue;
        auto it = generated_forms.find(p.word);
        if (it == generated_forms.end()) {
            ++out.missing_form;
            continue;
        }
        ++out.with_form;
        if (it->second == p.word) ++out.matched;
    }
    return out;
}

struct AccuracyReport {
    std::size_t correct = 0;
    std::size_t total = 0;
    /// (gold, predicted) -> count over the intersecting words.
    std::map<std::pair<NounClass, NounClass>, std::size_t> confusion;

    std::optional<double> accuracy() const {
        if (total == 0) return std::nullopt;
        return 100.0 * static_cast<double>(correct) / static_cast<double>(total);
    }
};

inline AccuracyReport label_accuracy(const std::vector<Prediction>& predictions, const std::map<std::string, NounClass>& gold) {
    if (gold.empty()) {
        throw ValidationError("label_accuracy: gold set is empty");
    }
    AccuracyReport out;
    std::set<std::string_view> seen;
    for (const auto& p : predictions) {
        if (!seen.insert(p.word).second) continue;
        auto it = gold.find(p.word);
        if (it == gold.end()) continue;
        ++out.total;
        if (it->second == p.noun_class) ++out.correct;
        ++out.confusion[{it->second, p.noun_class}];
    }
    return out;
}

inline io::json optional_json(const std::optional<double>& v) {
    return v ? io::json(*v) : io::json(nullptr);
}

inline io::json accuracy_to_json(const AccuracyReport& r) {
    io::json confusion = io::json::array();
    for (const auto& [key, count] : r.confusion) {
        confusion.push_back(io::json{{"gold", io::class_to_json(key.first)}, {"predicted", io::class_to_json(key.second)}, {"count", count}});
    }
    return io::json{{"accuracy", optional_json(r.accuracy())}, {"correct", r.correct}, {"total", r.total}, {"confusion", confusion}};
}

struct SummaryInputs {
    const std::vector<Prediction>* transfer = nullptr;
    const std::vector<Prediction>* clustering = nullptr;
    const std::vector<EnsembleResult>* accepted = nullptr;
    const std::vector<EnsembleResult>* rejected = nullptr;
    const std::vector<ClusterProfile>* profiles = nullptr;
    const std::vector<Innovation>* innovations = nullptr;
};

namespace detail {

inline double mean_confidence(const std::vector<Prediction>& ps) {
    double s = 0;
    std::size_t n = 0;
    for (const auto& p : ps) {
        if (p.noun_class.is_unknown()) continue;
        s += p.confidence;
        ++n;
    }
    return n ? s / static_cast<double>(n) : 0.0;
}

}

/**
 * Counts per method, the accepted class distribution with percentage shares, the cluster table
 * and the innovation list. An innovation's `class_share` is its size over the total size of all
 * clusters mapped to the same class. Missing inputs count as empty.
 */
inline io::json discovery_summary(const SummaryInputs& in) {
    static const std::vector<Prediction> no_predictions;
    static const std::vector<EnsembleResult> no_results;
    static const std::vector<ClusterProfile> no_profiles;
    static const std::vector<Innovation> no_innovations;
    const auto& transfer = in.transfer ? *in.transfer : no_predictions;
    const auto& clustering = in.clustering ? *in.clustering : no_predictions;
    const auto& accepted = in.accepted ? *in.accepted : no_results;
    const auto& rejected = in.rejected ? *in.rejected : no_results;
    const auto& profiles = in.profiles ? *in.profiles : no_profiles;
    const auto& innovations = in.innovations ? *in.innovations : no_innovations;

    std::size_t clustering_known = 0;
    for (const auto& p : clustering) {
        if (!p.noun_class.is_unknown()) ++clustering_known;
    }
    double accepted_conf = 0;
    std::size_t agreed = 0;
    std::map<NounClass, std::size_t> distribution;
    for (const auto& r : accepted) {
        accepted_conf += r.combined_confidence;
        if (r.agreed && r.per_method.size() > 1) ++agreed;
        ++distribution[r.final_class];
    }

    io::json classes = io::json::array();
    for (const auto& [cls, count] : distribution) {
        classes.push_back(io::json{{"class", io::class_to_json(cls)}, {"count", count},
                                   {"percent", 100.0 * static_cast<double>(count) / static_cast<double>(accepted.size())}});
    }

    std::map<NounClass, std::size_t> cluster_class_size;
    io::json clusters = io::json::array();
    std::size_t outcome_counts[3] = {0, 0, 0};
    for (const auto& p : profiles) {
        cluster_class_size[p.mapped_class] += p.size;
        const auto o = outcome(p, innovations);
        ++outcome_counts[static_cast<int>(o)];
        const char* label = o == ClusterOutcome::mapped ? "mapped" : (o == ClusterOutcome::unknown ? "unknown" : "innovation");
        clusters.push_back(io::json{{"cluster", p.cluster_id}, {"size", p.size}, {"dominant_prefix", p.dominant_prefix},
                                    {"consistency", p.consistency}, {"class", io::class_to_json(p.mapped_class)},
                                    {"ambiguous", p.ambiguous}, {"outcome", label}});
    }

    io::json inns = io::json::array();
    for (const auto& inn : innovations) {
        auto j = innovation_to_json(inn);
        std::optional<double> share;
        if (!inn.mapped_class.is_unknown() && cluster_class_size[inn.mapped_class] > 0) {
            share = 100.0 * static_cast<double>(inn.size) / static_cast<double>(cluster_class_size[inn.mapped_class]);
        }
        j["class_share_percent"] = optional_json(share);
        inns.push_back(std::move(j));
    }

    const auto agree = agreement(transfer, clustering);
    return io::json{
        {"counts",
         {{"transfer", transfer.size()},
          {"clustering", clustering.size()},
          {"clustering_known_class", clustering_known},
          {"ensemble_accepted", accepted.size()},
          {"ensemble_rejected", rejected.size()},
          {"ensemble_agreed_multi", agreed}}},
        {"mean_confidence",
         {{"transfer", detail::mean_confidence(transfer)},
          {"clustering", detail::mean_confidence(clustering)},
          {"ensemble", accepted.empty() ? 0.0 : accepted_conf / static_cast<double>(accepted.size())}}},
        {"agreement", {{"shared", agree.shared}, {"matching", agree.matching}, {"percent", optional_json(agree.rate())}}},
        {"class_distribution", classes},
        {"clusters", clusters},
        {"cluster_outcomes", {{"mapped", outcome_counts[0]}, {"unknown", outcome_counts[1]}, {"innovation", outcome_counts[2]}}},
        {"innovations", inns},
    };
}

namespace detail {

inline std::string fmt_percent(const io::json& v) {
    if (v.is_null()) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f%%", v.get<double>());
    return buf;
}

inline std::string class_label(const io::json& c) {
    return c.is_string() ? c.get<std::string>() : c.dump();
}

inline std::string fmt_real(double v, const char* f = "%.3f") {
    char buf[32];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

}

/**
 * Plain-text rendering of a summary. `reference` (optional) holds published values shown
 * next to this run's numbers for orientation only.
 */
inline std::string render_text_report(const io::json& summary, const io::json& reference = nullptr) {
    std::string out;
    const auto& c = summary.at("counts");
    const auto& m = summary.at("mean_confidence");
    out += "Noun class discovery report\n===========================\n\n";
    out += "Predictions\n";
    out += "  transfer             " + std::to_string(c.at("transfer").get<std::size_t>()) + "  (mean confidence " +
           detail::fmt_real(m.at("transfer").get<double>()) + ")\n";
    out += "  clustering           " + std::to_string(c.at("clustering").get<std::size_t>()) + "  (" +
           std::to_string(c.at("clustering_known_class").get<std::size_t>()) + " with a known class)\n";
    out += "  ensemble accepted    " + std::to_string(c.at("ensemble_accepted").get<std::size_t>()) + "  (mean confidence " +
           detail::fmt_real(m.at("ensemble").get<double>()) + ")\n";
    out += "  ensemble rejected    " + std::to_string(c.at("ensemble_rejected").get<std::size_t>()) + "\n";
    out += "  transfer/clustering agreement " + detail::fmt_percent(summary.at("agreement").at("percent")) + " over " +
           std::to_string(summary.at("agreement").at("shared").get<std::size_t>()) + " shared words\n\n";

    out += "Class distribution (accepted)\n";
    for (const auto& row : summary.at("class_distribution")) {
        out += "  class " + detail::class_label(row.at("class")) + ": " + std::to_string(row.at("count").get<std::size_t>()) + " (" +
               detail::fmt_percent(row.at("percent")) + ")\n";
    }
    out += "\nClusters\n  id   size  prefix  consistency  class    outcome\n";
    for (const auto& row : summary.at("clusters")) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "  %-4zu %-5zu %-7s %10.1f%%  %-8s %s\n", row.at("cluster").get<std::size_t>(),
                      row.at("size").get<std::size_t>(), row.at("dominant_prefix").get<std::string>().c_str(),
                      row.at("consistency").get<double>(), detail::class_label(row.at("class")).c_str(),
                      row.at("outcome").get<std::string>().c_str());
        out += buf;
    }
    out += "\nInnovations\n";
    if (summary.at("innovations").empty()) out += "  none\n";
    for (const auto& inn : summary.at("innovations")) {
        out += "  " + inn.at("dominant_prefix").get<std::string>() + "- cluster " + inn.at("cluster").dump() + ": " +
               inn.at("size").dump() + " words, " + detail::fmt_percent(inn.at("consistency")) + " consistency, class share " +
               detail::fmt_percent(inn.at("class_share_percent")) + "; e.g.";
        for (const auto& w : inn.at("exemplars")) out += " " + w.get<std::string>();
        out += "\n";
    }
    if (summary.contains("label_accuracy")) {
        out += "\nLabel accuracy against gold: " + detail::fmt_percent(summary.at("label_accuracy").at("accuracy")) + "\n";
    }
    if (summary.contains("internal_consistency")) {
        out += "Internal consistency of generated forms: " +
               detail::fmt_percent(summary.at("internal_consistency").at("percent")) + "\n";
    }
    if (!reference.is_null()) {
        out += "\nPublished reference values (non-normative, not reproducible at this scale)\n";
        for (const auto& [key, value] : reference.at("values").items()) {
            out += "  " + key + ": " + value.dump() + "\n";
        }
    }
    return out;
}

/**
 * Static scatter plot (SVG) of the first two reduced coordinates, coloured by cluster.
 */
inline std::string render_scatter_svg(const std::vector<std::pair<double, double>>& xy, const std::vector<std::size_t>& cluster) {
    constexpr int size = 640;
    constexpr int margin = 20;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!xy.empty()) {
        xmin = xmax = xy.front().first;
        ymin = ymax = xy.front().second;
        for (const auto& [x, y] : xy) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    const double xs = xmax > xmin ? (size - 2 * margin) / (xmax - xmin) : 1.0;
    const double ys = ymax > ymin ? (size - 2 * margin) / (ymax - ymin) : 1.0;
    static constexpr const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                              "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939"};
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n";
    out += "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < xy.size(); ++i) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2\" fill=\"%s\"/>\n",
                      margin + (xy[i].first - xmin) * xs, size - margin - (xy[i].second - ymin) * ys,
                      palette[cluster[i] % std::size(palette)]);
        out += buf;
    }
    out += "</svg>\n";
    return out;
}

}

#endif
