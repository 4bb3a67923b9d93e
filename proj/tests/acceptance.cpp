// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "helpers.hpp"

using namespace nounclass;
using testing_support::TempDir;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

pipeline::Config config_for(const fs::path& inputs, const fs::path& workspace) {
    pipeline::Config cfg;
    cfg.workspace = workspace;
    cfg.corpus = inputs / "corpus.txt";
    cfg.source = inputs / "source.embjsonl";
    cfg.target = inputs / "target.embjsonl";
    cfg.gold = inputs / "gold.jsonl";
    return cfg;
}

Outcome knn_oracle() {
    auto spec = synth::preset("default");
    spec.source_stems = 5000;
    spec.stems = 1000;
    spec.noise = 0.05;
    const auto pair = synth::generate_pair(spec);
    const LabeledIndex index(pair.source.records);
    const auto t0 = Clock::now();
    std::size_t compared = 0, mismatches = 0;
    for (const auto& target : pair.target.records) {
        // The oracle is a full sort; every k reads a prefix of it.
        const auto full = testing_support::oracle_nearest(target.vector, pair.source.records, 5);
        for (std::size_t k : {1u, 3u, 5u}) {
            TransferOptions opt;
            opt.k = k;
            const auto got = classify_word(target, index, opt);
            const std::vector<testing_support::OracleNeighbor> top(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(k));
            const auto want = testing_support::oracle_vote(top);
            ++compared;
            const double want_conf = want.vote_conf * want.sim_conf;
            if (got.predicted_class.id() != want.cls || got.vote_conf != want.vote_conf || got.sim_conf != want.sim_conf ||
                got.confidence != want_conf) {
                ++mismatches;
            }
        }
    }
    const double secs = seconds_since(t0);
    return {mismatches == 0 && pair.target.records.size() == 1000 && pair.source.records.size() == 5000 && secs < 30.0,
            std::to_string(compared) + " comparisons, " + std::to_string(mismatches) + " mismatches, " + fmt("%.1f s", secs)};
}

Outcome confidence_formula() {
    const auto pair = synth::generate_pair(synth::preset("overlap60"));
    const auto run = classify_corpus(pair.target.records, LabeledIndex(pair.source.records));
    std::size_t bad = 0;
    double worst = 0;
    for (const auto& p : run.retained) {
        const double err = std::abs(p.confidence - p.vote_conf * p.sim_conf);
        worst = std::max(worst, err);
        if (err >= 1e-12 || p.confidence < 0.60) ++bad;
    }
    return {bad == 0 && !run.retained.empty(),
            std::to_string(run.retained.size()) + " retained, max error " + fmt("%.3g", worst) + ", " + std::to_string(bad) + " violations"};
}

Outcome kmeans_invariants() {
    const auto pair = synth::generate_pair(synth::preset("overlap60"));
    const auto reduced = reduce_pca(pair.target.records, 50);
    const auto first = kmeans(reduced);
    std::size_t violations = 0;
    for (std::size_t i = 1; i < first.inertia_history.size(); ++i) {
        if (first.inertia_history[i] > first.inertia_history[i - 1]) ++violations;
    }
    const double recomputed = compute_inertia(reduced.coords, first.assignments, first.centroids);
    const double rel = std::abs(recomputed - first.inertia) / std::max(recomputed, 1e-300);
    bool identical = true;
    for (int r = 0; r < 5; ++r) identical = identical && kmeans(reduced).assignments == first.assignments;
    return {violations == 0 && rel <= 1e-6 && identical,
            std::to_string(first.inertia_history.size()) + " inertia steps, " + std::to_string(violations) +
                " increases, recompute rel. error " + fmt("%.3g", rel) + ", 5 reruns " + (identical ? "identical" : "differ")};
}

struct PlantedRun {
    TempDir inputs;
    TempDir workspace;
    synth::Pair pair;
    io::json summary;
    double seconds = 0;
};

std::unique_ptr<PlantedRun> run_preset(const std::string& name) {
    auto out = std::make_unique<PlantedRun>();
    const auto spec = synth::preset(name);
    const auto t0 = Clock::now();
    out->pair = synth::generate_pair(spec);
    pipeline::write_synth(spec, out->pair, out->inputs.path(), name);
    out->summary = pipeline::run_pipeline(config_for(out->inputs.path(), out->workspace.path()));
    out->seconds = seconds_since(t0);
    return out;
}

Outcome planted_recovery(const PlantedRun& run) {
    std::map<std::string, NounClass> predicted;
    for (const auto& p : io::load_predictions(run.workspace / pipeline::files::transfer)) predicted.emplace(p.word, p.noun_class);
    // Every cognate target word is in the denominator; words without a retained prediction count as wrong.
    std::size_t cognates = 0, correct = 0;
    for (const auto& t : run.pair.truth) {
        if (!t.cognate) continue;
        ++cognates;
        auto it = predicted.find(t.word);
        if (it != predicted.end() && it->second == t.noun_class) ++correct;
    }
    const double accuracy = 100.0 * static_cast<double>(correct) / static_cast<double>(cognates);

    std::set<int> recovered;
    for (const auto& c : run.summary["clusters"]) {
        if (c["class"].is_number() && c["consistency"].get<double>() >= 90.0) recovered.insert(c["class"].get<int>());
    }
    std::size_t planted_hit = 0;
    for (const auto& plan : synth::standard_classes()) planted_hit += recovered.contains(plan.id.id()) ? 1 : 0;
    return {accuracy >= 95.0 && planted_hit >= 10 && run.seconds < 120.0,
            "cognate transfer accuracy " + fmt("%.2f%%", accuracy) + " (" + std::to_string(correct) + "/" +
                std::to_string(cognates) + "), " + std::to_string(planted_hit) + "/12 classes at >=90% consistency, " +
                fmt("%.1f s", run.seconds)};
}

Outcome innovation_detection(const PlantedRun& planted, const PlantedRun& control) {
    const auto& inns = planted.summary["innovations"];
    bool ok = inns.size() == 1;
    std::string detail = std::to_string(inns.size()) + " flagged with plant";
    if (inns.size() == 1) {
        const auto& inn = inns[0];
        const auto size = inn["size"].get<double>();
        ok = ok && inn["dominant_prefix"] == "a" && inn["consistency"].get<double>() >= 90.0 && size >= 120 && size <= 180;
        detail += " (prefix " + inn["dominant_prefix"].get<std::string>() + ", " + fmt("%.1f%%", inn["consistency"].get<double>()) +
                  ", size " + fmt("%.0f", size) + ")";
    }
    const auto none = control.summary["innovations"].size();
    ok = ok && none == 0;
    detail += ", " + std::to_string(none) + " flagged without plant";
    return {ok, detail};
}

Outcome ensemble_arithmetic() {
    auto p = [](int cls, double conf, Method m) { return std::vector<Prediction>{Prediction{"w", NounClass(cls), conf, m}}; };
    const auto a = ensemble_vote(p(6, 0.8, Method::transfer), p(6, 0.9, Method::clustering));
    const auto b = ensemble_vote(p(6, 0.8, Method::transfer), p(7, 0.9, Method::clustering));
    const auto c = ensemble_vote(p(2, 0.95, Method::transfer), {});
    bool ok = a.accepted.size() == 1 && std::abs(a.accepted[0].raw_score - 1.52) < 1e-12 &&
              std::abs(a.accepted[0].combined_confidence - 0.8444) < 5e-5 && a.accepted[0].agreed;
    ok = ok && b.rejected.size() == 1 && b.rejected[0].final_class == NounClass(6) &&
         std::abs(b.rejected[0].combined_confidence - 0.444) < 5e-4 && !b.rejected[0].agreed;
    ok = ok && c.accepted.size() == 1 && c.accepted[0].combined_confidence == 0.95;

    Rng rng(2024);
    std::vector<Prediction> t, cl;
    for (int i = 0; i < 10000; ++i) {
        const auto w = "w" + std::to_string(i);
        t.push_back(Prediction{w, NounClass(1 + static_cast<int>(rng.below(6))), rng.uniform(), Method::transfer});
        cl.push_back(Prediction{w, NounClass(1 + static_cast<int>(rng.below(6))), rng.uniform(), Method::clustering});
    }
    EnsembleOptions doubled;
    doubled.weights = {{"transfer", 2.0}, {"clustering", 1.6}};
    const auto x = ensemble_vote(t, cl);
    const auto y = ensemble_vote(t, cl, doubled);
    std::size_t differ = 0;
    auto compare = [&](const std::vector<EnsembleResult>& u, const std::vector<EnsembleResult>& v) {
        if (u.size() != v.size()) {
            differ += 1;
            return;
        }
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (u[i].word != v[i].word || u[i].final_class != v[i].final_class || u[i].combined_confidence != v[i].combined_confidence)
                ++differ;
        }
    };
    compare(x.accepted, y.accepted);
    compare(x.rejected, y.rejected);
    return {ok && differ == 0, std::string("worked examples ") + (ok ? "reproduce" : "differ") + ", " + std::to_string(differ) +
                                   " of 10000 pairs changed under weight doubling"};
}

Outcome agreement_metric() {
    auto mk = [](std::initializer_list<std::pair<const char*, int>> items) {
        std::vector<Prediction> out;
        for (const auto& [w, c] : items) out.push_back(Prediction{w, NounClass(c), 1.0, Method::transfer});
        return out;
    };
    const auto base = mk({{"x", 1}, {"y", 2}, {"z", 3}});
    const auto same = agreement_rate(base, base);
    const auto disjoint = agreement_rate(base, mk({{"q", 1}}));
    const auto third = agreement_rate(base, mk({{"x", 1}, {"y", 7}, {"z", 8}}));
    bool ok = same == 100.0 && !disjoint && third && std::abs(*third - 33.33) <= 0.01;
    Rng rng(77);
    std::size_t asym = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Prediction> a, b;
        for (int i = 0; i < 100; ++i) {
            const auto w = "w" + std::to_string(rng.below(150));
            if (rng.uniform() < 0.7) a.push_back(Prediction{w, NounClass(1 + static_cast<int>(rng.below(3))), 1.0, Method::transfer});
            if (rng.uniform() < 0.7) b.push_back(Prediction{w, NounClass(1 + static_cast<int>(rng.below(3))), 1.0, Method::clustering});
        }
        if (agreement_rate(a, b) != agreement_rate(b, a)) ++asym;
    }
    return {ok && asym == 0, std::string("fixtures ") + (ok ? "reproduce" : "differ") + ", " + std::to_string(asym) +
                                 " asymmetric of 200 random pairs"};
}

Outcome baselines() {
    const auto pair = synth::generate_pair(synth::preset("innovation"));
    std::vector<std::pair<std::string, NounClass>> labeled;
    for (const auto& r : pair.source.records) labeled.emplace_back(r.word, *r.label);
    const auto dist = class_distribution(labeled);
    auto modal = dist.begin();
    for (auto it = dist.begin(); it != dist.end(); ++it) {
        if (it->second > modal->second) modal = it;
    }
    std::vector<std::string> targets;
    for (const auto& r : pair.target.records) targets.push_back(r.word);
    std::size_t modal_hits = 0;
    for (const auto& p : frequency_baseline(dist, targets)) modal_hits += p.noun_class == modal->first ? 1 : 0;

    std::set<NounClass> classes;
    for (const auto& plan : synth::standard_classes()) classes.insert(plan.id);
    std::vector<std::string> words;
    for (int i = 0; i < 12000; ++i) words.push_back("w" + std::to_string(i));
    std::map<NounClass, std::size_t> counts;
    for (const auto& p : random_baseline(classes, words, 42)) ++counts[p.noun_class];
    const double n = 12000, prob = 1.0 / 12.0;
    const double mean = n * prob, sigma = std::sqrt(n * prob * (1 - prob));
    double worst = 0;
    for (const auto& c : classes) worst = std::max(worst, std::abs(static_cast<double>(counts[c]) - mean) / sigma);
    const bool ok = modal_hits == targets.size() && counts.size() == 12 && worst <= 3.0;
    return {ok, "modal class " + modal->first.to_string() + " on " + std::to_string(modal_hits) + "/" + std::to_string(targets.size()) +
                    " targets, random baseline max deviation " + fmt("%.2f sigma", worst)};
}

Outcome determinism(const PlantedRun& run) {
    TempDir again;
    pipeline::run_pipeline(config_for(run.inputs.path(), again.path()));
    std::size_t differ = 0, files = 0;
    for (const char* f : {pipeline::files::candidates, pipeline::files::transfer, pipeline::files::clusters,
                          pipeline::files::profiles, pipeline::files::clustering, pipeline::files::innovations,
                          pipeline::files::ensemble, pipeline::files::rejected, pipeline::files::summary,
                          pipeline::files::report, pipeline::files::plot}) {
        ++files;
        if (io::read_file(run.workspace / f) != io::read_file(again / f)) ++differ;
    }
    return {differ == 0, std::to_string(files - differ) + "/" + std::to_string(files) + " payload files byte-identical"};
}

}

int main() {
    int failures = 0;
    auto report = [&](const char* name, const std::function<Outcome()>& check) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
        if (!o.pass) ++failures;
    };

    report("knn-oracle-equivalence", knn_oracle);
    report("confidence-formula", confidence_formula);
    report("kmeans-invariants", kmeans_invariants);

    std::unique_ptr<PlantedRun> overlap, planted, control;
    try {
        overlap = run_preset("overlap60");
        planted = run_preset("innovation");
        control = run_preset("no-innovation");
    } catch (const std::exception& e) {
        std::cout << "pipeline setup failed: " << e.what() << std::endl;
    }
    report("planted-class-recovery", [&] { return overlap ? planted_recovery(*overlap) : Outcome{false, "no run"}; });
    report("innovation-detection",
           [&] { return planted && control ? innovation_detection(*planted, *control) : Outcome{false, "no run"}; });
    report("ensemble-arithmetic", ensemble_arithmetic);
    report("agreement-metric", agreement_metric);
    report("baselines", baselines);
    report("pipeline-determinism", [&] { return overlap ? determinism(*overlap) : Outcome{false, "no run"}; });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
