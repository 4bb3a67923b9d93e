#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nounclass/nounclass.hpp"

#ifndef NOUNCLASS_DATA_DIR
#define NOUNCLASS_DATA_DIR ""
#endif

namespace {

namespace fs = std::filesystem;
using namespace nounclass;
using pipeline::Config;

enum Exit { ok = 0, validation = 1, io_error = 2 };

/// Every flag value the subcommands can bind to; options left unset keep these defaults.
struct Flags {
    Config cfg;
    std::string corpus, source, target, paradigms, stoplist, inventory, reference_inventory;
    std::string gold, generated_forms, reference_values;
    std::string reduction = "pca";
    double w_transfer = 1.0;
    double w_cluster = 0.8;
    std::vector<std::string> expectations;
    bool no_plot = false;
    std::string baseline_kind = "both";
    std::string targets;
    std::string agree_a, agree_b;
    std::string preset = "default";
    std::string synth_out;
    std::optional<std::uint64_t> synth_seed;
    std::optional<std::size_t> synth_stems;
    std::optional<double> synth_overlap, synth_noise;
    std::optional<std::size_t> synth_dim;
};

std::optional<fs::path> opt_path(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return fs::path(s);
}

void add_workspace(CLI::App* sub, Flags& f) {
    sub->add_option("-w,--workspace", f.cfg.workspace, "Run directory; stages read and write artifacts here")
        ->envname("NOUNCLASS_WORKSPACE")
        ->capture_default_str();
    sub->add_option("--seed", f.cfg.kmeans.seed, "Seed for every random draw")->capture_default_str();
}

void add_source(CLI::App* sub, Flags& f, bool required) {
    auto* o = sub->add_option("--source", f.source, "Labeled source-language embeddings (.embjsonl)");
    if (required) o->required();
    sub->add_option("--paradigms", f.paradigms, "Source paradigm file; overrides inline labels");
}

void add_extract(CLI::App* sub, Flags& f, bool required) {
    auto* o = sub->add_option("--corpus", f.corpus, "Target-language plain-text corpus (UTF-8)");
    if (required) o->required();
    sub->add_option("--min-len", f.cfg.candidates.min_len, "Minimum candidate length in code points")->capture_default_str();
    sub->add_option("--min-freq", f.cfg.candidates.min_freq, "Minimum candidate corpus frequency")->capture_default_str();
    sub->add_option("--stoplist", f.stoplist, "File with one excluded word per line");
}

void add_transfer(CLI::App* sub, Flags& f) {
    sub->add_option("-k,--k", f.cfg.transfer.k, "Nearest neighbors consulted per word")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--thresh,--threshold", f.cfg.transfer.threshold, "Minimum confidence to retain a transfer prediction")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sub->add_flag("--exclude-self", f.cfg.transfer.exclude_self, "Ignore source entries spelled like the target word");
}

void add_cluster(CLI::App* sub, Flags& f) {
    sub->add_option("--reduction", f.reduction, "Dimensionality reduction backend")
        ->check(CLI::IsMember({"pca", "umap"}))
        ->capture_default_str();
    sub->add_option("--dim", f.cfg.dim, "Reduced dimensionality")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--clusters", f.cfg.kmeans.k, "Number of k-means clusters")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--max-iter", f.cfg.kmeans.max_iter, "Lloyd iteration cap")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--n-init", f.cfg.kmeans.n_init, "Independent k-means++ starts; lowest inertia wins")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--tol", f.cfg.kmeans.tol, "Centroid movement tolerance")->check(CLI::NonNegativeNumber)->capture_default_str();
    sub->add_option("--n-neighbors", f.cfg.umap.n_neighbors, "UMAP neighborhood size")->check(CLI::Range(2, 1000))->capture_default_str();
    sub->add_option("--min-dist", f.cfg.umap.min_dist, "UMAP minimum distance")->check(CLI::Range(0.0, 1.0))->capture_default_str();
}

void add_map(CLI::App* sub, Flags& f) {
    sub->add_option("--inventory", f.inventory, "Prefix inventory used for mapping (default: built-in)");
    sub->add_option("--reference-inventory", f.reference_inventory,
                    "Inventory that innovations are checked against (default: prefixes attested in --source)");
    sub->add_option("--min-consistency", f.cfg.innovation.min_consistency, "Innovation consistency threshold (percent)")
        ->check(CLI::Range(0.0, 100.0))
        ->capture_default_str();
    sub->add_option("--min-size", f.cfg.innovation.min_size, "Innovation minimum cluster size")->capture_default_str();
    sub->add_option("--expect", f.expectations, "Expected class for a prefix, as PREFIX=CLASS (repeatable)");
}

void add_ensemble(CLI::App* sub, Flags& f) {
    sub->add_option("--w-transfer", f.w_transfer, "Transfer vote weight")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--w-cluster", f.w_cluster, "Clustering vote weight")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--min-conf", f.cfg.ensemble.min_conf, "Minimum combined confidence")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sub->add_flag("--require-multi", f.cfg.ensemble.require_multi, "Only accept words predicted by both methods");
}

void add_report(CLI::App* sub, Flags& f) {
    sub->add_option("--gold", f.gold, "Gold labels in paradigm format");
    sub->add_option("--generated-forms", f.generated_forms, "Generated surface forms, {\"word\",\"form\"} per line");
    sub->add_option("--reference-values", f.reference_values, "Published reference values shown beside this run");
    sub->add_flag("--no-plot", f.no_plot, "Skip the cluster scatter plot");
}

/// Copy string flags into the config and validate cross-field values.
void finalize(Flags& f) {
    auto& c = f.cfg;
    c.corpus = f.corpus;
    c.source = f.source;
    c.target = f.target;
    c.paradigms = opt_path(f.paradigms);
    c.stoplist = opt_path(f.stoplist);
    c.inventory = opt_path(f.inventory);
    c.reference_inventory = opt_path(f.reference_inventory);
    c.gold = opt_path(f.gold);
    c.generated_forms = opt_path(f.generated_forms);
    c.reference_values = opt_path(f.reference_values);
    if (!c.reference_values) {
        const fs::path bundled = fs::path(NOUNCLASS_DATA_DIR) / "reference_values.json";
        if (!std::string(NOUNCLASS_DATA_DIR).empty() && fs::exists(bundled)) c.reference_values = bundled;
    }
    c.reduction = f.reduction == "umap" ? Reduction::umap : Reduction::pca;
    c.ensemble.weights = {{"transfer", f.w_transfer}, {"clustering", f.w_cluster}};
    c.plot = !f.no_plot;
    for (const auto& e : f.expectations) {
        const auto eq = e.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ValidationError("--expect takes PREFIX=CLASS, got '" + e + "'");
        }
        c.innovation.expectations[unicode::normalize_word(e.substr(0, eq))] = io::class_from_json(io::json(e.substr(eq + 1)));
    }
}

std::vector<std::string> baseline_targets(const Flags& f) {
    if (!f.targets.empty()) return parse_word_list(io::read_file(f.targets));
    if (auto words = pipeline::workspace_candidates(f.cfg)) return *words;
    if (!f.target.empty()) {
        std::vector<std::string> out;
        for (const auto& r : load_embeddings(f.target).records) out.push_back(r.word);
        return out;
    }
    throw ValidationError("baseline needs --targets, --target or an extract stage in the workspace");
}

int run_synth(const Flags& f) {
    auto spec = synth::preset(f.preset);
    if (f.synth_seed) spec.seed = *f.synth_seed;
    if (f.synth_stems) spec.stems = *f.synth_stems;
    if (f.synth_overlap) spec.cognate_overlap = *f.synth_overlap;
    if (f.synth_noise) spec.noise = *f.synth_noise;
    if (f.synth_dim) spec.embedding_dim = *f.synth_dim;
    spec.validate();
    const auto pair = synth::generate_pair(spec);
    const fs::path out = f.synth_out.empty() ? f.cfg.workspace : fs::path(f.synth_out);
    pipeline::write_synth(spec, pair, out, f.preset);
    std::cout << "wrote synthetic pair (" << pair.source.records.size() << " source, " << pair.truth.size()
              << " target words) to " << out.generic_string() << "\n";
    return ok;
}

void print_summary(const io::json& summary) {
    const auto& c = summary.at("counts");
    std::cout << "transfer " << c.at("transfer") << ", clustering " << c.at("clustering") << ", ensemble accepted "
              << c.at("ensemble_accepted") << ", innovations " << summary.at("innovations").size() << "\n";
}

int dispatch(const CLI::App& app, Flags& f) {
    finalize(f);
    const auto& cfg = f.cfg;
    if (app.got_subcommand("extract")) {
        const auto list = pipeline::run_extract(cfg);
        std::cout << list.candidates.size() << " candidates from " << list.stats.types << " types\n";
    } else if (app.got_subcommand("transfer")) {
        const auto run = pipeline::run_transfer(cfg);
        std::cout << run.retained.size() << " of " << run.classified << " words retained\n";
    } else if (app.got_subcommand("cluster")) {
        const auto run = pipeline::run_cluster(cfg);
        std::cout << run.reduced.words.size() << " words in " << cfg.kmeans.k << " clusters, inertia " << run.clustering.inertia
                  << "\n";
    } else if (app.got_subcommand("map")) {
        const auto run = pipeline::run_map(cfg);
        std::cout << run.profiles.size() << " clusters profiled, " << run.innovations.size() << " innovations\n";
    } else if (app.got_subcommand("ensemble")) {
        const auto out = pipeline::run_ensemble(cfg);
        std::cout << out.accepted.size() << " accepted, " << out.rejected.size() << " rejected\n";
    } else if (app.got_subcommand("baseline")) {
        const auto targets = baseline_targets(f);
        if (f.baseline_kind != "random") pipeline::run_baseline(cfg, pipeline::BaselineKind::frequency, targets);
        if (f.baseline_kind != "frequency") pipeline::run_baseline(cfg, pipeline::BaselineKind::random, targets);
        std::cout << targets.size() << " targets\n";
    } else if (app.got_subcommand("report")) {
        print_summary(pipeline::run_report(cfg));
    } else if (app.got_subcommand("agreement")) {
        const fs::path a = f.agree_a.empty() ? cfg.in_workspace(pipeline::files::transfer) : fs::path(f.agree_a);
        const fs::path b = f.agree_b.empty() ? cfg.in_workspace(pipeline::files::clustering) : fs::path(f.agree_b);
        const auto s = agreement(io::load_predictions(a), io::load_predictions(b));
        std::cout << io::json{{"shared", s.shared}, {"matching", s.matching}, {"percent", optional_json(s.rate())}}.dump() << "\n";
    } else if (app.got_subcommand("synth")) {
        return run_synth(f);
    } else if (app.got_subcommand("pipeline")) {
        print_summary(pipeline::run_pipeline(cfg));
    }
    return ok;
}

}

int main(int argc, char** argv) {
    CLI::App app{"Noun class discovery for low-resource Bantu languages", "nounclass"};
    app.set_version_flag("--version", std::string(tool_version));
    app.set_config("--config", "", "INI/TOML file with the same keys as the flags; flags on the command line win");
    app.require_subcommand(1);
    Flags f;

    auto* extract = app.add_subcommand("extract", "Extract noun candidates from a corpus");
    add_workspace(extract, f);
    add_extract(extract, f, true);

    auto* transfer = app.add_subcommand("transfer", "Classify target words by their nearest labeled source neighbors");
    add_workspace(transfer, f);
    add_source(transfer, f, true);
    transfer->add_option("--target", f.target, "Target-language embeddings (.embjsonl)")->required();
    add_transfer(transfer, f);

    auto* cluster = app.add_subcommand("cluster", "Reduce target embeddings and cluster them");
    add_workspace(cluster, f);
    cluster->add_option("--target", f.target, "Target-language embeddings (.embjsonl)")->required();
    add_cluster(cluster, f);

    auto* map = app.add_subcommand("map", "Profile clusters, map prefixes to classes and flag innovations");
    add_workspace(map, f);
    add_source(map, f, false);
    add_map(map, f);

    auto* ensemble = app.add_subcommand("ensemble", "Combine transfer and clustering predictions");
    add_workspace(ensemble, f);
    add_ensemble(ensemble, f);

    auto* baseline = app.add_subcommand("baseline", "Frequency and random baselines from the source class distribution");
    add_workspace(baseline, f);
    add_source(baseline, f, false);
    baseline->add_option("--kind", f.baseline_kind, "Which baseline to write")
        ->check(CLI::IsMember({"frequency", "random", "both"}))
        ->capture_default_str();
    baseline->add_option("--targets", f.targets, "Word list to predict (default: workspace candidates)");
    baseline->add_option("--target", f.target, "Target embeddings whose words are predicted");

    auto* report = app.add_subcommand("report", "Summarize a workspace");
    add_workspace(report, f);
    add_report(report, f);

    auto* agree = app.add_subcommand("agreement", "Agreement rate between two prediction files");
    add_workspace(agree, f);
    agree->add_option("--a", f.agree_a, "First prediction file (default: workspace transfer predictions)");
    agree->add_option("--b", f.agree_b, "Second prediction file (default: workspace clustering predictions)");

    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic source/target language pair");
    add_workspace(synth_cmd, f);
    synth_cmd->add_option("--preset", f.preset, "Generator preset")
        ->check(CLI::IsMember({"default", "overlap60", "full-overlap", "innovation", "no-innovation"}))
        ->capture_default_str();
    synth_cmd->add_option("--out", f.synth_out, "Output directory (default: workspace)");
    synth_cmd->add_option("--synth-seed", f.synth_seed, "Generator seed (default: preset seed)");
    synth_cmd->add_option("--stems", f.synth_stems, "Target word count");
    synth_cmd->add_option("--overlap", f.synth_overlap, "Share of target stems that are cognates")->check(CLI::Range(0.0, 1.0));
    synth_cmd->add_option("--noise", f.synth_noise, "Embedding noise amplitude")->check(CLI::NonNegativeNumber);
    synth_cmd->add_option("--embedding-dim", f.synth_dim, "Embedding dimension")->check(CLI::PositiveNumber);

    auto* pipe = app.add_subcommand("pipeline", "Run extract, transfer, cluster, map, ensemble and report");
    add_workspace(pipe, f);
    add_extract(pipe, f, true);
    add_source(pipe, f, true);
    pipe->add_option("--target", f.target, "Target-language embeddings (.embjsonl)")->required();
    add_transfer(pipe, f);
    add_cluster(pipe, f);
    add_map(pipe, f);
    add_ensemble(pipe, f);
    add_report(pipe, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return validation;
    }

    try {
        return dispatch(app, f);
    } catch (const IoError& e) {
        std::cerr << "nounclass: " << e.what() << "\n";
        return io_error;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "nounclass: " << e.what() << "\n";
        return io_error;
    } catch (const std::exception& e) {
        std::cerr << "nounclass: " << e.what() << "\n";
        return validation;
    }
}
