#ifndef NOUNCLASS_TEST_HELPERS_HPP
#define NOUNCLASS_TEST_HELPERS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <unistd.h>

#include "nounclass/nounclass.hpp"

namespace testing_support {

namespace fs = std::filesystem;
using nounclass::NounClass;
using nounclass::WordEmbedding;

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = fs::temp_directory_path() /
                ("nounclass_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

/// Plain-loop cosine by the definition dot / (|a| |b|), clamped, evaluated left to right in double.
inline double oracle_cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double ab = 0, aa = 0, bb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) ab += a[i] * b[i];
    for (double x : a) aa += x * x;
    for (double x : b) bb += x * x;
    double c = ab / (std::sqrt(aa) * std::sqrt(bb));
    return std::min(1.0, std::max(-1.0, c));
}

struct OracleNeighbor {
    std::string word;
    double similarity;
    int label;
};

/// Exhaustive scan: full sort of every similarity by (similarity desc, word asc).
inline std::vector<OracleNeighbor> oracle_nearest(const std::vector<double>& query, const std::vector<WordEmbedding>& index,
                                                  std::size_t k) {
    std::vector<OracleNeighbor> all;
    for (const auto& r : index) {
        double n2 = 0;
        for (double x : r.vector) n2 += x * x;
        if (n2 == 0) continue;
        all.push_back({r.word, oracle_cosine(query, r.vector), r.label ? r.label->id() : -1});
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        return a.word < b.word;
    });
    if (all.size() > k) all.resize(k);
    return all;
}

struct OracleVote {
    int cls;
    double vote_conf;
    double sim_conf;
};

/// Hand vote over oracle neighbors: most votes, then larger summed similarity, then lower id.
inline OracleVote oracle_vote(const std::vector<OracleNeighbor>& neighbors) {
    std::map<int, std::pair<int, double>> tally;
    for (const auto& n : neighbors) {
        tally[n.label].first += 1;
        tally[n.label].second += n.similarity;
    }
    int best = -1;
    int best_votes = -1;
    double best_sum = 0;
    for (const auto& [cls, t] : tally) {
        if (t.first > best_votes || (t.first == best_votes && t.second > best_sum)) {
            best = cls;
            best_votes = t.first;
            best_sum = t.second;
        }
    }
    double mean = best_sum / best_votes;
    mean = std::min(1.0, std::max(0.0, mean));
    return {best, static_cast<double>(best_votes) / static_cast<double>(neighbors.size()), mean};
}

/// Random labeled vectors with labels drawn from `classes`.
inline std::vector<WordEmbedding> random_index(std::size_t n, std::size_t dim, std::uint64_t seed,
                                               const std::vector<int>& classes = {1, 2, 3}) {
    nounclass::Rng rng(seed);
    std::vector<WordEmbedding> out;
    for (std::size_t i = 0; i < n; ++i) {
        WordEmbedding e;
        e.word = "w" + std::to_string(i);
        e.vector.resize(dim);
        for (auto& x : e.vector) x = rng.normal();
        e.label = NounClass(classes[static_cast<std::size_t>(rng.below(classes.size()))]);
        out.push_back(std::move(e));
    }
    return out;
}

inline std::string slurp(const fs::path& p) { return nounclass::io::read_file(p); }

}

#endif
