#ifndef NOUNCLASS_REDUCE_HPP
#define NOUNCLASS_REDUCE_HPP

#include <string>
#include <vector>

#include "core.hpp"
#include "embedding_store.hpp"
#include "io.hpp"
#include "pca.hpp"

#ifndef NOUNCLASS_HAS_UMAP
#define NOUNCLASS_HAS_UMAP 0
#endif

#if NOUNCLASS_HAS_UMAP
#include "umap.hpp"
#endif

/**
 * @file reduce.hpp
 *
 * @brief Dimensionality reduction ahead of clustering.
 *
 * PCA is the default. The neighbor-embedding (UMAP) backend is compiled in only when
 * `NOUNCLASS_HAS_UMAP` is defined to 1.
 */

namespace nounclass {

enum class Reduction { pca, umap };

inline std::string_view reduction_name(Reduction r) {
    return r == Reduction::pca ? "pca" : "umap";
}

/**
 * Reduced coordinates; row i belongs to `words[i]`.
 */
struct ReducedMatrix {
    std::vector<std::string> words;
    RowMatrix coords;
    Reduction method = Reduction::pca;
    Eigen::Index d = 0;
    std::size_t original_dim = 0;
    std::vector<std::string> warnings;
    io::json parameters = io::json::object();
};

struct Aligned {
    std::vector<std::string> words;
    RowMatrix data;
};

inline Aligned align(const std::vector<WordEmbedding>& embeddings) {
    Aligned out;
    if (embeddings.empty()) {
        return out;
    }
    const std::size_t dim = embeddings.front().vector.size();
    out.data.resize(static_cast<Eigen::Index>(embeddings.size()), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < embeddings.size(); ++i) {
        const auto& v = embeddings[i].vector;
        if (v.size() != dim) {
            throw ValidationError("reduce: dimension mismatch for '" + embeddings[i].word + "'");
        }
        out.words.push_back(embeddings[i].word);
        for (std::size_t j = 0; j < dim; ++j) out.data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v[j];
    }
    return out;
}

namespace detail {

inline Eigen::Index effective_dim(const Aligned& in, std::size_t d, std::vector<std::string>& warnings) {
    if (in.data.rows() == 0) {
        throw ValidationError("empty input");
    }
    if (d == 0) {
        throw ValidationError("reduce: target dimension must be at least 1");
    }
    const auto cap = std::min(in.data.rows(), in.data.cols());
    if (static_cast<Eigen::Index>(d) > cap) {
        warnings.push_back("target dimension " + std::to_string(d) + " lowered to " + std::to_string(cap));
        return cap;
    }
    return static_cast<Eigen::Index>(d);
}

}

/**
 * Project mean-centered data onto the top-d principal components. If fewer than d
 * observations or input dimensions exist, d is lowered with a warning.
 */
inline ReducedMatrix reduce_pca(const Aligned& in, std::size_t d = 50) {
    ReducedMatrix out;
    out.method = Reduction::pca;
    out.d = detail::effective_dim(in, d, out.warnings);
    out.original_dim = static_cast<std::size_t>(in.data.cols());
    out.words = in.words;
    auto model = fit_pca(in.data, out.d);
    out.coords = model.transform(in.data);
    std::vector<double> variances(model.variances.data(), model.variances.data() + model.variances.size());
    out.parameters = io::json{{"requested_d", d}, {"explained_variance", variances}};
    return out;
}

inline ReducedMatrix reduce_pca(const std::vector<WordEmbedding>& embeddings, std::size_t d = 50) {
    return reduce_pca(align(embeddings), d);
}

struct UmapParameters {
    std::size_t n_neighbors = 15;
    double min_dist = 0.1;
    std::uint64_t seed = 42;
};

inline constexpr bool umap_available() { return NOUNCLASS_HAS_UMAP != 0; }

/**
 * Neighbor-embedding layout. Throws CapabilityError when the backend is not compiled in.
 */
inline ReducedMatrix reduce_umap(const Aligned& in, std::size_t d = 50, const UmapParameters& params = {}) {
#if NOUNCLASS_HAS_UMAP
    ReducedMatrix out;
    out.method = Reduction::umap;
    out.d = detail::effective_dim(in, d, out.warnings);
    out.original_dim = static_cast<std::size_t>(in.data.cols());
    out.words = in.words;
    umap::Options options;
    options.n_neighbors = params.n_neighbors;
    options.min_dist = params.min_dist;
    options.seed = params.seed;
    out.coords = umap::embed(in.data, out.d, options);
    out.parameters = io::json{{"requested_d", d}, {"n_neighbors", params.n_neighbors},
                              {"min_dist", params.min_dist}, {"seed", params.seed}, {"rng", std::string(Rng::algorithm)}};
    return out;
#else
    (void)in;
    (void)d;
    (void)params;
    throw CapabilityError("the umap reduction backend is not available in this build; use --reduction pca");
#endif
}

inline ReducedMatrix reduce_umap(const std::vector<WordEmbedding>& embeddings, std::size_t d = 50,
                                 const UmapParameters& params = {}) {
    return reduce_umap(align(embeddings), d, params);
}

}

#endif
