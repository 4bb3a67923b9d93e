#ifndef NOUNCLASS_KMEANS_HPP
#define NOUNCLASS_KMEANS_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "core.hpp"
#include "io.hpp"
#include "pca.hpp"
#include "reduce.hpp"
#include "rng.hpp"

/**
 * @file kmeans.hpp
 *
 * @brief Seeded k-means++ / Lloyd clustering.
 */

namespace nounclass {

struct KMeansOptions {
    std::size_t k = 12;
    std::uint64_t seed = 42;
    std::size_t max_iter = 300;
    double tol = 1e-6;
    /// Independent k-means++ starts; the lowest final inertia wins (earliest start on ties).
    std::size_t n_init = 10;
};

/**
 * Final partition. `inertia` is the sum of squared distances from each point to its assigned
 * centroid; `inertia_history` has one entry per assignment step (the last is `inertia`).
 */
struct Clustering {
    std::vector<std::size_t> assignments;
    RowMatrix centroids;
    double inertia = 0;
    std::size_t iterations = 0;
    bool converged = false;
    std::uint64_t seed = 0;
    /// Which start produced this partition.
    std::size_t best_init = 0;
    std::vector<double> inertia_history;
};

namespace detail {

inline double squared_distance(const RowMatrix& a, Eigen::Index i, const RowMatrix& b, Eigen::Index j) {
    double s = 0;
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        const double diff = a(i, c) - b(j, c);
        s += diff * diff;
    }
    return s;
}

inline RowMatrix kmeanspp_init(const RowMatrix& points, std::size_t k, Rng& rng) {
    const auto n = static_cast<std::size_t>(points.rows());
    RowMatrix centroids(static_cast<Eigen::Index>(k), points.cols());
    std::vector<bool> chosen(n, false);

    std::size_t first = static_cast<std::size_t>(rng.below(n));
    chosen[first] = true;
    centroids.row(0) = points.row(static_cast<Eigen::Index>(first));

    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(points, static_cast<Eigen::Index>(i), centroids, 0);

    for (std::size_t c = 1; c < k; ++c) {
        double total = 0;
        for (double v : d2) total += v;

        std::size_t pick = n;
        if (total > 0) {
            const double r = rng.uniform() * total;
            double cum = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (d2[i] <= 0) continue;
                cum += d2[i];
                pick = i;
                if (cum > r) break;
            }
        } else {
            // Every point coincides with a centroid; take the first unchosen one.
            for (std::size_t i = 0; i < n && pick == n; ++i) {
                if (!chosen[i]) pick = i;
            }
        }
        chosen[pick] = true;
        centroids.row(static_cast<Eigen::Index>(c)) = points.row(static_cast<Eigen::Index>(pick));
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], squared_distance(points, static_cast<Eigen::Index>(i), centroids, static_cast<Eigen::Index>(c)));
        }
    }
    return centroids;
}

/// Nearest centroid for every point; ties keep the lower cluster id.
inline void assign(const RowMatrix& points, const RowMatrix& centroids, std::vector<std::size_t>& labels,
                   std::vector<double>& dist) {
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        std::size_t best = 0;
        double best_d = squared_distance(points, i, centroids, 0);
        for (Eigen::Index c = 1; c < centroids.rows(); ++c) {
            const double d = squared_distance(points, i, centroids, c);
            if (d < best_d) {
                best_d = d;
                best = static_cast<std::size_t>(c);
            }
        }
        labels[static_cast<std::size_t>(i)] = best;
        dist[static_cast<std::size_t>(i)] = best_d;
    }
}

/// Give each empty cluster the point farthest from its own centroid (taken from a cluster with more than one member).
inline void repair_empty(const RowMatrix& points, RowMatrix& centroids, std::vector<std::size_t>& labels,
                         std::vector<double>& dist) {
    const auto k = static_cast<std::size_t>(centroids.rows());
    std::vector<std::size_t> sizes(k, 0);
    for (auto l : labels) ++sizes[l];
    for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] != 0) continue;
        std::size_t far = labels.size();
        double far_d = -1;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (sizes[labels[i]] > 1 && dist[i] > far_d) {
                far_d = dist[i];
                far = i;
            }
        }
        if (far == labels.size()) {
            throw ValidationError("kmeans: cannot repair empty cluster");
        }
        --sizes[labels[far]];
        labels[far] = c;
        ++sizes[c];
        dist[far] = 0;
        centroids.row(static_cast<Eigen::Index>(c)) = points.row(static_cast<Eigen::Index>(far));
    }
}

inline double total(const std::vector<double>& dist) {
    double s = 0;
    for (double d : dist) s += d;
    return s;
}

}

/**
 * Recompute the sum of squared point-to-centroid distances for a labeling.
 */
inline double compute_inertia(const RowMatrix& points, const std::vector<std::size_t>& labels, const RowMatrix& centroids) {
    double s = 0;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        s += detail::squared_distance(points, i, centroids, static_cast<Eigen::Index>(labels[static_cast<std::size_t>(i)]));
    }
    return s;
}

namespace detail {

inline Clustering lloyd(const RowMatrix& points, RowMatrix centroids, const KMeansOptions& options) {
    const auto n = static_cast<std::size_t>(points.rows());
    Clustering out;
    out.seed = options.seed;
    out.centroids = std::move(centroids);
    out.assignments.assign(n, 0);
    std::vector<double> dist(n, 0);
    const auto k = static_cast<Eigen::Index>(options.k);
    const auto dims = points.cols();

    for (std::size_t iter = 0; iter < options.max_iter; ++iter) {
        assign(points, out.centroids, out.assignments, dist);
        repair_empty(points, out.centroids, out.assignments, dist);
        out.inertia_history.push_back(total(dist));
        ++out.iterations;

        RowMatrix next = RowMatrix::Zero(k, dims);
        std::vector<std::size_t> sizes(options.k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            next.row(static_cast<Eigen::Index>(out.assignments[i])) += points.row(static_cast<Eigen::Index>(i));
            ++sizes[out.assignments[i]];
        }
        double movement = 0;
        for (Eigen::Index c = 0; c < k; ++c) {
            next.row(c) /= static_cast<double>(sizes[static_cast<std::size_t>(c)]);
            movement = std::max(movement, std::sqrt(squared_distance(next, c, out.centroids, c)));
        }
        out.centroids = std::move(next);
        if (movement < options.tol) {
            out.converged = true;
            break;
        }
    }

    assign(points, out.centroids, out.assignments, dist);
    repair_empty(points, out.centroids, out.assignments, dist);
    out.inertia = total(dist);
    out.inertia_history.push_back(out.inertia);
    return out;
}

}

/**
 * `n_init` rounds of k-means++ seeding followed by Lloyd iterations until the largest centroid
 * move is below `tol` or `max_iter` steps have run. All starts draw from one generator seeded
 * with `seed`. Throws ValidationError when there are fewer points than clusters.
 */
inline Clustering kmeans(const RowMatrix& points, const KMeansOptions& options = {}) {
    const auto n = static_cast<std::size_t>(points.rows());
    if (options.k == 0) {
        throw ValidationError("kmeans: k must be at least 1");
    }
    if (options.n_init == 0) {
        throw ValidationError("kmeans: n_init must be at least 1");
    }
    if (n < options.k) {
        throw ValidationError("too few points: " + std::to_string(n) + " points for k=" + std::to_string(options.k));
    }

    Rng rng(options.seed);
    Clustering best;
    for (std::size_t r = 0; r < options.n_init; ++r) {
        auto run = detail::lloyd(points, detail::kmeanspp_init(points, options.k, rng), options);
        run.best_init = r;
        if (r == 0 || run.inertia < best.inertia) best = std::move(run);
    }
    return best;
}

inline Clustering kmeans(const ReducedMatrix& reduced, const KMeansOptions& options = {}) {
    return kmeans(reduced.coords, options);
}

inline io::json clustering_meta(const Clustering& c, const ReducedMatrix& reduced, const KMeansOptions& options) {
    io::json reduction = reduced.parameters;
    reduction["method"] = std::string(reduction_name(reduced.method));
    reduction["d"] = reduced.d;
    reduction["original_dim"] = reduced.original_dim;
    reduction["warnings"] = reduced.warnings;
    return io::json{
        {"k", options.k},
        {"seed", options.seed},
        {"rng", std::string(Rng::algorithm)},
        {"max_iter", options.max_iter},
        {"tol", options.tol},
        {"n_init", options.n_init},
        {"best_init", c.best_init},
        {"inertia", c.inertia},
        {"iterations", c.iterations},
        {"converged", c.converged},
        {"reduction", reduction},
    };
}

}

#endif
