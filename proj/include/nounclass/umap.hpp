#ifndef NOUNCLASS_UMAP_HPP
#define NOUNCLASS_UMAP_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "core.hpp"
#include "pca.hpp"
#include "rng.hpp"

/**
 * @file umap.hpp
 *
 * @brief Compact single-threaded UMAP (exact neighbors, PCA initialization).
 *
 * Follows the reference algorithm: fuzzy simplicial set from smoothed kNN distances,
 * symmetrized by probabilistic union, then SGD with negative sampling on the
 * 1 / (1 + a d^{2b}) low-dimensional kernel. Every random draw comes from one seeded
 * `Rng` consumed sequentially, so a fixed seed reproduces the layout within a build.
 */

namespace nounclass::umap {

struct Options {
    std::size_t n_neighbors = 15;
    double min_dist = 0.1;
    double spread = 1.0;
    std::size_t n_epochs = 0;  // 0 picks 500 below 10k points, 200 above
    double learning_rate = 1.0;
    double repulsion = 1.0;
    std::size_t negative_sample_rate = 5;
    std::uint64_t seed = 42;
};

struct Edge {
    std::size_t head;
    std::size_t tail;
    double weight;
};

/**
 * Fit (a, b) of 1 / (1 + a x^{2b}) to the offset exponential implied by min_dist and spread.
 * Damped Gauss-Newton on 300 points over [0, 3 * spread].
 */
inline std::pair<double, double> find_ab(double spread, double min_dist) {
    constexpr int npts = 300;
    std::vector<double> xs(npts), ys(npts);
    for (int i = 0; i < npts; ++i) {
        xs[i] = 3.0 * spread * i / (npts - 1);
        ys[i] = xs[i] < min_dist ? 1.0 : std::exp(-(xs[i] - min_dist) / spread);
    }
    auto sse = [&](double a, double b) {
        double s = 0;
        for (int i = 0; i < npts; ++i) {
            double f = 1.0 / (1.0 + a * std::pow(xs[i], 2 * b));
            s += (f - ys[i]) * (f - ys[i]);
        }
        return s;
    };

    double a = 1.0, b = 1.0, lambda = 1e-3;
    double current = sse(a, b);
    for (int iter = 0; iter < 500; ++iter) {
        Eigen::Matrix2d jtj = Eigen::Matrix2d::Zero();
        Eigen::Vector2d jtr = Eigen::Vector2d::Zero();
        for (int i = 0; i < npts; ++i) {
            const double x = xs[i];
            if (x <= 0) continue;
            const double p = std::pow(x, 2 * b);
            const double f = 1.0 / (1.0 + a * p);
            const double df_da = -p * f * f;
            const double df_db = -a * p * 2.0 * std::log(x) * f * f;
            Eigen::Vector2d g(df_da, df_db);
            jtj += g * g.transpose();
            jtr += g * (f - ys[i]);
        }
        Eigen::Matrix2d damped = jtj;
        damped.diagonal() *= (1.0 + lambda);
        Eigen::Vector2d step = damped.ldlt().solve(-jtr);
        double na = a + step(0), nb = b + step(1);
        if (na > 0 && nb > 0) {
            double next = sse(na, nb);
            if (next < current) {
                const bool done = (current - next) < 1e-14 * std::max(1.0, current);
                a = na;
                b = nb;
                current = next;
                lambda = std::max(lambda / 10, 1e-12);
                if (done) break;
                continue;
            }
        }
        lambda *= 10;
        if (lambda > 1e12) break;
    }
    return {a, b};
}

/**
 * Symmetrized fuzzy simplicial set over exact Euclidean kNN. Returns both directions of
 * each undirected edge, sorted by (head, tail).
 */
inline std::vector<Edge> fuzzy_graph(const RowMatrix& data, std::size_t n_neighbors) {
    const std::size_t n = static_cast<std::size_t>(data.rows());
    const std::size_t k = std::min(n_neighbors, n);
    const double target = std::log2(static_cast<double>(k));

    std::vector<std::vector<std::pair<std::size_t, double>>> knn(n);
    std::vector<double> all(n);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            all[j] = (data.row(i) - data.row(j)).norm();
        }
        std::iota(order.begin(), order.end(), 0);
        // Self first, then ascending distance, ties by index.
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                          [&](std::size_t a, std::size_t b) {
                              if ((a == i) != (b == i)) return a == i;
                              if (all[a] != all[b]) return all[a] < all[b];
                              return a < b;
                          });
        for (std::size_t r = 0; r < k; ++r) knn[i].emplace_back(order[r], all[order[r]]);
    }

    double mean_all = 0;
    std::size_t count_all = 0;
    for (const auto& row : knn) {
        for (const auto& [j, d] : row) {
            mean_all += d;
            ++count_all;
        }
    }
    mean_all /= std::max<std::size_t>(count_all, 1);

    std::vector<std::vector<std::pair<std::size_t, double>>> directed(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = knn[i];
        double rho = 0;
        double row_mean = 0;
        for (const auto& [j, d] : row) {
            row_mean += d;
            if (rho == 0 && d > 0) rho = d;
        }
        row_mean /= static_cast<double>(row.size());

        double lo = 0, hi = std::numeric_limits<double>::infinity(), mid = 1.0;
        for (int it = 0; it < 64; ++it) {
            double psum = 0;
            for (std::size_t r = 1; r < row.size(); ++r) {
                double d = row[r].second - rho;
                psum += d > 0 ? std::exp(-d / mid) : 1.0;
            }
            if (std::abs(psum - target) < 1e-5) break;
            if (psum > target) {
                hi = mid;
                mid = (lo + hi) / 2;
            } else {
                lo = mid;
                mid = std::isinf(hi) ? mid * 2 : (lo + hi) / 2;
            }
        }
        const double floor = 1e-3 * (rho > 0 ? row_mean : mean_all);
        const double sigma = std::max(mid, floor);

        for (std::size_t r = 0; r < row.size(); ++r) {
            const auto [j, d] = row[r];
            if (j == i) continue;
            double w = d - rho <= 0 ? 1.0 : std::exp(-(d - rho) / sigma);
            directed[i].emplace_back(j, w);
        }
    }

    auto lookup = [&](std::size_t from, std::size_t to) {
        for (const auto& [j, w] : directed[from]) {
            if (j == to) return w;
        }
        return 0.0;
    };

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [j, w] : directed[i]) {
            const double back = lookup(j, i);
            const double combined = w + back - w * back;
            edges.push_back(Edge{i, j, combined});
            if (back == 0) edges.push_back(Edge{j, i, combined});
        }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.head != b.head ? a.head < b.head : a.tail < b.tail;
    });
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const Edge& a, const Edge& b) { return a.head == b.head && a.tail == b.tail; }),
                edges.end());
    return edges;
}

/**
 * Embed `data` into `d` dimensions.
 */
inline RowMatrix embed(const RowMatrix& data, Eigen::Index d, const Options& options) {
    const std::size_t n = static_cast<std::size_t>(data.rows());
    if (n == 0) {
        throw ValidationError("empty input");
    }
    if (d < 1 || d > std::min<Eigen::Index>(data.rows(), data.cols())) {
        throw ValidationError("umap: target dimension out of range");
    }
    Rng rng(options.seed);

    RowMatrix y = fit_pca(data, d).transform(data);
    const double extent = y.cwiseAbs().maxCoeff();
    if (extent > 0) y *= 10.0 / extent;
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
        for (Eigen::Index j = 0; j < y.cols(); ++j) y(i, j) += 1e-4 * rng.normal();
    }
    if (n < 2) {
        return y;
    }

    const auto [a, b] = find_ab(options.spread, options.min_dist);
    auto edges = fuzzy_graph(data, options.n_neighbors);
    const std::size_t n_epochs = options.n_epochs ? options.n_epochs : (n <= 10000 ? 500 : 200);

    double max_w = 0;
    for (const auto& e : edges) max_w = std::max(max_w, e.weight);
    std::vector<Edge> kept;
    for (const auto& e : edges) {
        if (e.weight >= max_w / static_cast<double>(n_epochs)) kept.push_back(e);
    }

    const std::size_t m = kept.size();
    std::vector<double> per_sample(m), next_sample(m), per_negative(m), next_negative(m);
    const double neg_rate = static_cast<double>(options.negative_sample_rate);
    for (std::size_t e = 0; e < m; ++e) {
        per_sample[e] = max_w / kept[e].weight;
        next_sample[e] = per_sample[e];
        per_negative[e] = per_sample[e] / neg_rate;
        next_negative[e] = per_negative[e];
    }

    const Eigen::Index dims = y.cols();
    auto clip = [](double g) { return std::clamp(g, -4.0, 4.0); };
    for (std::size_t epoch = 0; epoch < n_epochs; ++epoch) {
        const double alpha = options.learning_rate * (1.0 - static_cast<double>(epoch) / static_cast<double>(n_epochs));
        const double now = static_cast<double>(epoch);
        for (std::size_t e = 0; e < m; ++e) {
            if (next_sample[e] > now) continue;
            const std::size_t i = kept[e].head;
            const std::size_t j = kept[e].tail;

            double dist2 = (y.row(i) - y.row(j)).squaredNorm();
            double coeff = 0;
            if (dist2 > 0) {
                coeff = -2.0 * a * b * std::pow(dist2, b - 1.0) / (a * std::pow(dist2, b) + 1.0);
            }
            for (Eigen::Index c = 0; c < dims; ++c) {
                double g = clip(coeff * (y(i, c) - y(j, c)));
                y(i, c) += g * alpha;
                y(j, c) -= g * alpha;
            }
            next_sample[e] += per_sample[e];

            const auto n_neg = static_cast<std::size_t>((now - next_negative[e]) / per_negative[e]);
            for (std::size_t p = 0; p < n_neg; ++p) {
                const std::size_t other = static_cast<std::size_t>(rng.below(n));
                if (other == i) continue;
                dist2 = (y.row(i) - y.row(other)).squaredNorm();
                double rep = 0;
                if (dist2 > 0) {
                    rep = 2.0 * options.repulsion * b / ((0.001 + dist2) * (a * std::pow(dist2, b) + 1.0));
                }
                for (Eigen::Index c = 0; c < dims; ++c) {
                    double g = rep > 0 ? clip(rep * (y(i, c) - y(other, c))) : 4.0;
                    y(i, c) += g * alpha;
                }
            }
            next_negative[e] += static_cast<double>(n_neg) * per_negative[e];
        }
    }
    return y;
}

}

#endif
