#ifndef NOUNCLASS_PCA_HPP
#define NOUNCLASS_PCA_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "core.hpp"

namespace nounclass {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/**
 * @brief Principal components of a data matrix.
 *
 * `components` holds one unit-length component per row, ordered by descending variance.
 * Each component is oriented so that its largest-magnitude coordinate (first one on ties)
 * is positive.
 */
struct PcaModel {
    Eigen::RowVectorXd mean;
    RowMatrix components;
    Eigen::VectorXd variances;

    RowMatrix transform(const RowMatrix& data) const {
        return (data.rowwise() - mean) * components.transpose();
    }
};

/**
 * Fit the leading `d` components of `data` (one observation per row).
 * Requires `d <= min(rows, cols)`.
 */
inline PcaModel fit_pca(const RowMatrix& data, Eigen::Index d) {
    const Eigen::Index n = data.rows();
    const Eigen::Index dim = data.cols();
    if (n == 0) {
        throw ValidationError("empty input");
    }
    if (d < 1 || d > std::min(n, dim)) {
        throw ValidationError("fit_pca: component count out of range");
    }

    PcaModel model;
    model.mean = data.colwise().mean();
    RowMatrix centered = data.rowwise() - model.mean;
    const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
    Eigen::MatrixXd cov = (centered.transpose() * centered) / denom;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) {
        throw ValidationError("fit_pca: eigendecomposition failed");
    }
    // Eigenvalues come back ascending.
    const auto& values = solver.eigenvalues();
    const auto& vectors = solver.eigenvectors();
    model.components.resize(d, dim);
    model.variances.resize(d);
    for (Eigen::Index c = 0; c < d; ++c) {
        const Eigen::Index src = dim - 1 - c;
        Eigen::RowVectorXd v = vectors.col(src).transpose();
        Eigen::Index arg = 0;
        double best = -1;
        for (Eigen::Index j = 0; j < dim; ++j) {
            if (std::abs(v(j)) > best) {
                best = std::abs(v(j));
                arg = j;
            }
        }
        if (v(arg) < 0) v = -v;
        model.components.row(c) = v;
        model.variances(c) = std::max(values(src), 0.0);
    }
    return model;
}

}

#endif
