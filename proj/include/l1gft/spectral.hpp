#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "variation.hpp"

namespace l1gft {

/// Eigendecomposition of the combinatorial Laplacian, eigenvalues ascending.
struct LaplacianBasis {
    Vector eigenvalues;
    Matrix columns;
};

/// Full symmetric eigendecomposition of L = D - W. Each eigenvector is
/// signed so its first component with magnitude above 1e-12 is positive.
inline LaplacianBasis laplacian_basis(const Graph& g)
{
    Eigen::SelfAdjointEigenSolver<Matrix> solver(laplacian(g));
    if (solver.info() != Eigen::Success)
        fail(ErrorCode::ConvergenceFailure, "symmetric eigensolver did not converge");
    LaplacianBasis out{solver.eigenvalues(), solver.eigenvectors()};
    for (Eigen::Index k = 0; k < out.columns.cols(); ++k) {
        auto col = out.columns.col(k);
        for (Eigen::Index i = 0; i < col.size(); ++i) {
            if (std::abs(col(i)) > 1e-12) {
                if (col(i) < 0.0)
                    col = -col;
                break;
            }
        }
    }
    return out;
}

/// max_k |u_k' L u_k - lambda_k| / max(1, lambda_k), with the quadratic form
/// evaluated edge by edge.
inline double eigen_variation_check(const Graph& g, const LaplacianBasis& basis)
{
    double worst = 0.0;
    for (Eigen::Index k = 0; k < basis.columns.cols(); ++k) {
        const double lam = basis.eigenvalues(k);
        const double err = std::abs(l2_variation(g, basis.columns.col(k)) - lam) / std::max(1.0, lam);
        worst = std::max(worst, err);
    }
    return worst;
}

} // namespace l1gft
