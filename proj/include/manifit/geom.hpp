#pragma once

#include <Eigen/Dense>

#include "manifit/errors.hpp"
#include "manifit/types.hpp"

namespace manifit {

// Numeric tolerances for projector validity. The defaults are module
// constants; tests may construct looser/tighter sets.
struct ProjTolerances {
    double symmetry = 1e-10;
    double idempotence = 1e-8;
    double trace = 1e-6;
};

// Orthogonal projection matrix with known rank.
struct ProjMatrix {
    Eigen::MatrixXd entries;
    int rank = 0;

    int dim() const { return static_cast<int>(entries.rows()); }
    Vec apply(const Vec& v) const { return entries * v; }

    // True when symmetric, idempotent and trace-consistent within tol.
    bool is_valid(const ProjTolerances& tol = {}) const;
};

// vv^T / ||v||^2 : rank-one projector onto the line spanned by v.
ProjMatrix rank_one_projector(const Vec& v);

// I - P. Ranks sum to the ambient dimension.
ProjMatrix complement(const ProjMatrix& p);

// sin of the angle between two nonzero vectors, clamped into [0, 1].
double sin_angle(const Vec& a, const Vec& b);

// Projector onto the span of the eigenvectors of the m largest
// eigenvalues of a symmetric matrix. Deterministic: eigenvalues sorted
// descending, eigenvector signs fixed so the first nonzero coordinate
// is positive.
ProjMatrix top_eigen_projector(const Eigen::MatrixXd& a, int m);

// Eigen-decomposition of a symmetric matrix with the same deterministic
// ordering/sign conventions as top_eigen_projector. Eigenvalues come out
// descending. Shared by the eigen-projector and local PCA.
void symmetric_eigen_sorted(const Eigen::MatrixXd& a, Eigen::VectorXd& eigenvalues,
                            Eigen::MatrixXd& eigenvectors);

}  // namespace manifit
