#include "manifit/geom.hpp"

#include <algorithm>
#include <cmath>

namespace manifit {

bool ProjMatrix::is_valid(const ProjTolerances& tol) const {
    const auto& p = entries;
    if (p.rows() != p.cols()) return false;
    if ((p - p.transpose()).cwiseAbs().maxCoeff() > tol.symmetry) return false;
    if ((p * p - p).cwiseAbs().maxCoeff() > tol.idempotence) return false;
    if (std::abs(p.trace() - static_cast<double>(rank)) > tol.trace) return false;
    return true;
}

ProjMatrix rank_one_projector(const Vec& v) {
    const double n2 = v.squaredNorm();
    if (n2 <= 0.0 || !std::isfinite(n2)) {
        throw DegenerateDirection("rank_one_projector: zero-norm direction");
    }
    ProjMatrix p;
    p.entries = (v * v.transpose()) / n2;
    p.rank = 1;
    return p;
}

ProjMatrix complement(const ProjMatrix& p) {
    ProjMatrix q;
    q.entries = Eigen::MatrixXd::Identity(p.dim(), p.dim()) - p.entries;
    q.rank = p.dim() - p.rank;
    return q;
}

double sin_angle(const Vec& a, const Vec& b) {
    const double na = a.norm();
    const double nb = b.norm();
    if (na <= 0.0 || nb <= 0.0) {
        throw DegenerateDirection("sin_angle: zero-norm vector");
    }
    double c = a.dot(b) / (na * nb);
    c = std::clamp(c, -1.0, 1.0);
    return std::sqrt(std::max(0.0, 1.0 - c * c));
}

void symmetric_eigen_sorted(const Eigen::MatrixXd& a, Eigen::VectorXd& eigenvalues,
                            Eigen::MatrixXd& eigenvectors) {
    const int n = static_cast<int>(a.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success) {
        throw InvalidMatrix("symmetric_eigen_sorted: eigendecomposition failed");
    }
    eigenvalues.resize(n);
    eigenvectors.resize(n, n);
    // Eigen returns ascending order; reverse to descending and fix signs.
    for (int j = 0; j < n; ++j) {
        const int src = n - 1 - j;
        eigenvalues[j] = solver.eigenvalues()[src];
        Eigen::VectorXd v = solver.eigenvectors().col(src);
        for (int i = 0; i < n; ++i) {
            if (v[i] != 0.0) {
                if (v[i] < 0.0) v = -v;
                break;
            }
        }
        eigenvectors.col(j) = v;
    }
}

ProjMatrix top_eigen_projector(const Eigen::MatrixXd& a, int m) {
    const int n = static_cast<int>(a.rows());
    if (a.rows() != a.cols()) {
        throw InvalidMatrix("top_eigen_projector: matrix is not square");
    }
    if (m < 1 || m > n) {
        throw InvalidMatrix("top_eigen_projector: rank out of range");
    }
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale) {
        throw InvalidMatrix("top_eigen_projector: matrix is not symmetric");
    }
    Eigen::VectorXd evals;
    Eigen::MatrixXd evecs;
    symmetric_eigen_sorted(0.5 * (a + a.transpose()), evals, evecs);
    const Eigen::MatrixXd basis = evecs.leftCols(m);
    ProjMatrix p;
    p.entries = basis * basis.transpose();
    p.rank = m;
    return p;
}

}  // namespace manifit
