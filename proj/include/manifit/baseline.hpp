#pragma once

#include <cstdint>
#include <vector>

#include "manifit/fitter.hpp"
#include "manifit/geom.hpp"
#include "manifit/neighbors.hpp"
#include "manifit/types.hpp"

namespace manifit {

// Local-PCA normal-space estimate at a sample point.
struct PcaEstimate {
    Vec center;
    ProjMatrix pi_perp;  // rank D - d
    double radius = 0.0;
};

// Tuning for the local-PCA bias-map baseline. Unlike the contraction
// fit, it needs the intrinsic dimension d.
struct Yx19Config {
    double sigma = 0.0;
    int d = 0;
    double radius = 0.0;   // 0 resolves to 2*sqrt(sigma)
    int beta = 2;          // weight exponent
    int max_iters = 100;
    double tol = 0.0;      // 0 resolves to 1e-10*sigma
    int workers = 0;

    double resolved_radius() const;
    double resolved_tol() const;
};

// Normal-space projector from the trailing D-d eigenvectors of the
// centered covariance of the r-neighborhood of center.
PcaEstimate local_pca(const NeighborIndex& index, const Vec& center, double r, int d);

// All per-sample PCA projectors, precomputed eagerly. Samples with
// fewer than d+1 neighbors are marked invalid rather than throwing.
struct PcaTable {
    std::vector<Eigen::MatrixXd> pi_perp;
    std::vector<bool> valid;
};
PcaTable build_pca_table(const NeighborIndex& index, const Yx19Config& cfg);

// Bias estimate f(y) = Pi_y_perp (y - sum_i alpha_i(y) y_i) with
// Pi_y_perp the top-(D-d) eigenprojector of the weighted average of the
// per-sample normal projectors.
Vec bias_map_f(const Vec& y, const NeighborIndex& index, const Yx19Config& cfg,
               const PcaTable& table);

struct ProjectResult {
    Vec point;
    bool converged = false;
    int iterations = 0;
};

// Fixed-point iteration y <- y - f(y) toward the zero set of the bias
// map; returns the last iterate with a convergence flag.
ProjectResult project_to_zero_set(const Vec& w, const NeighborIndex& index,
                                  const Yx19Config& cfg, const PcaTable& table);

// Batch wrapper with the same outcome contract as the contraction fit.
// Points whose bias neighborhood is empty get status EmptySphere; a
// non-converged iterate still counts as Ok (the flag is advisory).
FitOutcome yx19_fit_batch(const PointCloud& w, const PointCloud& samples,
                          const Yx19Config& cfg);

}  // namespace manifit
