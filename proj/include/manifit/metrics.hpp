#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "manifit/manifolds.hpp"
#include "manifit/types.hpp"

namespace manifit {

// Per-run scoring record; serializes to a stable snake_case JSON schema.
struct FitReport {
    std::string method;
    double sup_error = 0.0;
    double avg_error = 0.0;
    std::int64_t n_scored = 0;
    std::int64_t n_excluded = 0;
    double wall_clock_seconds = 0.0;
    std::string config_snapshot;  // JSON text
    std::uint64_t seed = 0;

    std::string to_json() const;
};

// max_j d(p_j, M) and mean_j d(p_j, M) over the unmasked points.
// mask empty = score everything; mask[i] == false skips point i.
// The mean uses compensated summation so reduction order is immaterial.
std::pair<double, double> sup_and_avg_error(const PointCloud& outputs,
                                            const ManifoldModel& model,
                                            const std::vector<bool>& mask = {});

// Symmetric Hausdorff distance between finite point sets.
double hausdorff(const PointCloud& a, const PointCloud& b);

// sin of the angle between the estimated contraction direction F(w) - w
// and the true direction project(w) - w.
double direction_error(const Vec& w, const Vec& f_w, const ManifoldModel& model);

// Diagnostic lower-estimate of reach from pairwise Federer quotients
// ||a-b||^2 / (2 d(b, T_a)) with tangents from local PCA. Pairs are
// exhaustive for n <= pair_budget_threshold, otherwise sampled. Returns
// +infinity for affine data (all deviations below the floor).
double reach_proxy(const PointCloud& points, int d, double pca_radius,
                   std::int64_t max_pairs = 2000000, std::uint64_t seed = 0);

}  // namespace manifit
