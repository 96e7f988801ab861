#include "manifit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "manifit/baseline.hpp"
#include "manifit/geom.hpp"
#include "manifit/neighbors.hpp"
#include "manifit/rng.hpp"

namespace manifit {

namespace {

// Neumaier compensated sum; keeps parallel/reordered reductions stable.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

constexpr double kAffineFloor = 1e-9;

}  // namespace

std::string FitReport::to_json() const {
    nlohmann::json j;
    j["method"] = method;
    j["sup_error"] = sup_error;
    j["avg_error"] = avg_error;
    j["n_scored"] = n_scored;
    j["n_excluded"] = n_excluded;
    j["wall_clock_seconds"] = wall_clock_seconds;
    j["config_snapshot"] =
        config_snapshot.empty() ? nlohmann::json::object() : nlohmann::json::parse(config_snapshot);
    j["seed"] = seed;
    return j.dump();
}

std::pair<double, double> sup_and_avg_error(const PointCloud& outputs,
                                            const ManifoldModel& model,
                                            const std::vector<bool>& mask) {
    if (!mask.empty() && static_cast<std::int64_t>(mask.size()) != outputs.size()) {
        throw ConfigError("sup_and_avg_error: mask size mismatch");
    }
    double sup = 0.0;
    CompensatedSum total;
    std::int64_t scored = 0;
    for (std::int64_t i = 0; i < outputs.size(); ++i) {
        if (!mask.empty() && !mask[i]) continue;
        const double d = model.distance(outputs.point(i));
        sup = std::max(sup, d);
        total.add(d);
        ++scored;
    }
    if (scored == 0) throw AllExcluded("sup_and_avg_error: no scored points");
    return {sup, total.value() / static_cast<double>(scored)};
}

double hausdorff(const PointCloud& a, const PointCloud& b) {
    if (a.empty() || b.empty()) throw EmptyInput("hausdorff: empty point set");
    const NeighborIndex ia(a);
    const NeighborIndex ib(b);
    double directed_ab = 0.0;
    for (std::int64_t i = 0; i < a.size(); ++i) {
        directed_ab = std::max(directed_ab, ib.nearest(a.point(i)).second);
    }
    double directed_ba = 0.0;
    for (std::int64_t i = 0; i < b.size(); ++i) {
        directed_ba = std::max(directed_ba, ia.nearest(b.point(i)).second);
    }
    return std::max(directed_ab, directed_ba);
}

double direction_error(const Vec& w, const Vec& f_w, const ManifoldModel& model) {
    const Vec target = model.project(w) - w;
    return sin_angle(f_w - w, target);
}

double reach_proxy(const PointCloud& points, int d, double pca_radius,
                   std::int64_t max_pairs, std::uint64_t seed) {
    const std::int64_t n = points.size();
    if (n < d + 2) throw InsufficientNeighbors("reach_proxy: need at least d+2 points");
    const NeighborIndex index(points);

    // Normal projector at each point from local PCA.
    std::vector<Eigen::MatrixXd> perp(n);
    std::vector<bool> valid(n, false);
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            perp[i] = local_pca(index, points.point(i), pca_radius, d).pi_perp.entries;
            valid[i] = true;
        } catch (const InsufficientNeighbors&) {
        }
    }

    double best = std::numeric_limits<double>::infinity();
    auto consider = [&](std::int64_t i, std::int64_t j) {
        if (i == j || !valid[i]) return;
        const Vec diff = points.point(j) - points.point(i);
        const double dev = (perp[i] * diff).norm();
        if (dev <= kAffineFloor) return;  // affine sentinel
        best = std::min(best, diff.squaredNorm() / (2.0 * dev));
    };

    const std::int64_t all_pairs = n * (n - 1);
    if (n <= 2000 && all_pairs <= max_pairs) {
        for (std::int64_t i = 0; i < n; ++i) {
            for (std::int64_t j = 0; j < n; ++j) consider(i, j);
        }
    } else {
        Rng rng(seed, 0x7265616368ull);
        for (std::int64_t k = 0; k < max_pairs; ++k) {
            const auto i = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(n)));
            const auto j = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(n)));
            consider(i, j);
        }
    }
    return best;
}

}  // namespace manifit
