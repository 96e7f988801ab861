#include "manifit/baseline.hpp"

#include <cmath>
#include <thread>

#include "manifit/errors.hpp"

namespace manifit {

namespace {

double bump_pow(double t, int beta) {
    double acc = 1.0;
    for (int i = 0; i < beta; ++i) acc *= t;
    return acc;
}

template <typename Fn>
void parallel_over(std::int64_t n, int workers, Fn&& fn) {
    int w = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    if (w < 1) w = 1;
    w = static_cast<int>(std::min<std::int64_t>(w, n));
    if (w <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < w; ++t) {
        const std::int64_t lo = n * t / w;
        const std::int64_t hi = n * (t + 1) / w;
        pool.emplace_back([lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

double Yx19Config::resolved_radius() const {
    if (radius > 0.0) return radius;
    if (!(sigma > 0.0)) throw ConfigError("Yx19Config: sigma must be positive");
    return 2.0 * std::sqrt(sigma);
}

double Yx19Config::resolved_tol() const {
    if (tol > 0.0) return tol;
    if (!(sigma > 0.0)) throw ConfigError("Yx19Config: sigma must be positive");
    return 1e-10 * sigma;
}

PcaEstimate local_pca(const NeighborIndex& index, const Vec& center, double r, int d) {
    const PointCloud& samples = index.cloud();
    const int dim = samples.dim();
    if (d < 1 || d >= dim) throw ConfigError("local_pca: need 1 <= d < D");
    const auto ids = index.radius_query(center, r);
    if (static_cast<std::int64_t>(ids.size()) < d + 1) {
        throw InsufficientNeighbors("local_pca: fewer than d+1 neighbors in radius");
    }
    Vec mean = Vec::Zero(dim);
    for (const auto i : ids) mean += samples.point(i);
    mean /= static_cast<double>(ids.size());
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto i : ids) {
        const Vec c = samples.point(i) - mean;
        cov += c * c.transpose();
    }
    cov /= static_cast<double>(ids.size());
    // Trailing eigenvectors span the normal space; equivalently the
    // complement of the top-d projector.
    const ProjMatrix tangent = top_eigen_projector(cov, d);
    PcaEstimate est;
    est.center = center;
    est.pi_perp = complement(tangent);
    est.radius = r;
    return est;
}

PcaTable build_pca_table(const NeighborIndex& index, const Yx19Config& cfg) {
    const PointCloud& samples = index.cloud();
    const double r = cfg.resolved_radius();
    PcaTable table;
    table.pi_perp.resize(samples.size());
    table.valid.assign(samples.size(), false);
    parallel_over(samples.size(), cfg.workers, [&](std::int64_t i) {
        try {
            table.pi_perp[i] = local_pca(index, samples.point(i), r, cfg.d).pi_perp.entries;
            table.valid[i] = true;
        } catch (const InsufficientNeighbors&) {
            // left invalid; bias_map_f skips it
        }
    });
    return table;
}

Vec bias_map_f(const Vec& y, const NeighborIndex& index, const Yx19Config& cfg,
               const PcaTable& table) {
    const PointCloud& samples = index.cloud();
    const int dim = samples.dim();
    const double r = cfg.resolved_radius();
    const auto ids = index.radius_query(y, r);
    double total = 0.0;
    Vec mean = Vec::Zero(dim);
    Eigen::MatrixXd avg_perp = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto i : ids) {
        if (!table.valid[i]) continue;
        const double t = 1.0 - (samples.point(i) - y).squaredNorm() / (r * r);
        if (t <= 0.0) continue;
        const double w = bump_pow(t, cfg.beta);
        total += w;
        mean += w * samples.point(i);
        avg_perp += w * table.pi_perp[i];
    }
    if (!(total > 0.0)) throw EmptyNeighborhood("bias_map_f: no weighted neighbors");
    mean /= total;
    avg_perp /= total;
    const ProjMatrix pi_y = top_eigen_projector(avg_perp, dim - cfg.d);
    return pi_y.apply(y - mean);
}

ProjectResult project_to_zero_set(const Vec& w, const NeighborIndex& index,
                                  const Yx19Config& cfg, const PcaTable& table) {
    const double tol = cfg.resolved_tol();
    ProjectResult res;
    res.point = w;
    for (int it = 0; it < cfg.max_iters; ++it) {
        const Vec f = bias_map_f(res.point, index, cfg, table);
        if (f.norm() <= tol) {
            res.converged = true;
            res.iterations = it;
            return res;
        }
        res.point -= f;
        res.iterations = it + 1;
    }
    // One more evaluation so a last step that landed inside tol counts.
    try {
        res.converged = bias_map_f(res.point, index, cfg, table).norm() <= tol;
    } catch (const EmptyNeighborhood&) {
        res.converged = false;
    }
    return res;
}

FitOutcome yx19_fit_batch(const PointCloud& w, const PointCloud& samples,
                          const Yx19Config& cfg) {
    if (samples.empty()) throw EmptyInput("yx19_fit_batch: empty sample cloud");
    NeighborIndex index(samples);
    const PcaTable table = build_pca_table(index, cfg);
    const std::int64_t n = w.size();
    PointMatrix out(n, w.dim());
    FitOutcome outcome;
    outcome.status.assign(n, PointStatus::Ok);
    parallel_over(n, cfg.workers, [&](std::int64_t i) {
        try {
            const ProjectResult res = project_to_zero_set(w.point(i), index, cfg, table);
            out.row(i) = res.point.transpose();
        } catch (const EmptyNeighborhood&) {
            out.row(i) = w.data().row(i);
            outcome.status[i] = PointStatus::EmptySphere;
        }
    });
    outcome.inputs = w;
    outcome.outputs = PointCloud(std::move(out));
    return outcome;
}

}  // namespace manifit
