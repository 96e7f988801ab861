#include "manifit/fitter.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "manifit/errors.hpp"

namespace manifit {

namespace {

constexpr double kDegenerateNorm = 1e-14;

int effective_workers(int requested, std::int64_t jobs) {
    int w = requested > 0 ? requested
                          : static_cast<int>(std::thread::hardware_concurrency());
    if (w < 1) w = 1;
    return static_cast<int>(std::min<std::int64_t>(w, jobs));
}

// Static block partition; slot writes keep results independent of the
// worker count.
template <typename Fn>
void parallel_for(std::int64_t n, int workers, Fn&& fn) {
    workers = effective_workers(workers, n);
    if (workers <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        const std::int64_t lo = n * t / workers;
        const std::int64_t hi = n * (t + 1) / workers;
        pool.emplace_back([lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

double log_with_base(double x, LogBase base) {
    switch (base) {
        case LogBase::Log10: return std::log10(x);
        case LogBase::Log2: return std::log2(x);
        case LogBase::Ln: return std::log(x);
    }
    return std::log10(x);
}

ResolvedRadii resolve_radii(const FitConfig& cfg, std::int64_t n) {
    if (cfg.schedule == RadiusSchedule::Manual) {
        if (!(cfg.r0 > 0.0) || !(cfg.r1 > 0.0) || !(cfg.r2 > 0.0)) {
            throw ConfigError("resolve_radii: manual schedule needs positive r0, r1, r2");
        }
        return {cfg.r0, cfg.r1, cfg.r2};
    }
    if (!(cfg.sigma > 0.0)) throw ConfigError("resolve_radii: sigma must be positive");
    if (n < 2) throw ConfigError("resolve_radii: sample too small for the auto schedule");
    const double lg_n = log_with_base(static_cast<double>(n), cfg.schedule_log);
    if (!(lg_n > 0.0)) throw ConfigError("resolve_radii: log(N) must be positive");
    const double r0 = 5.0 * cfg.sigma / lg_n;
    const double inner = log_with_base(1.0 / cfg.sigma, cfg.schedule_inner_log);
    if (!(inner > 0.0)) {
        throw ConfigError("resolve_radii: sigma must be < 1 for the auto schedule");
    }
    const double r2 = 10.0 * cfg.sigma * std::sqrt(inner) / lg_n;
    return {r0, r0, r2};
}

std::string to_string(PointStatus status) {
    switch (status) {
        case PointStatus::Ok: return "ok";
        case PointStatus::EmptySphere: return "empty_sphere";
        case PointStatus::EmptyCylinder: return "empty_cylinder";
        case PointStatus::DegenerateDirection: return "degenerate_direction";
    }
    return "unknown";
}

std::int64_t FitOutcome::count_ok() const {
    return std::count(status.begin(), status.end(), PointStatus::Ok);
}

double alpha_raw(double d2, double r0, int k) {
    const double t = 1.0 - d2 / (r0 * r0);
    if (t <= 0.0) return 0.0;
    double acc = 1.0;
    for (int i = 0; i < k; ++i) acc *= t;
    return acc;
}

std::vector<double> alpha_weights(const Vec& z,
                                  const std::vector<std::pair<std::int64_t, Vec>>& neighbors,
                                  double r0, int k) {
    std::vector<double> w(neighbors.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
        w[i] = alpha_raw((neighbors[i].second - z).squaredNorm(), r0, k);
        total += w[i];
    }
    if (!(total > 0.0)) throw EmptyNeighborhood("alpha_weights: all raw weights are zero");
    for (auto& wi : w) wi /= total;
    return w;
}

double cylinder_weight_u(double u_norm, double r2, int k) {
    if (u_norm <= 0.5 * r2) return 1.0;
    if (u_norm >= r2) return 0.0;
    const double g = (2.0 * u_norm - r2) / r2;
    const double t = 1.0 - g * g;
    double acc = 1.0;
    for (int i = 0; i < k; ++i) acc *= t;
    return acc;
}

double cylinder_weight_v(double v_norm, double r1, int k) {
    if (v_norm >= r1) return 0.0;
    const double t = 1.0 - (v_norm * v_norm) / (r1 * r1);
    double acc = 1.0;
    for (int i = 0; i < k; ++i) acc *= t;
    return acc;
}

double cylinder_weights(const Vec& u, const Vec& v, double r1, double r2, int k) {
    if (!(r1 > 0.0) || !(r2 > 0.0)) {
        throw ConfigError("cylinder_weights: radii must be positive");
    }
    return cylinder_weight_u(u.norm(), r2, k) * cylinder_weight_v(v.norm(), r1, k);
}

namespace {

struct PointResult {
    Vec out;
    PointStatus status = PointStatus::Ok;
    std::optional<ContractionFrame> frame;
};

// Single-point pipeline shared by f_map/g_map/fit_batch. Weighted sums
// run in ascending index order so results do not depend on scheduling.
PointResult run_point(const Vec& z, const NeighborIndex& index, const FitConfig& cfg,
                      const ResolvedRadii& radii) {
    const PointCloud& samples = index.cloud();
    PointResult res;
    res.out = z;

    const auto ball = index.radius_query(z, radii.r0);
    if (static_cast<std::int64_t>(ball.size()) < cfg.min_neighbors) {
        res.status = PointStatus::EmptySphere;
        return res;
    }
    double alpha_total = 0.0;
    Vec f = Vec::Zero(z.size());
    for (const auto i : ball) {
        const Vec y = samples.point(i);
        const double w = alpha_raw((y - z).squaredNorm(), radii.r0, cfg.k);
        alpha_total += w;
        f += w * y;
    }
    if (!(alpha_total > 0.0)) {
        res.status = PointStatus::EmptySphere;
        return res;
    }
    f /= alpha_total;

    const Vec dir = f - z;
    if (dir.norm() <= kDegenerateNorm) {
        // Symmetric neighborhoods can put F(z) on top of z; fall back to
        // the ball mean.
        res.status = PointStatus::DegenerateDirection;
        res.out = f;
        return res;
    }
    ContractionFrame frame{z, f, rank_one_projector(dir)};
    const Vec axis = dir / dir.norm();

    const double enclosing = std::sqrt(radii.r1 * radii.r1 + radii.r2 * radii.r2);
    const auto candidates = index.radius_query(z, enclosing);
    double beta_total = 0.0;
    std::int64_t positive = 0;
    Vec g = Vec::Zero(z.size());
    for (const auto i : candidates) {
        const Vec rel = samples.point(i) - z;
        const double u_norm = std::abs(rel.dot(axis));
        const double v2 = std::max(0.0, rel.squaredNorm() - u_norm * u_norm);
        const double w = cylinder_weight_u(u_norm, radii.r2, cfg.k) *
                         cylinder_weight_v(std::sqrt(v2), radii.r1, cfg.k);
        if (w > 0.0) {
            ++positive;
            beta_total += w;
            g += w * samples.point(i);
        }
    }
    if (positive < cfg.min_neighbors || !(beta_total > 0.0)) {
        res.status = PointStatus::EmptyCylinder;
        res.out = z;
        if (cfg.keep_frames) res.frame = std::move(frame);
        return res;
    }
    res.out = g / beta_total;
    res.status = PointStatus::Ok;
    if (cfg.keep_frames) res.frame = std::move(frame);
    return res;
}

}  // namespace

Vec f_map(const Vec& z, const NeighborIndex& index, const FitConfig& cfg) {
    const ResolvedRadii radii = resolve_radii(cfg, index.cloud().size());
    const auto ball = index.radius_query(z, radii.r0);
    if (static_cast<std::int64_t>(ball.size()) < cfg.min_neighbors) {
        throw EmptyNeighborhood("f_map: fewer than min_neighbors samples in the r0 ball");
    }
    std::vector<std::pair<std::int64_t, Vec>> neighbors;
    neighbors.reserve(ball.size());
    for (const auto i : ball) neighbors.emplace_back(i, index.cloud().point(i));
    const auto weights = alpha_weights(z, neighbors, radii.r0, cfg.k);
    Vec f = Vec::Zero(z.size());
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
        f += weights[i] * neighbors[i].second;
    }
    return f;
}

std::pair<Vec, Vec> decompose_uv(const ContractionFrame& frame, const Vec& y) {
    const Vec rel = y - frame.base;
    const Vec u = frame.u_hat.apply(rel);
    return {u, rel - u};
}

Vec g_map(const Vec& z, const NeighborIndex& index, const FitConfig& cfg) {
    const ResolvedRadii radii = resolve_radii(cfg, index.cloud().size());
    PointResult res = run_point(z, index, cfg, radii);
    switch (res.status) {
        case PointStatus::Ok: return res.out;
        case PointStatus::EmptySphere:
            throw EmptyNeighborhood("g_map: empty r0 ball");
        case PointStatus::DegenerateDirection:
            throw DegenerateDirection("g_map: F(z) coincides with z");
        case PointStatus::EmptyCylinder:
            throw EmptyCylinder("g_map: no positive-weight samples in the cylinder");
    }
    throw Error("g_map: unreachable");
}

FitOutcome fit_batch(const PointCloud& w, const NeighborIndex& index, const FitConfig& cfg) {
    const PointCloud& samples = index.cloud();
    if (samples.empty()) throw EmptyInput("fit_batch: empty sample cloud");
    const ResolvedRadii radii = resolve_radii(cfg, samples.size());
    const std::int64_t n = w.size();
    PointMatrix out(n, w.dim());
    FitOutcome outcome;
    outcome.status.assign(n, PointStatus::Ok);
    outcome.frames.resize(cfg.keep_frames ? n : 0);
    parallel_for(n, cfg.workers, [&](std::int64_t i) {
        PointResult res = run_point(w.point(i), index, cfg, radii);
        out.row(i) = res.out.transpose();
        outcome.status[i] = res.status;
        if (cfg.keep_frames) outcome.frames[i] = std::move(res.frame);
    });
    outcome.inputs = w;
    outcome.outputs = PointCloud(std::move(out));
    return outcome;
}

FitOutcome fit_batch(const PointCloud& w, const PointCloud& samples, const FitConfig& cfg) {
    if (samples.empty()) throw EmptyInput("fit_batch: empty sample cloud");
    NeighborIndex index(samples);
    return fit_batch(w, index, cfg);
}

}  // namespace manifit
