#include "manifit/manifolds.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include <json.hpp>

#include "manifit/rng.hpp"

namespace manifit {

namespace {

// Stream salts keeping sampler, noise and band draws independent.
constexpr std::uint64_t kNoiseSalt = 0x6E6F697365ull;
constexpr std::uint64_t kBandSalt = 0x62616E64ull;

constexpr double kOnManifoldTol = 1e-9;

}  // namespace

std::string to_string(ManifoldKind kind) {
    switch (kind) {
        case ManifoldKind::Circle: return "circle";
        case ManifoldKind::Sphere: return "sphere";
        case ManifoldKind::Torus: return "torus";
        case ManifoldKind::CalabiYauProjection: return "cy";
    }
    return "unknown";
}

Circle::Circle(double radius) : radius_(radius) {
    if (!(radius > 0.0)) throw ConfigError("Circle: radius must be positive");
}

PointCloud Circle::sample_uniform(std::int64_t n, std::uint64_t seed) const {
    if (n < 1) throw ConfigError("sample_uniform: n must be >= 1");
    PointMatrix pts(n, 2);
    for (std::int64_t i = 0; i < n; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        const double a = 2.0 * M_PI * rng.next_unit();
        pts(i, 0) = radius_ * std::cos(a);
        pts(i, 1) = radius_ * std::sin(a);
    }
    return PointCloud(std::move(pts));
}

Vec Circle::project(const Vec& z) const {
    const double n = z.norm();
    if (n < 1e-12 * radius_) {
        throw AmbiguousProjection("Circle::project: center of the circle");
    }
    return (radius_ / n) * z;
}

double Circle::distance(const Vec& z) const { return std::abs(z.norm() - radius_); }

std::string Circle::params_json() const {
    std::ostringstream os;
    os << "{\"radius\":" << radius_ << "}";
    return os.str();
}

Sphere::Sphere(double radius) : radius_(radius) {
    if (!(radius > 0.0)) throw ConfigError("Sphere: radius must be positive");
}

PointCloud Sphere::sample_uniform(std::int64_t n, std::uint64_t seed) const {
    if (n < 1) throw ConfigError("sample_uniform: n must be >= 1");
    PointMatrix pts(n, 3);
    for (std::int64_t i = 0; i < n; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        const Vec u = rng.next_unit_vector(3);
        pts(i, 0) = radius_ * u[0];
        pts(i, 1) = radius_ * u[1];
        pts(i, 2) = radius_ * u[2];
    }
    return PointCloud(std::move(pts));
}

Vec Sphere::project(const Vec& z) const {
    const double n = z.norm();
    if (n < 1e-12 * radius_) {
        throw AmbiguousProjection("Sphere::project: center of the sphere");
    }
    return (radius_ / n) * z;
}

double Sphere::distance(const Vec& z) const { return std::abs(z.norm() - radius_); }

std::string Sphere::params_json() const {
    std::ostringstream os;
    os << "{\"radius\":" << radius_ << "}";
    return os.str();
}

Torus::Torus(double major_radius, double minor_radius)
    : major_(major_radius), minor_(minor_radius) {
    if (!(major_ > 0.0) || !(minor_ > 0.0) || !(minor_ < major_)) {
        throw ConfigError("Torus: need 0 < r < R");
    }
}

PointCloud Torus::sample_uniform(std::int64_t n, std::uint64_t seed) const {
    if (n < 1) throw ConfigError("sample_uniform: n must be >= 1");
    PointMatrix pts(n, 3);
    for (std::int64_t i = 0; i < n; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        const double psi = 2.0 * M_PI * rng.next_unit();
        // Naive minor-angle sampling is non-uniform in surface measure:
        // accept theta with probability (R + r cos theta) / (R + r).
        double theta = 0.0;
        for (;;) {
            theta = 2.0 * M_PI * rng.next_unit();
            const double accept = (major_ + minor_ * std::cos(theta)) / (major_ + minor_);
            if (rng.next_unit() <= accept) break;
        }
        const double s = major_ + minor_ * std::cos(theta);
        pts(i, 0) = s * std::cos(psi);
        pts(i, 1) = s * std::sin(psi);
        pts(i, 2) = minor_ * std::sin(theta);
    }
    return PointCloud(std::move(pts));
}

Vec Torus::project(const Vec& z) const {
    const double s = std::hypot(z[0], z[1]);
    if (s < 1e-12 * major_) {
        throw AmbiguousProjection("Torus::project: point on the symmetry axis");
    }
    Vec spine(3);
    spine << major_ * z[0] / s, major_ * z[1] / s, 0.0;
    const Vec dir = z - spine;
    const double n = dir.norm();
    if (n < 1e-12 * minor_) {
        throw AmbiguousProjection("Torus::project: point on the spine circle");
    }
    return spine + (minor_ / n) * dir;
}

double Torus::distance(const Vec& z) const {
    const double s = std::hypot(z[0], z[1]);
    return std::abs(std::hypot(s - major_, z[2]) - minor_);
}

std::string Torus::params_json() const {
    std::ostringstream os;
    os << "{\"major_radius\":" << major_ << ",\"minor_radius\":" << minor_ << "}";
    return os.str();
}

std::int64_t CyGridSpec::theta_count() const {
    if (!(theta_step > 0.0)) throw ConfigError("CyGridSpec: theta_step must be positive");
    return static_cast<std::int64_t>(std::floor((theta_max - theta_min) / theta_step + 1e-9)) + 1;
}

std::int64_t CyGridSpec::zeta_count() const {
    if (!(zeta_step > 0.0)) throw ConfigError("CyGridSpec: zeta_step must be positive");
    return static_cast<std::int64_t>(std::floor((zeta_max - zeta_min) / zeta_step + 1e-9)) + 1;
}

std::int64_t CyGridSpec::total_count() const {
    return theta_count() * zeta_count() * static_cast<std::int64_t>(k1_set.size()) *
           static_cast<std::int64_t>(k2_set.size());
}

PointCloud calabi_yau_grid(const CyGridSpec& spec) {
    using cplx = std::complex<double>;
    const std::int64_t nt = spec.theta_count();
    const std::int64_t nz = spec.zeta_count();
    const double expo = 2.0 / static_cast<double>(spec.n);
    PointMatrix pts(spec.total_count(), 4);
    std::int64_t row = 0;
    for (int k1 : spec.k1_set) {
        const cplx phase1 = std::exp(cplx(0.0, 2.0 * M_PI * k1 / spec.n));
        for (int k2 : spec.k2_set) {
            const cplx phase2 = std::exp(cplx(0.0, 2.0 * M_PI * k2 / spec.n));
            for (std::int64_t it = 0; it < nt; ++it) {
                const double theta = spec.theta_min + spec.theta_step * static_cast<double>(it);
                for (std::int64_t iz = 0; iz < nz; ++iz) {
                    const double zeta = spec.zeta_min + spec.zeta_step * static_cast<double>(iz);
                    const cplx w(theta, zeta);
                    // x^4 + y^4 = cosh^2(w) - sinh^2(w) = 1: the 1/i scales
                    // the value of sinh, not its argument.
                    const cplx x = phase1 * std::pow(std::cosh(w), expo);
                    const cplx y = phase2 * std::pow(std::sinh(w) / cplx(0.0, 1.0), expo);
                    pts(row, 0) = x.real();
                    pts(row, 1) = y.real();
                    pts(row, 2) = x.imag();
                    pts(row, 3) = y.imag();
                    ++row;
                }
            }
        }
    }
    return PointCloud(std::move(pts));
}

PointCloud calabi_yau_project3(const PointCloud& grid4, double psi) {
    if (grid4.dim() != 4) throw ConfigError("calabi_yau_project3: expected D=4 cloud");
    PointMatrix pts(grid4.size(), 3);
    const double c = std::cos(psi);
    const double s = std::sin(psi);
    for (std::int64_t i = 0; i < grid4.size(); ++i) {
        const double* p = grid4.row_ptr(i);
        pts(i, 0) = p[0];
        pts(i, 1) = p[1];
        pts(i, 2) = c * p[2] + s * p[3];
    }
    return PointCloud(std::move(pts));
}

CalabiYauProjection::CalabiYauProjection(CyGridSpec spec)
    : spec_(std::move(spec)), grid_(calabi_yau_grid(spec_)) {
    index_ = std::make_unique<NeighborIndex>(grid_);
}

PointCloud CalabiYauProjection::sample_uniform(std::int64_t, std::uint64_t) const {
    throw NotImplemented(
        "CalabiYauProjection: no uniform surface sampler; draw from the reference grid");
}

Vec CalabiYauProjection::project(const Vec& z) const {
    const auto [idx, dist] = index_->nearest(z);
    (void)dist;
    return grid_.point(idx);
}

double CalabiYauProjection::distance(const Vec& z) const { return index_->nearest(z).second; }

std::string CalabiYauProjection::params_json() const {
    nlohmann::json j;
    j["theta_min"] = spec_.theta_min;
    j["theta_max"] = spec_.theta_max;
    j["theta_step"] = spec_.theta_step;
    j["zeta_min"] = spec_.zeta_min;
    j["zeta_max"] = spec_.zeta_max;
    j["zeta_step"] = spec_.zeta_step;
    j["k1_set"] = spec_.k1_set;
    j["k2_set"] = spec_.k2_set;
    j["n"] = spec_.n;
    j["psi"] = spec_.psi;
    j["grid_points"] = spec_.total_count();
    return j.dump();
}

SampleBatch add_noise(const PointCloud& clean, const NoiseModel& noise, std::uint64_t seed) {
    if (!(noise.sigma > 0.0)) throw ConfigError("add_noise: sigma must be positive");
    PointMatrix noisy = clean.data();
    const std::uint64_t noise_seed = mix64(seed, kNoiseSalt);
    for (std::int64_t i = 0; i < clean.size(); ++i) {
        Rng rng(noise_seed, static_cast<std::uint64_t>(i));
        for (int d = 0; d < clean.dim(); ++d) {
            noisy(i, d) += noise.sigma * rng.next_gaussian();
        }
    }
    SampleBatch batch;
    batch.clean = clean;
    batch.noisy = PointCloud(std::move(noisy));
    batch.seed = seed;
    return batch;
}

PointCloud initial_points(const ManifoldModel& model, const InitialBand& band,
                          const NoiseModel& noise, std::uint64_t seed,
                          int max_attempts_per_point) {
    if (!(band.lower > 0.0) || !(band.upper > band.lower)) {
        throw ConfigError("initial_points: need 0 < lower < upper");
    }
    (void)noise;
    const int dim = model.ambient_dim();
    PointMatrix pts(band.count, dim);
    const std::uint64_t band_seed = mix64(seed, kBandSalt);
    const bool on_grid = model.kind() == ManifoldKind::CalabiYauProjection;
    const auto* cy = on_grid ? static_cast<const CalabiYauProjection*>(&model) : nullptr;
    for (std::int64_t i = 0; i < band.count; ++i) {
        Rng rng(band_seed, static_cast<std::uint64_t>(i));
        bool placed = false;
        for (int attempt = 0; attempt < max_attempts_per_point; ++attempt) {
            Vec base;
            if (on_grid) {
                base = cy->reference_grid().point(static_cast<std::int64_t>(
                    rng.next_below(static_cast<std::uint64_t>(cy->reference_grid().size()))));
            } else {
                base = model.sample_uniform(1, rng.next_u64()).point(0);
            }
            const Vec dir = rng.next_unit_vector(dim);
            const double len = rng.next_uniform(band.lower, band.upper);
            const Vec w = base + len * dir;
            const double d = model.distance(w);
            if (d >= band.lower && d <= band.upper) {
                pts.row(i) = w.transpose();
                placed = true;
                break;
            }
        }
        if (!placed) {
            throw RejectionBudgetExceeded("initial_points: attempts exhausted for point " +
                                          std::to_string(i));
        }
    }
    return PointCloud(std::move(pts));
}

std::shared_ptr<ManifoldModel> make_manifold(const std::string& name,
                                             const std::string& params_json) {
    nlohmann::json j = nlohmann::json::parse(params_json.empty() ? "{}" : params_json);
    if (name == "circle") {
        return std::make_shared<Circle>(j.value("radius", 1.0));
    }
    if (name == "sphere") {
        return std::make_shared<Sphere>(j.value("radius", 1.0));
    }
    if (name == "torus") {
        return std::make_shared<Torus>(j.value("major_radius", 1.0),
                                       j.value("minor_radius", 0.4));
    }
    if (name == "cy") {
        CyGridSpec spec;
        spec.theta_min = j.value("theta_min", spec.theta_min);
        spec.theta_max = j.value("theta_max", spec.theta_max);
        spec.theta_step = j.value("theta_step", spec.theta_step);
        spec.zeta_min = j.value("zeta_min", spec.zeta_min);
        spec.zeta_max = j.value("zeta_max", spec.zeta_max);
        spec.zeta_step = j.value("zeta_step", spec.zeta_step);
        if (j.contains("k1_set")) spec.k1_set = j["k1_set"].get<std::vector<int>>();
        if (j.contains("k2_set")) spec.k2_set = j["k2_set"].get<std::vector<int>>();
        spec.n = j.value("n", spec.n);
        spec.psi = j.value("psi", spec.psi);
        return std::make_shared<CalabiYauProjection>(spec);
    }
    throw ConfigError("unknown manifold kind: " + name);
}

}  // namespace manifit
