#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "manifit/errors.hpp"
#include "manifit/neighbors.hpp"
#include "manifit/types.hpp"

namespace manifit {

enum class ManifoldKind { Circle, Sphere, Torus, CalabiYauProjection };

std::string to_string(ManifoldKind kind);

// Isotropic Gaussian ambient noise N(0, sigma^2 I_D).
struct NoiseModel {
    double sigma = 0.0;
};

// Clean draws X plus their noisy counterparts Y = X + xi.
struct SampleBatch {
    PointCloud clean;
    PointCloud noisy;
    std::uint64_t seed = 0;
};

// Annulus sigma/2 <= d(w, M) <= 2*sigma the evaluation points live in.
struct InitialBand {
    double lower = 0.0;
    double upper = 0.0;
    std::int64_t count = 0;

    static InitialBand for_sigma(double sigma, std::int64_t n0) {
        return {0.5 * sigma, 2.0 * sigma, n0};
    }
};

// Analytic test manifold: uniform sampler, exact projection oracle and
// exact distance oracle. Immutable after construction.
class ManifoldModel {
public:
    virtual ~ManifoldModel() = default;

    virtual ManifoldKind kind() const = 0;
    virtual int intrinsic_dim() const = 0;
    virtual int ambient_dim() const = 0;
    // Analytic reach where known; nullopt for the Calabi-Yau grid.
    virtual std::optional<double> reach() const = 0;

    // n points on the manifold, uniform w.r.t. surface measure,
    // deterministic given seed. Point i is drawn from stream i.
    virtual PointCloud sample_uniform(std::int64_t n, std::uint64_t seed) const = 0;

    // Nearest point z* on the manifold. Throws AmbiguousProjection on
    // the medial axis.
    virtual Vec project(const Vec& z) const = 0;

    // d(z, M), defined everywhere.
    virtual double distance(const Vec& z) const = 0;

    // Shape parameters for sidecar manifests, serialized as JSON text.
    virtual std::string params_json() const = 0;
};

class Circle final : public ManifoldModel {
public:
    explicit Circle(double radius = 1.0);
    ManifoldKind kind() const override { return ManifoldKind::Circle; }
    int intrinsic_dim() const override { return 1; }
    int ambient_dim() const override { return 2; }
    std::optional<double> reach() const override { return radius_; }
    PointCloud sample_uniform(std::int64_t n, std::uint64_t seed) const override;
    Vec project(const Vec& z) const override;
    double distance(const Vec& z) const override;
    std::string params_json() const override;
    double radius() const { return radius_; }

private:
    double radius_;
};

class Sphere final : public ManifoldModel {
public:
    explicit Sphere(double radius = 1.0);
    ManifoldKind kind() const override { return ManifoldKind::Sphere; }
    int intrinsic_dim() const override { return 2; }
    int ambient_dim() const override { return 3; }
    std::optional<double> reach() const override { return radius_; }
    PointCloud sample_uniform(std::int64_t n, std::uint64_t seed) const override;
    Vec project(const Vec& z) const override;
    double distance(const Vec& z) const override;
    std::string params_json() const override;
    double radius() const { return radius_; }

private:
    double radius_;
};

class Torus final : public ManifoldModel {
public:
    explicit Torus(double major_radius = 1.0, double minor_radius = 0.4);
    ManifoldKind kind() const override { return ManifoldKind::Torus; }
    int intrinsic_dim() const override { return 2; }
    int ambient_dim() const override { return 3; }
    std::optional<double> reach() const override { return minor_; }
    PointCloud sample_uniform(std::int64_t n, std::uint64_t seed) const override;
    Vec project(const Vec& z) const override;
    double distance(const Vec& z) const override;
    std::string params_json() const override;
    double major_radius() const { return major_; }
    double minor_radius() const { return minor_; }

private:
    double major_;
    double minor_;
};

// Parameter grid for the normalized Fermat-quartic slice x^4 + y^4 = 1.
struct CyGridSpec {
    double theta_min = -1.5;
    double theta_max = 1.5;
    double theta_step = 0.05;
    double zeta_min = 0.0;
    double zeta_max = M_PI / 2.0;
    double zeta_step = 1.0 / 640.0;
    std::vector<int> k1_set = {1, 2};
    std::vector<int> k2_set = {1, 2};
    int n = 4;
    // Projection angle for the 3-D display embedding. No canonical
    // default exists; callers must choose one to project.
    double psi = 0.0;

    std::int64_t theta_count() const;
    std::int64_t zeta_count() const;
    std::int64_t total_count() const;
};

// 4-D points (Re x, Re y, Im x, Im y) over the grid; each satisfies
// |x^4 + y^4 - 1| <= 1e-8.
PointCloud calabi_yau_grid(const CyGridSpec& spec);

// 3-D display projection (Re x, Re y, cos(psi) Im x + sin(psi) Im y).
PointCloud calabi_yau_project3(const PointCloud& grid4, double psi);

// Surface known only through a reference grid; projection and distance
// are nearest-vertex queries against it.
class CalabiYauProjection final : public ManifoldModel {
public:
    explicit CalabiYauProjection(CyGridSpec spec);
    ManifoldKind kind() const override { return ManifoldKind::CalabiYauProjection; }
    int intrinsic_dim() const override { return 2; }
    int ambient_dim() const override { return 4; }
    std::optional<double> reach() const override { return std::nullopt; }
    // The grid is not uniform w.r.t. surface measure; throws NotImplemented.
    PointCloud sample_uniform(std::int64_t n, std::uint64_t seed) const override;
    Vec project(const Vec& z) const override;
    double distance(const Vec& z) const override;
    std::string params_json() const override;
    const PointCloud& reference_grid() const { return grid_; }
    const CyGridSpec& spec() const { return spec_; }

private:
    CyGridSpec spec_;
    PointCloud grid_;
    std::unique_ptr<NeighborIndex> index_;
};

// Y = X + xi with xi ~ N(0, sigma^2 I_D), displacement of point i drawn
// from stream i of a noise-salted seed. Clean points are kept bitwise.
SampleBatch add_noise(const PointCloud& clean, const NoiseModel& noise, std::uint64_t seed);

// Points w with band.lower <= d(w, M) <= band.upper, built by rejection:
// sample on the manifold, offset along a uniform direction with length
// uniform in the band, retry until the distance constraint holds.
PointCloud initial_points(const ManifoldModel& model, const InitialBand& band,
                          const NoiseModel& noise, std::uint64_t seed,
                          int max_attempts_per_point = 10000);

// Factory from a kind name ("circle", "sphere", "torus", "cy").
std::shared_ptr<ManifoldModel> make_manifold(const std::string& name,
                                             const std::string& params_json = "{}");

}  // namespace manifit
