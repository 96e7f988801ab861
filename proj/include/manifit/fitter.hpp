#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "manifit/geom.hpp"
#include "manifit/neighbors.hpp"
#include "manifit/types.hpp"

namespace manifit {

enum class RadiusSchedule { Auto, Manual };
enum class LogBase { Log10, Log2, Ln };

double log_with_base(double x, LogBase base);

// Tuning for the two-step contraction fit. Deliberately carries no
// intrinsic-dimension field: the method never needs d.
struct FitConfig {
    double sigma = 0.0;
    int k = 2;                    // bump exponent of both weight families
    RadiusSchedule schedule = RadiusSchedule::Auto;
    double r0 = 0.0;              // used when schedule == Manual
    double r1 = 0.0;
    double r2 = 0.0;
    int min_neighbors = 3;
    int workers = 0;              // 0 = hardware concurrency
    bool keep_frames = false;
    // Auto schedule: r0 = r1 = 5*sigma/log(N), r2 = 10*sigma*
    // sqrt(log_inner(1/sigma))/log(N). Outer log defaults to base 10,
    // inner to natural; both are overridable and echoed in reports.
    LogBase schedule_log = LogBase::Log10;
    LogBase schedule_inner_log = LogBase::Ln;
};

struct ResolvedRadii {
    double r0 = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
};

// Radii actually used for a sample of size n under cfg.
ResolvedRadii resolve_radii(const FitConfig& cfg, std::int64_t n);

// Local frame at z: the direction point F(z) and the rank-one projector
// onto F(z) - z.
struct ContractionFrame {
    Vec base;
    Vec direction_point;
    ProjMatrix u_hat;
};

enum class PointStatus { Ok, EmptySphere, EmptyCylinder, DegenerateDirection };

std::string to_string(PointStatus status);

struct FitOutcome {
    PointCloud inputs;
    PointCloud outputs;
    std::vector<PointStatus> status;
    std::vector<std::optional<ContractionFrame>> frames;  // filled when keep_frames

    std::int64_t count_ok() const;
};

// Normalized C^2 bump weights over a neighborhood of z:
// raw_i = (1 - ||z - y_i||^2 / r0^2)^k inside the ball, 0 outside.
// Throws EmptyNeighborhood when all raw weights vanish.
std::vector<double> alpha_weights(const Vec& z,
                                  const std::vector<std::pair<std::int64_t, Vec>>& neighbors,
                                  double r0, int k);

// Raw (unnormalized) bump value at squared distance d2 from the center.
double alpha_raw(double d2, double r0, int k);

// Plateau-then-bump axial weight w_u and cross-section weight w_v of the
// cylinder average; arguments are the component norms.
double cylinder_weight_u(double u_norm, double r2, int k);
double cylinder_weight_v(double v_norm, double r1, int k);
double cylinder_weights(const Vec& u, const Vec& v, double r1, double r2, int k);

// Local weighted average F(z) over the r0-ball.
Vec f_map(const Vec& z, const NeighborIndex& index, const FitConfig& cfg);

// Split y - z into the component along F(z) - z and its orthogonal rest.
std::pair<Vec, Vec> decompose_uv(const ContractionFrame& frame, const Vec& y);

// Contracted point G(z): cylinder-weighted average around z with axis
// F(z) - z. Candidates come from one radius query at sqrt(r1^2 + r2^2),
// the ball circumscribing the cylinder.
Vec g_map(const Vec& z, const NeighborIndex& index, const FitConfig& cfg);

// Per-point pipeline over a batch. Failures are recorded in status
// without aborting; failed points copy their input (the degenerate-
// direction case emits the ball mean). Deterministic for any worker
// count: each point is a pure function of (point, samples, cfg).
FitOutcome fit_batch(const PointCloud& w, const PointCloud& samples, const FitConfig& cfg);
// Reuse a prebuilt index over the sample cloud.
FitOutcome fit_batch(const PointCloud& w, const NeighborIndex& index, const FitConfig& cfg);

}  // namespace manifit
