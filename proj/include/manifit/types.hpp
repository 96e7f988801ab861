#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>

#include "manifit/errors.hpp"

namespace manifit {

using Vec = Eigen::VectorXd;
// Points are rows; row-major keeps one point contiguous in memory.
using PointMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Ordered, immutable sequence of N points in R^D.
class PointCloud {
public:
    PointCloud() = default;
    explicit PointCloud(PointMatrix pts) : pts_(std::move(pts)) {}

    std::int64_t size() const { return pts_.rows(); }
    int dim() const { return static_cast<int>(pts_.cols()); }
    bool empty() const { return pts_.rows() == 0; }

    Vec point(std::int64_t i) const { return pts_.row(i).transpose(); }
    const double* row_ptr(std::int64_t i) const { return pts_.row(i).data(); }
    const PointMatrix& data() const { return pts_; }

    bool operator==(const PointCloud& other) const {
        return pts_.rows() == other.pts_.rows() && pts_.cols() == other.pts_.cols() &&
               pts_ == other.pts_;
    }

private:
    PointMatrix pts_;
};

}  // namespace manifit
