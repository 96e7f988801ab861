#include "manifit/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace manifit {

namespace {

double dist2(const PointCloud& cloud, std::int64_t i, const Vec& z) {
    const double* p = cloud.row_ptr(i);
    double acc = 0.0;
    for (int d = 0; d < cloud.dim(); ++d) {
        const double diff = p[d] - z[d];
        acc += diff * diff;
    }
    return acc;
}

}  // namespace

NeighborIndex::NeighborIndex(const PointCloud& cloud) : cloud_(&cloud) {
    if (cloud.empty()) throw EmptyInput("NeighborIndex: empty cloud");
    const auto n = static_cast<std::int32_t>(cloud.size());
    order_.resize(n);
    for (std::int32_t i = 0; i < n; ++i) order_[i] = i;
    brute_force_ = cloud.dim() > kBruteForceDim;
    if (!brute_force_) {
        nodes_.reserve(2 * n / kLeafSize + 8);
        root_ = build(0, n);
    }
}

std::int32_t NeighborIndex::build(std::int32_t begin, std::int32_t end) {
    const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    if (end - begin <= kLeafSize) {
        nodes_[id].begin = begin;
        nodes_[id].end = end;
        // Keep leaf contents ascending so query output merges sorted runs.
        std::sort(order_.begin() + begin, order_.begin() + end);
        return id;
    }
    const int dim = cloud_->dim();
    int axis = 0;
    double best_spread = -1.0;
    for (int d = 0; d < dim; ++d) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::int32_t k = begin; k < end; ++k) {
            const double v = cloud_->row_ptr(order_[k])[d];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi - lo > best_spread) {
            best_spread = hi - lo;
            axis = d;
        }
    }
    const std::int32_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::int32_t a, std::int32_t b) {
                         const double va = cloud_->row_ptr(a)[axis];
                         const double vb = cloud_->row_ptr(b)[axis];
                         return va < vb || (va == vb && a < b);
                     });
    const double split = cloud_->row_ptr(order_[mid])[axis];
    const std::int32_t left = build(begin, mid);
    const std::int32_t right = build(mid, end);
    nodes_[id].axis = axis;
    nodes_[id].split = split;
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
}

void NeighborIndex::collect_radius(std::int32_t node, const Vec& z, double rho2,
                                   std::vector<std::int64_t>& out) const {
    const Node& nd = nodes_[node];
    if (nd.axis < 0) {
        for (std::int32_t k = nd.begin; k < nd.end; ++k) {
            const std::int32_t i = order_[k];
            if (dist2(*cloud_, i, z) <= rho2) out.push_back(i);
        }
        return;
    }
    const double delta = z[nd.axis] - nd.split;
    const double rho = std::sqrt(rho2);
    // Median value belongs to the right child; left may still hold ties.
    if (delta <= rho) collect_radius(nd.left, z, rho2, out);
    if (delta >= -rho) collect_radius(nd.right, z, rho2, out);
}

std::vector<std::int64_t> NeighborIndex::radius_query(const Vec& z, double rho) const {
    if (!(rho > 0.0)) throw NonPositiveInput("radius_query: rho must be positive");
    std::vector<std::int64_t> out;
    const double rho2 = rho * rho;
    if (brute_force_) {
        for (std::int64_t i = 0; i < cloud_->size(); ++i) {
            if (dist2(*cloud_, i, z) <= rho2) out.push_back(i);
        }
        return out;
    }
    collect_radius(root_, z, rho2, out);
    std::sort(out.begin(), out.end());
    return out;
}

void NeighborIndex::search_nearest(std::int32_t node, const Vec& z, std::int64_t& best,
                                   double& best_d2) const {
    const Node& nd = nodes_[node];
    if (nd.axis < 0) {
        for (std::int32_t k = nd.begin; k < nd.end; ++k) {
            const std::int32_t i = order_[k];
            const double d2 = dist2(*cloud_, i, z);
            if (d2 < best_d2 || (d2 == best_d2 && i < best)) {
                best_d2 = d2;
                best = i;
            }
        }
        return;
    }
    const double delta = z[nd.axis] - nd.split;
    const std::int32_t near = delta < 0.0 ? nd.left : nd.right;
    const std::int32_t far = delta < 0.0 ? nd.right : nd.left;
    search_nearest(near, z, best, best_d2);
    if (delta * delta <= best_d2) search_nearest(far, z, best, best_d2);
}

std::pair<std::int64_t, double> NeighborIndex::nearest(const Vec& z) const {
    std::int64_t best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    if (brute_force_) {
        for (std::int64_t i = 0; i < cloud_->size(); ++i) {
            const double d2 = dist2(*cloud_, i, z);
            if (d2 < best_d2) {
                best_d2 = d2;
                best = i;
            }
        }
    } else {
        search_nearest(root_, z, best, best_d2);
    }
    return {best, std::sqrt(best_d2)};
}

}  // namespace manifit
