#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "manifit/errors.hpp"
#include "manifit/types.hpp"

namespace manifit {

// Exact Euclidean radius queries over an immutable PointCloud.
//
// Space-partitioning tree with axis-median splits (widest axis, leaf
// size 32). Queries return exactly the brute-force closed-ball set.
// For D > 12 partitioning degrades, so build falls back to brute force.
// The cloud must outlive the index; queries are const and thread-safe.
class NeighborIndex {
public:
    static constexpr int kLeafSize = 32;
    static constexpr int kBruteForceDim = 12;

    explicit NeighborIndex(const PointCloud& cloud);

    // Indices i with ||z - y_i||_2 <= rho (closed ball), ascending.
    std::vector<std::int64_t> radius_query(const Vec& z, double rho) const;

    // Index and distance of the closest point to z.
    std::pair<std::int64_t, double> nearest(const Vec& z) const;

    const PointCloud& cloud() const { return *cloud_; }

private:
    struct Node {
        // Leaf: [begin, end) into order_. Internal: split axis/value.
        std::int32_t left = -1;
        std::int32_t right = -1;
        std::int32_t begin = 0;
        std::int32_t end = 0;
        std::int32_t axis = -1;
        double split = 0.0;
    };

    std::int32_t build(std::int32_t begin, std::int32_t end);
    void collect_radius(std::int32_t node, const Vec& z, double rho2,
                        std::vector<std::int64_t>& out) const;
    void search_nearest(std::int32_t node, const Vec& z, std::int64_t& best,
                        double& best_d2) const;

    const PointCloud* cloud_;
    std::vector<std::int32_t> order_;
    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
    bool brute_force_ = false;
};

}  // namespace manifit
