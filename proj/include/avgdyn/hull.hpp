#pragma once

// Convex-hull evidence tooling for reachable-set clouds. Points share a
// coordinate sum, so the hull lives in the hyperplane sum(y) = const; we
// project onto an orthonormal (Helmert) basis of that hyperplane, compute
// the hull there (interval / monotone chain / incremental 3-D), and keep the
// projection data for inside tests.

#include <random>

#include "avgdyn/majorization.hpp"

namespace avgdyn::majorization {

struct HullDescription {
    int ambient_dim = 0;
    int hull_dim = 0;  // affine dimension of the hull inside the sum plane

    // vertices in original coordinates; facets index into `vertices`.
    // hull_dim 2 lists vertices in convex-position order with edges as
    // facets; hull_dim 3 lists triangles; hull_dim 1 lists the endpoints.
    std::vector<std::vector<double>> vertices;
    std::vector<std::vector<int>> facets;

    // projection: hull coords of p are span * (helmert * (p - origin) - plane_base)
    std::vector<double> origin;                    // ambient_dim
    std::vector<std::vector<double>> helmert;      // (ambient_dim-1) x ambient_dim
    std::vector<double> plane_base;                // ambient_dim-1, anchor of the affine span
    std::vector<std::vector<double>> span;         // hull_dim x (ambient_dim-1)
    std::vector<std::vector<double>> proj_vertices;  // hull coords, per vertex

    // facet half-spaces in hull coords: dot(normal, q) <= offset inside
    std::vector<std::vector<double>> facet_normals;
    std::vector<double> facet_offsets;
};

// Computes the hull of the cloud inside the sum plane. Supports ambient
// dimension 2, 3 and 4; degenerate (affinely dependent) clouds are reported
// with the lower hull_dim they actually span.
HullDescription hull_in_sum_plane(const PointCloud& points);

// How far `point` sticks out of the hull (0 when inside): the maximum of the
// half-space excesses in hull coordinates and the distance from the hull's
// affine span.
double distance_outside(const HullDescription& hull, const double* point);

struct ClosureReport {
    long trials = 0;
    long violations = 0;
    double max_penetration = 0.0;
    double tolerance = 0.0;

    double violation_rate() const {
        return trials == 0 ? 0.0 : static_cast<double>(violations) / static_cast<double>(trials);
    }
};

// Empirical closure of the hull under Robin Hood operations: random convex
// combinations of the hull vertices are hit with one random valid op and the
// image is tested for membership. Violations indicate unconverged sampling,
// not a refutation of convexity of the reachable set.
ClosureReport hull_closure_test(const std::vector<double>& x, const HullDescription& hull,
                                long trials, std::mt19937_64& rng, double tolerance = 1e-9);

}  // namespace avgdyn::majorization
