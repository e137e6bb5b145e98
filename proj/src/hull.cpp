#include "avgdyn/hull.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numeric>

namespace avgdyn::majorization {

namespace {

constexpr double kRankTol = 1e-9;  // affine-dependence threshold for O(1) levels
constexpr double kVisTol = 1e-12;  // face visibility threshold for the 3-D hull

std::vector<std::vector<double>> helmert_basis(int n) {
    // rows orthonormal and orthogonal to (1, ..., 1)
    std::vector<std::vector<double>> rows;
    for (int k = 1; k < n; ++k) {
        std::vector<double> row(static_cast<std::size_t>(n), 0.0);
        const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
        for (int t = 0; t < k; ++t) row[static_cast<std::size_t>(t)] = 1.0 / norm;
        row[static_cast<std::size_t>(k)] = -static_cast<double>(k) / norm;
        rows.push_back(std::move(row));
    }
    return rows;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

std::vector<double> sub(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

// --- 2-D monotone chain ------------------------------------------------

double cross2(const std::array<double, 2>& o, const std::array<double, 2>& a,
              const std::array<double, 2>& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// indices into pts, counter-clockwise
std::vector<int> monotone_chain(const std::vector<std::array<double, 2>>& pts) {
    std::vector<int> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        const auto& pa = pts[static_cast<std::size_t>(a)];
        const auto& pb = pts[static_cast<std::size_t>(b)];
        return pa[0] != pb[0] ? pa[0] < pb[0] : pa[1] < pb[1];
    });
    if (idx.size() <= 2) return idx;

    auto at = [&](const std::vector<int>& h, std::size_t back) {
        return pts[static_cast<std::size_t>(h[h.size() - back])];
    };
    std::vector<int> hull;
    for (int i : idx) {  // lower chain
        while (hull.size() >= 2 && cross2(at(hull, 2), at(hull, 1), pts[static_cast<std::size_t>(i)]) <= 0)
            hull.pop_back();
        hull.push_back(i);
    }
    const std::size_t lower_size = hull.size() + 1;
    for (auto it = idx.rbegin() + 1; it != idx.rend(); ++it) {  // upper chain
        while (hull.size() >= lower_size &&
               cross2(at(hull, 2), at(hull, 1), pts[static_cast<std::size_t>(*it)]) <= 0)
            hull.pop_back();
        hull.push_back(*it);
    }
    hull.pop_back();  // closes back at the first point
    return hull;
}

// --- 3-D incremental hull ----------------------------------------------

struct Face {
    std::array<int, 3> v;
    std::array<double, 3> normal;
    double offset = 0.0;
    bool valid = true;
};

std::array<double, 3> cross3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::array<double, 3> diff3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Face make_face(const std::vector<std::array<double, 3>>& pts, int a, int b, int c,
               const std::array<double, 3>& interior) {
    Face f;
    f.v = {a, b, c};
    auto n = cross3(diff3(pts[static_cast<std::size_t>(b)], pts[static_cast<std::size_t>(a)]),
                    diff3(pts[static_cast<std::size_t>(c)], pts[static_cast<std::size_t>(a)]));
    const double ln = std::sqrt(dot3(n, n));
    if (ln < 1e-14) {
        f.valid = false;  // degenerate sliver, dropped; the re-sweep recovers
        return f;
    }
    n = {n[0] / ln, n[1] / ln, n[2] / ln};
    double off = dot3(n, pts[static_cast<std::size_t>(a)]);
    if (dot3(n, interior) > off) {  // orient outward
        n = {-n[0], -n[1], -n[2]};
        off = -off;
        std::swap(f.v[1], f.v[2]);
    }
    f.normal = n;
    f.offset = off;
    return f;
}

void insert_point(std::vector<Face>& faces, const std::vector<std::array<double, 3>>& pts,
                  int p, const std::array<double, 3>& interior) {
    std::vector<char> visible(faces.size(), 0);
    bool any = false;
    for (std::size_t f = 0; f < faces.size(); ++f) {
        if (dot3(faces[f].normal, pts[static_cast<std::size_t>(p)]) - faces[f].offset > kVisTol) {
            visible[f] = 1;
            any = true;
        }
    }
    if (!any) return;

    std::map<std::pair<int, int>, int> edge_count;
    for (std::size_t f = 0; f < faces.size(); ++f) {
        if (!visible[f]) continue;
        const auto& v = faces[f].v;
        for (int e = 0; e < 3; ++e) {
            int a = v[static_cast<std::size_t>(e)];
            int b = v[static_cast<std::size_t>((e + 1) % 3)];
            ++edge_count[{std::min(a, b), std::max(a, b)}];
        }
    }

    std::vector<Face> next;
    next.reserve(faces.size());
    for (std::size_t f = 0; f < faces.size(); ++f)
        if (!visible[f]) next.push_back(faces[f]);
    for (const auto& [edge, count] : edge_count) {
        if (count != 1) continue;  // not a horizon edge
        Face nf = make_face(pts, edge.first, edge.second, p, interior);
        if (nf.valid) next.push_back(nf);
    }
    faces = std::move(next);
}

}  // namespace

HullDescription hull_in_sum_plane(const PointCloud& points) {
    const int n = points.dim;
    if (n < 2 || n > 4)
        throw std::invalid_argument("hull_in_sum_plane: ambient dimension must be 2, 3 or 4");
    const std::size_t count = points.size();
    if (count == 0) throw std::invalid_argument("hull_in_sum_plane: empty cloud");

    HullDescription hull;
    hull.ambient_dim = n;
    hull.helmert = helmert_basis(n);
    hull.origin.assign(points.point(0), points.point(0) + n);

    const int pd = n - 1;
    std::vector<std::vector<double>> proj(count, std::vector<double>(static_cast<std::size_t>(pd)));
    for (std::size_t r = 0; r < count; ++r) {
        for (int k = 0; k < pd; ++k) {
            double s = 0.0;
            for (int c = 0; c < n; ++c)
                s += hull.helmert[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] *
                     (points.point(r)[c] - hull.origin[static_cast<std::size_t>(c)]);
            proj[r][static_cast<std::size_t>(k)] = s;
        }
    }

    // deduplicate (bitwise) before hull construction
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return proj[a] < proj[b]; });
    std::vector<std::size_t> keep;
    keep.reserve(count);
    for (std::size_t t = 0; t < count; ++t)
        if (t == 0 || proj[order[t]] != proj[order[t - 1]]) keep.push_back(order[t]);

    // affine rank by greedy Gram-Schmidt
    hull.plane_base = proj[keep[0]];
    std::vector<std::vector<double>> dirs;
    for (std::size_t t = 1; t < keep.size() && static_cast<int>(dirs.size()) < pd; ++t) {
        std::vector<double> d = sub(proj[keep[t]], hull.plane_base);
        for (const auto& u : dirs) {
            double c = dot(d, u);
            for (std::size_t i = 0; i < d.size(); ++i) d[i] -= c * u[i];
        }
        double len = norm(d);
        if (len > kRankTol) {
            for (double& v : d) v /= len;
            dirs.push_back(std::move(d));
        }
    }
    hull.hull_dim = static_cast<int>(dirs.size());
    hull.span = std::move(dirs);

    auto to_hull_coords = [&](const std::vector<double>& plane_pt) {
        std::vector<double> q(static_cast<std::size_t>(hull.hull_dim));
        std::vector<double> rel = sub(plane_pt, hull.plane_base);
        for (int k = 0; k < hull.hull_dim; ++k)
            q[static_cast<std::size_t>(k)] = dot(hull.span[static_cast<std::size_t>(k)], rel);
        return q;
    };
    auto emit_vertex = [&](std::size_t cloud_row) {
        hull.vertices.emplace_back(points.point(cloud_row), points.point(cloud_row) + n);
        hull.proj_vertices.push_back(to_hull_coords(proj[cloud_row]));
    };

    if (hull.hull_dim == 0) {
        emit_vertex(keep[0]);
        return hull;
    }

    if (hull.hull_dim == 1) {
        std::size_t lo = keep[0], hi = keep[0];
        double tlo = 0.0, thi = 0.0;
        for (std::size_t r : keep) {
            double t = to_hull_coords(proj[r])[0];
            if (t < tlo) tlo = t, lo = r;
            if (t > thi) thi = t, hi = r;
        }
        emit_vertex(lo);
        emit_vertex(hi);
        hull.facets = {{0}, {1}};
        hull.facet_normals = {{-1.0}, {1.0}};  // t >= tlo, t <= thi
        hull.facet_offsets = {-tlo, thi};
        return hull;
    }

    if (hull.hull_dim == 2) {
        std::vector<std::array<double, 2>> pts2;
        pts2.reserve(keep.size());
        for (std::size_t r : keep) {
            auto q = to_hull_coords(proj[r]);
            pts2.push_back({q[0], q[1]});
        }
        std::vector<int> chain = monotone_chain(pts2);
        for (int local : chain) emit_vertex(keep[static_cast<std::size_t>(local)]);
        const int v = static_cast<int>(chain.size());
        for (int e = 0; e < v; ++e) {
            int a = e, b = (e + 1) % v;
            hull.facets.push_back({a, b});
            const auto& pa = hull.proj_vertices[static_cast<std::size_t>(a)];
            const auto& pb = hull.proj_vertices[static_cast<std::size_t>(b)];
            // CCW polygon: outward normal is the edge direction rotated -90 deg
            double nx = pb[1] - pa[1];
            double ny = pa[0] - pb[0];
            double ln = std::hypot(nx, ny);
            if (ln > 0) nx /= ln, ny /= ln;
            hull.facet_normals.push_back({nx, ny});
            hull.facet_offsets.push_back(nx * pa[0] + ny * pa[1]);
        }
        return hull;
    }

    // hull_dim == 3 (ambient n == 4): incremental hull with a closing re-sweep
    std::vector<std::array<double, 3>> pts3;
    pts3.reserve(keep.size());
    for (std::size_t r : keep) {
        auto q = to_hull_coords(proj[r]);
        pts3.push_back({q[0], q[1], q[2]});
    }

    const std::size_t m = pts3.size();
    std::size_t i1 = 1;
    double best = -1.0;
    for (std::size_t t = 1; t < m; ++t) {
        double d = dot3(diff3(pts3[t], pts3[0]), diff3(pts3[t], pts3[0]));
        if (d > best) best = d, i1 = t;
    }
    std::size_t i2 = 0;
    best = -1.0;
    for (std::size_t t = 0; t < m; ++t) {
        auto c = cross3(diff3(pts3[i1], pts3[0]), diff3(pts3[t], pts3[0]));
        double d = dot3(c, c);
        if (d > best) best = d, i2 = t;
    }
    std::size_t i3 = 0;
    best = -1.0;
    auto plane_n = cross3(diff3(pts3[i1], pts3[0]), diff3(pts3[i2], pts3[0]));
    for (std::size_t t = 0; t < m; ++t) {
        double d = std::fabs(dot3(plane_n, diff3(pts3[t], pts3[0])));
        if (d > best) best = d, i3 = t;
    }

    std::array<double, 3> interior{};
    for (std::size_t t : {std::size_t{0}, i1, i2, i3}) {
        interior[0] += pts3[t][0] / 4.0;
        interior[1] += pts3[t][1] / 4.0;
        interior[2] += pts3[t][2] / 4.0;
    }

    std::vector<Face> faces;
    const int a0 = 0, a1 = static_cast<int>(i1), a2 = static_cast<int>(i2),
              a3 = static_cast<int>(i3);
    for (auto [x, y, z] : {std::array{a0, a1, a2}, std::array{a0, a1, a3},
                           std::array{a0, a2, a3}, std::array{a1, a2, a3}}) {
        Face f = make_face(pts3, x, y, z, interior);
        if (f.valid) faces.push_back(f);
    }

    for (std::size_t t = 0; t < m; ++t) insert_point(faces, pts3, static_cast<int>(t), interior);
    for (int round = 0; round < 8; ++round) {
        bool dirty = false;
        for (std::size_t t = 0; t < m; ++t) {
            for (const Face& f : faces) {
                if (dot3(f.normal, pts3[t]) - f.offset > 1e-9) {
                    insert_point(faces, pts3, static_cast<int>(t), interior);
                    dirty = true;
                    break;
                }
            }
        }
        if (!dirty) break;
    }

    std::map<int, int> remap;
    for (const Face& f : faces)
        for (int v : f.v)
            if (!remap.count(v)) {
                int id = static_cast<int>(remap.size());
                remap[v] = id;
                emit_vertex(keep[static_cast<std::size_t>(v)]);
            }
    for (const Face& f : faces) {
        hull.facets.push_back({remap[f.v[0]], remap[f.v[1]], remap[f.v[2]]});
        hull.facet_normals.push_back({f.normal[0], f.normal[1], f.normal[2]});
        hull.facet_offsets.push_back(f.offset);
    }
    return hull;
}

double distance_outside(const HullDescription& hull, const double* point) {
    const int n = hull.ambient_dim;
    const int pd = n - 1;
    std::vector<double> rel(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c)
        rel[static_cast<std::size_t>(c)] = point[c] - hull.origin[static_cast<std::size_t>(c)];

    std::vector<double> d(static_cast<std::size_t>(pd));
    for (int k = 0; k < pd; ++k)
        d[static_cast<std::size_t>(k)] =
            dot(hull.helmert[static_cast<std::size_t>(k)], rel) -
            hull.plane_base[static_cast<std::size_t>(k)];

    // hull coordinates and distance from the hull's affine span
    std::vector<double> q(static_cast<std::size_t>(hull.hull_dim));
    std::vector<double> in_span(static_cast<std::size_t>(pd), 0.0);
    for (int k = 0; k < hull.hull_dim; ++k) {
        const double c = dot(hull.span[static_cast<std::size_t>(k)], d);
        q[static_cast<std::size_t>(k)] = c;
        for (int t = 0; t < pd; ++t)
            in_span[static_cast<std::size_t>(t)] +=
                c * hull.span[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)];
    }
    double off2 = 0.0;
    for (int t = 0; t < pd; ++t) {
        const double r = d[static_cast<std::size_t>(t)] - in_span[static_cast<std::size_t>(t)];
        off2 += r * r;
    }

    double worst = std::sqrt(off2);
    for (std::size_t f = 0; f < hull.facet_normals.size(); ++f)
        worst = std::max(worst, dot(hull.facet_normals[f], q) - hull.facet_offsets[f]);
    return std::max(worst, 0.0);
}

ClosureReport hull_closure_test(const std::vector<double>& x, const HullDescription& hull,
                                long trials, std::mt19937_64& rng, double tolerance) {
    if (static_cast<int>(x.size()) != hull.ambient_dim)
        throw std::invalid_argument("hull_closure_test: dimension mismatch");
    if (hull.vertices.empty()) throw std::invalid_argument("hull_closure_test: empty hull");

    ClosureReport report;
    report.trials = trials;
    report.tolerance = tolerance;

    const int n = hull.ambient_dim;
    std::exponential_distribution<double> expo(1.0);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_real_distribution<double> lam(0.0, 0.5);

    std::vector<double> point(static_cast<std::size_t>(n));
    std::vector<double> weights(hull.vertices.size());
    for (long t = 0; t < trials; ++t) {
        double wsum = 0.0;
        for (double& w : weights) {
            w = expo(rng);
            wsum += w;
        }
        std::fill(point.begin(), point.end(), 0.0);
        for (std::size_t v = 0; v < hull.vertices.size(); ++v)
            for (int c = 0; c < n; ++c)
                point[static_cast<std::size_t>(c)] +=
                    weights[v] / wsum * hull.vertices[v][static_cast<std::size_t>(c)];

        int a = pick(rng);
        int b = pick(rng);
        while (b == a) b = pick(rng);
        const int i = point[static_cast<std::size_t>(a)] <= point[static_cast<std::size_t>(b)]
                          ? a
                          : b;
        const int j = i == a ? b : a;
        const double l = lam(rng);
        const double xi = point[static_cast<std::size_t>(i)];
        const double xj = point[static_cast<std::size_t>(j)];
        point[static_cast<std::size_t>(i)] = (1.0 - l) * xi + l * xj;
        point[static_cast<std::size_t>(j)] = l * xi + (1.0 - l) * xj;

        const double depth = distance_outside(hull, point.data());
        if (depth > tolerance) {
            ++report.violations;
            report.max_penetration = std::max(report.max_penetration, depth);
        }
    }
    return report;
}

}  // namespace avgdyn::majorization
