#include "covsim/polygon.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace covsim {

namespace {

Scalar shoelace_twice(const std::vector<Vec2>& v) {
    Scalar sum = 0;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % n];
        sum += a.x() * b.y() - b.x() * a.y();
    }
    return sum;
}

Scalar cross2(const Vec2& a, const Vec2& b) {
    return a.x() * b.y() - a.y() * b.x();
}

// Orientation of the triplet (p, q, r): >0 for a left turn, <0 right, 0
// collinear (within eps scaled by the segment extents).
int orientation(const Vec2& p, const Vec2& q, const Vec2& r) {
    const Scalar val = cross2(q - p, r - p);
    const Scalar scale = (q - p).norm() * (r - p).norm();
    if (std::abs(val) <= 1e-12 * std::max<Scalar>(scale, 1.0)) return 0;
    return val > 0 ? 1 : -1;
}

bool on_segment(const Vec2& p, const Vec2& q, const Vec2& r) {
    return q.x() <= std::max(p.x(), r.x()) && q.x() >= std::min(p.x(), r.x()) &&
           q.y() <= std::max(p.y(), r.y()) && q.y() >= std::min(p.y(), r.y());
}

bool segments_intersect(const Vec2& p1, const Vec2& q1, const Vec2& p2,
                        const Vec2& q2) {
    const int o1 = orientation(p1, q1, p2);
    const int o2 = orientation(p1, q1, q2);
    const int o3 = orientation(p2, q2, p1);
    const int o4 = orientation(p2, q2, q1);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(p1, p2, q1)) return true;
    if (o2 == 0 && on_segment(p1, q2, q1)) return true;
    if (o3 == 0 && on_segment(p2, p1, q2)) return true;
    if (o4 == 0 && on_segment(p2, q1, q2)) return true;
    return false;
}

// Closest point on segment a-b to q, as the clamped parameter along the edge.
struct SegmentHit {
    Scalar t;
    Vec2 point;
    Scalar d2;
};

SegmentHit closest_on_segment(const Vec2& a, const Vec2& b, const Vec2& q) {
    const Vec2 ab = b - a;
    const Scalar len2 = ab.squaredNorm();
    Scalar t = len2 > 0 ? (q - a).dot(ab) / len2 : 0.0;
    t = std::clamp<Scalar>(t, 0.0, 1.0);
    const Vec2 point = a + t * ab;
    return {t, point, (q - point).squaredNorm()};
}

// Crossing-number test; reliable away from the boundary, which callers
// pre-filter through the boundary band.
bool strictly_inside(const std::vector<Vec2>& v, const Vec2& q) {
    bool inside = false;
    const std::size_t n = v.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const bool crosses = (v[i].y() > q.y()) != (v[j].y() > q.y());
        if (crosses &&
            q.x() < (v[j].x() - v[i].x()) * (q.y() - v[i].y()) /
                            (v[j].y() - v[i].y()) +
                        v[i].x()) {
            inside = !inside;
        }
    }
    return inside;
}

}  // namespace

PolygonDomain::PolygonDomain(std::vector<Vec2> vertices, Vec2 velocity,
                             Scalar reference_time)
    : vertices_(std::move(vertices)),
      velocity_(std::move(velocity)),
      reference_time_(reference_time) {
    const std::size_t n = vertices_.size();
    if (n < 3) {
        throw std::invalid_argument("polygon needs at least 3 vertices, got " +
                                    std::to_string(n));
    }
    for (const Vec2& v : vertices_) {
        if (!v.allFinite()) {
            throw std::invalid_argument("polygon vertex is not finite");
        }
    }
    if (!velocity_.allFinite() || !std::isfinite(reference_time_)) {
        throw std::invalid_argument("polygon velocity/reference time not finite");
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = vertices_[i];
        const Vec2& b = vertices_[(i + 1) % n];
        if ((b - a).norm() < 1e-12) {
            throw std::invalid_argument(
                "consecutive polygon vertices coincide at index " +
                std::to_string(i));
        }
    }
    if (shoelace_twice(vertices_) <= 0) {
        throw std::invalid_argument(
            "polygon vertices must be counter-clockwise (signed area > 0)");
    }
    // Simplicity: no two non-adjacent edges may touch. Adjacent edges share
    // exactly their common vertex, so a 180-degree fold is also rejected.
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = vertices_[i];
        const Vec2& b = vertices_[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            const Vec2& c = vertices_[j];
            const Vec2& d = vertices_[(j + 1) % n];
            if (segments_intersect(a, b, c, d)) {
                throw std::invalid_argument(
                    "polygon is not simple: edges " + std::to_string(i) +
                    " and " + std::to_string(j) + " intersect");
            }
        }
        const Vec2 prev_dir = a - vertices_[(i + n - 1) % n];
        const Vec2 next_dir = b - a;
        if (std::abs(cross2(prev_dir, next_dir)) <
                1e-12 * prev_dir.norm() * next_dir.norm() &&
            prev_dir.dot(next_dir) < 0) {
            throw std::invalid_argument(
                "polygon is not simple: spike at vertex " + std::to_string(i));
        }
    }
}

Eigen::AlignedBox2d PolygonDomain::bounding_box() const {
    Eigen::AlignedBox2d box;
    for (const Vec2& v : vertices_) box.extend(v);
    return box;
}

Vec2 PolygonDomain::centroid() const {
    // Area-weighted centroid via the shoelace decomposition.
    Vec2 acc = Vec2::Zero();
    Scalar twice_area = 0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = vertices_[i];
        const Vec2& b = vertices_[(i + 1) % n];
        const Scalar w = cross2(a, b);
        acc += w * (a + b);
        twice_area += w;
    }
    return acc / (3.0 * twice_area);
}

Scalar area(const PolygonDomain& domain) {
    return 0.5 * shoelace_twice(domain.vertices());
}

BoundaryProjection signed_distance(const PolygonDomain& domain, const Vec2& x,
                                   Scalar t) {
    const Vec2 offset = domain.offset_at(t);
    const Vec2 q = x - offset;  // query in the reference frame
    const std::vector<Vec2>& verts = domain.vertices();
    const std::size_t n = verts.size();

    int best_edge = 0;
    SegmentHit best{0.0, verts[0], std::numeric_limits<Scalar>::max()};
    for (std::size_t i = 0; i < n; ++i) {
        const SegmentHit hit =
            closest_on_segment(verts[i], verts[(i + 1) % n], q);
        // Strict '<' keeps the lowest-indexed feature on ties.
        if (hit.d2 < best.d2) {
            best = hit;
            best_edge = static_cast<int>(i);
        }
    }

    BoundaryProjection bp;
    bp.point = best.point + offset;
    if (best.t <= 0.0) {
        bp.kind = FeatureKind::Vertex;
        bp.index = best_edge;
    } else if (best.t >= 1.0) {
        bp.kind = FeatureKind::Vertex;
        bp.index = (best_edge + 1) % static_cast<int>(n);
    } else {
        bp.kind = FeatureKind::Edge;
        bp.index = best_edge;
    }
    const Scalar d = std::sqrt(best.d2);
    bp.distance = (d >= kBoundaryBand && strictly_inside(verts, q)) ? -d : d;
    return bp;
}

std::optional<Vec2> signed_distance_gradient(const PolygonDomain& domain,
                                             const Vec2& x, Scalar t) {
    const BoundaryProjection bp = signed_distance(domain, x, t);
    if (std::abs(bp.distance) < kBoundaryBand) return std::nullopt;
    return Vec2((x - bp.point) / bp.distance);
}

Vec2 feature_normal(const PolygonDomain& domain, const BoundaryProjection& bp) {
    const std::vector<Vec2>& verts = domain.vertices();
    const int n = static_cast<int>(verts.size());
    const auto edge_normal = [&](int e) {
        const Vec2 dir = verts[(e + 1) % n] - verts[e];
        // Interior lies left of a CCW edge, so outward is the right normal.
        return Vec2(dir.y(), -dir.x()).normalized();
    };
    if (bp.kind == FeatureKind::Edge) return edge_normal(bp.index);
    const Vec2 bisector =
        edge_normal((bp.index + n - 1) % n) + edge_normal(bp.index);
    return bisector.normalized();
}

Vec2 outward_direction(const PolygonDomain& domain, const Vec2& x,
                       const BoundaryProjection& bp) {
    if (std::abs(bp.distance) >= kBoundaryBand) {
        return Vec2((x - bp.point) / bp.distance);
    }
    return feature_normal(domain, bp);
}

Vec2 outward_direction(const PolygonDomain& domain, const Vec2& x, Scalar t) {
    return outward_direction(domain, x, signed_distance(domain, x, t));
}

bool contains(const PolygonDomain& domain, const Vec2& x, Scalar t) {
    const BoundaryProjection bp = signed_distance(domain, x, t);
    if (std::abs(bp.distance) < kBoundaryBand) return true;
    return bp.distance < 0;
}

}  // namespace covsim
