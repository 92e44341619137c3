#pragma once

#include "covsim/types.hpp"

#include <Eigen/Geometry>

#include <optional>
#include <vector>

namespace covsim {

/// Half-width of the band around the boundary inside which a query point is
/// treated as lying on the boundary (signed-distance gradient undefined).
inline constexpr Scalar kBoundaryBand = 1e-9;

enum class FeatureKind : std::uint8_t { Edge, Vertex };

/// Nearest boundary point of a polygon to a query, with the boundary feature
/// it lies on and the signed distance (negative strictly inside).
struct BoundaryProjection {
    Vec2 point = Vec2::Zero();
    FeatureKind kind = FeatureKind::Edge;
    int index = 0;
    Scalar distance = 0;
};

/// Compact planar domain given as a simple polygon with counter-clockwise
/// vertices, optionally translating at constant velocity. The shape never
/// changes; its pose at time t is the reference polygon translated by
/// velocity * (t - reference_time).
///
/// Construction validates the invariants (>= 3 vertices, finite, consecutive
/// vertices distinct, counter-clockwise, no self-intersection) and throws
/// std::invalid_argument on violation.
class PolygonDomain {
  public:
    explicit PolygonDomain(std::vector<Vec2> vertices,
                           Vec2 velocity = Vec2::Zero(),
                           Scalar reference_time = 0.0);

    const std::vector<Vec2>& vertices() const { return vertices_; }
    int size() const { return static_cast<int>(vertices_.size()); }
    const Vec2& velocity() const { return velocity_; }
    Scalar reference_time() const { return reference_time_; }

    /// Translation applied to the reference polygon at time t.
    Vec2 offset_at(Scalar t) const {
        return velocity_ * (t - reference_time_);
    }
    Vec2 vertex_at(int i, Scalar t) const {
        return vertices_[static_cast<std::size_t>(i)] + offset_at(t);
    }

    /// Axis-aligned bounds of the reference polygon.
    Eigen::AlignedBox2d bounding_box() const;

    /// Area centroid of the reference polygon.
    Vec2 centroid() const;
    Vec2 centroid_at(Scalar t) const { return centroid() + offset_at(t); }

  private:
    std::vector<Vec2> vertices_;
    Vec2 velocity_;
    Scalar reference_time_;
};

/// Shoelace area; positive for the counter-clockwise polygons this type
/// enforces, invariant under the domain's translation.
Scalar area(const PolygonDomain& domain);

/// Nearest boundary point and signed distance b(x) at time t. Negative
/// inside, positive outside, ~zero on the boundary. When several boundary
/// points are equally near (medial-axis queries), the one on the
/// lowest-indexed edge or vertex is returned, so results are deterministic.
BoundaryProjection signed_distance(const PolygonDomain& domain, const Vec2& x,
                                   Scalar t);

/// Gradient of the signed distance, (x - P) / b(x): the outward unit vector
/// through the nearest boundary point. Empty when |b(x)| < kBoundaryBand,
/// where the quotient is undefined; callers needing a direction there should
/// use outward_direction().
std::optional<Vec2> signed_distance_gradient(const PolygonDomain& domain,
                                             const Vec2& x, Scalar t);

/// Outward unit normal of a boundary feature: the edge normal, or the
/// angle-bisector normal at a vertex.
Vec2 feature_normal(const PolygonDomain& domain, const BoundaryProjection& bp);

/// Total version of signed_distance_gradient: falls back to the nearest
/// feature's outward normal inside the boundary band.
Vec2 outward_direction(const PolygonDomain& domain, const Vec2& x, Scalar t);
Vec2 outward_direction(const PolygonDomain& domain, const Vec2& x,
                       const BoundaryProjection& bp);

/// True iff x is inside the polygon at time t; points within the boundary
/// band count as inside.
bool contains(const PolygonDomain& domain, const Vec2& x, Scalar t);

}  // namespace covsim
