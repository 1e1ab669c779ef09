#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace p2mx {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
    bool operator!=(const Vec3& o) const { return !(*this == o); }

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

using Point3 = Vec3;

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }
inline double dist(const Vec3& a, const Vec3& b) { return norm(a - b); }
inline double dist2(const Vec3& a, const Vec3& b) { return norm2(a - b); }

struct Triangle3 {
    Vec3 a, b, c;
};

struct Sphere {
    Vec3 center;
    double radius = 0.0;
};

struct Aabb {
    Vec3 min{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
             std::numeric_limits<double>::max()};
    Vec3 max{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest(),
             std::numeric_limits<double>::lowest()};

    bool empty() const { return min.x > max.x; }
    void extend(const Vec3& p) {
        min.x = std::min(min.x, p.x); min.y = std::min(min.y, p.y); min.z = std::min(min.z, p.z);
        max.x = std::max(max.x, p.x); max.y = std::max(max.y, p.y); max.z = std::max(max.z, p.z);
    }
    void extend(const Aabb& o) { extend(o.min); extend(o.max); }
    Vec3 center() const { return (min + max) * 0.5; }
    Vec3 extents() const { return max - min; }
    double diagonal() const { return empty() ? 0.0 : dist(min, max); }
    bool contains(const Vec3& p) const {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y &&
               p.z >= min.z && p.z <= max.z;
    }
    // Squared distance from p to the box (0 if inside).
    double sq_dist(const Vec3& p) const {
        double d = 0.0;
        for (int i = 0; i < 3; ++i) {
            double lo = min[i], hi = max[i], v = p[i];
            if (v < lo) d += (lo - v) * (lo - v);
            else if (v > hi) d += (v - hi) * (v - hi);
        }
        return d;
    }
    // Box with extents scaled by `factor` about the center. Flat dimensions are
    // padded to `min_extent_frac` of the largest scaled extent so the result is
    // always a proper 3D box.
    Aabb scaled_about_center(double factor, double min_extent_frac = 0.0) const;
    std::array<Vec3, 8> corners() const;
};

// Thrown by the checked geometric operations on degenerate input.
struct GeometryError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ClosestPoint {
    double distance = 0.0;
    Vec3 point;
};

// Closest point on triangle (a,b,c) to q, squared distance. No degeneracy check.
ClosestPoint closest_on_triangle_sq(const Vec3& q, const Vec3& a, const Vec3& b, const Vec3& c);

// Exact Euclidean minimum; closest lies on the face, an edge, or a vertex.
// Throws GeometryError on a degenerate (zero-area) triangle.
ClosestPoint point_triangle_distance(const Vec3& q, const Triangle3& t);

// Closed-ball test: true iff point_triangle_distance(s.center, t) <= s.radius.
bool sphere_triangle_intersect(const Sphere& s, const Triangle3& t);

double triangle_area(const Triangle3& t);

// Minimal enclosing sphere of the three vertices: the diametral sphere of the
// longest edge when it contains the opposite vertex, else the circumsphere.
// Throws GeometryError on a degenerate triangle.
Sphere triangle_bounding_sphere(const Triangle3& t);

// Circumcenter of a tetrahedron; equidistant from all four inputs.
// Throws GeometryError when the points are coplanar.
Vec3 tetra_circumcenter(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& p3);

// Non-throwing variant: returns false on (near-)coplanar input.
bool tetra_circumcenter(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& p3,
                        Vec3& out);

// Sign of det[b-a; c-a; d-a]: +1 when d lies on the positive side of plane (a,b,c)
// (the unit tetrahedron (0,0,0),(1,0,0),(0,1,0),(0,0,1) is positive).
// Near-zero determinants (relative tolerance scaled to the inputs) are re-evaluated
// in double-double precision; 0 is returned only when still unresolved, and callers
// break those ties deterministically by point index.
int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

// +1 when e is strictly inside the circumsphere of the positively oriented
// tetrahedron (a,b,c,d), -1 when strictly outside, 0 when unresolved (cospherical
// within tolerance). Sign flips if (a,b,c,d) is negatively oriented.
int in_sphere(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, const Vec3& e);

// Signed determinant values behind the predicates, exposed for audits:
// the double-double evaluation and the scale-appropriate tolerance used to snap to 0.
struct PredicateValue {
    double value = 0.0;      // double-double result, rounded
    double tolerance = 0.0;  // |value| <= tolerance is an unresolved tie
};
PredicateValue orient3d_value(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);
PredicateValue in_sphere_value(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d,
                               const Vec3& e);

} // namespace p2mx
