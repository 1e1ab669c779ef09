#include "p2mx/geom.hpp"

#include <algorithm>

namespace p2mx {

Aabb Aabb::scaled_about_center(double factor, double min_extent_frac) const {
    Vec3 c = center();
    Vec3 h = extents() * (0.5 * factor);
    double floor_h = 0.0;
    if (min_extent_frac > 0.0) {
        floor_h = min_extent_frac * std::max({h.x, h.y, h.z});
        if (floor_h <= 0.0) floor_h = min_extent_frac; // fully degenerate box
    }
    h.x = std::max(h.x, floor_h);
    h.y = std::max(h.y, floor_h);
    h.z = std::max(h.z, floor_h);
    return Aabb{c - h, c + h};
}

std::array<Vec3, 8> Aabb::corners() const {
    std::array<Vec3, 8> out;
    for (int i = 0; i < 8; ++i)
        out[i] = Vec3{(i & 1) ? max.x : min.x, (i & 2) ? max.y : min.y, (i & 4) ? max.z : min.z};
    return out;
}

// ---------------------------------------------------------------------------
// Closest point on triangle, the Voronoi-region case analysis.

ClosestPoint closest_on_triangle_sq(const Vec3& q, const Vec3& a, const Vec3& b, const Vec3& c) {
    Vec3 ab = b - a, ac = c - a, aq = q - a;
    double d1 = dot(ab, aq), d2 = dot(ac, aq);
    if (d1 <= 0.0 && d2 <= 0.0) return {dist2(q, a), a};

    Vec3 bq = q - b;
    double d3 = dot(ab, bq), d4 = dot(ac, bq);
    if (d3 >= 0.0 && d4 <= d3) return {dist2(q, b), b};

    double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        double v = d1 / (d1 - d3);
        Vec3 p = a + ab * v;
        return {dist2(q, p), p};
    }

    Vec3 cq = q - c;
    double d5 = dot(ab, cq), d6 = dot(ac, cq);
    if (d6 >= 0.0 && d5 <= d6) return {dist2(q, c), c};

    double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        double w = d2 / (d2 - d6);
        Vec3 p = a + ac * w;
        return {dist2(q, p), p};
    }

    double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
        double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        Vec3 p = b + (c - b) * w;
        return {dist2(q, p), p};
    }

    // interior of the face
    double denom = 1.0 / (va + vb + vc);
    double v = vb * denom, w = vc * denom;
    Vec3 p = a + ab * v + ac * w;
    return {dist2(q, p), p};
}

double triangle_area(const Triangle3& t) {
    return 0.5 * norm(cross(t.b - t.a, t.c - t.a));
}

static bool triangle_degenerate(const Triangle3& t) {
    double scale2 = std::max({dist2(t.a, t.b), dist2(t.a, t.c), dist2(t.b, t.c)});
    double cr2 = norm2(cross(t.b - t.a, t.c - t.a));
    return !(cr2 > scale2 * scale2 * 1e-28); // also catches NaN and coincident points
}

ClosestPoint point_triangle_distance(const Vec3& q, const Triangle3& t) {
    if (triangle_degenerate(t))
        throw GeometryError("point_triangle_distance: degenerate triangle");
    ClosestPoint r = closest_on_triangle_sq(q, t.a, t.b, t.c);
    r.distance = std::sqrt(r.distance);
    return r;
}

bool sphere_triangle_intersect(const Sphere& s, const Triangle3& t) {
    if (triangle_degenerate(t))
        throw GeometryError("sphere_triangle_intersect: degenerate triangle");
    return closest_on_triangle_sq(s.center, t.a, t.b, t.c).distance <= s.radius * s.radius;
}

Sphere triangle_bounding_sphere(const Triangle3& t) {
    if (triangle_degenerate(t))
        throw GeometryError("triangle_bounding_sphere: degenerate triangle");

    // longest edge as (p, q), remaining vertex r
    const Vec3* p = &t.a; const Vec3* q = &t.b; const Vec3* r = &t.c;
    double ab = dist2(t.a, t.b), ac = dist2(t.a, t.c), bc = dist2(t.b, t.c);
    if (ac >= ab && ac >= bc) { q = &t.c; r = &t.b; }
    else if (bc >= ab && bc >= ac) { p = &t.b; q = &t.c; r = &t.a; }

    Vec3 mid = (*p + *q) * 0.5;
    double rad2 = dist2(*p, *q) * 0.25;
    if (dist2(*r, mid) <= rad2)
        return {mid, std::sqrt(rad2)};

    // acute triangle: circumcenter, solved in the triangle's own plane
    Vec3 u = t.b - t.a, v = t.c - t.a;
    double uu = dot(u, u), vv = dot(v, v), uv = dot(u, v);
    double den = 2.0 * (uu * vv - uv * uv);
    double s = (vv * (uu - uv)) / den;
    double w = (uu * (vv - uv)) / den;
    Vec3 center = t.a + u * s + v * w;
    double rad = std::sqrt(std::max({dist2(center, t.a), dist2(center, t.b), dist2(center, t.c)}));
    return {center, rad};
}

// ---------------------------------------------------------------------------
// Double-double arithmetic, used only when the plain-double predicate filters
// are inconclusive. Exact translation (two_diff) followed by ~1e-32 relative
// precision products/sums.

namespace {

struct DD {
    double hi = 0.0, lo = 0.0;
};

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DD two_diff(double a, double b) {
    double s = a - b;
    double bb = s - a;
    double err = (a - (s - bb)) - (b + bb);
    return {s, err};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    return {p, err};
}

inline DD dd_norm(double hi, double lo) {
    double s = hi + lo;
    return {s, lo - (s - hi)};
}

inline DD dd_add(const DD& a, const DD& b) {
    DD s = two_sum(a.hi, b.hi);
    return dd_norm(s.hi, s.lo + a.lo + b.lo);
}

inline DD dd_sub(const DD& a, const DD& b) {
    DD s = two_diff(a.hi, b.hi);
    return dd_norm(s.hi, s.lo + a.lo - b.lo);
}

inline DD dd_mul(const DD& a, const DD& b) {
    DD p = two_prod(a.hi, b.hi);
    return dd_norm(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline DD dd_det2(const DD& a, const DD& b, const DD& c, const DD& d) {
    return dd_sub(dd_mul(a, d), dd_mul(b, c));
}

// det of rows r0,r1,r2
DD dd_det3(const DD r0[3], const DD r1[3], const DD r2[3]) {
    DD m0 = dd_det2(r1[1], r1[2], r2[1], r2[2]);
    DD m1 = dd_det2(r1[0], r1[2], r2[0], r2[2]);
    DD m2 = dd_det2(r1[0], r1[1], r2[0], r2[1]);
    return dd_add(dd_sub(dd_mul(r0[0], m0), dd_mul(r0[1], m1)), dd_mul(r0[2], m2));
}

inline double det3(const double r0[3], const double r1[3], const double r2[3]) {
    return r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) -
           r0[1] * (r1[0] * r2[2] - r1[2] * r2[0]) +
           r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]);
}

constexpr double kFilterEps = 1e-12;  // plain-double stage, relative to scale^degree
constexpr double kExactEps = 1e-30;   // double-double stage

} // namespace

PredicateValue orient3d_value(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    double r0[3] = {b.x - d.x, b.y - d.y, b.z - d.z};
    double r1[3] = {c.x - d.x, c.y - d.y, c.z - d.z};
    double r2[3] = {a.x - d.x, a.y - d.y, a.z - d.z};
    // det[b-a;c-a;d-a] == det[b-d;c-d;a-d] (even permutation of the 4 points)
    double det = det3(r0, r1, r2);
    double m = 0.0;
    for (double v : {r0[0], r0[1], r0[2], r1[0], r1[1], r1[2], r2[0], r2[1], r2[2]})
        m = std::max(m, std::abs(v));
    double tol = kFilterEps * m * m * m;
    if (std::abs(det) > tol) return {det, 0.0};

    DD s0[3], s1[3], s2[3];
    const Vec3* pts[3] = {&b, &c, &a};
    DD(*rows[3])[3] = {&s0, &s1, &s2};
    for (int i = 0; i < 3; ++i) {
        (*rows[i])[0] = two_diff(pts[i]->x, d.x);
        (*rows[i])[1] = two_diff(pts[i]->y, d.y);
        (*rows[i])[2] = two_diff(pts[i]->z, d.z);
    }
    DD dd = dd_det3(s0, s1, s2);
    return {dd.hi, kExactEps * m * m * m};
}

int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    PredicateValue pv = orient3d_value(a, b, c, d);
    if (pv.value > pv.tolerance) return 1;
    if (pv.value < -pv.tolerance) return -1;
    return 0;
}

PredicateValue in_sphere_value(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d,
                               const Vec3& e) {
    const Vec3* pts[4] = {&a, &b, &c, &d};
    double r[4][4];
    double m = 0.0;
    for (int i = 0; i < 4; ++i) {
        r[i][0] = pts[i]->x - e.x;
        r[i][1] = pts[i]->y - e.y;
        r[i][2] = pts[i]->z - e.z;
        r[i][3] = r[i][0] * r[i][0] + r[i][1] * r[i][1] + r[i][2] * r[i][2];
        m = std::max({m, std::abs(r[i][0]), std::abs(r[i][1]), std::abs(r[i][2])});
    }
    // cofactor expansion along the lifted column
    double det = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double* rows[3];
        for (int j = 0, k = 0; j < 4; ++j)
            if (j != i) rows[k++] = r[j];
        double cof = det3(rows[0], rows[1], rows[2]);
        det += ((i % 2 == 0) ? r[i][3] : -r[i][3]) * cof;
    }
    det = -det; // positive = inside for a positively oriented (a,b,c,d)
    double m5 = m * m * m * m * m;
    double tol = kFilterEps * m5;
    if (std::abs(det) > tol) return {det, 0.0};

    DD s[4][4];
    for (int i = 0; i < 4; ++i) {
        s[i][0] = two_diff(pts[i]->x, e.x);
        s[i][1] = two_diff(pts[i]->y, e.y);
        s[i][2] = two_diff(pts[i]->z, e.z);
        s[i][3] = dd_add(dd_add(dd_mul(s[i][0], s[i][0]), dd_mul(s[i][1], s[i][1])),
                         dd_mul(s[i][2], s[i][2]));
    }
    DD acc{0.0, 0.0};
    for (int i = 0; i < 4; ++i) {
        const DD* rows[3];
        for (int j = 0, k = 0; j < 4; ++j)
            if (j != i) rows[k++] = s[j];
        DD cof = dd_det3(rows[0], rows[1], rows[2]);
        DD term = dd_mul(s[i][3], cof);
        acc = (i % 2 == 0) ? dd_add(acc, term) : dd_sub(acc, term);
    }
    return {-acc.hi, kExactEps * m5};
}

int in_sphere(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, const Vec3& e) {
    PredicateValue pv = in_sphere_value(a, b, c, d, e);
    if (pv.value > pv.tolerance) return 1;
    if (pv.value < -pv.tolerance) return -1;
    return 0;
}

// ---------------------------------------------------------------------------

bool tetra_circumcenter(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& p3,
                        Vec3& out) {
    // Solve 2 (pi - p0) . x = |pi - p0|^2 for x relative to p0, by Cramer's rule.
    Vec3 u = p1 - p0, v = p2 - p0, w = p3 - p0;
    double ru = norm2(u), rv = norm2(v), rw = norm2(w);
    double ux[3] = {u.x, u.y, u.z}, vx[3] = {v.x, v.y, v.z}, wx[3] = {w.x, w.y, w.z};
    double den = 2.0 * det3(ux, vx, wx);

    double m = 0.0;
    for (double t : {u.x, u.y, u.z, v.x, v.y, v.z, w.x, w.y, w.z})
        m = std::max(m, std::abs(t));
    if (std::abs(den) <= 2.0 * kFilterEps * m * m * m) {
        // near-coplanar: redo the determinant in double-double before giving up
        DD s0[3] = {two_diff(p1.x, p0.x), two_diff(p1.y, p0.y), two_diff(p1.z, p0.z)};
        DD s1[3] = {two_diff(p2.x, p0.x), two_diff(p2.y, p0.y), two_diff(p2.z, p0.z)};
        DD s2[3] = {two_diff(p3.x, p0.x), two_diff(p3.y, p0.y), two_diff(p3.z, p0.z)};
        DD dd = dd_det3(s0, s1, s2);
        den = 2.0 * dd.hi;
        if (den == 0.0) return false;
    }

    double bu[3] = {ru, u.y, u.z}, bv[3] = {rv, v.y, v.z}, bw[3] = {rw, w.y, w.z};
    double cx = det3(bu, bv, bw);
    double cu[3] = {u.x, ru, u.z}, cv[3] = {v.x, rv, v.z}, cw[3] = {w.x, rw, w.z};
    double cy = det3(cu, cv, cw);
    double du[3] = {u.x, u.y, ru}, dv[3] = {v.x, v.y, rv}, dw[3] = {w.x, w.y, rw};
    double cz = det3(du, dv, dw);

    out = p0 + Vec3{cx / den, cy / den, cz / den};
    return out.finite();
}

Vec3 tetra_circumcenter(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& p3) {
    if (orient3d(p0, p1, p2, p3) == 0)
        throw GeometryError("tetra_circumcenter: coplanar points");
    Vec3 out;
    if (!tetra_circumcenter(p0, p1, p2, p3, out))
        throw GeometryError("tetra_circumcenter: coplanar points");
    return out;
}

} // namespace p2mx
