#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "dds/invariants.hpp"

namespace dds {

// Embedding coordinates: euclidean points are (x, y, 1), spherical points
// unit vectors, hyperbolic points on the upper sheet of x^2+y^2-z^2 = -1.
struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

struct Vec2 {
    double x = 0, y = 0;
    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
};
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }

struct Mat3 {
    // row-major
    std::array<std::array<double, 3>, 3> a{};

    static Mat3 identity() {
        Mat3 m;
        for (int i = 0; i < 3; ++i) m.a[i][i] = 1;
        return m;
    }
    Vec3 operator*(const Vec3& v) const {
        return {a[0][0] * v.x + a[0][1] * v.y + a[0][2] * v.z,
                a[1][0] * v.x + a[1][1] * v.y + a[1][2] * v.z,
                a[2][0] * v.x + a[2][1] * v.y + a[2][2] * v.z};
    }
    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int k = 0; k < 3; ++k) s += a[i][k] * o.a[k][j];
                r.a[i][j] = s;
            }
        return r;
    }
};

// Metric bilinear form on embedding vectors (euclidean uses the plane
// z = 1, handled separately where it matters).
inline double form_dot(GeometryKind g, const Vec3& a, const Vec3& b) {
    if (g == GeometryKind::Hyperbolic) return a.x * b.x + a.y * b.y - a.z * b.z;
    return dot(a, b);
}

Vec3 normalize_to_surface(GeometryKind g, const Vec3& p);
double surface_residual(GeometryKind g, const Vec3& p);

// intrinsic distance between surface points
double distance_on(GeometryKind g, const Vec3& a, const Vec3& b);
// geodesic interpolation, t in [0,1]
Vec3 geodesic_point(GeometryKind g, const Vec3& a, const Vec3& b, double t);

// 3x3 transformation preserving the geometry's form: euclidean affine
// with orthogonal linear part, orthogonal, or Minkowski-orthogonal
// fixing the upper sheet.
struct Isometry {
    GeometryKind geometry = GeometryKind::Euclidean;
    Mat3 m = Mat3::identity();

    static Isometry identity(GeometryKind g) { return {g, Mat3::identity()}; }
    Vec3 operator()(const Vec3& p) const { return m * p; }
    Isometry operator*(const Isometry& o) const { return {geometry, m * o.m}; }
    Isometry inverse() const;
    // deviation from exact group membership
    double form_error() const;
};

// Isometry mapping the frame of (from0, from1, from2) onto the frame of
// (to0, to1, to2): anchored at the first point, first edge direction
// matched, handedness carried over.  Exact when the point triples are
// congruent.
Isometry fit_isometry(GeometryKind g, const std::array<Vec3, 3>& from,
                      const std::array<Vec3, 3>& to);

// Reflection fixing the geodesic through p and q.
Isometry reflection_through(GeometryKind g, const Vec3& p, const Vec3& q);

enum class ModelKind { Euclidean, Poincare, Klein, Orthographic };

ModelKind model_from_name(const std::string& name);
std::string model_name(ModelKind m);

// Projection to planar model coordinates.  Hyperbolic points project
// centrally from (0,0,-1) (Poincare) or (0,0,0) (Klein); spherical points
// orthographically; euclidean is the identity.  Throws if the point is
// off the model surface by more than 1e-6.
Vec2 to_model(GeometryKind g, ModelKind model, const Vec3& p);

inline double poincare_to_klein_radius(double p) { return 2 * p / (1 + p * p); }

}  // namespace dds
