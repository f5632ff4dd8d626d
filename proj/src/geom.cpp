#include "dds/geometry.hpp"

#include <algorithm>

namespace dds {

Vec3 normalize_to_surface(GeometryKind g, const Vec3& p) {
    switch (g) {
        case GeometryKind::Euclidean:
            return {p.x / p.z, p.y / p.z, 1.0};
        case GeometryKind::Spherical: {
            double n = norm(p);
            if (n < 1e-300) throw std::domain_error("cannot project zero vector to sphere");
            return p / n;
        }
        case GeometryKind::Hyperbolic: {
            double q = p.z * p.z - p.x * p.x - p.y * p.y;
            if (q <= 0 || p.z <= 0)
                throw std::domain_error("point not in the upper Minkowski cone");
            return p / std::sqrt(q);
        }
    }
    throw std::logic_error("internal: bad geometry tag");
}

double surface_residual(GeometryKind g, const Vec3& p) {
    switch (g) {
        case GeometryKind::Euclidean: return std::abs(p.z - 1.0);
        case GeometryKind::Spherical: return std::abs(dot(p, p) - 1.0);
        case GeometryKind::Hyperbolic:
            return p.z <= 0 ? 1.0 : std::abs(form_dot(g, p, p) + 1.0);
    }
    throw std::logic_error("internal: bad geometry tag");
}

double distance_on(GeometryKind g, const Vec3& a, const Vec3& b) {
    switch (g) {
        case GeometryKind::Euclidean: return std::hypot(a.x - b.x, a.y - b.y);
        case GeometryKind::Spherical: return std::acos(std::clamp(dot(a, b), -1.0, 1.0));
        case GeometryKind::Hyperbolic: return std::acosh(std::max(1.0, -form_dot(g, a, b)));
    }
    throw std::logic_error("internal: bad geometry tag");
}

Vec3 geodesic_point(GeometryKind g, const Vec3& a, const Vec3& b, double t) {
    switch (g) {
        case GeometryKind::Euclidean: return a + (b - a) * t;
        case GeometryKind::Spherical: {
            double d = distance_on(g, a, b);
            if (d < 1e-12) return a + (b - a) * t;
            return (a * std::sin((1 - t) * d) + b * std::sin(t * d)) / std::sin(d);
        }
        case GeometryKind::Hyperbolic: {
            double d = distance_on(g, a, b);
            if (d < 1e-12) return normalize_to_surface(g, a + (b - a) * t);
            return (a * std::sinh((1 - t) * d) + b * std::sinh(t * d)) / std::sinh(d);
        }
    }
    throw std::logic_error("internal: bad geometry tag");
}

Isometry Isometry::inverse() const {
    Mat3 inv;
    const auto& a = m.a;
    double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                 a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                 a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    if (std::abs(det) < 1e-300) throw std::domain_error("singular isometry");
    inv.a[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / det;
    inv.a[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / det;
    inv.a[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / det;
    inv.a[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) / det;
    inv.a[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / det;
    inv.a[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / det;
    inv.a[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / det;
    inv.a[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / det;
    inv.a[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / det;
    return {geometry, inv};
}

double Isometry::form_error() const {
    // columns must be form-orthonormal; euclidean additionally keeps the
    // affine bottom row (0 0 1)
    double err = 0;
    if (geometry == GeometryKind::Euclidean) {
        Vec3 c0{m.a[0][0], m.a[1][0], 0}, c1{m.a[0][1], m.a[1][1], 0};
        err = std::max(err, std::abs(dot(c0, c0) - 1));
        err = std::max(err, std::abs(dot(c1, c1) - 1));
        err = std::max(err, std::abs(dot(c0, c1)));
        err = std::max(err, std::abs(m.a[2][0]));
        err = std::max(err, std::abs(m.a[2][1]));
        err = std::max(err, std::abs(m.a[2][2] - 1));
        return err;
    }
    const double sgn = geometry == GeometryKind::Hyperbolic ? -1.0 : 1.0;
    Vec3 cols[3];
    for (int j = 0; j < 3; ++j) cols[j] = {m.a[0][j], m.a[1][j], m.a[2][j]};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double want = i == j ? (i == 2 ? sgn : 1.0) : 0.0;
            err = std::max(err, std::abs(form_dot(geometry, cols[i], cols[j]) - want));
        }
    return err;
}

namespace {

// J-orthonormal frame at a surface point: (point-like, two tangents).
// For euclidean the "frame" is (anchor with z=1, unit direction, unit
// normal direction), assembled as matrix columns with affine structure.
Mat3 frame_at(GeometryKind g, const Vec3& p0, const Vec3& p1, const Vec3& p2) {
    if (g == GeometryKind::Euclidean) {
        Vec2 u{p1.x - p0.x, p1.y - p0.y};
        double n = norm(u);
        if (n < 1e-300) throw std::domain_error("degenerate euclidean frame");
        u = u * (1.0 / n);
        Vec2 w{p2.x - p0.x, p2.y - p0.y};
        double side = u.x * w.y - u.y * w.x;  // handedness of (p1-p0, p2-p0)
        double s = side >= 0 ? 1.0 : -1.0;
        Vec2 v{-u.y * s, u.x * s};
        Mat3 f;
        f.a[0][0] = u.x; f.a[1][0] = u.y; f.a[2][0] = 0;
        f.a[0][1] = v.x; f.a[1][1] = v.y; f.a[2][1] = 0;
        f.a[0][2] = p0.x; f.a[1][2] = p0.y; f.a[2][2] = 1;
        return f;
    }
    const bool hyp = g == GeometryKind::Hyperbolic;
    Vec3 e0 = normalize_to_surface(g, p0);
    // tangent toward p1
    double c = form_dot(g, p1, e0);
    Vec3 t = hyp ? p1 + e0 * c : p1 - e0 * c;
    double tn = std::sqrt(std::max(1e-300, form_dot(g, t, t)));
    Vec3 e1 = t / tn;
    // second tangent, handedness from p2
    Vec3 w = cross(e0, e1);
    if (hyp) w = {w.x, w.y, -w.z};  // J * cross
    double wn = std::sqrt(std::max(1e-300, form_dot(g, w, w)));
    Vec3 e2 = w / wn;
    double c2 = form_dot(g, p2, e0);
    Vec3 t2 = hyp ? p2 + e0 * c2 : p2 - e0 * c2;
    if (form_dot(g, t2, e2) < 0) e2 = e2 * -1.0;
    Mat3 f;
    // columns: e1, e2, e0 (point direction last so the form signature is
    // diag(1, 1, sgn))
    f.a[0][0] = e1.x; f.a[1][0] = e1.y; f.a[2][0] = e1.z;
    f.a[0][1] = e2.x; f.a[1][1] = e2.y; f.a[2][1] = e2.z;
    f.a[0][2] = e0.x; f.a[1][2] = e0.y; f.a[2][2] = e0.z;
    return f;
}

Mat3 frame_inverse(GeometryKind g, const Mat3& f) {
    if (g == GeometryKind::Euclidean) {
        // [u v p; 0 0 1]^{-1} with orthonormal (u, v)
        Mat3 r;
        r.a[0][0] = f.a[0][0]; r.a[0][1] = f.a[1][0];
        r.a[1][0] = f.a[0][1]; r.a[1][1] = f.a[1][1];
        double px = f.a[0][2], py = f.a[1][2];
        r.a[0][2] = -(r.a[0][0] * px + r.a[0][1] * py);
        r.a[1][2] = -(r.a[1][0] * px + r.a[1][1] * py);
        r.a[2][0] = 0; r.a[2][1] = 0; r.a[2][2] = 1;
        return r;
    }
    // F^{-1} = D F^T J for form-orthonormal columns (e1,e2,e0), where
    // D = diag(1,1,sgn) and J = diag(1,1,sgn)
    const double sgn = g == GeometryKind::Hyperbolic ? -1.0 : 1.0;
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double v = f.a[j][i];           // transpose
            if (j == 2) v *= sgn;           // right-multiply by J
            if (i == 2) v *= sgn;           // left-multiply by D
            r.a[i][j] = v;
        }
    return r;
}

}  // namespace

Isometry fit_isometry(GeometryKind g, const std::array<Vec3, 3>& from,
                      const std::array<Vec3, 3>& to) {
    Mat3 fa = frame_at(g, from[0], from[1], from[2]);
    Mat3 fb = frame_at(g, to[0], to[1], to[2]);
    return {g, fb * frame_inverse(g, fa)};
}

Isometry reflection_through(GeometryKind g, const Vec3& p, const Vec3& q) {
    Mat3 m = Mat3::identity();
    switch (g) {
        case GeometryKind::Euclidean: {
            Vec2 d{q.x - p.x, q.y - p.y};
            double n = norm(d);
            if (n < 1e-300) throw std::domain_error("degenerate reflection axis");
            d = d * (1.0 / n);
            Vec2 nrm{-d.y, d.x};
            // x -> x - 2 <x - p, n> n
            m.a[0][0] = 1 - 2 * nrm.x * nrm.x;
            m.a[0][1] = -2 * nrm.x * nrm.y;
            m.a[1][0] = -2 * nrm.x * nrm.y;
            m.a[1][1] = 1 - 2 * nrm.y * nrm.y;
            double c = p.x * nrm.x + p.y * nrm.y;
            m.a[0][2] = 2 * c * nrm.x;
            m.a[1][2] = 2 * c * nrm.y;
            return {g, m};
        }
        case GeometryKind::Spherical: {
            Vec3 n = cross(p, q);
            double nn = norm(n);
            if (nn < 1e-300) throw std::domain_error("degenerate reflection plane");
            n = n / nn;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    double ni = i == 0 ? n.x : i == 1 ? n.y : n.z;
                    double nj = j == 0 ? n.x : j == 1 ? n.y : n.z;
                    m.a[i][j] = (i == j ? 1.0 : 0.0) - 2 * ni * nj;
                }
            return {g, m};
        }
        case GeometryKind::Hyperbolic: {
            Vec3 w = cross(p, q);
            w = {w.x, w.y, -w.z};  // J * cross: form-orthogonal to p and q
            double wn = std::sqrt(std::max(1e-300, form_dot(g, w, w)));
            Vec3 n = w / wn;  // spacelike unit normal
            // x -> x - 2 <x, n>_J n, i.e. M = I - 2 n (J n)^T
            double jn[3] = {n.x, n.y, -n.z};
            double nv[3] = {n.x, n.y, n.z};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    m.a[i][j] = (i == j ? 1.0 : 0.0) - 2 * nv[i] * jn[j];
            return {g, m};
        }
    }
    throw std::logic_error("internal: bad geometry tag");
}

ModelKind model_from_name(const std::string& name) {
    if (name == "euclidean") return ModelKind::Euclidean;
    if (name == "poincare") return ModelKind::Poincare;
    if (name == "klein") return ModelKind::Klein;
    if (name == "orthographic") return ModelKind::Orthographic;
    throw std::invalid_argument("unknown model: " + name);
}

std::string model_name(ModelKind m) {
    switch (m) {
        case ModelKind::Euclidean: return "euclidean";
        case ModelKind::Poincare: return "poincare";
        case ModelKind::Klein: return "klein";
        case ModelKind::Orthographic: return "orthographic";
    }
    throw std::logic_error("internal: bad model tag");
}

Vec2 to_model(GeometryKind g, ModelKind model, const Vec3& p) {
    if (surface_residual(g, p) > 1e-6)
        throw std::domain_error("point off the model surface");
    switch (model) {
        case ModelKind::Euclidean:
            if (g != GeometryKind::Euclidean)
                throw std::invalid_argument("euclidean model needs euclidean geometry");
            return {p.x, p.y};
        case ModelKind::Poincare:
            if (g != GeometryKind::Hyperbolic)
                throw std::invalid_argument("poincare model needs hyperbolic geometry");
            return {p.x / (1 + p.z), p.y / (1 + p.z)};
        case ModelKind::Klein:
            if (g != GeometryKind::Hyperbolic)
                throw std::invalid_argument("klein model needs hyperbolic geometry");
            return {p.x / p.z, p.y / p.z};
        case ModelKind::Orthographic:
            if (g != GeometryKind::Spherical)
                throw std::invalid_argument("orthographic model needs spherical geometry");
            return {p.x, p.y};
    }
    throw std::logic_error("internal: bad model tag");
}

}  // namespace dds
