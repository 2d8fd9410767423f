#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace topo {

using Vec2 = std::array<double, 2>;

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a[0], s * a[1]}; }
inline double norm(Vec2 a) { return std::hypot(a[0], a[1]); }

// 2x2 real matrix, row major.
struct Mat2 {
    double a = 0, b = 0, c = 0, d = 0;  // [[a, b], [c, d]]

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }

    Vec2 apply(Vec2 x) const { return {a * x[0] + b * x[1], c * x[0] + d * x[1]}; }

    Mat2 transpose() const { return {a, c, b, d}; }

    Mat2 symmetrized() const { return {a, 0.5 * (b + c), 0.5 * (b + c), d}; }

    // Solve M x = rhs; throws on (near-)singular M.
    Vec2 solve(Vec2 rhs) const {
        const double dt = det();
        if (dt == 0.0) throw std::domain_error("singular 2x2 system");
        return {(d * rhs[0] - b * rhs[1]) / dt, (a * rhs[1] - c * rhs[0]) / dt};
    }

    std::array<std::complex<double>, 2> eigenvalues() const {
        const std::complex<double> disc =
            std::sqrt(std::complex<double>(trace() * trace() - 4.0 * det()));
        return {(trace() + disc) / 2.0, (trace() - disc) / 2.0};
    }

    // Eigenvalues of a symmetric matrix, ascending.
    std::array<double, 2> sym_eigenvalues() const {
        const double mid = 0.5 * trace();
        const double off = 0.5 * (b + c);
        const double disc = std::sqrt(0.25 * (a - d) * (a - d) + off * off);
        return {mid - disc, mid + disc};
    }

    // Unit eigenvector for a real eigenvalue.
    Vec2 eigenvector(double lambda) const {
        // (M - lambda I) x = 0; pick the larger row.
        Vec2 r1{a - lambda, b}, r2{c, d - lambda};
        Vec2 r = norm(r1) >= norm(r2) ? r1 : r2;
        if (norm(r) == 0.0) return {1.0, 0.0};  // lambda I: any direction
        Vec2 x{-r[1], r[0]};
        const double n = norm(x);
        return {x[0] / n, x[1] / n};
    }
};

inline Mat2 operator*(const Mat2& m, const Mat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

// Rectangular chart with optional per-axis periodicity.
struct SurfaceChart {
    double u_min, u_max, v_min, v_max;
    bool periodic_u = false, periodic_v = false;

    SurfaceChart(double umin, double umax, double vmin, double vmax,
                 bool per_u = false, bool per_v = false)
        : u_min(umin), u_max(umax), v_min(vmin), v_max(vmax),
          periodic_u(per_u), periodic_v(per_v) {
        if (!(u_min < u_max) || !(v_min < v_max))
            throw std::invalid_argument("chart ranges must be nonempty");
    }

    double u_span() const { return u_max - u_min; }
    double v_span() const { return v_max - v_min; }
    double span() const { return std::max(u_span(), v_span()); }
    bool closed() const { return periodic_u && periodic_v; }

    // Wraps periodic coordinates into the fundamental domain [min, max).
    Vec2 normalize(Vec2 p) const {
        if (periodic_u) {
            p[0] = std::fmod(p[0] - u_min, u_span());
            if (p[0] < 0) p[0] += u_span();
            p[0] += u_min;
        }
        if (periodic_v) {
            p[1] = std::fmod(p[1] - v_min, v_span());
            if (p[1] < 0) p[1] += v_span();
            p[1] += v_min;
        }
        return p;
    }

    bool contains(Vec2 p, double margin = 0.0) const {
        if (!periodic_u && (p[0] < u_min - margin || p[0] > u_max + margin)) return false;
        if (!periodic_v && (p[1] < v_min - margin || p[1] > v_max + margin)) return false;
        return true;
    }

    // Euclidean distance respecting wraparound on periodic axes.
    double distance(Vec2 p, Vec2 q) const {
        double du = p[0] - q[0];
        double dv = p[1] - q[1];
        if (periodic_u) {
            du = std::fmod(du, u_span());
            if (du > 0.5 * u_span()) du -= u_span();
            if (du < -0.5 * u_span()) du += u_span();
        }
        if (periodic_v) {
            dv = std::fmod(dv, v_span());
            if (dv > 0.5 * v_span()) dv -= v_span();
            if (dv < -0.5 * v_span()) dv += v_span();
        }
        return std::hypot(du, dv);
    }
};

struct ScalarField {
    std::function<double(double, double)> eval;
    SurfaceChart chart;

    double operator()(Vec2 p) const { return eval(p[0], p[1]); }
};

struct VectorField {
    std::function<Vec2(double, double)> eval;
    SurfaceChart chart;

    Vec2 operator()(Vec2 p) const { return eval(p[0], p[1]); }
};

}  // namespace topo
