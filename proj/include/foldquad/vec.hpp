#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace foldquad {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr double operator[](int i) const { return i == 0 ? x : y; }
    constexpr double& operator[](int i) { return i == 0 ? x : y; }

    constexpr Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    static constexpr int dim = 2;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    static constexpr int dim = 3;
};

constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
constexpr Vec2 operator/(Vec2 a, double s) { return a *= (1.0 / s); }
constexpr bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }
constexpr bool operator==(const Vec3& a, const Vec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

/// z-component of the 3D cross product.
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

template <class V>
double distance(const V& a, const V& b) { return norm(a - b); }

constexpr double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

/// Axis-aligned box, empty until the first point is added.
template <class V>
struct Box {
    V lo{};
    V hi{};
    bool empty = true;

    void add(const V& p)
    {
        if (empty) {
            lo = hi = p;
            empty = false;
            return;
        }
        for (int i = 0; i < V::dim; ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    }

    void add(const Box& b)
    {
        if (b.empty) return;
        add(b.lo);
        add(b.hi);
    }

    double diameter() const { return empty ? 0.0 : norm(hi - lo); }

    double measure() const
    {
        if (empty) return 0.0;
        double m = 1.0;
        for (int i = 0; i < V::dim; ++i) m *= hi[i] - lo[i];
        return m;
    }

    bool contains(const V& p, double tol = 0.0) const
    {
        if (empty) return false;
        for (int i = 0; i < V::dim; ++i)
            if (p[i] < lo[i] - tol || p[i] > hi[i] + tol) return false;
        return true;
    }

    bool overlaps(const Box& b, double tol = 0.0) const
    {
        if (empty || b.empty) return false;
        for (int i = 0; i < V::dim; ++i)
            if (b.hi[i] < lo[i] - tol || b.lo[i] > hi[i] + tol) return false;
        return true;
    }

    V center() const { return 0.5 * (lo + hi); }
};

using Box2 = Box<Vec2>;
using Box3 = Box<Vec3>;

inline bool is_finite(const Vec2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }
inline bool is_finite(const Vec3& p) { return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z); }

} // namespace foldquad
