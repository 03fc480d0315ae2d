#pragma once

#include "foldquad/geometry.hpp"
#include "foldquad/splines.hpp"
#include "foldquad/vec.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string_view>

namespace foldquad {

enum class SignKind { Jplus, Jminus, Folded, Unknown };

std::string_view to_string(SignKind kind);

/// Sampled Jacobian sign certificate of a cell.
struct SignClass {
    SignKind kind = SignKind::Unknown;
    double min_jac = 0.0;
    double max_jac = 0.0;
    int samples = 0;
};

/// Relative scale of the Jacobian zero test: tol_J = kJacobianTol * diameter^d.
inline constexpr double kJacobianTol = 1e-12;

/// Transfinite (Coons) interpolant of a closed loop of four edges, T: [0,1]^2 -> R^2.
///
/// The loop is given head to tail: L1 runs P1->P2, L2 runs P2->P3, L3 runs P3->P4 and
/// L4 runs P4->P1. A counterclockwise loop yields a positive Jacobian for convex shapes;
/// a triangle is a loop with one zero-length edge.
class CoonsCell {
public:
    static constexpr int dim = 2;
    using Param = Vec2;
    using Point = Vec2;

    /// Throws GeometryError when consecutive edges do not meet within the gap tolerance.
    static CoonsCell from_loop(std::array<ParametricCurve, 4> loop);
    /// Triangle (base edge, apex) with the collapsed side opposite the base.
    static CoonsCell triangle(const ParametricCurve& base, Vec2 apex);
    static CoonsCell unit_square();

    Vec2 map(const Vec2& u) const;
    /// Point plus the two columns of the gradient.
    Vec2 map(const Vec2& u, Vec2& tu, Vec2& tv) const;
    double jacobian(const Vec2& u) const;

    const std::array<ParametricCurve, 4>& loop() const { return loop_; }
    const std::array<Vec2, 4>& corners() const { return corners_; }
    Box2 bounding_box() const;
    /// Largest polynomial degree among the edges.
    int degree() const;

    CoonsCell transformed(const std::function<Vec2(const Vec2&)>& affine) const;

private:
    std::array<ParametricCurve, 4> loop_{ParametricCurve::point({}), ParametricCurve::point({}),
                                         ParametricCurve::point({}), ParametricCurve::point({})};
    std::array<Vec2, 4> corners_{};
};

/// Map [0,1]^2 -> R^3 used as a pyramid base: either a polynomial patch, or a trimmed face
/// composed with a parameter-space Coons reparameterization.
class SurfacePatch {
public:
    explicit SurfacePatch(BezierPatch patch);
    SurfacePatch(std::shared_ptr<const TensorSurface> surface, std::optional<CoonsCell> reparam, bool transpose);

    Vec3 eval(double u, double v) const;
    Vec3 eval(double u, double v, Vec3& su, Vec3& sv) const;

    bool is_fitted() const { return !reparam_ && !transpose_ && owned_; }
    const TensorSurface& surface() const { return *surface_; }
    const std::optional<CoonsCell>& reparam() const { return reparam_; }
    bool transpose() const { return transpose_; }
    Box3 bounding_box() const;
    int degree() const;

    SurfacePatch transformed(const std::function<Vec3(const Vec3&)>& affine) const;

private:
    std::shared_ptr<const TensorSurface> surface_;
    std::optional<CoonsCell> reparam_;
    bool transpose_ = false;
    bool owned_ = false;
};

/// Ruled volume T(u,v,w) = (1-w) base(u,v) + w apex.
class PyramidCell {
public:
    static constexpr int dim = 3;
    using Param = Vec3;
    using Point = Vec3;

    PyramidCell(SurfacePatch base, Vec3 apex, std::optional<int> source_face = std::nullopt);

    Vec3 map(const Vec3& u) const;
    Vec3 map(const Vec3& u, Vec3& tu, Vec3& tv, Vec3& tw) const;
    double jacobian(const Vec3& u) const;

    const SurfacePatch& base() const { return base_; }
    const Vec3& apex() const { return apex_; }
    std::optional<int> source_face() const { return source_face_; }
    Box3 bounding_box() const;
    int degree() const { return base_.degree(); }

    PyramidCell transformed(const std::function<Vec3(const Vec3&)>& affine) const;

private:
    SurfacePatch base_;
    Vec3 apex_;
    std::optional<int> source_face_;
};

/// Jacobian sign tolerance of a cell, scaled by its bounding-box diameter.
double jacobian_tolerance(const CoonsCell& cell);
double jacobian_tolerance(const PyramidCell& cell);

/// Evaluates the Jacobian on samples_per_dir^d interior Gauss points (samples_per_dir >= 3).
SignClass classify_cell(const CoonsCell& cell, int samples_per_dir = 5);
SignClass classify_cell(const PyramidCell& cell, int samples_per_dir = 5);

/// True when the sampled Jacobian vanishes everywhere (image of zero measure).
bool is_zero_measure(const CoonsCell& cell);
bool is_zero_measure(const PyramidCell& cell);

} // namespace foldquad
