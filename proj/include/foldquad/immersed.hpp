#pragma once

#include "foldquad/decomp.hpp"
#include "foldquad/geometry.hpp"
#include "foldquad/quadrature.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace foldquad {

/// Uniform background grid; element id = i + nx*j (+ nx*ny*k).
template <class V>
struct CartesianGrid {
    V origin{};
    V spacing{};
    std::array<int, V::dim> counts{};

    long size() const
    {
        long n = 1;
        for (int c : counts) n *= c;
        return n;
    }

    std::array<int, V::dim> index(long id) const
    {
        std::array<int, V::dim> idx{};
        for (int k = 0; k < V::dim; ++k) {
            idx[static_cast<std::size_t>(k)] = static_cast<int>(id % counts[static_cast<std::size_t>(k)]);
            id /= counts[static_cast<std::size_t>(k)];
        }
        return idx;
    }

    long id(const std::array<int, V::dim>& idx) const
    {
        long id = 0;
        for (int k = V::dim - 1; k >= 0; --k) id = id * counts[static_cast<std::size_t>(k)] + idx[static_cast<std::size_t>(k)];
        return id;
    }

    Box<V> element_box(long id) const
    {
        const auto idx = index(id);
        Box<V> b;
        b.empty = false;
        for (int k = 0; k < V::dim; ++k) {
            b.lo[k] = origin[k] + idx[static_cast<std::size_t>(k)] * spacing[k];
            b.hi[k] = origin[k] + (idx[static_cast<std::size_t>(k)] + 1) * spacing[k];
        }
        return b;
    }

    /// n elements per direction over a box.
    static CartesianGrid covering(const Box<V>& box, int n)
    {
        CartesianGrid g;
        g.origin = box.lo;
        for (int k = 0; k < V::dim; ++k) {
            g.spacing[k] = (box.hi[k] - box.lo[k]) / n;
            g.counts[static_cast<std::size_t>(k)] = n;
        }
        g.validate();
        return g;
    }

    void validate() const;
};

using CartesianGrid2D = CartesianGrid<Vec2>;
using CartesianGrid3D = CartesianGrid<Vec3>;

enum class ElementClass { Trimmed, ActiveFull, Inactive };

std::string_view to_string(ElementClass c);

/// K ∩ Ω for one element. 2D regions are a set of closed loops (outer loops counterclockwise,
/// holes clockwise); 3D regions come from files.
struct TrimmedElement {
    long element_id = 0;
    std::vector<CurvedPolygon> loops;
    std::optional<CurvedPolyhedron> solid;
};

/// Elements whose closed box meets the boundary are Trimmed; the rest are classified by the
/// winding number at their centre.
std::vector<ElementClass> classify_elements(const CartesianGrid2D& grid, const CurvedPolygon& region, int jobs = 0);

struct TrimOptions {
    /// 0 keeps exact sub-curves; q > 0 refits every curved fragment with a degree-q Bézier.
    int fit_degree = 0;
};

/// Loops of K ∩ Ω. Curves are split at their crossings with the four box lines, fragments inside
/// (or on the box boundary with the box's orientation) are chained, and chains are closed by
/// walking the box boundary counterclockwise. A failed assembly is retried once on the box shrunk
/// by 1e-10 h, then reported as a GeometryError.
TrimmedElement trim_element_2d(const Box2& box, const CurvedPolygon& region, const TrimOptions& options = {},
                               long element_id = 0);

/// Signed measure of a trimmed element by the boundary integral of its loops.
double trimmed_area(const TrimmedElement& e);

/// How the cells of a trimmed element are produced.
struct SeedStrategy {
    enum class Kind { MinCells, Vertex, Point, QuadDominant } kind = Kind::MinCells;
    int vertex = 0;
    Vec2 point{};

    /// "min-cells", "vertex:<i>", "point" (uses `point`), "quad-dominant".
    static SeedStrategy parse(const std::string& text);
};

Decomposition2D decompose_trimmed(const TrimmedElement& e, const SeedStrategy& strategy = {});
/// Triangulation of every loop from one seed.
Decomposition2D triangulate_loops(const std::vector<CurvedPolygon>& loops, Vec2 seed);

struct ElementError {
    long element_id = 0;
    std::size_t cells = 0;
    double err = 0.0;
};

struct BernsteinErrors {
    double err = 0.0;
    std::vector<ElementError> elements;
};

/// Trimmed elements of a grid, in element order.
std::vector<TrimmedElement> trimmed_elements(const CartesianGrid2D& grid, const CurvedPolygon& region,
                                             const std::vector<ElementClass>& classes, const TrimOptions& options = {},
                                             int jobs = 0);

/// Trimmed elements that turned out to be the whole box (boundary running along the box sides)
/// become ActiveFull, those without loops Inactive. Returns the elements that stay trimmed.
std::vector<TrimmedElement> settle_classes(const CartesianGrid2D& grid, std::vector<ElementClass>& classes,
                                           std::vector<TrimmedElement> elements);

/// For each trimmed element and each degree-p tensor Bernstein function of its box, the n-point
/// result against the 64-point result on the same cells, normalized by the largest |reference|
/// of the element. With sweep_k >= 2 every seed of a k x k lattice over the element box is tried
/// and the largest error is kept.
BernsteinErrors bernstein_integral_errors(const CartesianGrid2D& grid, const std::vector<TrimmedElement>& elements,
                                          int p, int n, const SeedStrategy& strategy = {}, int sweep_k = 0,
                                          int jobs = 0);

/// Same for one 3D element; the reference uses 64 points as well.
double bernstein_integral_error_3d(const Box3& box, const Decomposition3D& d, int p, int n);

/// Integral over Ω assembled element by element: trimmed elements through their decompositions,
/// full elements with the plain tensor rule.
double integrate_immersed(const CartesianGrid2D& grid, const std::vector<ElementClass>& classes,
                          const std::vector<TrimmedElement>& elements, const Field2& f, int n,
                          const SeedStrategy& strategy = {}, int jobs = 0);

/// Quadrature table of all active elements (trimmed and full).
QuadratureTable immersed_table(const CartesianGrid2D& grid, const std::vector<ElementClass>& classes,
                               const std::vector<TrimmedElement>& elements, int n, const SeedStrategy& strategy = {});

/// Tensor rule of a full element as a single cell.
CoonsCell box_cell(const Box2& box);

} // namespace foldquad
