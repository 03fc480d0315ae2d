#pragma once

#include "foldquad/decomp.hpp"
#include "foldquad/geometry.hpp"
#include "foldquad/immersed.hpp"
#include "foldquad/quadrature.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace foldquad::io {

using json = nlohmann::json;

// Geometry documents. Curves carry their canonical control data plus an orientation flag;
// see docs/geometry-schema.md for the layout.

json to_json(const ParametricCurve& c);
json to_json(const TensorSurface& s);
json to_json(const CurvedPolygon& p);
json to_json(const ParametricFace& f);
json to_json(const CurvedPolyhedron& b);
json to_json(const SignClass& s);
json to_json(const CoonsCell& c);
json to_json(const SurfacePatch& p);
json to_json(const PyramidCell& c);
json to_json(const Decomposition2D& d);
json to_json(const Decomposition3D& d);

// Readers throw SchemaError with a JSON-pointer-like path on malformed input.
ParametricCurve curve_from_json(const json& j);
TensorSurface surface_from_json(const json& j);
CurvedPolygon polygon_from_json(const json& j);
ParametricFace face_from_json(const json& j);
CurvedPolyhedron polyhedron_from_json(const json& j);
CoonsCell coons_cell_from_json(const json& j);
PyramidCell pyramid_cell_from_json(const json& j);
Decomposition2D decomposition_2d_from_json(const json& j);
Decomposition3D decomposition_3d_from_json(const json& j);

/// Top-level geometry file: one of "polygon", "polyhedron" or "elements" (3D trimmed elements).
struct GeometryDocument {
    int dimension = 2;
    std::optional<CurvedPolygon> polygon;
    std::optional<CurvedPolyhedron> polyhedron;
    std::vector<TrimmedElement> elements;
};

json to_json(const GeometryDocument& doc);
GeometryDocument geometry_from_json(const json& j);
/// Parses a file; I/O failures and syntax errors are reported as SchemaError.
json read_json_file(const std::string& path);
GeometryDocument load_geometry(const std::string& path);

/// Reads a 3D geometry file ("elements" list, or a single "polyhedron" as element 0) and checks
/// every solid for closure and outward orientation.
std::vector<TrimmedElement> load_trimmed_elements_3d(const std::string& path);
std::vector<TrimmedElement> trimmed_elements_3d_from_json(const json& j);

// Output.

/// FNV-1a 64-bit hash of the compact serialization.
std::uint64_t fnv1a(const std::string& bytes);
/// 16 hex digits of fnv1a over the compact config.
std::string fingerprint(const json& config);
/// "# config-fingerprint <16 hex digits> <compact config>".
std::string fingerprint_line(const json& config);

/// %.16e, i.e. 17 significant digits in scientific notation.
std::string format_double(double x);

/// element_id,cell_id,x,y[,z],weight with a leading fingerprint comment.
void write_table_csv(std::ostream& out, const QuadratureTable& t, const json& config);
json table_to_json(const QuadratureTable& t, const json& config);

struct ElementRow {
    long element_id = 0;
    ElementClass cls = ElementClass::Trimmed;
    std::size_t cells = 0;
    int n = 0;
    double err = 0.0;
};

/// element_id,class,cells,n,err with a leading fingerprint comment.
void write_element_csv(std::ostream& out, const std::vector<ElementRow>& rows, const json& config);

} // namespace foldquad::io
