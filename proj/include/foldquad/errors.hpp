#pragma once

#include <stdexcept>
#include <string>

namespace foldquad {

/// Invalid input geometry: broken loops, inconsistent control data, bad degrees.
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Boundary orientation inconsistent with an outward/counterclockwise convention.
class OrientationError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// Non-finite values produced during integration or root finding.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed geometry or configuration documents.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace foldquad
