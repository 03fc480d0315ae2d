#pragma once

#include <vector>

namespace foldquad {

/// Gauss–Legendre rule on [0,1].
struct GaussRule1D {
    int n = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline constexpr int kMaxGaussPoints = 64;
/// Points per direction of the overkill reference rule.
inline constexpr int kReferencePoints = 64;

/// n-point rule, 1 <= n <= 64. Rules are built once per n and shared thereafter.
const GaussRule1D& gauss_legendre(int n);

/// Minimum points per direction that integrate a tensor degree-p polynomial exactly over
/// degree-q polynomial cells in dimension d (2 or 3).
int min_points_exact(int p, int q, int d);

} // namespace foldquad
