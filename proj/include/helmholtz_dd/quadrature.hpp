#pragma once

#include <array>
#include <vector>

namespace helmdd {

/// Quadrature rule on the reference triangle {x,y >= 0, x+y <= 1}.
/// Points are stored in barycentric coordinates; weights are positive and sum
/// to the reference triangle area 1/2.
struct QuadratureRule {
    std::vector<std::array<double, 3>> points;   // (1-x-y, x, y)
    std::vector<double> weights;
    int exactness = 0;
};

/// Rule exact for bivariate polynomials of total degree <= `exactness`,
/// built from a tensor Gauss-Legendre rule under the Duffy map.
QuadratureRule make_triangle_rule(int exactness);

/// Gauss-Legendre rule on [0,1]: exact for 1-d polynomials of degree 2n-1.
struct EdgeRule {
    std::vector<double> points;
    std::vector<double> weights;
};

EdgeRule make_edge_rule(int npoints);

}  // namespace helmdd
