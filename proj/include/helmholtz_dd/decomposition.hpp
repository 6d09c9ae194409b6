#pragma once

#include <span>
#include <vector>

#include "helmholtz_dd/fespace.hpp"
#include "helmholtz_dd/linalg.hpp"
#include "helmholtz_dd/mesh.hpp"

namespace helmdd {

// One overlapping subdomain: on the structured mesh every subdomain is an
// axis-aligned rectangle of fine squares [sq_x0, sq_x1) x [sq_y0, sq_y1).
struct Subdomain {
    int index = 0;
    int sq_x0 = 0, sq_x1 = 0, sq_y0 = 0, sq_y1 = 0;
    std::vector<int> triangles;              // fine triangles covering the rectangle
    std::vector<BoundaryEdge> impedance_edges;  // all of the rectangle boundary
    std::vector<int> dofs;                   // sorted global dof ids
    std::vector<double> chi;                 // partition-of-unity weight per local dof
};

struct Decomposition {
    std::vector<Subdomain> subdomains;
};

// Strategy 1: one subdomain per coarse vertex, the support of its bilinear
// hat function; chi is the hat itself.
Decomposition strategy1(const FESpace& space, const CoarseMesh& coarse);

// Strategy 2: one subdomain per coarse square, extended by `layers` rings of
// fine squares; chi comes from normalizing a linear L-infinity ramp.
Decomposition strategy2(const FESpace& space, const CoarseMesh& coarse, int layers);

// layers = max(1, round(delta / h))
int layers_for_overlap(double delta, double h);

// Weighted restriction (chi-scaled) and plain restriction.
std::vector<Complex> restrict_weighted(const Subdomain& sub, std::span<const Complex> global);
std::vector<Complex> restrict_plain(const Subdomain& sub, std::span<const Complex> global);

// global += R_tilde^T local (chi-weighted prolongation).
void add_weighted(const Subdomain& sub, std::span<const Complex> local,
                  std::span<Complex> global);

}  // namespace helmdd
