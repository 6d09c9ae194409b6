#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace helmdd {

/// Uniform coarse mesh of M x M squares on (0,1)^2.
struct CoarseMesh {
    int M = 2;           // squares per side, >= 1
    double H = 0.5;      // 1/M
};

/// M = floor(k^alpha), clamped to M >= 2.
CoarseMesh build_coarse(double k, double alpha);

/// Fixed-H mode: M given directly.
CoarseMesh coarse_from_squares(int M);

/// Sides of an axis-aligned square cell, used for boundary edge tags.
enum class Side : int { bottom = 0, right = 1, top = 2, left = 3 };

/// A boundary edge identified by the fine square it borders and the side of
/// that square lying on the boundary in question. All such edges are
/// impedance edges (Gamma_I): there is no Dirichlet boundary here.
struct BoundaryEdge {
    int sx = 0;   // fine square indices
    int sy = 0;
    Side side = Side::bottom;
};

/// Structured triangulation of (0,1)^2: n x n fine squares, each split into
/// two triangles along the diagonal from its lower-left to upper-right
/// corner. Triangle 2*(sy*n+sx) is the lower-right half, +1 the upper-left.
struct FineMesh {
    int M = 0;                 // coarse squares per side
    int refinement = 0;        // fine squares per coarse square side (r)
    int cells_per_side = 0;    // n = M * r
    double h = 0.0;            // fine square side length, 1/n

    std::vector<std::array<double, 2>> vertices;    // lattice points, (n+1)^2
    std::vector<std::array<int, 3>> triangles;      // CCW vertex indices
    std::vector<BoundaryEdge> boundary_edges;       // the loop around (0,1)^2
    std::vector<int> parent;                        // triangle -> coarse square index

    int vertex_index(int ix, int iy) const { return iy * (cells_per_side + 1) + ix; }
    int square_index(int sx, int sy) const { return sy * cells_per_side + sx; }
    int coarse_index(int cx, int cy) const { return cy * M + cx; }
};

/// Smallest integer r with H/r <= k^{-1-1/(2p)}.
int refinement_for(const CoarseMesh& coarse, double k, int p);

/// Uniformly refines the coarse mesh so that the fine square side h = H/r
/// satisfies h <= k^{-1-1/(2p)} with the smallest possible integer r.
/// Refuses (std::runtime_error) when the fine vertex count would exceed
/// `max_vertices`.
FineMesh refine(const CoarseMesh& coarse, double k, int p,
                std::size_t max_vertices = 4000000);

/// Plain-text dump: one "x y" vertex per line, then one "i j k" triangle per line.
void dump_mesh(const FineMesh& mesh, std::ostream& out);

/// Outward unit normal of a domain (or subdomain rectangle) boundary side.
std::array<double, 2> outward_normal(Side side);

}  // namespace helmdd
