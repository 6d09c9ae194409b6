#pragma once

#include <array>
#include <span>
#include <vector>

#include "helmholtz_dd/coefficients.hpp"
#include "helmholtz_dd/linalg.hpp"
#include "helmholtz_dd/mesh.hpp"
#include "helmholtz_dd/quadrature.hpp"

namespace helmdd {

/// Degree-p nodal Lagrange space on the structured fine mesh. Global dofs are
/// the lattice points of spacing h/p, ordered lexicographically by (y,x).
struct FESpace {
    const FineMesh* mesh = nullptr;
    int p = 1;
    int nodes_per_side = 0;                         // cells_per_side * p + 1
    int num_dofs = 0;                               // nodes_per_side^2
    int dofs_per_triangle = 0;                      // (p+1)(p+2)/2
    std::vector<std::array<double, 2>> node_coords; // per global dof
    std::vector<int> connectivity;                  // triangle-major, dofs_per_triangle each
    std::vector<int> boundary_dofs;                 // sorted, each on >= 1 boundary edge

    int dof_index(int ix, int iy) const { return iy * nodes_per_side + ix; }
    std::span<const int> triangle_dofs(int t) const {
        return {connectivity.data() + std::size_t(t) * dofs_per_triangle,
                std::size_t(dofs_per_triangle)};
    }
    /// The p+1 dofs along an axis-aligned fine-square edge, in coordinate order.
    std::vector<int> edge_dofs(const BoundaryEdge& e) const;
};

FESpace build_space(const FineMesh& mesh, int p);

/// The global system of the plane-wave scattering experiments:
/// A_eps = S - (k^2 + i eps) M - i eta N, rhs f from the impedance data g,
/// and D_k = S|_{A=I} + k^2 M|_{n=1}.
struct AssembledSystem {
    ComplexSparseMatrix S;      // (A grad phi_j, grad phi_i)
    ComplexSparseMatrix M;      // (n phi_j, phi_i)
    ComplexSparseMatrix N;      // <sqrt(n) phi_j, phi_i> on Gamma_I
    ComplexSparseMatrix A_eps;
    ComplexSparseMatrix D_k;
    std::vector<Complex> f;
};

struct AssemblyOptions {
    /// Exactness degree of the triangle rule; -1 means the experiment default
    /// max(2p-2, 1). Edge terms always use a p+2 point Gauss rule.
    int quad_exactness = -1;
};

AssembledSystem assemble(const FESpace& space, const ProblemParameters& params,
                         const AssemblyOptions& options = {});

/// Sesquilinear form a_{eps,l} assembled over a triangle subset with the
/// impedance term on the given edges, restricted to `dofs` (sorted global dof
/// ids defining local indices). Shares quadrature and coefficient sampling
/// with assemble().
ComplexSparseMatrix assemble_local_a_eps(const FESpace& space, const ProblemParameters& params,
                                         std::span<const int> triangles,
                                         std::span<const BoundaryEdge> impedance_edges,
                                         const std::vector<int>& dofs,
                                         const AssemblyOptions& options = {});

/// Boundary load f_i = <g, phi_i> with g = i k (d.n - 1) exp(i k d.x),
/// d = (1/sqrt2, 1/sqrt2); assembled over the global boundary.
std::vector<Complex> assemble_plane_wave_load(const FESpace& space,
                                              const ProblemParameters& params);

/// Relative L2 and H1-seminorm errors of u_h against the exact plane wave
/// u = exp(i k d.x) (valid only for homogeneous coefficients A=1, n=1).
std::pair<double, double> errors_vs_planewave(const FESpace& space,
                                              std::span<const Complex> u_h, double k);

}  // namespace helmdd
