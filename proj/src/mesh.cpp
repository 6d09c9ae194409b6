#include "helmholtz_dd/mesh.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace helmdd {

CoarseMesh build_coarse(double k, double alpha) {
    if (k < 1.0) throw std::invalid_argument("build_coarse: k must be >= 1");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("build_coarse: alpha must be in (0,1]");
    // floor, not round: H = k^{-0.4} with k = 40..160 must give M = 4,5,6,7
    int M = int(std::floor(std::pow(k, alpha) + 1e-12));
    if (M < 2) M = 2;
    return CoarseMesh{M, 1.0 / M};
}

CoarseMesh coarse_from_squares(int M) {
    if (M < 1) throw std::invalid_argument("coarse_from_squares: M must be >= 1");
    return CoarseMesh{M, 1.0 / M};
}

int refinement_for(const CoarseMesh& coarse, double k, int p) {
    if (p < 1 || p > 4) throw std::invalid_argument("refinement_for: p must be in {1,2,3,4}");
    double target = std::pow(k, -1.0 - 1.0 / (2.0 * p));
    return std::max(1, int(std::ceil(coarse.H / target - 1e-12)));
}

FineMesh refine(const CoarseMesh& coarse, double k, int p, std::size_t max_vertices) {
    int r = refinement_for(coarse, k, p);
    int n = coarse.M * r;
    std::size_t nv = std::size_t(n + 1) * std::size_t(n + 1);
    if (nv > max_vertices)
        throw std::runtime_error("refine: fine mesh would have " + std::to_string(nv) +
                                 " vertices, exceeding the cap of " +
                                 std::to_string(max_vertices));

    FineMesh mesh;
    mesh.M = coarse.M;
    mesh.refinement = r;
    mesh.cells_per_side = n;
    mesh.h = 1.0 / n;

    mesh.vertices.resize(nv);
    for (int iy = 0; iy <= n; ++iy)
        for (int ix = 0; ix <= n; ++ix)
            mesh.vertices[std::size_t(mesh.vertex_index(ix, iy))] = {ix * mesh.h, iy * mesh.h};

    mesh.triangles.reserve(std::size_t(2) * n * n);
    mesh.parent.reserve(std::size_t(2) * n * n);
    for (int sy = 0; sy < n; ++sy) {
        for (int sx = 0; sx < n; ++sx) {
            int ll = mesh.vertex_index(sx, sy);
            int lr = mesh.vertex_index(sx + 1, sy);
            int ur = mesh.vertex_index(sx + 1, sy + 1);
            int ul = mesh.vertex_index(sx, sy + 1);
            // Diagonal from lower-left to upper-right.
            mesh.triangles.push_back({ll, lr, ur});
            mesh.triangles.push_back({ll, ur, ul});
            int parent = mesh.coarse_index(sx / r, sy / r);
            mesh.parent.push_back(parent);
            mesh.parent.push_back(parent);
        }
    }

    mesh.boundary_edges.reserve(std::size_t(4) * n);
    for (int s = 0; s < n; ++s) {
        mesh.boundary_edges.push_back({s, 0, Side::bottom});
        mesh.boundary_edges.push_back({n - 1, s, Side::right});
        mesh.boundary_edges.push_back({s, n - 1, Side::top});
        mesh.boundary_edges.push_back({0, s, Side::left});
    }
    return mesh;
}

void dump_mesh(const FineMesh& mesh, std::ostream& out) {
    for (const auto& v : mesh.vertices) out << v[0] << ' ' << v[1] << '\n';
    for (const auto& t : mesh.triangles) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

std::array<double, 2> outward_normal(Side side) {
    switch (side) {
        case Side::bottom: return {0.0, -1.0};
        case Side::right: return {1.0, 0.0};
        case Side::top: return {0.0, 1.0};
        case Side::left: return {-1.0, 0.0};
    }
    return {0.0, 0.0};
}

}  // namespace helmdd
