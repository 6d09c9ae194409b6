#include "helmholtz_dd/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace helmdd {

namespace {

// Fill triangles, impedance edges and dofs for the rectangle already stored
// in `sub`. The dof list comes out sorted because it follows the global
// lexicographic (y-major) ordering.
void fill_rectangle(Subdomain& sub, const FESpace& space) {
    const FineMesh& mesh = *space.mesh;
    int n = mesh.cells_per_side, p = space.p;
    sub.triangles.clear();
    sub.triangles.reserve(std::size_t(sub.sq_x1 - sub.sq_x0) * (sub.sq_y1 - sub.sq_y0) * 2);
    for (int sy = sub.sq_y0; sy < sub.sq_y1; ++sy) {
        for (int sx = sub.sq_x0; sx < sub.sq_x1; ++sx) {
            int sq = sy * n + sx;
            sub.triangles.push_back(2 * sq);
            sub.triangles.push_back(2 * sq + 1);
        }
    }
    sub.impedance_edges.clear();
    for (int sx = sub.sq_x0; sx < sub.sq_x1; ++sx) {
        sub.impedance_edges.push_back({sx, sub.sq_y0, Side::bottom});
        sub.impedance_edges.push_back({sx, sub.sq_y1 - 1, Side::top});
    }
    for (int sy = sub.sq_y0; sy < sub.sq_y1; ++sy) {
        sub.impedance_edges.push_back({sub.sq_x0, sy, Side::left});
        sub.impedance_edges.push_back({sub.sq_x1 - 1, sy, Side::right});
    }
    sub.dofs.clear();
    for (int iy = sub.sq_y0 * p; iy <= sub.sq_y1 * p; ++iy)
        for (int ix = sub.sq_x0 * p; ix <= sub.sq_x1 * p; ++ix)
            sub.dofs.push_back(space.dof_index(ix, iy));
}

double hat(double t, int i) { return std::max(0.0, 1.0 - std::abs(t - double(i))); }

}  // namespace

int layers_for_overlap(double delta, double h) {
    return std::max(1, int(std::lround(delta / h)));
}

Decomposition strategy1(const FESpace& space, const CoarseMesh& coarse) {
    const FineMesh& mesh = *space.mesh;
    if (mesh.M != coarse.M)
        throw std::invalid_argument("strategy1: coarse mesh does not match the fine mesh parent");
    int M = coarse.M, r = mesh.refinement;
    Decomposition dec;
    dec.subdomains.reserve(std::size_t(M + 1) * (M + 1));
    for (int j = 0; j <= M; ++j) {
        for (int i = 0; i <= M; ++i) {
            Subdomain sub;
            sub.index = int(dec.subdomains.size());
            sub.sq_x0 = std::max(0, i - 1) * r;
            sub.sq_x1 = std::min(M, i + 1) * r;
            sub.sq_y0 = std::max(0, j - 1) * r;
            sub.sq_y1 = std::min(M, j + 1) * r;
            fill_rectangle(sub, space);
            sub.chi.resize(sub.dofs.size());
            for (std::size_t l = 0; l < sub.dofs.size(); ++l) {
                auto [x, y] = space.node_coords[std::size_t(sub.dofs[l])];
                sub.chi[l] = hat(x / coarse.H, i) * hat(y / coarse.H, j);
            }
            dec.subdomains.push_back(std::move(sub));
        }
    }
    return dec;
}

Decomposition strategy2(const FESpace& space, const CoarseMesh& coarse, int layers) {
    const FineMesh& mesh = *space.mesh;
    if (mesh.M != coarse.M)
        throw std::invalid_argument("strategy2: coarse mesh does not match the fine mesh parent");
    if (layers < 1) throw std::invalid_argument("strategy2: layers must be >= 1");
    int M = coarse.M, r = mesh.refinement, n = mesh.cells_per_side;
    double h = mesh.h, delta = layers * h;

    Decomposition dec;
    dec.subdomains.reserve(std::size_t(M) * M);
    std::vector<double> pi_sum(std::size_t(space.num_dofs), 0.0);
    for (int b = 0; b < M; ++b) {
        for (int a = 0; a < M; ++a) {
            Subdomain sub;
            sub.index = int(dec.subdomains.size());
            sub.sq_x0 = std::max(0, a * r - layers);
            sub.sq_x1 = std::min(n, (a + 1) * r + layers);
            sub.sq_y0 = std::max(0, b * r - layers);
            sub.sq_y1 = std::min(n, (b + 1) * r + layers);
            fill_rectangle(sub, space);
            // Linear ramp in the L-infinity distance to the coarse square.
            double cx0 = a * r * h, cx1 = (a + 1) * r * h;
            double cy0 = b * r * h, cy1 = (b + 1) * r * h;
            sub.chi.resize(sub.dofs.size());
            for (std::size_t l = 0; l < sub.dofs.size(); ++l) {
                auto [x, y] = space.node_coords[std::size_t(sub.dofs[l])];
                double dx = std::max({cx0 - x, x - cx1, 0.0});
                double dy = std::max({cy0 - y, y - cy1, 0.0});
                double pi = std::max(0.0, 1.0 - std::max(dx, dy) / delta);
                sub.chi[l] = pi;
                pi_sum[std::size_t(sub.dofs[l])] += pi;
            }
            dec.subdomains.push_back(std::move(sub));
        }
    }
    for (auto& sub : dec.subdomains)
        for (std::size_t l = 0; l < sub.dofs.size(); ++l)
            sub.chi[l] /= pi_sum[std::size_t(sub.dofs[l])];
    return dec;
}

std::vector<Complex> restrict_weighted(const Subdomain& sub, std::span<const Complex> global) {
    std::vector<Complex> local(sub.dofs.size());
    for (std::size_t l = 0; l < sub.dofs.size(); ++l)
        local[l] = sub.chi[l] * global[std::size_t(sub.dofs[l])];
    return local;
}

std::vector<Complex> restrict_plain(const Subdomain& sub, std::span<const Complex> global) {
    std::vector<Complex> local(sub.dofs.size());
    for (std::size_t l = 0; l < sub.dofs.size(); ++l)
        local[l] = global[std::size_t(sub.dofs[l])];
    return local;
}

void add_weighted(const Subdomain& sub, std::span<const Complex> local,
                  std::span<Complex> global) {
    for (std::size_t l = 0; l < sub.dofs.size(); ++l)
        global[std::size_t(sub.dofs[l])] += sub.chi[l] * local[l];
}

}  // namespace helmdd
