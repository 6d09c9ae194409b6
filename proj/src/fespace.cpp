#include "helmholtz_dd/fespace.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace helmdd {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Lagrange basis of total degree p on the reference triangle with equispaced
// nodes (i/p, j/p), i+j <= p, enumerated j-major then i. Coefficients in the
// monomial basis x^a y^b come from the inverse Vandermonde.
struct RefBasis {
    int p = 1;
    int m = 3;
    std::vector<std::array<int, 2>> monos;   // (a, b), a+b <= p
    Eigen::MatrixXd coeffs;                  // m x m; column l = basis l

    void eval(double x, double y, double* val, double* gx, double* gy) const {
        for (int l = 0; l < m; ++l) {
            double v = 0.0, dx = 0.0, dy = 0.0;
            for (int t = 0; t < m; ++t) {
                auto [a, b] = monos[t];
                double c = coeffs(t, l);
                if (c == 0.0) continue;
                double xa = std::pow(x, a), yb = std::pow(y, b);
                v += c * xa * yb;
                if (a > 0) dx += c * a * std::pow(x, a - 1) * yb;
                if (b > 0) dy += c * b * xa * std::pow(y, b - 1);
            }
            val[l] = v;
            gx[l] = dx;
            gy[l] = dy;
        }
    }
};

RefBasis make_ref_basis(int p) {
    RefBasis basis;
    basis.p = p;
    basis.m = (p + 1) * (p + 2) / 2;
    for (int a = 0; a <= p; ++a)
        for (int b = 0; b <= p - a; ++b) basis.monos.push_back({a, b});
    Eigen::MatrixXd V(basis.m, basis.m);
    int node = 0;
    for (int j = 0; j <= p; ++j) {
        for (int i = 0; i <= p - j; ++i, ++node) {
            double x = double(i) / p, y = double(j) / p;
            for (int t = 0; t < basis.m; ++t)
                V(node, t) = std::pow(x, basis.monos[t][0]) * std::pow(y, basis.monos[t][1]);
        }
    }
    basis.coeffs = V.inverse();   // column l satisfies basis_l(node_n) = delta_{ln}
    return basis;
}

// Basis values and physical gradients tabulated at the rule points, one table
// per triangle orientation (lower/upper half of a fine square).
struct ElementTables {
    int nq = 0, m = 0;
    std::vector<double> val;                   // nq x m
    std::vector<double> gpx[2], gpy[2];        // per orientation, nq x m
};

ElementTables tabulate(const RefBasis& basis, const QuadratureRule& rule, double h) {
    ElementTables tab;
    tab.nq = int(rule.points.size());
    tab.m = basis.m;
    tab.val.resize(std::size_t(tab.nq) * tab.m);
    for (int o = 0; o < 2; ++o) {
        tab.gpx[o].resize(std::size_t(tab.nq) * tab.m);
        tab.gpy[o].resize(std::size_t(tab.nq) * tab.m);
    }
    // J^{-T} for the two orientations; both Jacobians are constant.
    const double g0[2][2][2] = {{{1.0 / h, 0.0}, {-1.0 / h, 1.0 / h}},
                                {{1.0 / h, -1.0 / h}, {0.0, 1.0 / h}}};
    std::vector<double> gx(tab.m), gy(tab.m);
    for (int q = 0; q < tab.nq; ++q) {
        double x = rule.points[q][1], y = rule.points[q][2];
        basis.eval(x, y, &tab.val[std::size_t(q) * tab.m], gx.data(), gy.data());
        for (int o = 0; o < 2; ++o) {
            for (int l = 0; l < tab.m; ++l) {
                tab.gpx[o][std::size_t(q) * tab.m + l] = g0[o][0][0] * gx[l] + g0[o][0][1] * gy[l];
                tab.gpy[o][std::size_t(q) * tab.m + l] = g0[o][1][0] * gx[l] + g0[o][1][1] * gy[l];
            }
        }
    }
    return tab;
}

// 1-d Lagrange basis on equispaced nodes t/p of [0,1] at the edge rule points.
std::vector<double> tabulate_edge_basis(int p, const EdgeRule& rule) {
    int nq = int(rule.points.size());
    std::vector<double> tab(std::size_t(nq) * (p + 1));
    for (int q = 0; q < nq; ++q) {
        double s = rule.points[q];
        for (int l = 0; l <= p; ++l) {
            double v = 1.0;
            for (int t = 0; t <= p; ++t) {
                if (t == l) continue;
                v *= (s - double(t) / p) / (double(l) / p - double(t) / p);
            }
            tab[std::size_t(q) * (p + 1) + l] = v;
        }
    }
    return tab;
}

Complex plane_wave_g(double k, std::array<double, 2> x, std::array<double, 2> normal) {
    double dn = kInvSqrt2 * (normal[0] + normal[1]);
    Complex phase = std::polar(1.0, k * kInvSqrt2 * (x[0] + x[1]));
    return Complex(0.0, k) * (dn - 1.0) * phase;
}

// Physical coordinates of a reference point inside triangle t.
std::array<double, 2> physical_point(const FineMesh& mesh, int t, double x, double y) {
    int sq = t / 2, o = t % 2;
    int sx = sq % mesh.cells_per_side, sy = sq / mesh.cells_per_side;
    double x0 = sx * mesh.h, y0 = sy * mesh.h;
    if (o == 0) return {x0 + mesh.h * (x + y), y0 + mesh.h * y};        // (LL, LR, UR)
    return {x0 + mesh.h * x, y0 + mesh.h * (x + y)};                    // (LL, UR, UL)
}

// Geometry of a square edge, in coordinate order (increasing x or y).
struct EdgeGeometry {
    std::array<double, 2> start;
    std::array<double, 2> dir;    // unit tangent times edge length h
    std::array<double, 2> normal;
};

EdgeGeometry edge_geometry(const FineMesh& mesh, const BoundaryEdge& e) {
    double h = mesh.h;
    double x0 = e.sx * h, y0 = e.sy * h;
    switch (e.side) {
        case Side::bottom: return {{x0, y0}, {h, 0.0}, outward_normal(Side::bottom)};
        case Side::top: return {{x0, y0 + h}, {h, 0.0}, outward_normal(Side::top)};
        case Side::left: return {{x0, y0}, {0.0, h}, outward_normal(Side::left)};
        case Side::right: return {{x0 + h, y0}, {0.0, h}, outward_normal(Side::right)};
    }
    throw std::logic_error("edge_geometry: bad side");
}

// CSR pattern shared by S, M (and the unit-coefficient variants) built from
// the element connectivity.
struct Pattern {
    std::vector<int> row_offsets;
    std::vector<int> col_indices;

    int find(int i, int j) const {
        auto first = col_indices.begin() + row_offsets[i];
        auto last = col_indices.begin() + row_offsets[i + 1];
        auto it = std::lower_bound(first, last, j);
        return int(it - col_indices.begin());
    }
};

Pattern build_pattern(int num_dofs, std::span<const int> triangles, const FESpace& space,
                      const std::vector<int>& global_to_local) {
    std::vector<std::uint64_t> keys;
    keys.reserve(triangles.size() * std::size_t(space.dofs_per_triangle) *
                 space.dofs_per_triangle);
    for (int t : triangles) {
        auto dofs = space.triangle_dofs(t);
        for (int a : dofs) {
            int la = global_to_local.empty() ? a : global_to_local[a];
            for (int b : dofs) {
                int lb = global_to_local.empty() ? b : global_to_local[b];
                keys.push_back(std::uint64_t(la) * std::uint64_t(num_dofs) + std::uint64_t(lb));
            }
        }
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    Pattern pat;
    pat.row_offsets.assign(num_dofs + 1, 0);
    pat.col_indices.resize(keys.size());
    for (std::size_t s = 0; s < keys.size(); ++s) {
        int i = int(keys[s] / num_dofs), j = int(keys[s] % num_dofs);
        pat.col_indices[s] = j;
        pat.row_offsets[i + 1]++;
    }
    for (int i = 0; i < num_dofs; ++i) pat.row_offsets[i + 1] += pat.row_offsets[i];
    return pat;
}

ComplexSparseMatrix with_values(const Pattern& pat, int n, std::vector<Complex> values) {
    ComplexSparseMatrix A;
    A.nrows = A.ncols = n;
    A.row_offsets = pat.row_offsets;
    A.col_indices = pat.col_indices;
    A.values = std::move(values);
    return A;
}

}  // namespace

std::vector<int> FESpace::edge_dofs(const BoundaryEdge& e) const {
    std::vector<int> out(p + 1);
    switch (e.side) {
        case Side::bottom:
            for (int t = 0; t <= p; ++t) out[t] = dof_index(e.sx * p + t, e.sy * p);
            break;
        case Side::top:
            for (int t = 0; t <= p; ++t) out[t] = dof_index(e.sx * p + t, (e.sy + 1) * p);
            break;
        case Side::left:
            for (int t = 0; t <= p; ++t) out[t] = dof_index(e.sx * p, e.sy * p + t);
            break;
        case Side::right:
            for (int t = 0; t <= p; ++t) out[t] = dof_index((e.sx + 1) * p, e.sy * p + t);
            break;
    }
    return out;
}

FESpace build_space(const FineMesh& mesh, int p) {
    if (p < 1 || p > 4) throw std::invalid_argument("build_space: p must be in {1,2,3,4}");
    FESpace space;
    space.mesh = &mesh;
    space.p = p;
    space.nodes_per_side = mesh.cells_per_side * p + 1;
    space.num_dofs = space.nodes_per_side * space.nodes_per_side;
    space.dofs_per_triangle = (p + 1) * (p + 2) / 2;

    double g = mesh.h / p;
    space.node_coords.resize(std::size_t(space.num_dofs));
    for (int iy = 0; iy < space.nodes_per_side; ++iy)
        for (int ix = 0; ix < space.nodes_per_side; ++ix)
            space.node_coords[std::size_t(space.dof_index(ix, iy))] = {ix * g, iy * g};

    space.connectivity.resize(std::size_t(mesh.triangles.size()) * space.dofs_per_triangle);
    std::size_t pos = 0;
    int n = mesh.cells_per_side;
    for (int sy = 0; sy < n; ++sy) {
        for (int sx = 0; sx < n; ++sx) {
            int bx = sx * p, by = sy * p;
            // Lower triangle (LL, LR, UR): node (i,j) -> lattice (bx+i+j, by+j).
            for (int j = 0; j <= p; ++j)
                for (int i = 0; i <= p - j; ++i)
                    space.connectivity[pos++] = space.dof_index(bx + i + j, by + j);
            // Upper triangle (LL, UR, UL): node (i,j) -> lattice (bx+i, by+i+j).
            for (int j = 0; j <= p; ++j)
                for (int i = 0; i <= p - j; ++i)
                    space.connectivity[pos++] = space.dof_index(bx + i, by + i + j);
        }
    }

    int last = space.nodes_per_side - 1;
    for (int t = 0; t < space.nodes_per_side; ++t) space.boundary_dofs.push_back(space.dof_index(t, 0));
    for (int t = 1; t < space.nodes_per_side; ++t) {
        space.boundary_dofs.push_back(space.dof_index(0, t));
        space.boundary_dofs.push_back(space.dof_index(last, t));
    }
    for (int t = 1; t < last; ++t) space.boundary_dofs.push_back(space.dof_index(t, last));
    std::sort(space.boundary_dofs.begin(), space.boundary_dofs.end());
    return space;
}

namespace {

// Core element/edge loop shared by the global and local assemblies. With an
// empty `global_to_local`, dof ids are used as-is.
struct EngineResult {
    Pattern pattern;
    std::vector<Complex> S, M, S1, M1;           // values on `pattern`
    ComplexSparseMatrix N;                       // boundary mass, own pattern
};

EngineResult run_engine(const FESpace& space, const ProblemParameters& params,
                        std::span<const int> triangles,
                        std::span<const BoundaryEdge> impedance_edges, int num_dofs,
                        const std::vector<int>& global_to_local, int quad_exactness) {
    const FineMesh& mesh = *space.mesh;
    int p = space.p, m = space.dofs_per_triangle;
    int exactness = quad_exactness >= 0 ? quad_exactness : std::max(2 * p - 2, 1);
    QuadratureRule rule = make_triangle_rule(exactness);
    RefBasis basis = make_ref_basis(p);
    ElementTables tab = tabulate(basis, rule, mesh.h);
    double det = mesh.h * mesh.h;

    EngineResult out;
    out.pattern = build_pattern(num_dofs, triangles, space, global_to_local);
    std::size_t nnz = out.pattern.col_indices.size();
    out.S.assign(nnz, Complex(0.0));
    out.M.assign(nnz, Complex(0.0));
    out.S1.assign(nnz, Complex(0.0));
    out.M1.assign(nnz, Complex(0.0));

    bool hetero_A = !params.A.is_constant_one();
    bool hetero_n = !params.n.is_constant_one();

    std::vector<double> eS(std::size_t(m) * m), eM(std::size_t(m) * m);
    std::vector<double> eS1(std::size_t(m) * m), eM1(std::size_t(m) * m);
    std::vector<int> local(m);
    for (int t : triangles) {
        int o = t % 2;
        std::fill(eS.begin(), eS.end(), 0.0);
        std::fill(eM.begin(), eM.end(), 0.0);
        std::fill(eS1.begin(), eS1.end(), 0.0);
        std::fill(eM1.begin(), eM1.end(), 0.0);
        for (int q = 0; q < tab.nq; ++q) {
            double w = rule.weights[q] * det;
            double aq = 1.0, nq = 1.0;
            if (hetero_A || hetero_n) {
                auto xq = physical_point(mesh, t, rule.points[q][1], rule.points[q][2]);
                if (hetero_A) aq = params.A.eval(xq[0], xq[1]);
                if (hetero_n) nq = params.n.eval(xq[0], xq[1]);
            }
            const double* val = &tab.val[std::size_t(q) * m];
            const double* gx = &tab.gpx[o][std::size_t(q) * m];
            const double* gy = &tab.gpy[o][std::size_t(q) * m];
            for (int a = 0; a < m; ++a) {
                for (int b = 0; b < m; ++b) {
                    double grad = gx[a] * gx[b] + gy[a] * gy[b];
                    double mass = val[a] * val[b];
                    eS1[std::size_t(a) * m + b] += w * grad;
                    eM1[std::size_t(a) * m + b] += w * mass;
                    eS[std::size_t(a) * m + b] += w * aq * grad;
                    eM[std::size_t(a) * m + b] += w * nq * mass;
                }
            }
        }
        auto dofs = space.triangle_dofs(t);
        for (int a = 0; a < m; ++a)
            local[a] = global_to_local.empty() ? dofs[a] : global_to_local[dofs[a]];
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) {
                int pos = out.pattern.find(local[a], local[b]);
                out.S[pos] += eS[std::size_t(a) * m + b];
                out.M[pos] += eM[std::size_t(a) * m + b];
                out.S1[pos] += eS1[std::size_t(a) * m + b];
                out.M1[pos] += eM1[std::size_t(a) * m + b];
            }
        }
    }

    // Boundary mass N: edge Gauss rule with p+2 points.
    EdgeRule edge_rule = make_edge_rule(p + 2);
    std::vector<double> edge_tab = tabulate_edge_basis(p, edge_rule);
    std::vector<std::tuple<int, int, Complex>> ntrips;
    ntrips.reserve(impedance_edges.size() * std::size_t(p + 1) * (p + 1));
    for (const auto& e : impedance_edges) {
        auto geo = edge_geometry(mesh, e);
        auto dofs = space.edge_dofs(e);
        for (std::size_t q = 0; q < edge_rule.points.size(); ++q) {
            double s = edge_rule.points[q];
            double nq = 1.0;
            if (hetero_n) {
                double x = geo.start[0] + s * geo.dir[0];
                double y = geo.start[1] + s * geo.dir[1];
                nq = params.n.eval(x, y);
            }
            double w = edge_rule.weights[q] * mesh.h * std::sqrt(nq);
            const double* lv = &edge_tab[q * std::size_t(p + 1)];
            for (int a = 0; a <= p; ++a) {
                int la = global_to_local.empty() ? dofs[a] : global_to_local[dofs[a]];
                for (int b = 0; b <= p; ++b) {
                    int lb = global_to_local.empty() ? dofs[b] : global_to_local[dofs[b]];
                    ntrips.emplace_back(la, lb, Complex(w * lv[a] * lv[b], 0.0));
                }
            }
        }
    }
    out.N = ComplexSparseMatrix::from_triplets(num_dofs, num_dofs, std::move(ntrips));
    return out;
}

}  // namespace

AssembledSystem assemble(const FESpace& space, const ProblemParameters& params,
                         const AssemblyOptions& options) {
    params.validate();
    std::vector<int> all(space.mesh->triangles.size());
    for (std::size_t t = 0; t < all.size(); ++t) all[t] = int(t);
    EngineResult eng = run_engine(space, params, all, space.mesh->boundary_edges,
                                  space.num_dofs, {}, options.quad_exactness);

    AssembledSystem sys;
    sys.S = with_values(eng.pattern, space.num_dofs, std::move(eng.S));
    sys.M = with_values(eng.pattern, space.num_dofs, std::move(eng.M));
    sys.N = std::move(eng.N);
    ComplexSparseMatrix S1 = with_values(eng.pattern, space.num_dofs, std::move(eng.S1));
    ComplexSparseMatrix M1 = with_values(eng.pattern, space.num_dofs, std::move(eng.M1));

    Complex k2(params.k * params.k, params.eps);
    ComplexSparseMatrix tmp = csr_linear_combination(Complex(1.0), sys.S, -k2, sys.M);
    sys.A_eps = csr_linear_combination(Complex(1.0), tmp, Complex(0.0, -1.0) * params.eta, sys.N);
    sys.D_k = csr_linear_combination(Complex(1.0), S1, Complex(params.k * params.k), M1);
    sys.f = assemble_plane_wave_load(space, params);
    return sys;
}

ComplexSparseMatrix assemble_local_a_eps(const FESpace& space, const ProblemParameters& params,
                                         std::span<const int> triangles,
                                         std::span<const BoundaryEdge> impedance_edges,
                                         const std::vector<int>& dofs,
                                         const AssemblyOptions& options) {
    std::vector<int> global_to_local(std::size_t(space.num_dofs), -1);
    for (std::size_t l = 0; l < dofs.size(); ++l) global_to_local[dofs[l]] = int(l);
    EngineResult eng = run_engine(space, params, triangles, impedance_edges, int(dofs.size()),
                                  global_to_local, options.quad_exactness);
    ComplexSparseMatrix S = with_values(eng.pattern, int(dofs.size()), std::move(eng.S));
    ComplexSparseMatrix M = with_values(eng.pattern, int(dofs.size()), std::move(eng.M));
    Complex k2(params.k * params.k, params.eps);
    ComplexSparseMatrix tmp = csr_linear_combination(Complex(1.0), S, -k2, M);
    return csr_linear_combination(Complex(1.0), tmp, Complex(0.0, -1.0) * params.eta, eng.N);
}

std::vector<Complex> assemble_plane_wave_load(const FESpace& space,
                                              const ProblemParameters& params) {
    const FineMesh& mesh = *space.mesh;
    int p = space.p;
    EdgeRule edge_rule = make_edge_rule(p + 2);
    std::vector<double> edge_tab = tabulate_edge_basis(p, edge_rule);
    std::vector<Complex> f(std::size_t(space.num_dofs), Complex(0.0));
    for (const auto& e : mesh.boundary_edges) {
        auto geo = edge_geometry(mesh, e);
        auto dofs = space.edge_dofs(e);
        for (std::size_t q = 0; q < edge_rule.points.size(); ++q) {
            double s = edge_rule.points[q];
            std::array<double, 2> x{geo.start[0] + s * geo.dir[0], geo.start[1] + s * geo.dir[1]};
            Complex gq = plane_wave_g(params.k, x, geo.normal);
            double w = edge_rule.weights[q] * mesh.h;
            const double* lv = &edge_tab[q * std::size_t(p + 1)];
            for (int a = 0; a <= p; ++a) f[dofs[a]] += w * gq * lv[a];
        }
    }
    return f;
}

std::pair<double, double> errors_vs_planewave(const FESpace& space,
                                              std::span<const Complex> u_h, double k) {
    if (int(u_h.size()) != space.num_dofs)
        throw std::invalid_argument("errors_vs_planewave: solution length mismatch");
    const FineMesh& mesh = *space.mesh;
    int p = space.p, m = space.dofs_per_triangle;

    // Exactness >= 2p+2 plus enough points to resolve the plane wave
    // (>= 10 points per wavelength on the error integrand).
    int n_per_wave = int(std::ceil(10.0 * k * mesh.h / (2.0 * std::numbers::pi)));
    int exactness = std::max(2 * p + 2, 2 * n_per_wave - 1);
    QuadratureRule rule = make_triangle_rule(exactness);
    RefBasis basis = make_ref_basis(p);
    ElementTables tab = tabulate(basis, rule, mesh.h);
    double det = mesh.h * mesh.h;

    double num0 = 0.0, den0 = 0.0, num1 = 0.0, den1 = 0.0;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        int o = int(t % 2);
        auto dofs = space.triangle_dofs(int(t));
        for (int q = 0; q < tab.nq; ++q) {
            double w = rule.weights[q] * det;
            auto xq = physical_point(mesh, int(t), rule.points[q][1], rule.points[q][2]);
            Complex u = std::polar(1.0, k * kInvSqrt2 * (xq[0] + xq[1]));
            Complex ux = Complex(0.0, k * kInvSqrt2) * u;
            Complex uy = ux;
            Complex uh(0.0), uhx(0.0), uhy(0.0);
            const double* val = &tab.val[std::size_t(q) * m];
            const double* gx = &tab.gpx[o][std::size_t(q) * m];
            const double* gy = &tab.gpy[o][std::size_t(q) * m];
            for (int a = 0; a < m; ++a) {
                Complex c = u_h[dofs[a]];
                uh += c * val[a];
                uhx += c * gx[a];
                uhy += c * gy[a];
            }
            num0 += w * std::norm(u - uh);
            den0 += w * std::norm(u);
            num1 += w * (std::norm(ux - uhx) + std::norm(uy - uhy));
            den1 += w * (std::norm(ux) + std::norm(uy));
        }
    }
    return {std::sqrt(num0 / den0), std::sqrt(num1 / den1)};
}

}  // namespace helmdd
