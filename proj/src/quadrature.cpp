#include "helmholtz_dd/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace helmdd {

namespace {

// Gauss-Legendre nodes on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

}  // namespace

EdgeRule make_edge_rule(int npoints) {
    if (npoints < 1) throw std::invalid_argument("make_edge_rule: need >= 1 point");
    std::vector<double> x, w;
    gauss_legendre(npoints, x, w);
    EdgeRule rule;
    rule.points.resize(npoints);
    rule.weights.resize(npoints);
    for (int i = 0; i < npoints; ++i) {
        rule.points[i] = 0.5 * (x[i] + 1.0);
        rule.weights[i] = 0.5 * w[i];
    }
    return rule;
}

QuadratureRule make_triangle_rule(int exactness) {
    if (exactness < 0) throw std::invalid_argument("make_triangle_rule: exactness must be >= 0");
    // Duffy map x = u(1-v), y = u v with Jacobian u: a polynomial of total
    // degree d in (x,y) becomes degree <= d+1 in u and <= d in v, so n Gauss
    // points per direction suffice when 2n-1 >= d+1.
    int n = (exactness + 3) / 2;
    EdgeRule g = make_edge_rule(n);
    QuadratureRule rule;
    rule.exactness = exactness;
    rule.points.reserve(std::size_t(n) * n);
    rule.weights.reserve(std::size_t(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double u = g.points[i], v = g.points[j];
            double x = u * (1.0 - v), y = u * v;
            rule.points.push_back({1.0 - x - y, x, y});
            rule.weights.push_back(g.weights[i] * g.weights[j] * u);
        }
    }
    return rule;
}

}  // namespace helmdd
