#include "helmholtz_dd/krylov.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace helmdd {

Complex InnerProduct::dot(std::span<const Complex> x, std::span<const Complex> y) const {
    if (x.size() != y.size()) throw std::invalid_argument("inner product: size mismatch");
    if (weight == nullptr) {
        Complex s(0.0);
        for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(y[i]) * x[i];
        return s;
    }
    std::vector<Complex> wx = spmv(*weight, x);
    Complex s(0.0);
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(y[i]) * wx[i];
    return s;
}

double InnerProduct::norm(std::span<const Complex> x) const {
    double v = std::real(dot(x, x));
    return v > 0.0 ? std::sqrt(v) : 0.0;
}

std::vector<Complex> random_unit_circle(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Complex> x(static_cast<std::size_t>(n));
    constexpr double scale = 0x1p-53;
    for (auto& xi : x) {
        double u = double(rng() >> 11) * scale;
        xi = std::polar(1.0, 2.0 * std::numbers::pi * u);
    }
    return x;
}

GmresResult gmres(const LinearOperator& op, std::span<const Complex> b,
                  std::span<const Complex> x0, const InnerProduct& ip,
                  const GmresOptions& options) {
    const std::size_t n = b.size();
    if (x0.size() != n) throw std::invalid_argument("gmres: x0 size mismatch");
    GmresResult result;
    result.x.assign(x0.begin(), x0.end());

    std::vector<Complex> r = op(result.x);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    double beta = ip.norm(r);
    if (beta == 0.0) {
        result.converged = true;
        return result;
    }
    const double r0norm = beta;  // convergence is ||r_n||_ip / ||r_0||_ip <= tol

    std::vector<std::vector<Complex>> V;      // orthonormal basis
    std::vector<std::vector<Complex>> Hcols;  // column j holds h(0..j+1, j)
    std::vector<Complex> cs, g;               // Givens cosines; rotated rhs
    std::vector<double> sn;
    V.emplace_back(r);
    for (auto& vi : V[0]) vi /= beta;
    g.push_back(Complex(beta));

    auto form_solution = [&](int jdim) {
        // Back-substitute the rotated upper-triangular system.
        std::vector<Complex> y(static_cast<std::size_t>(jdim));
        for (int i = jdim - 1; i >= 0; --i) {
            Complex s = g[std::size_t(i)];
            for (int t = i + 1; t < jdim; ++t) s -= Hcols[std::size_t(t)][std::size_t(i)] * y[std::size_t(t)];
            y[std::size_t(i)] = s / Hcols[std::size_t(i)][std::size_t(i)];
        }
        std::vector<Complex> x(x0.begin(), x0.end());
        for (int t = 0; t < jdim; ++t)
            for (std::size_t i = 0; i < n; ++i) x[i] += y[std::size_t(t)] * V[std::size_t(t)][i];
        return x;
    };

    int j = 0;
    for (; j < options.maxit; ++j) {
        std::vector<Complex> w = op(V[std::size_t(j)]);
        std::vector<Complex> h(std::size_t(j) + 2, Complex(0.0));
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i <= j; ++i) {
                Complex hij = ip.dot(w, V[std::size_t(i)]);
                h[std::size_t(i)] += hij;
                for (std::size_t t = 0; t < n; ++t) w[t] -= hij * V[std::size_t(i)][t];
            }
        }
        double wnorm = ip.norm(w);
        h[std::size_t(j) + 1] = Complex(wnorm);

        // Apply accumulated Givens rotations, then a new one to zero h[j+1].
        for (int i = 0; i < j; ++i) {
            Complex t0 = cs[std::size_t(i)] * h[std::size_t(i)] + sn[std::size_t(i)] * h[std::size_t(i) + 1];
            h[std::size_t(i) + 1] = -sn[std::size_t(i)] * h[std::size_t(i)] + std::conj(cs[std::size_t(i)]) * h[std::size_t(i) + 1];
            h[std::size_t(i)] = t0;
        }
        double denom = std::sqrt(std::norm(h[std::size_t(j)]) + wnorm * wnorm);
        Complex c;
        double s;
        if (denom == 0.0) {
            c = Complex(1.0);
            s = 0.0;
        } else {
            c = std::conj(h[std::size_t(j)]) / denom;
            s = wnorm / denom;
        }
        cs.push_back(c);
        sn.push_back(s);
        h[std::size_t(j)] = c * h[std::size_t(j)] + s * h[std::size_t(j) + 1];
        h[std::size_t(j) + 1] = Complex(0.0);
        g.push_back(-s * g[std::size_t(j)]);
        g[std::size_t(j)] = c * g[std::size_t(j)];
        Hcols.push_back(std::move(h));

        double rel = std::abs(g[std::size_t(j) + 1]) / r0norm;
        result.residual_history.push_back(rel);
        if (options.record_residual_vectors) {
            std::vector<Complex> xj = form_solution(j + 1);
            std::vector<Complex> rj = op(xj);
            for (std::size_t i = 0; i < n; ++i) rj[i] = b[i] - rj[i];
            result.residual_vectors.push_back(std::move(rj));
        }
        bool breakdown = wnorm <= 1e-14 * beta;
        if (rel <= options.tol || breakdown) {
            result.converged = rel <= options.tol || breakdown;
            ++j;
            break;
        }
        for (auto& wi : w) wi /= wnorm;
        V.emplace_back(std::move(w));
    }
    result.iterations = j;
    result.x = form_solution(j);
    result.converged = result.converged ||
                       (!result.residual_history.empty() &&
                        result.residual_history.back() <= options.tol);
    return result;
}

}  // namespace helmdd
