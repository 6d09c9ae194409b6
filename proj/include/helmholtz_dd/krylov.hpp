#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "helmholtz_dd/linalg.hpp"

namespace helmdd {

/// Inner product for GMRES: Euclidean when `weight` is null, otherwise the
/// weighted product <x, y> = y^* W x with W Hermitian positive definite
/// (here always D_k).
struct InnerProduct {
    const ComplexSparseMatrix* weight = nullptr;

    Complex dot(std::span<const Complex> x, std::span<const Complex> y) const;
    double norm(std::span<const Complex> x) const;
};

using LinearOperator = std::function<std::vector<Complex>(std::span<const Complex>)>;

struct GmresOptions {
    double tol = 1e-6;
    int maxit = 500;
    /// When set, the true residual vector b - op(x_j) is formed and stored at
    /// every iteration (expensive; meant for small diagnostic runs).
    bool record_residual_vectors = false;
};

struct GmresResult {
    std::vector<Complex> x;
    std::vector<double> residual_history;   // relative residuals, one per iteration
    int iterations = 0;
    bool converged = false;
    std::vector<std::vector<Complex>> residual_vectors;  // filled only on request
};

/// Full GMRES (no restarts) on op(x) = b from initial guess x0, modified
/// Gram-Schmidt with one reorthogonalization pass, Givens-rotation residual
/// updates. Convergence: ||b - op(x)||_ip <= tol * ||b||_ip.
GmresResult gmres(const LinearOperator& op, std::span<const Complex> b,
                  std::span<const Complex> x0, const InnerProduct& ip,
                  const GmresOptions& options = {});

/// Deterministic random initial guess: each entry exp(i theta) with theta
/// uniform on [0, 2 pi), drawn from a seeded mt19937_64.
std::vector<Complex> random_unit_circle(int n, std::uint64_t seed);

}  // namespace helmdd
