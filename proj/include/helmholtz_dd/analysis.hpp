#pragma once

#include <cstdint>
#include <vector>

#include "helmholtz_dd/krylov.hpp"
#include "helmholtz_dd/linalg.hpp"

namespace helmdd {

struct FovPoint {
    double theta = 0.0;
    Complex z{0.0, 0.0};
};

/// Boundary of the field of values of a dense matrix by the support-function
/// method: for each angle, the extreme eigenvector of the Hermitian part of
/// e^{i theta} T gives a boundary point as its Rayleigh quotient with T.
std::vector<FovPoint> fov_boundary(const DenseComplexMatrix& T, int angles);

/// Dense similarity transform D^{1/2} T D^{-1/2} with D symmetric positive
/// definite (small problems only).
DenseComplexMatrix weighted_transform(const DenseComplexMatrix& T, const ComplexSparseMatrix& D);

/// Raw smallest eigenvalue of the Hermitian part (Xw + Xw^*)/2; the certified
/// distance-to-origin bound is max(value, 0).
double fov_lower_bound_dense(const DenseComplexMatrix& Xw);

/// Largest singular value of Xw (dense).
double dk_norm_dense(const DenseComplexMatrix& Xw);

/// A linear operator together with its adjoint, both in the original
/// (unweighted) coordinates.
struct OperatorPair {
    int n = 0;
    LinearOperator apply;
    LinearOperator apply_adjoint;
};

struct LanczosOptions {
    int max_iterations = 400;
    double rel_tol = 1e-9;
    std::uint64_t seed = 20240601;
};

struct LanczosResult {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    int iterations = 0;
};

/// Extreme eigenvalues of a Hermitian operator by Lanczos with full
/// reorthogonalization.
LanczosResult lanczos_extreme(const LinearOperator& H, int n, const LanczosOptions& options = {});

struct PreconditionedBounds {
    /// Smallest eigenvalue of the Hermitian part of D^{1/2} T D^{-1/2};
    /// the distance of the weighted field of values from the origin when
    /// positive, a certificate that the field of values straddles zero when
    /// negative.
    double fov_lower_bound = 0.0;
    /// Largest singular value of D^{1/2} T D^{-1/2} (the weighted operator norm).
    double dk_norm = 0.0;
    int lanczos_iterations = 0;
};

/// Bounds of the D-weighted operator via the sparse Cholesky similarity
/// G = L^T P with G^* G = D: the Hermitian-part spectrum and singular values
/// of G T G^{-1} equal those of D^{1/2} T D^{-1/2}. Matrix-free.
PreconditionedBounds preconditioned_bounds(const OperatorPair& T, const ComplexSparseMatrix& D,
                                           const LanczosOptions& options = {});

/// Elman-type iteration estimate: smallest n with
/// (1 - (beta/C)^2)^{n/2} <= tol, i.e. n = ceil(2 ln tol / ln(1-(beta/C)^2)).
int elman_predicted_iterations(double beta, double C, double tol);

}  // namespace helmdd
