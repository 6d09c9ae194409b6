#include "helmholtz_dd/analysis.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace helmdd {

namespace {

Eigen::MatrixXcd to_eigen(const DenseComplexMatrix& A) {
    Eigen::MatrixXcd out(A.nrows, A.ncols);
    for (int i = 0; i < A.nrows; ++i)
        for (int j = 0; j < A.ncols; ++j) out(i, j) = A(i, j);
    return out;
}

Eigen::SparseMatrix<double> real_sparse(const ComplexSparseMatrix& D) {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(D.nnz());
    for (int i = 0; i < D.nrows; ++i)
        for (int s = D.row_offsets[std::size_t(i)]; s < D.row_offsets[std::size_t(i) + 1]; ++s) {
            if (std::abs(D.values[std::size_t(s)].imag()) > 1e-12 * std::abs(D.values[std::size_t(s)]))
                throw std::invalid_argument("weight matrix must be real");
            trips.emplace_back(i, D.col_indices[std::size_t(s)], D.values[std::size_t(s)].real());
        }
    Eigen::SparseMatrix<double> out(D.nrows, D.ncols);
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

}  // namespace

std::vector<FovPoint> fov_boundary(const DenseComplexMatrix& T, int angles) {
    if (T.nrows != T.ncols) throw std::invalid_argument("fov_boundary: square matrix required");
    if (angles < 1) throw std::invalid_argument("fov_boundary: angles must be >= 1");
    Eigen::MatrixXcd A = to_eigen(T);
    std::vector<FovPoint> out;
    out.reserve(std::size_t(angles));
    for (int a = 0; a < angles; ++a) {
        double theta = 2.0 * std::numbers::pi * a / angles;
        Eigen::MatrixXcd R = std::polar(1.0, theta) * A;
        Eigen::MatrixXcd H = 0.5 * (R + R.adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(H);
        Eigen::VectorXcd v = eig.eigenvectors().col(A.rows() - 1);  // largest eigenvalue
        Complex z = (v.adjoint() * (A * v))(0, 0) / (v.adjoint() * v)(0, 0).real();
        out.push_back({theta, z});
    }
    return out;
}

DenseComplexMatrix weighted_transform(const DenseComplexMatrix& T, const ComplexSparseMatrix& D) {
    auto [sqrtD, invSqrtD] = spd_sqrt(D);
    return dense_matmul(dense_matmul(sqrtD, T), invSqrtD);
}

double fov_lower_bound_dense(const DenseComplexMatrix& Xw) {
    Eigen::MatrixXcd A = to_eigen(Xw);
    Eigen::MatrixXcd H = 0.5 * (A + A.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(H, Eigen::EigenvaluesOnly);
    return eig.eigenvalues()(0);
}

double dk_norm_dense(const DenseComplexMatrix& Xw) {
    Eigen::MatrixXcd A = to_eigen(Xw);
    return A.jacobiSvd().singularValues()(0);
}

LanczosResult lanczos_extreme(const LinearOperator& H, int n, const LanczosOptions& options) {
    if (n < 1) throw std::invalid_argument("lanczos_extreme: empty operator");
    int m_max = std::min(n, options.max_iterations);
    std::vector<std::vector<Complex>> V;
    std::vector<double> alpha, beta;

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Complex> v(static_cast<std::size_t>(n));
    for (auto& vi : v) vi = Complex(gauss(rng), gauss(rng));
    double nrm = 0.0;
    for (const auto& vi : v) nrm += std::norm(vi);
    nrm = std::sqrt(nrm);
    for (auto& vi : v) vi /= nrm;
    V.push_back(v);

    LanczosResult result;
    double prev_min = 0.0, prev_max = 0.0;
    for (int j = 0; j < m_max; ++j) {
        std::vector<Complex> w = H(V[std::size_t(j)]);
        // Full reorthogonalization, two passes; alpha_j from the first
        // projection onto v_j.
        double aj = 0.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i <= j; ++i) {
                Complex c(0.0);
                for (int t = 0; t < n; ++t)
                    c += std::conj(V[std::size_t(i)][std::size_t(t)]) * w[std::size_t(t)];
                if (pass == 0 && i == j) aj = c.real();
                for (int t = 0; t < n; ++t) w[std::size_t(t)] -= c * V[std::size_t(i)][std::size_t(t)];
            }
        }
        alpha.push_back(aj);
        double bj = 0.0;
        for (const auto& wi : w) bj += std::norm(wi);
        bj = std::sqrt(bj);
        result.iterations = j + 1;

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
        Eigen::MatrixXd Tm = Eigen::MatrixXd::Zero(j + 1, j + 1);
        for (int i = 0; i <= j; ++i) Tm(i, i) = alpha[std::size_t(i)];
        for (int i = 0; i < j; ++i) Tm(i, i + 1) = Tm(i + 1, i) = beta[std::size_t(i)];
        eig.compute(Tm, Eigen::EigenvaluesOnly);
        double lmin = eig.eigenvalues()(0), lmax = eig.eigenvalues()(j);
        double scale = std::max({std::abs(lmin), std::abs(lmax), 1e-300});
        bool settled = j > 2 && std::abs(lmin - prev_min) <= options.rel_tol * scale &&
                       std::abs(lmax - prev_max) <= options.rel_tol * scale;
        result.lambda_min = lmin;
        result.lambda_max = lmax;
        if (settled || bj <= 1e-12 * scale || j + 1 == m_max) break;
        prev_min = lmin;
        prev_max = lmax;
        beta.push_back(bj);
        for (auto& wi : w) wi /= bj;
        V.push_back(std::move(w));
    }
    return result;
}

PreconditionedBounds preconditioned_bounds(const OperatorPair& T, const ComplexSparseMatrix& D,
                                           const LanczosOptions& options) {
    if (T.n != D.nrows || D.nrows != D.ncols)
        throw std::invalid_argument("preconditioned_bounds: dimension mismatch");
    Eigen::SparseMatrix<double> Dr = real_sparse(D);
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(Dr);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("preconditioned_bounds: weight matrix not SPD");

    const auto& L = llt.matrixL();
    const auto& U = llt.matrixU();
    const auto& P = llt.permutationP();     // D = P^T L L^T P, G = L^T P
    int n = T.n;

    using Vec = Eigen::VectorXcd;
    auto apply_G = [&](const Vec& x) -> Vec { return U * (P * x); };
    auto apply_Ginv = [&](const Vec& x) -> Vec {
        Vec y = U.solve(x);
        return P.transpose() * y;
    };
    auto apply_Gt = [&](const Vec& x) -> Vec { return P.transpose() * (L * x).eval(); };
    auto apply_Gtinv = [&](const Vec& x) -> Vec { return L.solve((P * x).eval()); };

    auto wrap = [n](const LinearOperator& op, const Vec& x) -> Vec {
        std::vector<Complex> in(x.data(), x.data() + n);
        std::vector<Complex> out = op(in);
        return Eigen::Map<Vec>(out.data(), n);
    };
    // S = G T G^{-1}, unitarily equivalent to D^{1/2} T D^{-1/2}.
    auto apply_S = [&](const Vec& x) -> Vec { return apply_G(wrap(T.apply, apply_Ginv(x))); };
    auto apply_St = [&](const Vec& x) -> Vec {
        return apply_Gtinv(wrap(T.apply_adjoint, apply_Gt(x)));
    };

    auto to_op = [&](auto&& f) -> LinearOperator {
        return [&, f](std::span<const Complex> x) -> std::vector<Complex> {
            Vec v = Eigen::Map<const Vec>(x.data(), Eigen::Index(x.size()));
            Vec y = f(v);
            return std::vector<Complex>(y.data(), y.data() + y.size());
        };
    };

    LinearOperator herm = to_op([&](const Vec& x) -> Vec {
        Vec y = 0.5 * (apply_S(x) + apply_St(x));
        return y;
    });
    LinearOperator gram = to_op([&](const Vec& x) -> Vec { return apply_St(apply_S(x)); });

    PreconditionedBounds out;
    LanczosResult lo = lanczos_extreme(herm, n, options);
    LanczosResult hi = lanczos_extreme(gram, n, options);
    out.fov_lower_bound = lo.lambda_min;
    out.dk_norm = std::sqrt(std::max(0.0, hi.lambda_max));
    out.lanczos_iterations = lo.iterations + hi.iterations;
    return out;
}

int elman_predicted_iterations(double beta, double C, double tol) {
    if (!(beta > 0.0) || !(C > 0.0) || beta >= C)
        throw std::invalid_argument("elman_predicted_iterations: need 0 < beta < C");
    if (!(tol > 0.0) || tol >= 1.0)
        throw std::invalid_argument("elman_predicted_iterations: need 0 < tol < 1");
    double q = 1.0 - (beta / C) * (beta / C);
    return int(std::ceil(2.0 * std::log(tol) / std::log(q)));
}

}  // namespace helmdd
