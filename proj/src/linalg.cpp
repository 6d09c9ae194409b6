#include "helmholtz_dd/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cctype>
#include <cmath>

namespace helmdd {

namespace {

using EigenSparse = Eigen::SparseMatrix<Complex>;
using EigenDense = Eigen::MatrixXcd;

EigenSparse to_eigen(const ComplexSparseMatrix& A) {
    EigenSparse out(A.nrows, A.ncols);
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(A.nnz());
    for (int i = 0; i < A.nrows; ++i)
        for (int k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k)
            trips.emplace_back(i, A.col_indices[k], A.values[k]);
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

EigenDense to_eigen(const DenseComplexMatrix& A) {
    EigenDense out(A.nrows, A.ncols);
    for (int i = 0; i < A.nrows; ++i)
        for (int j = 0; j < A.ncols; ++j) out(i, j) = A(i, j);
    return out;
}

DenseComplexMatrix from_eigen(const EigenDense& A) {
    DenseComplexMatrix out(int(A.rows()), int(A.cols()));
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) out(i, j) = A(i, j);
    return out;
}

}  // namespace

ComplexSparseMatrix ComplexSparseMatrix::identity(int n) {
    ComplexSparseMatrix A;
    A.nrows = A.ncols = n;
    A.row_offsets.resize(n + 1);
    A.col_indices.resize(n);
    A.values.assign(n, Complex(1.0, 0.0));
    for (int i = 0; i <= n; ++i) A.row_offsets[i] = i;
    for (int i = 0; i < n; ++i) A.col_indices[i] = i;
    return A;
}

ComplexSparseMatrix ComplexSparseMatrix::from_triplets(
    int nrows, int ncols, std::vector<std::tuple<int, int, Complex>> triplets) {
    std::sort(triplets.begin(), triplets.end(), [](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
        return std::get<1>(a) < std::get<1>(b);
    });
    ComplexSparseMatrix A;
    A.nrows = nrows;
    A.ncols = ncols;
    A.row_offsets.assign(nrows + 1, 0);
    A.col_indices.reserve(triplets.size());
    A.values.reserve(triplets.size());
    for (std::size_t s = 0; s < triplets.size();) {
        auto [i, j, v] = triplets[s++];
        while (s < triplets.size() && std::get<0>(triplets[s]) == i &&
               std::get<1>(triplets[s]) == j)
            v += std::get<2>(triplets[s++]);
        A.col_indices.push_back(j);
        A.values.push_back(v);
        A.row_offsets[i + 1]++;
    }
    for (int i = 0; i < nrows; ++i) A.row_offsets[i + 1] += A.row_offsets[i];
    A.validate();
    return A;
}

Complex ComplexSparseMatrix::coeff(int i, int j) const {
    auto first = col_indices.begin() + row_offsets[i];
    auto last = col_indices.begin() + row_offsets[i + 1];
    auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return Complex(0.0);
    return values[std::size_t(it - col_indices.begin())];
}

void ComplexSparseMatrix::validate() const {
    if (int(row_offsets.size()) != nrows + 1)
        throw std::invalid_argument("csr: row_offsets length must be nrows+1");
    if (row_offsets.front() != 0 || row_offsets.back() != int(values.size()))
        throw std::invalid_argument("csr: row_offsets endpoints inconsistent with values");
    if (col_indices.size() != values.size())
        throw std::invalid_argument("csr: col_indices/values length mismatch");
    for (int i = 0; i < nrows; ++i) {
        if (row_offsets[i] > row_offsets[i + 1])
            throw std::invalid_argument("csr: row_offsets must be nondecreasing");
        for (int k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
            if (col_indices[k] < 0 || col_indices[k] >= ncols)
                throw std::invalid_argument("csr: column index out of range");
            if (k > row_offsets[i] && col_indices[k] <= col_indices[k - 1])
                throw std::invalid_argument("csr: columns must be strictly increasing per row");
        }
    }
}

std::vector<Complex> spmv(const ComplexSparseMatrix& A, std::span<const Complex> x) {
    if (int(x.size()) != A.ncols) throw std::invalid_argument("spmv: dimension mismatch");
    std::vector<Complex> y(A.nrows, Complex(0.0));
    for (int i = 0; i < A.nrows; ++i) {
        Complex acc(0.0);
        for (int k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k)
            acc += A.values[k] * x[A.col_indices[k]];
        y[i] = acc;
    }
    return y;
}

ComplexSparseMatrix csr_linear_combination(Complex alpha, const ComplexSparseMatrix& A,
                                           Complex beta, const ComplexSparseMatrix& B) {
    if (A.nrows != B.nrows || A.ncols != B.ncols)
        throw std::invalid_argument("csr_linear_combination: dimension mismatch");
    ComplexSparseMatrix C;
    C.nrows = A.nrows;
    C.ncols = A.ncols;
    C.row_offsets.assign(A.nrows + 1, 0);
    C.col_indices.reserve(std::max(A.nnz(), B.nnz()));
    C.values.reserve(std::max(A.nnz(), B.nnz()));
    for (int i = 0; i < A.nrows; ++i) {
        int ka = A.row_offsets[i], kae = A.row_offsets[i + 1];
        int kb = B.row_offsets[i], kbe = B.row_offsets[i + 1];
        while (ka < kae || kb < kbe) {
            int ja = ka < kae ? A.col_indices[ka] : A.ncols;
            int jb = kb < kbe ? B.col_indices[kb] : B.ncols;
            int j = std::min(ja, jb);
            Complex v(0.0);
            if (ja == j) v += alpha * A.values[ka++];
            if (jb == j) v += beta * B.values[kb++];
            C.col_indices.push_back(j);
            C.values.push_back(v);
        }
        C.row_offsets[i + 1] = int(C.values.size());
    }
    return C;
}

DenseComplexMatrix DenseComplexMatrix::identity(int n) {
    DenseComplexMatrix A(n, n);
    for (int i = 0; i < n; ++i) A(i, i) = Complex(1.0);
    return A;
}

DenseComplexMatrix dense_matmul(const DenseComplexMatrix& A, const DenseComplexMatrix& B) {
    if (A.ncols != B.nrows) throw std::invalid_argument("dense_matmul: dimension mismatch");
    return from_eigen(to_eigen(A) * to_eigen(B));
}

std::vector<Complex> dense_matvec(const DenseComplexMatrix& A, std::span<const Complex> x) {
    if (int(x.size()) != A.ncols) throw std::invalid_argument("dense_matvec: dimension mismatch");
    std::vector<Complex> y(A.nrows, Complex(0.0));
    for (int i = 0; i < A.nrows; ++i) {
        Complex acc(0.0);
        for (int j = 0; j < A.ncols; ++j) acc += A(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

struct SparseFactorization::Impl {
    mutable Eigen::SparseLU<EigenSparse, Eigen::COLAMDOrdering<int>> lu;
    int n = 0;
};

std::vector<Complex> SparseFactorization::solve(std::span<const Complex> b) const {
    if (int(b.size()) != impl_->n) throw std::invalid_argument("solve: dimension mismatch");
    Eigen::VectorXcd rhs = Eigen::Map<const Eigen::VectorXcd>(b.data(), b.size());
    Eigen::VectorXcd x = impl_->lu.solve(rhs);
    return std::vector<Complex>(x.data(), x.data() + x.size());
}

std::vector<Complex> SparseFactorization::solve_adjoint(std::span<const Complex> b) const {
    if (int(b.size()) != impl_->n) throw std::invalid_argument("solve_adjoint: dimension mismatch");
    Eigen::VectorXcd rhs = Eigen::Map<const Eigen::VectorXcd>(b.data(), b.size());
    Eigen::VectorXcd x = impl_->lu.adjoint().solve(rhs);
    return std::vector<Complex>(x.data(), x.data() + x.size());
}

int SparseFactorization::size() const { return impl_->n; }

SparseFactorization factorize(const ComplexSparseMatrix& A) {
    if (A.nrows != A.ncols) throw std::invalid_argument("factorize: matrix must be square");
    auto impl = std::make_shared<SparseFactorization::Impl>();
    impl->n = A.nrows;
    impl->lu.compute(to_eigen(A));
    if (impl->lu.info() != Eigen::Success) {
        // Eigen reports the failing column in its error message; recover it so
        // callers can identify the offending pivot row.
        std::string msg = impl->lu.lastErrorMessage();
        int pivot = -1;
        for (std::size_t s = 0; s < msg.size(); ++s) {
            if (std::isdigit(static_cast<unsigned char>(msg[s]))) {
                pivot = std::atoi(msg.c_str() + s);
                break;
            }
        }
        throw SingularMatrixError(pivot, "factorize: singular matrix at pivot row " +
                                             std::to_string(pivot) + " (" + msg + ")");
    }
    SparseFactorization f;
    f.impl_ = std::move(impl);
    return f;
}

HermitianEigResult hermitian_eig(const DenseComplexMatrix& H) {
    if (H.nrows != H.ncols) throw std::invalid_argument("hermitian_eig: matrix must be square");
    EigenDense M = to_eigen(H);
    double dev = (M - M.adjoint()).cwiseAbs().maxCoeff();
    double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    if (dev > 1e-12 * scale)
        throw std::invalid_argument("hermitian_eig: input is not Hermitian (max deviation " +
                                    std::to_string(dev) + ")");
    Eigen::SelfAdjointEigenSolver<EigenDense> es(M);
    if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_eig: did not converge");
    HermitianEigResult out;
    out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + H.nrows);
    out.eigenvectors = from_eigen(es.eigenvectors());
    return out;
}

std::pair<DenseComplexMatrix, DenseComplexMatrix> spd_sqrt(const ComplexSparseMatrix& D) {
    if (D.nrows != D.ncols) throw std::invalid_argument("spd_sqrt: matrix must be square");
    DenseComplexMatrix dense(D.nrows, D.ncols);
    for (int i = 0; i < D.nrows; ++i)
        for (int k = D.row_offsets[i]; k < D.row_offsets[i + 1]; ++k)
            dense(i, D.col_indices[k]) = D.values[k];
    auto eig = hermitian_eig(dense);
    for (double lambda : eig.eigenvalues)
        if (!(lambda > 0.0))
            throw std::invalid_argument("spd_sqrt: matrix is not positive definite (eigenvalue " +
                                        std::to_string(lambda) + ")");
    EigenDense V = to_eigen(eig.eigenvectors);
    Eigen::VectorXd sq(D.nrows), isq(D.nrows);
    for (int i = 0; i < D.nrows; ++i) {
        sq(i) = std::sqrt(eig.eigenvalues[i]);
        isq(i) = 1.0 / sq(i);
    }
    EigenDense half = V * sq.asDiagonal() * V.adjoint();
    EigenDense minus_half = V * isq.asDiagonal() * V.adjoint();
    return {from_eigen(half), from_eigen(minus_half)};
}

}  // namespace helmdd
