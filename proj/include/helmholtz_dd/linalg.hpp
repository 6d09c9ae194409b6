#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace helmdd {

using Complex = std::complex<double>;

/// Thrown by factorize() when the matrix is structurally or numerically
/// singular. `pivot` is the row/column at which elimination failed.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(int pivot, const std::string& what)
        : std::runtime_error(what), pivot_(pivot) {}
    int pivot() const { return pivot_; }

private:
    int pivot_;
};

/// Compressed sparse row storage of complex entries.
struct ComplexSparseMatrix {
    int nrows = 0;
    int ncols = 0;
    std::vector<int> row_offsets;   // length nrows+1, nondecreasing
    std::vector<int> col_indices;   // strictly increasing within each row
    std::vector<Complex> values;

    static ComplexSparseMatrix identity(int n);

    // Builds a CSR matrix from (row, col, value) triplets; duplicates are summed.
    static ComplexSparseMatrix from_triplets(
        int nrows, int ncols,
        std::vector<std::tuple<int, int, Complex>> triplets);

    Complex coeff(int i, int j) const;
    std::size_t nnz() const { return values.size(); }

    // Checks the CSR structural invariants; throws std::invalid_argument.
    void validate() const;
};

/// y = A x
std::vector<Complex> spmv(const ComplexSparseMatrix& A, std::span<const Complex> x);

/// C = alpha*A + beta*B (patterns merged).
ComplexSparseMatrix csr_linear_combination(Complex alpha, const ComplexSparseMatrix& A,
                                           Complex beta, const ComplexSparseMatrix& B);

/// Row-major dense complex matrix.
struct DenseComplexMatrix {
    int nrows = 0;
    int ncols = 0;
    std::vector<Complex> values;   // nrows * ncols, row-major

    DenseComplexMatrix() = default;
    DenseComplexMatrix(int nr, int nc) : nrows(nr), ncols(nc), values(std::size_t(nr) * nc) {}

    static DenseComplexMatrix identity(int n);

    Complex& operator()(int i, int j) { return values[std::size_t(i) * ncols + j]; }
    const Complex& operator()(int i, int j) const { return values[std::size_t(i) * ncols + j]; }
};

DenseComplexMatrix dense_matmul(const DenseComplexMatrix& A, const DenseComplexMatrix& B);
std::vector<Complex> dense_matvec(const DenseComplexMatrix& A, std::span<const Complex> x);

/// Opaque handle to a sparse LU factorization; solve() may be called
/// repeatedly (and concurrently) against the same factorized matrix.
class SparseFactorization {
public:
    std::vector<Complex> solve(std::span<const Complex> b) const;
    // Solves A^* x = b against the same factorization.
    std::vector<Complex> solve_adjoint(std::span<const Complex> b) const;
    int size() const;
    /// Identity of the underlying factorization; two handles sharing one
    /// factorization compare equal.
    const void* impl_id() const { return impl_.get(); }

private:
    friend SparseFactorization factorize(const ComplexSparseMatrix& A);
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

/// LU factorization with partial pivoting of a square sparse matrix.
/// Throws SingularMatrixError on a structurally or numerically singular input.
SparseFactorization factorize(const ComplexSparseMatrix& A);

struct HermitianEigResult {
    std::vector<double> eigenvalues;    // ascending
    DenseComplexMatrix eigenvectors;    // column j pairs with eigenvalues[j]
};

/// Eigen-decomposition of a Hermitian matrix (checked to tolerance 1e-12 on
/// the max off-symmetry; throws std::invalid_argument otherwise).
HermitianEigResult hermitian_eig(const DenseComplexMatrix& H);

/// Dense square root of a real symmetric positive definite sparse matrix.
/// Returns (D^{1/2}, D^{-1/2}); throws std::invalid_argument when an
/// eigenvalue is nonpositive.
std::pair<DenseComplexMatrix, DenseComplexMatrix> spd_sqrt(const ComplexSparseMatrix& D);

}  // namespace helmdd
