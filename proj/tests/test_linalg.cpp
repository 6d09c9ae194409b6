#include "doctest.h"

#include <complex>
#include <random>
#include <vector>

#include "helmholtz_dd/linalg.hpp"

using namespace helmdd;
using namespace std::complex_literals;

namespace {

DenseComplexMatrix to_dense(const ComplexSparseMatrix& A) {
    DenseComplexMatrix D(A.nrows, A.ncols);
    for (int i = 0; i < A.nrows; ++i)
        for (int idx = A.row_offsets[i]; idx < A.row_offsets[i + 1]; ++idx)
            D(i, A.col_indices[idx]) = A.values[idx];
    return D;
}

ComplexSparseMatrix random_sparse(int n, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::tuple<int, int, Complex>> trip;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((rng() & 3) == 0) trip.emplace_back(i, j, Complex(u(rng), u(rng)));
    return ComplexSparseMatrix::from_triplets(n, n, std::move(trip));
}

}  // namespace

TEST_CASE("spmv identity and zero") {
    auto I = ComplexSparseMatrix::identity(3);
    std::vector<Complex> x{1.0, 1.0i, -1.0};
    auto y = spmv(I, x);
    CHECK(y[0] == 1.0);
    CHECK(y[1] == 1.0i);
    CHECK(y[2] == -1.0);

    auto Z = ComplexSparseMatrix::from_triplets(4, 4, {});
    auto z = spmv(Z, std::vector<Complex>(4, 1.0 + 2.0i));
    for (auto& v : z) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("spmv agrees with dense product") {
    std::mt19937 rng(7);
    auto A = random_sparse(5, rng);
    auto D = to_dense(A);
    std::vector<Complex> x(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : x) v = Complex(u(rng), u(rng));
    auto ys = spmv(A, x);
    auto yd = dense_matvec(D, x);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(ys[i] - yd[i]) < 1e-14);
}

TEST_CASE("sparse LU solves and detects singularity") {
    auto D2 = ComplexSparseMatrix::from_triplets(
        2, 2, {{0, 0, Complex(2.0)}, {1, 1, 1.0 + 1.0i}});
    auto f = factorize(D2);
    auto x = f.solve(std::vector<Complex>{2.0, 1.0 + 1.0i});
    CHECK(std::abs(x[0] - 1.0) < 1e-14);
    CHECK(std::abs(x[1] - 1.0) < 1e-14);

    auto zero1 = ComplexSparseMatrix::from_triplets(1, 1, {{0, 0, Complex(0.0)}});
    CHECK_THROWS_AS(factorize(zero1), SingularMatrixError);
}

TEST_CASE("sparse LU recovers a known solution") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int n = 20;
    std::vector<std::tuple<int, int, Complex>> trip;
    for (int i = 0; i < n; ++i) {
        trip.emplace_back(i, i, Complex(5.0, 1.0));  // diagonally dominant
        for (int j = 0; j < n; ++j)
            if (j != i && (rng() & 7) == 0) trip.emplace_back(i, j, Complex(u(rng), u(rng)));
    }
    auto A = ComplexSparseMatrix::from_triplets(n, n, std::move(trip));
    std::vector<Complex> xs(n);
    for (auto& v : xs) v = Complex(u(rng), u(rng));
    auto b = spmv(A, xs);
    auto x = factorize(A).solve(b);
    for (int i = 0; i < n; ++i) CHECK(std::abs(x[i] - xs[i]) < 1e-10);
}

TEST_CASE("adjoint solve matches the conjugate-transposed system") {
    std::mt19937 rng(13);
    auto A = random_sparse(6, rng);
    for (int i = 0; i < 6; ++i) {  // make it safely invertible
        auto d = A.coeff(i, i);
        A = csr_linear_combination(1.0, A, 1.0,
                                   ComplexSparseMatrix::from_triplets(6, 6, {{i, i, 4.0 - d}}));
    }
    std::vector<Complex> b(6, 1.0 + 0.5i);
    auto x = factorize(A).solve_adjoint(b);
    // check A^* x = b via the dense conjugate transpose
    auto D = to_dense(A);
    for (int i = 0; i < 6; ++i) {
        Complex s = 0.0;
        for (int j = 0; j < 6; ++j) s += std::conj(D(j, i)) * x[j];
        CHECK(std::abs(s - b[i]) < 1e-10);
    }
}

TEST_CASE("hermitian eigenvalues") {
    auto D3 = ComplexSparseMatrix::from_triplets(
        3, 3, {{0, 0, Complex(3.0)}, {1, 1, Complex(1.0)}, {2, 2, Complex(2.0)}});
    auto r = hermitian_eig(to_dense(D3));
    CHECK(r.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(r.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(r.eigenvalues[2] == doctest::Approx(3.0));

    DenseComplexMatrix F(2, 2);
    F(0, 1) = 1.0;
    F(1, 0) = 1.0;
    auto rf = hermitian_eig(F);
    CHECK(rf.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(rf.eigenvalues[1] == doctest::Approx(1.0));
}

TEST_CASE("hermitian eigenvalue sum equals trace") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseComplexMatrix H(10, 10);
    for (int i = 0; i < 10; ++i) {
        H(i, i) = u(rng);
        for (int j = i + 1; j < 10; ++j) {
            H(i, j) = Complex(u(rng), u(rng));
            H(j, i) = std::conj(H(i, j));
        }
    }
    auto r = hermitian_eig(H);
    double sum = 0.0, tr = 0.0;
    for (double l : r.eigenvalues) sum += l;
    for (int i = 0; i < 10; ++i) tr += H(i, i).real();
    CHECK(std::abs(sum - tr) < 1e-10);
}

TEST_CASE("SPD square root") {
    auto D = ComplexSparseMatrix::from_triplets(2, 2, {{0, 0, Complex(4.0)}, {1, 1, Complex(9.0)}});
    auto [h, hinv] = spd_sqrt(D);
    CHECK(std::abs(h(0, 0) - 2.0) < 1e-13);
    CHECK(std::abs(h(1, 1) - 3.0) < 1e-13);
    CHECK(std::abs(hinv(0, 0) - 0.5) < 1e-13);
    CHECK(std::abs(hinv(1, 1) - 1.0 / 3.0) < 1e-13);

    auto [ih, ihinv] = spd_sqrt(ComplexSparseMatrix::identity(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Complex want = (i == j) ? 1.0 : 0.0;
            CHECK(std::abs(ih(i, j) - want) < 1e-13);
            CHECK(std::abs(ihinv(i, j) - want) < 1e-13);
        }
}

TEST_CASE("SPD square root multiplies back") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int n = 8;
    DenseComplexMatrix B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) B(i, j) = u(rng);
    // D = B^T B + n I, real SPD
    std::vector<std::tuple<int, int, Complex>> trip;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Complex s = (i == j) ? Complex(double(n)) : 0.0;
            for (int l = 0; l < n; ++l) s += B(l, i) * B(l, j);
            trip.emplace_back(i, j, s);
        }
    auto D = ComplexSparseMatrix::from_triplets(n, n, std::move(trip));
    auto [h, hinv] = spd_sqrt(D);
    auto DD = dense_matmul(h, h);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) CHECK(std::abs(DD(i, j) - D.coeff(i, j)) < 1e-9);
    auto I = dense_matmul(h, hinv);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            CHECK(std::abs(I(i, j) - (i == j ? 1.0 : 0.0)) < 1e-9);
}
