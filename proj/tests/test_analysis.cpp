#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "helmholtz_dd/analysis.hpp"

using namespace helmdd;

namespace {

DenseComplexMatrix diag2(Complex a, Complex b) {
    DenseComplexMatrix T(2, 2);
    T(0, 0) = a;
    T(1, 1) = b;
    return T;
}

}  // namespace

TEST_CASE("field of values of a normal matrix is the eigenvalue hull") {
    // diag(1, i): the field of values is the segment from 1 to i.
    auto pts = fov_boundary(diag2(Complex(1.0, 0.0), Complex(0.0, 1.0)), 128);
    REQUIRE(pts.size() == 128);
    for (const auto& p : pts) {
        // every boundary point lies on the segment z = (1-t) + t*i, t in [0,1]
        double t = p.z.imag();
        CHECK(t > -1e-10);
        CHECK(t < 1.0 + 1e-10);
        CHECK(p.z.real() == doctest::Approx(1.0 - t).epsilon(1e-8));
    }
}

TEST_CASE("field of values of the identity is the single point 1") {
    auto pts = fov_boundary(DenseComplexMatrix::identity(5), 64);
    for (const auto& p : pts) CHECK(std::abs(p.z - Complex(1.0)) < 1e-12);
}

TEST_CASE("Monte Carlo Rayleigh quotients stay inside the computed boundary") {
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int n = 6;
    DenseComplexMatrix T(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) T(i, j) = Complex(u(rng), u(rng));

    auto pts = fov_boundary(T, 512);
    // support function of the boundary polygon: for each sample direction take
    // the max over boundary points, then check random Rayleigh quotients
    for (int trial = 0; trial < 100000 / n; ++trial) {
        std::vector<Complex> v((std::size_t(n)));
        double nrm2 = 0.0;
        for (auto& z : v) {
            z = Complex(u(rng), u(rng));
            nrm2 += std::norm(z);
        }
        auto Tv = dense_matvec(T, v);
        Complex q = 0.0;
        for (int i = 0; i < n; ++i) q += std::conj(v[std::size_t(i)]) * Tv[std::size_t(i)];
        q /= nrm2;
        // q must not exceed the support function in any of the sampled angles
        // the boundary point at angle theta maximizes Re(e^{i theta} z), i.e.
        // the support function in the direction (cos theta, -sin theta)
        for (int a = 0; a < 512; a += 32) {
            double c = std::cos(pts[std::size_t(a)].theta);
            double s = -std::sin(pts[std::size_t(a)].theta);
            double support = c * pts[std::size_t(a)].z.real() + s * pts[std::size_t(a)].z.imag();
            CHECK(c * q.real() + s * q.imag() <= support + 1e-6);
        }
    }
}

TEST_CASE("weighted transform with the identity weight is the identity map") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseComplexMatrix T(7, 7);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) T(i, j) = Complex(u(rng), u(rng));
    auto Xw = weighted_transform(T, ComplexSparseMatrix::identity(7));
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) CHECK(std::abs(Xw(i, j) - T(i, j)) < 1e-12);
}

TEST_CASE("weighted transform preserves the trace") {
    std::mt19937 rng(10);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    int n = 6;
    DenseComplexMatrix T(n, n);
    std::vector<std::tuple<int, int, Complex>> trip;
    for (int i = 0; i < n; ++i) {
        trip.emplace_back(i, i, Complex(u(rng)));
        for (int j = 0; j < n; ++j) T(i, j) = Complex(u(rng), u(rng));
    }
    auto D = ComplexSparseMatrix::from_triplets(n, n, std::move(trip));
    auto Xw = weighted_transform(T, D);
    Complex tr_T = 0.0, tr_X = 0.0;
    for (int i = 0; i < n; ++i) {
        tr_T += T(i, i);
        tr_X += Xw(i, i);
    }
    CHECK(std::abs(tr_T - tr_X) < 1e-10);
}

TEST_CASE("dense bounds of the identity are both one") {
    auto I = DenseComplexMatrix::identity(4);
    CHECK(fov_lower_bound_dense(I) == doctest::Approx(1.0));
    CHECK(dk_norm_dense(I) == doctest::Approx(1.0));
}

TEST_CASE("Lanczos agrees with the dense Hermitian eigensolver") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int n = 30;
    DenseComplexMatrix H(n, n);
    for (int i = 0; i < n; ++i) {
        H(i, i) = Complex(u(rng), 0.0);
        for (int j = i + 1; j < n; ++j) {
            H(i, j) = Complex(u(rng), u(rng));
            H(j, i) = std::conj(H(i, j));
        }
    }
    auto dense = hermitian_eig(H);
    LinearOperator op = [&](std::span<const Complex> v) { return dense_matvec(H, v); };
    auto lr = lanczos_extreme(op, n);
    CHECK(lr.lambda_min == doctest::Approx(dense.eigenvalues.front()).epsilon(1e-7));
    CHECK(lr.lambda_max == doctest::Approx(dense.eigenvalues.back()).epsilon(1e-7));
}

TEST_CASE("preconditioned bounds of a perfectly preconditioned operator") {
    // T = I: lower bound and norm both one, in any SPD weight.
    int n = 5;
    std::vector<std::tuple<int, int, Complex>> trip;
    for (int i = 0; i < n; ++i) {
        trip.emplace_back(i, i, Complex(2.0 + i));
        if (i + 1 < n) {
            trip.emplace_back(i, i + 1, Complex(-0.5));
            trip.emplace_back(i + 1, i, Complex(-0.5));
        }
    }
    auto D = ComplexSparseMatrix::from_triplets(n, n, std::move(trip));
    OperatorPair T;
    T.n = n;
    T.apply = [](std::span<const Complex> v) { return std::vector<Complex>(v.begin(), v.end()); };
    T.apply_adjoint = T.apply;
    auto b = preconditioned_bounds(T, D);
    CHECK(b.fov_lower_bound == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(b.dk_norm == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("preconditioned bounds match the dense similarity transform") {
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int n = 12;
    DenseComplexMatrix Tm(n, n);
    for (int i = 0; i < n; ++i) {
        Tm(i, i) = Complex(2.0, 0.0);
        for (int j = 0; j < n; ++j) Tm(i, j) += 0.3 * Complex(u(rng), u(rng));
    }
    std::vector<std::tuple<int, int, Complex>> trip;
    for (int i = 0; i < n; ++i) {
        trip.emplace_back(i, i, Complex(1.5));
        if (i + 1 < n) {
            trip.emplace_back(i, i + 1, Complex(0.4));
            trip.emplace_back(i + 1, i, Complex(0.4));
        }
    }
    auto D = ComplexSparseMatrix::from_triplets(n, n, std::move(trip));

    auto Xw = weighted_transform(Tm, D);
    double want_lb = fov_lower_bound_dense(Xw);
    double want_norm = dk_norm_dense(Xw);

    OperatorPair T;
    T.n = n;
    T.apply = [&](std::span<const Complex> v) { return dense_matvec(Tm, v); };
    DenseComplexMatrix Th(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Th(i, j) = std::conj(Tm(j, i));
    T.apply_adjoint = [&](std::span<const Complex> v) { return dense_matvec(Th, v); };

    auto b = preconditioned_bounds(T, D);
    CHECK(b.fov_lower_bound == doctest::Approx(want_lb).epsilon(1e-6));
    CHECK(b.dk_norm == doctest::Approx(want_norm).epsilon(1e-6));
}

TEST_CASE("Elman iteration estimate") {
    CHECK_THROWS_AS((void)elman_predicted_iterations(1.0, 1.0, 1e-6), std::invalid_argument);
    CHECK_THROWS_AS((void)elman_predicted_iterations(-0.1, 1.0, 1e-6), std::invalid_argument);
    CHECK_THROWS_AS((void)elman_predicted_iterations(0.5, 1.0, 2.0), std::invalid_argument);
    // beta/C = 0.5: rate per step sqrt(0.75); n = ceil(2 ln 1e-6 / ln 0.75) = 97
    int n = elman_predicted_iterations(0.5, 1.0, 1e-6);
    CHECK(n == int(std::ceil(2.0 * std::log(1e-6) / std::log(0.75))));
    CHECK(std::pow(0.75, n / 2.0) <= 1e-6);
    CHECK(std::pow(0.75, (n - 1) / 2.0) > 1e-6);
}
