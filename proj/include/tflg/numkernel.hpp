#pragma once
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>
#include <tflg/errors.hpp>
#include <tflg/types.hpp>

namespace tflg {

/// Eigendecomposition of a Hermitian matrix, eigenvalues non-increasing.
template <class Real_>
struct HermEig
{
    rvec_type<Real_> values;
    cmat_type<Real_> vectors;   // column k belongs to values(k)
};

template <class Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real
max_abs(const Eigen::MatrixBase<Derived>& A)
{
    return A.size() == 0 ? 0 : A.cwiseAbs().maxCoeff();
}

/// max |A - A^*| over entries.
template <class Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real
hermitian_defect(const Eigen::MatrixBase<Derived>& A)
{
    return max_abs(A - A.adjoint());
}

/**
 * Dense Hermitian eigensolver (Householder tridiagonalization + implicit QL).
 * Hermiticity is checked against tol relative to max(1, max|A_ij|).
 * Equal eigenvalues keep the solver's column order (stable sort).
 */
template <class Derived>
HermEig<typename Eigen::NumTraits<typename Derived::Scalar>::Real>
herm_eig(const Eigen::MatrixBase<Derived>& A,
         typename Eigen::NumTraits<typename Derived::Scalar>::Real tol = 1e-10)
{
    using real_t = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    using cmat_t = cmat_type<real_t>;

    if (A.rows() != A.cols()) {
        throw precondition_error("herm_eig: matrix is not square");
    }
    const Eigen::Index n = A.rows();
    if (n == 0) return {};

    cmat_t M = A.template cast<std::complex<real_t>>();
    if (!M.allFinite()) {
        throw precondition_error("herm_eig: non-finite entries");
    }
    const real_t scale = std::max<real_t>(1, max_abs(M));
    if (hermitian_defect(M) > tol * scale) {
        throw precondition_error("herm_eig: matrix is not Hermitian within tolerance");
    }
    M = (M + M.adjoint()).eval() * real_t(0.5);

    Eigen::SelfAdjointEigenSolver<cmat_t> solver(M);
    if (solver.info() != Eigen::Success) {
        throw numerical_error("herm_eig: eigensolver did not converge",
                              static_cast<double>(max_abs(M)));
    }

    const auto& ev = solver.eigenvalues();
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), Eigen::Index(0));
    std::stable_sort(order.begin(), order.end(),
        [&](Eigen::Index i, Eigen::Index j) { return ev(i) > ev(j); });

    HermEig<real_t> out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = ev(order[k]);
        out.vectors.col(k) = solver.eigenvectors().col(order[k]);
    }
    return out;
}

enum class spectral_fn
{
    inverse,
    inverse_sqrt,
    sqrt
};

template <class Real_>
struct MatFunResult
{
    cmat_type<Real_> value;
    Real_ floor = 0;
    bool clamped = false;   // an inversion hit the eigenvalue floor
};

/**
 * V fn(Lambda) V^* for Hermitian positive semi-definite A.
 * Inverse maps clamp eigenvalues from below at floor (default 1e-12 * lambda_max).
 */
template <class Derived>
MatFunResult<typename Eigen::NumTraits<typename Derived::Scalar>::Real>
matfun_psd(const Eigen::MatrixBase<Derived>& A,
           spectral_fn fn,
           std::optional<typename Eigen::NumTraits<typename Derived::Scalar>::Real> floor = std::nullopt,
           typename Eigen::NumTraits<typename Derived::Scalar>::Real tol = 1e-10)
{
    using real_t = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

    const auto eig = herm_eig(A, tol);
    const Eigen::Index n = eig.values.size();
    MatFunResult<real_t> out;
    if (n == 0) return out;

    const real_t lmax = eig.values(0);
    const real_t lmin = eig.values(n - 1);
    if (lmin < -tol * std::max<real_t>(1, std::abs(lmax))) {
        throw precondition_error("matfun_psd: matrix has a negative eigenvalue");
    }
    out.floor = floor ? *floor : real_t(1e-12) * std::max<real_t>(lmax, 0);
    if (fn != spectral_fn::sqrt && !(out.floor > 0)) {
        throw precondition_error("matfun_psd: inversion floor must be positive");
    }

    rvec_type<real_t> d(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const real_t lam = eig.values(k);
        switch (fn) {
            case spectral_fn::sqrt:
                d(k) = std::sqrt(std::max<real_t>(lam, 0));
                break;
            case spectral_fn::inverse:
            case spectral_fn::inverse_sqrt: {
                real_t v = lam;
                if (v < out.floor) {
                    v = out.floor;
                    out.clamped = true;
                }
                d(k) = fn == spectral_fn::inverse ? 1 / v : 1 / std::sqrt(v);
                break;
            }
        }
    }
    out.value = eig.vectors * d.asDiagonal() * eig.vectors.adjoint();
    out.value = (out.value + out.value.adjoint()).eval() * real_t(0.5);
    return out;
}

/**
 * Largest singular value by power iteration on A^* A.
 *
 * Stops when the eigen-residual of the Rayleigh quotient drops below
 * tol * rho, or when an Aitken estimate of the remaining gap in rho does.
 */
template <class Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real
op_norm(const Eigen::MatrixBase<Derived>& A,
        typename Eigen::NumTraits<typename Derived::Scalar>::Real tol = 1e-8,
        int max_iter = 50000)
{
    using real_t = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    using cvec_t = cvec_type<real_t>;
    using cmat_t = cmat_type<real_t>;

    const cmat_t M = A.template cast<std::complex<real_t>>();
    if (!M.allFinite()) {
        throw precondition_error("op_norm: non-finite entries");
    }
    if (M.size() == 0 || max_abs(M) == 0) return 0;

    const cmat_t B = M.adjoint() * M;
    const Eigen::Index n = B.rows();

    cvec_t x(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const real_t t = static_cast<real_t>(i);
        x(i) = {1 + real_t(0.5) * std::sin(real_t(1.3) * t + real_t(0.1)),
                real_t(0.5) * std::cos(real_t(0.7) * t)};
    }
    x.normalize();

    real_t rho = 0, rho_prev = 0, delta_prev = 0;
    real_t residual = 0;
    for (int it = 0; it < max_iter; ++it) {
        cvec_t y = B * x;
        rho = x.dot(y).real();
        residual = (y - rho * x).norm();
        if (rho <= 0) {
            // start vector annihilated: A^*A x = 0 but A != 0
            x = cvec_t::Ones(n).normalized();
            continue;
        }
        if (residual <= tol * rho) return std::sqrt(rho);

        const real_t delta = rho - rho_prev;
        if (it > 10 && delta >= 0 && delta_prev > 0) {
            const real_t q = delta / delta_prev;
            if (q < 1) {
                const real_t remaining = delta * q / (1 - q);
                if (remaining <= real_t(0.1) * tol * rho) return std::sqrt(rho);
            }
        }
        delta_prev = delta;
        rho_prev = rho;
        x = y / y.norm();
    }
    throw numerical_error("op_norm: power iteration exceeded iteration cap", residual);
}

} // namespace tflg
