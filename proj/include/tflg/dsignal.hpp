#pragma once
#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <string>
#include <tflg/errors.hpp>
#include <tflg/types.hpp>

namespace tflg {

/// Scalar real type of an Eigen expression.
template <class Derived>
using real_of = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

/**
 * Table r(k) = exp(sign * 2 pi i k / L), k = 0..L-1, built so that
 * r(L-k) == conj(r(k)) holds bitwise.
 */
template <class Real_>
cvec_type<Real_> roots_of_unity(int L, int sign)
{
    cvec_type<Real_> r(L);
    const Real_ two_pi = 2 * std::numbers::pi_v<Real_>;
    for (int k = 0; k <= L / 2; ++k) {
        const Real_ th = two_pi * static_cast<Real_>(k) / static_cast<Real_>(L);
        r(k) = {std::cos(th), sign * std::sin(th)};
        if (2 * k == L) r(k) = {-1, 0};   // sin(pi) is not 0 in floating point
        if (k > 0) r(L - k) = std::conj(r(k));
    }
    return r;
}

/// F(j, k) = exp(sign * 2 pi i j k / L).
template <class Real_>
cmat_type<Real_> dft_matrix(int L, int sign)
{
    const auto r = roots_of_unity<Real_>(L, sign);
    cmat_type<Real_> F(L, L);
    for (int k = 0; k < L; ++k) {
        for (int j = 0; j < L; ++j) {
            F(j, k) = r(static_cast<int>((static_cast<long long>(j) * k) % L));
        }
    }
    return F;
}

/// (pi(z) f)(t) = f(t - x) exp(2 pi i w t / L), indices mod L.
template <class Derived>
cvec_type<real_of<Derived>> tf_shift(const Eigen::MatrixBase<Derived>& f, TFPoint z)
{
    using real_t = real_of<Derived>;
    const int L = static_cast<int>(f.size());
    if (L == 0) return {};
    const auto r = roots_of_unity<real_t>(L, +1);
    const int x = wrap(z.x, L);
    const int w = wrap(z.w, L);
    cvec_type<real_t> out(L);
    for (int t = 0; t < L; ++t) {
        const std::complex<real_t> v = f(wrap(t - x, L));
        out(t) = w == 0 ? v : v * r(static_cast<int>((static_cast<long long>(w) * t) % L));
    }
    return out;
}

/**
 * Full-grid STFT: V(x, w) = sum_t f(t) conj(phi(t - x)) exp(-2 pi i w t / L).
 * Energy satisfies sum |V|^2 = L ||f||^2 ||phi||^2.
 */
template <class D1, class D2>
cmat_type<real_of<D1>> stft(const Eigen::MatrixBase<D1>& f, const Eigen::MatrixBase<D2>& phi)
{
    using real_t = real_of<D1>;
    const int L = static_cast<int>(f.size());
    if (phi.size() != L) throw precondition_error("stft: signal/window length mismatch");
    if (!(phi.norm() > 0)) throw precondition_error("stft: zero window");

    cmat_type<real_t> M(L, L);   // M(t, x) = f(t) conj(phi(t - x))
    for (int x = 0; x < L; ++x) {
        for (int t = 0; t < L; ++t) {
            M(t, x) = std::complex<real_t>(f(t)) * std::conj(std::complex<real_t>(phi(wrap(t - x, L))));
        }
    }
    return M.transpose() * dft_matrix<real_t>(L, -1);
}

/// Inverse of stft for a unit-norm window: f(t) = (1/L) sum_{x,w} F(x,w) (pi(x,w) phi)(t).
template <class D1, class D2>
cvec_type<real_of<D1>> istft(const Eigen::MatrixBase<D1>& F, const Eigen::MatrixBase<D2>& phi)
{
    using real_t = real_of<D1>;
    const int L = static_cast<int>(phi.size());
    if (F.rows() != L || F.cols() != L) throw precondition_error("istft: TF matrix must be L x L");
    if (std::abs(phi.norm() - 1) > 1e-8) throw precondition_error("istft: window must have unit norm");

    const cmat_type<real_t> G = F * dft_matrix<real_t>(L, +1);   // G(x, t)
    cvec_type<real_t> out = cvec_type<real_t>::Zero(L);
    for (int t = 0; t < L; ++t) {
        std::complex<real_t> acc = 0;
        for (int x = 0; x < L; ++x) acc += std::complex<real_t>(phi(wrap(t - x, L))) * G(x, t);
        out(t) = acc / static_cast<real_t>(L);
    }
    return out;
}

/**
 * Periodized Gaussian dilated by sqrt(L), unit l2 norm:
 * phi(t) ~ sum_{|j| <= 4} exp(-pi (t/sqrt(L) + j sqrt(L))^2).
 * Summation pairs +j/-j so phi(t) == phi(L - t) bitwise.
 */
template <class Real_ = Real>
cvec_type<Real_> gaussian_window(int L)
{
    if (L < 4) throw precondition_error("gaussian_window: L must be at least 4");
    const Real_ pi = std::numbers::pi_v<Real_>;
    const Real_ s = std::sqrt(static_cast<Real_>(L));
    auto term = [&](Real_ u, int j) {
        const Real_ v = u / s + j * s;
        return std::exp(-pi * v * v);
    };
    cvec_type<Real_> g(L);
    for (int t = 0; t < L; ++t) {
        const Real_ u = static_cast<Real_>(std::abs(symmetric_rep(t, L)));
        Real_ acc = term(u, 0);
        for (int j = 1; j <= 4; ++j) acc += term(u, j) + term(u, -j);
        g(t) = acc;
    }
    g /= g.norm();
    return g;
}

/// <a, b> = sum a(t) conj(b(t)).
template <class D1, class D2>
auto inner(const Eigen::MatrixBase<D1>& a, const Eigen::MatrixBase<D2>& b)
{
    return b.dot(a);
}

Signal read_signal_csv(const std::string& path);
void write_signal_csv(const std::string& path, const Signal& f);

} // namespace tflg
