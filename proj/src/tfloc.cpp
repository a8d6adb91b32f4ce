#include <tflg/dsignal.hpp>
#include <tflg/numkernel.hpp>
#include <tflg/tfloc.hpp>

namespace tflg {

LocalizationOp localization_op(const Signal& phi, const Region& omega)
{
    const int L = static_cast<int>(phi.size());
    if (omega.L() != L) throw precondition_error("localization_op: region/window size mismatch");
    if (std::abs(phi.norm() - 1) > 1e-8) throw precondition_error("localization_op: window must have unit norm");

    // row x of the mask, transformed: m_x(d) = sum_w chi(x, w) exp(2 pi i w d / L)
    RMatrix chi(L, L);
    for (int x = 0; x < L; ++x) {
        for (int w = 0; w < L; ++w) chi(x, w) = omega(x, w) ? 1.0 : 0.0;
    }
    const CMatrix m = chi.cast<Complex>() * dft_matrix<Real>(L, +1);

    // H(t, s) = (1/L) sum_x phi(t - x) conj(phi(s - x)) m_x(t - s)
    CMatrix H = CMatrix::Zero(L, L);
    CVector px(L), mx(L);
    for (int x = 0; x < L; ++x) {
        bool any = false;
        for (int w = 0; w < L && !any; ++w) any = omega(x, w);
        if (!any) continue;
        for (int t = 0; t < L; ++t) px(t) = phi(wrap(t - x, L));
        mx = m.row(x).transpose();
        for (int s = 0; s < L; ++s) {
            const Complex ps = std::conj(px(s));
            Complex* col = H.col(s).data();
            for (int t = 0; t < s; ++t) col[t] += px(t) * ps * mx(t - s + L);
            for (int t = s; t < L; ++t) col[t] += px(t) * ps * mx(t - s);
        }
    }
    H /= static_cast<Real>(L);
    H = (H + H.adjoint()).eval() * 0.5;
    return {phi, omega, std::move(H)};
}

int EigenSystem::count_above(double threshold) const
{
    int n = 0;
    for (Eigen::Index k = 0; k < values.size(); ++k) n += values(k) > threshold;
    return n;
}

int EigenSystem::count_at_least(double threshold) const
{
    int n = 0;
    for (Eigen::Index k = 0; k < values.size(); ++k) n += values(k) >= threshold;
    return n;
}

EigenSystem eigensystem(const LocalizationOp& H, double kernel_tol)
{
    auto eig = herm_eig(H.matrix, 1e-10);
    EigenSystem E;
    E.values = std::move(eig.values);
    E.vectors = std::move(eig.vectors);
    E.kernel_tol = kernel_tol;
    E.kernel_dim = E.size() - E.count_above(kernel_tol);
    return E;
}

double concentration(const LocalizationOp& H, const Signal& f)
{
    const double n2 = f.squaredNorm();
    if (!(n2 > 0)) throw precondition_error("concentration: zero signal");
    return f.dot(H.matrix * f).real() / n2;
}

ConcentrationCertificate concentration_certificate(const EigenSystem& E, const Signal& f, double eps)
{
    if (!(eps > 0 && eps < 1)) throw precondition_error("concentration_certificate: eps must lie in (0, 1)");
    if (f.size() != E.vectors.rows()) throw precondition_error("concentration_certificate: length mismatch");

    const CVector c = E.vectors.adjoint() * f;   // <f, psi_k>
    ConcentrationCertificate out;
    out.n0 = E.count_at_least(1 - eps);
    double kernel_energy = 0;
    for (int k = 0; k < E.size(); ++k) {
        const double a = E.values(k);
        const double e = std::norm(c(k));
        if (k < out.n0) {
            out.lhs += (a + eps - 1) * e;
        } else if (a > E.kernel_tol) {
            out.rhs += (1 - eps - a) * e;
        } else {
            kernel_energy += e;
        }
    }
    out.rhs += (1 - eps) * kernel_energy;
    out.concentrated = out.lhs >= out.rhs;
    return out;
}

EigenspaceProjector::EigenspaceProjector(const EigenSystem& E, int N, ProjectionMode mode)
    : _mode(mode)
{
    if (N < 0 || N > E.size()) throw precondition_error("EigenspaceProjector: N out of range");
    _basis = E.vectors.leftCols(N);
    _weights = E.values.head(N);
}

EigenspaceProjector::EigenspaceProjector(CMatrix basis, RVector weights, ProjectionMode mode)
    : _basis(std::move(basis)), _weights(std::move(weights)), _mode(mode)
{
    if (_weights.size() != _basis.cols()) throw precondition_error("EigenspaceProjector: weight count mismatch");
}

Signal EigenspaceProjector::apply(const Signal& f) const
{
    if (f.size() != _basis.rows()) throw precondition_error("project: length mismatch");
    CVector c = _basis.adjoint() * f;
    if (_mode == ProjectionMode::approximate) c = c.cwiseProduct(_weights.cast<Complex>());
    return _basis * c;
}

CMatrix EigenspaceProjector::apply(const CMatrix& F) const
{
    if (F.rows() != _basis.rows()) throw precondition_error("project: length mismatch");
    CMatrix C = _basis.adjoint() * F;
    if (_mode == ProjectionMode::approximate) C = _weights.cast<Complex>().asDiagonal() * C;
    return _basis * C;
}

CMatrix EigenspaceProjector::matrix() const
{
    if (_mode == ProjectionMode::approximate) {
        return _basis * _weights.cast<Complex>().asDiagonal() * _basis.adjoint();
    }
    return _basis * _basis.adjoint();
}

EigenspaceProjector EigenspaceProjector::shifted(TFPoint nu) const
{
    CMatrix b(_basis.rows(), _basis.cols());
    for (Eigen::Index k = 0; k < _basis.cols(); ++k) b.col(k) = tf_shift(_basis.col(k), nu);
    return {std::move(b), _weights, _mode};
}

Signal project(const EigenspaceProjector& P, const Signal& f)
{
    return P.apply(f);
}

} // namespace tflg
