#pragma once
#include <tflg/region.hpp>
#include <tflg/types.hpp>

namespace tflg {

/// H = V_phi^* chi_Omega V_phi, realized as (1/L) sum_{z in Omega} (pi(z)phi)(pi(z)phi)^*.
struct LocalizationOp
{
    Signal window;
    Region region;
    CMatrix matrix;
};

LocalizationOp localization_op(const Signal& phi, const Region& omega);

inline constexpr double default_kernel_tol = 1e-12;

/// Spectrum of a localization operator, eigenvalues non-increasing.
struct EigenSystem
{
    RVector values;
    CMatrix vectors;
    int kernel_dim = 0;     // #{alpha_k <= kernel_tol}
    double kernel_tol = default_kernel_tol;

    int size() const { return static_cast<int>(values.size()); }
    int count_above(double threshold) const;   // #{alpha_k > threshold}
    int count_at_least(double threshold) const; // #{alpha_k >= threshold}
    /// Number of eigenvectors outside the numerical kernel.
    int retained() const { return size() - kernel_dim; }
};

EigenSystem eigensystem(const LocalizationOp& H, double kernel_tol = default_kernel_tol);

/// <Hf, f> / ||f||^2.
double concentration(const LocalizationOp& H, const Signal& f);

/// Both sides of the eigen-expansion criterion for (eps, phi)-concentration.
struct ConcentrationCertificate
{
    double lhs = 0;
    double rhs = 0;
    int n0 = 0;              // #{alpha_k >= 1 - eps}
    bool concentrated = false;
};

ConcentrationCertificate concentration_certificate(const EigenSystem& E, const Signal& f, double eps);

enum class ProjectionMode
{
    exact,        // P_N
    approximate   // H_N, weights alpha_k
};

/// Projection onto (or alpha-weighted map into) the span of the top N eigenvectors.
class EigenspaceProjector
{
    CMatrix _basis;     // L x N, orthonormal columns
    RVector _weights;   // alpha_1..alpha_N
    ProjectionMode _mode = ProjectionMode::exact;

public:
    EigenspaceProjector() = default;
    EigenspaceProjector(const EigenSystem& E, int N, ProjectionMode mode = ProjectionMode::exact);
    EigenspaceProjector(CMatrix basis, RVector weights, ProjectionMode mode);

    int N() const { return static_cast<int>(_basis.cols()); }
    int L() const { return static_cast<int>(_basis.rows()); }
    ProjectionMode mode() const { return _mode; }
    const CMatrix& basis() const { return _basis; }
    const RVector& weights() const { return _weights; }

    Signal apply(const Signal& f) const;
    CMatrix apply(const CMatrix& F) const;   // column-wise
    CMatrix matrix() const;

    /// Same subspace moved by pi(nu): basis columns pi(nu) psi_k.
    EigenspaceProjector shifted(TFPoint nu) const;
};

Signal project(const EigenspaceProjector& P, const Signal& f);

} // namespace tflg
