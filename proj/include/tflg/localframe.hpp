#pragma once
#include <optional>
#include <string>
#include <vector>
#include <tflg/errors.hpp>
#include <tflg/gabor.hpp>
#include <tflg/region.hpp>
#include <tflg/tfloc.hpp>

namespace tflg {

/// Gabor system whose coefficients are kept only on lattice points inside a cover.
struct LocalSystem
{
    GaborSystem base;
    Region cover;
    std::vector<TFPoint> active;   // lattice points in the cover, lattice order
    Signal dual_window;            // canonical dual of the full system
    FrameBounds bounds;            // of the full system
    TFPoint shift{};               // atoms are pi(shift) pi(lambda) g

    int active_count() const { return static_cast<int>(active.size()); }

    /// Columns of analysis atoms g_lambda and of synthesis atoms (dual) over the active set.
    CMatrix analysis_atoms() const;
    CMatrix dual_atoms() const;

    /// Same full system and dual, new cover (given in unshifted coordinates).
    LocalSystem with_cover(const Region& cover) const;

    /// Everything moved by pi(nu): cover translated, atoms pre-multiplied.
    LocalSystem shifted(TFPoint nu) const;
};

/// Active set is the lattice points inside the cover; may be empty.
LocalSystem restrict_to(const GaborSystem& sys, const Region& cover);

enum class SynthesisMode
{
    tight,      // sum g_lambda g_lambda^*; the base must be a tight frame with bound 1
    dual_pair   // sum dual_lambda g_lambda^*
};

CMatrix trunc_frame_op(const LocalSystem& ls, SynthesisMode mode = SynthesisMode::dual_pair);

/// ||P_N - S_loc P_N||_op in dual-pair mode (P exact).
double trunc_error(const LocalSystem& ls, const EigenspaceProjector& P);

/// Extreme eigenvalues of M_jk = sum_active <psi_j, g_lambda><g_lambda, psi_k>; throws if trunc_error >= 1.
FrameBounds local_frame_bounds(const LocalSystem& ls, const EigenspaceProjector& P);

struct ReconTrace
{
    std::vector<double> errors;   // relative error (or residual) after each step, step 1 first
    bool converged = false;
    double rate = 0;              // fitted geometric ratio

    int iterations() const { return static_cast<int>(errors.size()); }
};

/// Raised when the error grows on 3 consecutive steps; carries the trace so far.
class divergence_error : public error
{
    ReconTrace _trace;

public:
    divergence_error(const std::string& msg, ReconTrace trace)
        : error(msg), _trace(std::move(trace))
    {}
    const ReconTrace& trace() const { return _trace; }
};

/// Least-squares slope of log(errors) over steps, restricted to values above `floor`.
double fit_rate(const std::vector<double>& errors, double floor = 1e-13);

struct ReconResult
{
    Signal f;
    ReconTrace trace;
};

/**
 * f_n = f_{n-1} + P Ũ*_loc (c - U_loc f_{n-1}), f_0 = 0.
 * With `truth` the trace holds ||f - f_n|| / ||f||, otherwise ||c - U_loc f_n|| / ||c||.
 */
ReconResult iterative_reconstruct(const LocalSystem& ls, const EigenspaceProjector& P, const CVector& samples,
                                  int max_iter = 5000, double tol = 1e-8,
                                  const std::optional<Signal>& truth = std::nullopt);

/// U_loc f = <f, g_lambda> over the active set.
CVector local_analysis(const LocalSystem& ls, const Signal& f);

} // namespace tflg
