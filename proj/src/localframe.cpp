#include <tflg/dsignal.hpp>
#include <tflg/localframe.hpp>
#include <tflg/numkernel.hpp>

#include <cmath>

namespace tflg {

namespace {

CMatrix shifted_atoms(const Signal& g, const std::vector<TFPoint>& points, TFPoint shift)
{
    CMatrix G = atom_matrix(g, points);
    if (shift.x == 0 && shift.w == 0) return G;
    for (Eigen::Index k = 0; k < G.cols(); ++k) G.col(k) = tf_shift(G.col(k), shift);
    return G;
}

void check_projector(const LocalSystem& ls, const EigenspaceProjector& P)
{
    if (P.L() != ls.base.L()) throw precondition_error("localframe: projector length mismatch");
    if (P.mode() != ProjectionMode::exact) throw precondition_error("localframe: projector must be exact");
}

} // namespace

CMatrix LocalSystem::analysis_atoms() const
{
    return shifted_atoms(base.window(), active, shift);
}

CMatrix LocalSystem::dual_atoms() const
{
    return shifted_atoms(dual_window, active, shift);
}

LocalSystem LocalSystem::with_cover(const Region& c) const
{
    if (c.L() != base.L()) throw precondition_error("restrict: cover size mismatch");
    LocalSystem out = *this;
    out.cover = c.translated(shift);
    out.active.clear();
    for (const auto& z : base.lattice().points()) {
        if (c.contains(z)) out.active.push_back(z);
    }
    return out;
}

LocalSystem LocalSystem::shifted(TFPoint nu) const
{
    LocalSystem out = *this;
    out.cover = cover.translated(nu);
    out.shift = {wrap(static_cast<long long>(shift.x) + nu.x, base.L()),
                 wrap(static_cast<long long>(shift.w) + nu.w, base.L())};
    return out;
}

LocalSystem restrict_to(const GaborSystem& sys, const Region& cover)
{
    LocalSystem ls{sys, Region(sys.L()), {}, dual_window(sys), frame_bounds(sys), {}};
    return ls.with_cover(cover);
}

CMatrix trunc_frame_op(const LocalSystem& ls, SynthesisMode mode)
{
    const int L = ls.base.L();
    if (ls.active.empty()) return CMatrix::Zero(L, L);
    const CMatrix G = ls.analysis_atoms();
    if (mode == SynthesisMode::tight) {
        if (std::abs(ls.bounds.lower - 1) > 1e-8 || std::abs(ls.bounds.upper - 1) > 1e-8) {
            throw precondition_error("trunc_frame_op: tight mode needs a tight window with bound 1");
        }
        CMatrix S = G * G.adjoint();
        return (S + S.adjoint()).eval() * 0.5;
    }
    return ls.dual_atoms() * G.adjoint();
}

double trunc_error(const LocalSystem& ls, const EigenspaceProjector& P)
{
    check_projector(ls, P);
    const CMatrix& U = P.basis();
    if (U.cols() == 0) return 0;
    // P - S P = (I - S) U U^*, and U has orthonormal columns
    CMatrix R = U;
    if (!ls.active.empty()) R.noalias() -= ls.dual_atoms() * (ls.analysis_atoms().adjoint() * U);
    return op_norm(R, 1e-10);
}

FrameBounds local_frame_bounds(const LocalSystem& ls, const EigenspaceProjector& P)
{
    check_projector(ls, P);
    if (P.N() == 0) throw precondition_error("local_frame_bounds: empty eigenspace");
    if (ls.active.empty()) throw precondition_error("local_frame_bounds: empty active set");
    const double eps = trunc_error(ls, P);
    if (!(eps < 1)) {
        throw precondition_error("local_frame_bounds: no frame guarantee, truncation error " + std::to_string(eps) + " >= 1");
    }
    const CMatrix C = ls.analysis_atoms().adjoint() * P.basis();   // <psi_k, g_lambda>^*
    const CMatrix M = C.adjoint() * C;
    const auto eig = herm_eig(M, 1e-10);
    return {eig.values(eig.values.size() - 1), eig.values(0)};
}

CVector local_analysis(const LocalSystem& ls, const Signal& f)
{
    if (f.size() != ls.base.L()) throw precondition_error("local_analysis: length mismatch");
    return ls.analysis_atoms().adjoint() * f;
}

double fit_rate(const std::vector<double>& errors, double floor)
{
    // skip the first step, which carries the transient from f_0 = 0
    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 1; k < errors.size(); ++k) {
        if (!(errors[k] > floor)) break;
        const double x = static_cast<double>(k);
        const double y = std::log(errors[k]);
        n += 1;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    if (n < 2) {
        if (errors.size() >= 2 && errors[0] > 0) return errors[1] / errors[0];
        return 0;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return std::exp(slope);
}

ReconResult iterative_reconstruct(const LocalSystem& ls, const EigenspaceProjector& P, const CVector& samples,
                                  int max_iter, double tol, const std::optional<Signal>& truth)
{
    check_projector(ls, P);
    if (samples.size() != ls.active_count()) throw precondition_error("iterative_reconstruct: sample count mismatch");
    if (ls.active.empty()) throw precondition_error("iterative_reconstruct: empty active set");
    if (truth && truth->size() != ls.base.L()) throw precondition_error("iterative_reconstruct: truth length mismatch");

    const CMatrix G = ls.analysis_atoms();
    const CMatrix D = ls.dual_atoms();
    const double ref = truth ? truth->norm() : samples.norm();
    if (!(ref > 0)) throw precondition_error("iterative_reconstruct: zero data");

    ReconResult out;
    out.f = Signal::Zero(ls.base.L());
    int increases = 0;
    for (int it = 0; it < max_iter; ++it) {
        const CVector r = samples - G.adjoint() * out.f;
        out.f += P.apply(Signal(D * r));
        const double err = truth ? (*truth - out.f).norm() / ref : (samples - G.adjoint() * out.f).norm() / ref;
        if (!out.trace.errors.empty() && err > out.trace.errors.back()) {
            ++increases;
        } else {
            increases = 0;
        }
        out.trace.errors.push_back(err);
        if (err <= tol) {
            out.trace.converged = true;
            break;
        }
        if (increases >= 3) {
            out.trace.rate = fit_rate(out.trace.errors);
            throw divergence_error("iterative_reconstruct: error grew on 3 consecutive steps", out.trace);
        }
    }
    out.trace.rate = fit_rate(out.trace.errors);
    return out;
}

} // namespace tflg
