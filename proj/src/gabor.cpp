#include <tflg/dsignal.hpp>
#include <tflg/gabor.hpp>
#include <tflg/numkernel.hpp>

namespace tflg {

Lattice::Lattice(int L_, int a_, int b_)
    : L(L_), a(a_), b(b_)
{
    if (L <= 0 || a <= 0 || b <= 0) {
        throw precondition_error("Lattice: L, a, b must be positive");
    }
    if (L % a != 0 || L % b != 0) {
        throw precondition_error("Lattice: a and b must divide L");
    }
}

std::vector<TFPoint> Lattice::points() const
{
    std::vector<TFPoint> out;
    out.reserve(size());
    for (int k = 0; k < size(); ++k) out.push_back(point(k));
    return out;
}

bool Lattice::contains(TFPoint z) const
{
    return wrap(z.x, L) % a == 0 && wrap(z.w, L) % b == 0;
}

GaborSystem::GaborSystem(Signal window, Lattice lattice)
    : _window(std::move(window)), _lattice(lattice)
{
    if (_window.size() != _lattice.L) {
        throw precondition_error("GaborSystem: window length does not match lattice");
    }
    if (!_window.allFinite() || !(_window.norm() > 0)) {
        throw precondition_error("GaborSystem: window must be finite and nonzero");
    }
}

CMatrix atom_matrix(const Signal& g, const std::vector<TFPoint>& points)
{
    CMatrix G(g.size(), static_cast<Eigen::Index>(points.size()));
    for (std::size_t k = 0; k < points.size(); ++k) {
        G.col(static_cast<Eigen::Index>(k)) = tf_shift(g, points[k]);
    }
    return G;
}

CMatrix outer_sum(const Signal& g, const std::vector<TFPoint>& points)
{
    constexpr std::size_t block = 512;
    const Eigen::Index L = g.size();
    CMatrix S = CMatrix::Zero(L, L);
    for (std::size_t start = 0; start < points.size(); start += block) {
        const std::size_t stop = std::min(points.size(), start + block);
        const std::vector<TFPoint> chunk(points.begin() + static_cast<std::ptrdiff_t>(start),
                                         points.begin() + static_cast<std::ptrdiff_t>(stop));
        const CMatrix G = atom_matrix(g, chunk);
        S.noalias() += G * G.adjoint();
    }
    return S;
}

CVector analysis(const GaborSystem& sys, const Signal& f)
{
    if (f.size() != sys.L()) throw precondition_error("analysis: length mismatch");
    return atom_matrix(sys.window(), sys.lattice().points()).adjoint() * f;
}

Signal synthesis(const GaborSystem& sys, const CVector& c)
{
    if (c.size() != sys.atom_count()) {
        throw precondition_error("synthesis: coefficient count does not match lattice size");
    }
    return atom_matrix(sys.window(), sys.lattice().points()) * c;
}

CMatrix frame_operator(const GaborSystem& sys)
{
    return outer_sum(sys.window(), sys.lattice().points());
}

FrameBounds frame_bounds_of(const CMatrix& S)
{
    const auto eig = herm_eig(S, 1e-10);
    const Eigen::Index n = eig.values.size();
    FrameBounds fb{eig.values(n - 1), eig.values(0)};
    if (!(fb.upper > 0) || fb.lower <= not_a_frame_ratio * fb.upper) {
        throw not_a_frame_error("not a frame: lower frame bound " + std::to_string(fb.lower) +
                                " vs upper " + std::to_string(fb.upper));
    }
    return fb;
}

FrameBounds frame_bounds(const GaborSystem& sys)
{
    if (sys.atom_count() < sys.L()) {
        throw not_a_frame_error("not a frame: fewer atoms than the signal dimension");
    }
    return frame_bounds_of(frame_operator(sys));
}

namespace {

// S is a frame operator here, so no eigenvalue needs clamping.
Signal apply_spectral(const GaborSystem& sys, spectral_fn fn)
{
    if (sys.atom_count() < sys.L()) {
        throw not_a_frame_error("not a frame: fewer atoms than the signal dimension");
    }
    const auto eig = herm_eig(frame_operator(sys), 1e-10);
    const Eigen::Index n = eig.values.size();
    if (!(eig.values(0) > 0) || eig.values(n - 1) <= not_a_frame_ratio * eig.values(0)) {
        throw not_a_frame_error("not a frame: frame operator is singular");
    }
    RVector d(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        d(k) = fn == spectral_fn::inverse ? 1 / eig.values(k) : 1 / std::sqrt(eig.values(k));
    }
    return eig.vectors * (d.asDiagonal() * (eig.vectors.adjoint() * sys.window()));
}

} // namespace

Signal dual_window(const GaborSystem& sys)
{
    return apply_spectral(sys, spectral_fn::inverse);
}

Signal tight_window(const GaborSystem& sys)
{
    return apply_spectral(sys, spectral_fn::inverse_sqrt);
}

} // namespace tflg
