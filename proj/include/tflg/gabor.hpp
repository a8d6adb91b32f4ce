#pragma once
#include <vector>
#include <tflg/types.hpp>

namespace tflg {

/// Separable lattice aZ_L x bZ_L.
struct Lattice
{
    int L = 0;
    int a = 1;   // time step, divides L
    int b = 1;   // frequency step, divides L

    Lattice() = default;
    Lattice(int L, int a, int b);

    int time_count() const { return L / a; }
    int freq_count() const { return L / b; }
    int size() const { return time_count() * freq_count(); }
    double redundancy() const { return static_cast<double>(L) / (static_cast<double>(a) * b); }

    /// Point with linear index m * (L/b) + n is (m a, n b).
    TFPoint point(int index) const { return {(index / freq_count()) * a, (index % freq_count()) * b}; }
    std::vector<TFPoint> points() const;
    bool contains(TFPoint z) const;
};

/// G(g, Lambda): all lattice TF-shifts of a nonzero window.
class GaborSystem
{
    Signal _window;
    Lattice _lattice;

public:
    GaborSystem(Signal window, Lattice lattice);

    const Signal& window() const { return _window; }
    const Lattice& lattice() const { return _lattice; }
    int L() const { return _lattice.L; }
    int atom_count() const { return _lattice.size(); }
};

struct FrameBounds
{
    double lower = 0;   // A
    double upper = 0;   // B

    double condition() const { return upper / lower; }
};

/// Columns pi(z_k) g for the given points.
CMatrix atom_matrix(const Signal& g, const std::vector<TFPoint>& points);

/// sum_k a_k a_k^* over the atoms pi(z_k) g, accumulated in blocks.
CMatrix outer_sum(const Signal& g, const std::vector<TFPoint>& points);

/// c_lambda = <f, pi(lambda) g>, lattice order.
CVector analysis(const GaborSystem& sys, const Signal& f);

/// sum_lambda c_lambda pi(lambda) g.
Signal synthesis(const GaborSystem& sys, const CVector& c);

/// S = sum_lambda g_lambda g_lambda^*, dense L x L.
CMatrix frame_operator(const GaborSystem& sys);

/// Relative eigenvalue floor below which S is declared singular.
inline constexpr double not_a_frame_ratio = 1e-10;

/// Extreme eigenvalues of S; throws not_a_frame_error when singular.
FrameBounds frame_bounds(const GaborSystem& sys);
FrameBounds frame_bounds_of(const CMatrix& S);

/// Canonical dual window S^{-1} g.
Signal dual_window(const GaborSystem& sys);

/// Canonical tight window S^{-1/2} g; its system has frame operator I.
Signal tight_window(const GaborSystem& sys);

} // namespace tflg
