#pragma once
#include <functional>
#include <vector>
#include <tflg/errors.hpp>
#include <tflg/gabor.hpp>
#include <tflg/tfloc.hpp>

namespace tflg {

/// The formula yields no finite cover radius for these parameters.
class vacuous_bound_error : public error
{
public:
    using error::error;
};

/// Grid coordinates times this factor give continuum TF-plane coordinates.
inline double continuum_scale(int L) { return 1.0 / std::sqrt(static_cast<double>(L)); }

/// (1/sqrt 2) delta^{-1/2} ||f|| exp(-(pi/2)(1 - delta) dist^2), Gaussian window.
double gaussian_decay_bound(double dist, double delta, double f_norm);

/// Window pair with |V_phi g(z)| <= C (1 + |z|^{2s})^{-1}.
struct DecayProfile
{
    double C = 1;
    double s = 2;       // > 1
    double delta = 0.5; // in (0, 1)

    /// C_s = C sqrt(2) pi / sqrt(s sin(pi/s)).
    double constant() const;
};

/// C_s delta^{-1/(2s)} ||f|| (1 + (1 - delta) dist^s)^{-1}.
double poly_decay_bound(double dist, const DecayProfile& profile, double f_norm);

struct PlanePoint
{
    double x = 0;
    double y = 0;
};

/// sum over points with |p| > R_star of exp(-(pi/2)(|p| - R)^2).
double tail_sum_lhs(const std::vector<PlanePoint>& points, double R, double R_star);

/// Same sum over a discrete lattice, symmetric representatives scaled to the continuum.
double tail_sum_lhs(const Lattice& lattice, double R, double R_star);

struct TailBoundParams
{
    double R = 0;
    double R_star = 1;
    int N_Lambda = 1;   // max number of points in any unit half-open square

    /// 8 exp(5 pi / 4) N_Lambda.
    double C_Lambda() const;
};

/// C_Lambda exp(-(pi/4)(R_star^2 / 4 - R^2)).
double tail_sum_bound(const TailBoundParams& p);

/// Points of h1 Z x h2 Z inside the closed disk of the given radius about the origin.
std::vector<PlanePoint> rect_lattice_points(double h1, double h2, double radius);

/// Max count of h1 Z x h2 Z points in a half-open unit square.
int per_cell_max(double h1, double h2);

/**
 * Cover radius R_eps = -R + sqrt(4R^2 - (16/pi) ln(eps^2 / (A^{-1} C_Lambda sum_k alpha_k^{-2}))).
 * Throws vacuous_bound_error when the radicand is negative.
 */
double cover_radius(double R, double eps, double A, double C_Lambda, double inv_sq_eigs);

/// (1 + sqrt(B/A)) (sqrt(c eps) + eps_tilde).
double frame_local_bound(double A, double B, double eps_tilde, double c, double eps);

/// One distance bin of an empirical decay check.
struct DecayRow
{
    double dist = 0;     // continuum distance (bin lower edge)
    double value = 0;    // max |<Hf, pi(z) g>| in the bin
    double bound = 0;    // bound at the bin's smallest distance
    double slack = 0;    // max (value - bound) over the bin's points
};

struct DecayCheck
{
    double max_slack = 0;           // max over the grid of value - bound
    std::size_t violations = 0;     // points with value > bound + tolerance
    std::vector<DecayRow> rows;
};

/**
 * Evaluates |<Hf, pi(z) g>| on the whole grid against the bound at dist(z, Omega),
 * distances scaled by continuum_scale(L). Pass g = H.window for the Gaussian check.
 */
DecayCheck check_decay(const LocalizationOp& H, const Signal& f, const Signal& g,
                       const std::function<double(double)>& bound, double tolerance = 0, double bin_width = 0.5);

DecayCheck check_gaussian_decay(const LocalizationOp& H, const Signal& f, double delta, double tolerance = 0);
DecayCheck check_poly_decay(const LocalizationOp& H, const Signal& f, const Signal& g, const DecayProfile& profile,
                            double tolerance = 0);

/// Smallest C with |V_phi g(z)| <= C (1 + |z|^{2s})^{-1} over the grid (continuum coordinates).
double fit_decay_constant(const Signal& phi, const Signal& g, double s);

} // namespace tflg
