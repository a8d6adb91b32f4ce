#include <tflg/bounds.hpp>
#include <tflg/dsignal.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace tflg {

namespace {

constexpr double pi = std::numbers::pi;

void check_delta(double delta)
{
    if (!(delta > 0 && delta < 1)) throw precondition_error("decay bound: delta must lie in (0, 1)");
}

} // namespace

double gaussian_decay_bound(double dist, double delta, double f_norm)
{
    check_delta(delta);
    if (!(dist >= 0)) throw precondition_error("gaussian_decay_bound: negative distance");
    return f_norm / std::sqrt(2 * delta) * std::exp(-0.5 * pi * (1 - delta) * dist * dist);
}

double DecayProfile::constant() const
{
    if (!(s > 1)) throw precondition_error("DecayProfile: s must exceed 1");
    if (!(C > 0)) throw precondition_error("DecayProfile: C must be positive");
    return C * std::numbers::sqrt2 * pi / std::sqrt(s * std::sin(pi / s));
}

double poly_decay_bound(double dist, const DecayProfile& profile, double f_norm)
{
    check_delta(profile.delta);
    if (!(dist >= 0)) throw precondition_error("poly_decay_bound: negative distance");
    const double s = profile.s;
    return profile.constant() * std::pow(profile.delta, -1 / (2 * s)) * f_norm
           / (1 + (1 - profile.delta) * std::pow(dist, s));
}

double tail_sum_lhs(const std::vector<PlanePoint>& points, double R, double R_star)
{
    if (!(R_star > R && R >= 0)) throw precondition_error("tail_sum: expected R_star > R >= 0");
    double sum = 0;
    for (const auto& p : points) {
        const double r = std::hypot(p.x, p.y);
        if (r > R_star) sum += std::exp(-0.5 * pi * (r - R) * (r - R));
    }
    return sum;
}

double tail_sum_lhs(const Lattice& lattice, double R, double R_star)
{
    const double h = continuum_scale(lattice.L);
    std::vector<PlanePoint> pts;
    pts.reserve(static_cast<std::size_t>(lattice.size()));
    for (const auto& z : lattice.points()) {
        pts.push_back({h * symmetric_rep(z.x, lattice.L), h * symmetric_rep(z.w, lattice.L)});
    }
    return tail_sum_lhs(pts, R, R_star);
}

double TailBoundParams::C_Lambda() const
{
    if (N_Lambda < 1) throw precondition_error("TailBoundParams: N_Lambda must be at least 1");
    return 8 * std::exp(1.25 * pi) * N_Lambda;
}

double tail_sum_bound(const TailBoundParams& p)
{
    if (!(p.R_star > p.R && p.R >= 0)) throw precondition_error("tail_sum: expected R_star > R >= 0");
    return p.C_Lambda() * std::exp(-0.25 * pi * (p.R_star * p.R_star / 4 - p.R * p.R));
}

std::vector<PlanePoint> rect_lattice_points(double h1, double h2, double radius)
{
    if (!(h1 > 0 && h2 > 0)) throw precondition_error("rect_lattice_points: spacings must be positive");
    std::vector<PlanePoint> pts;
    const int m = static_cast<int>(std::ceil(radius / h1));
    const int n = static_cast<int>(std::ceil(radius / h2));
    for (int i = -m; i <= m; ++i) {
        for (int j = -n; j <= n; ++j) {
            const PlanePoint p{i * h1, j * h2};
            if (std::hypot(p.x, p.y) <= radius) pts.push_back(p);
        }
    }
    return pts;
}

int per_cell_max(double h1, double h2)
{
    if (!(h1 > 0 && h2 > 0)) throw precondition_error("per_cell_max: spacings must be positive");
    // multiples of h in a half-open unit interval: at most ceil(1/h)
    const auto per_axis = [](double h) { return static_cast<int>(std::ceil(1 / h - 1e-12)); };
    return per_axis(h1) * per_axis(h2);
}

double cover_radius(double R, double eps, double A, double C_Lambda, double inv_sq_eigs)
{
    if (!(R >= 0 && eps > 0 && A > 0 && C_Lambda > 0 && inv_sq_eigs > 0)) {
        throw precondition_error("cover_radius: parameters must be positive");
    }
    const double arg = eps * eps / (C_Lambda * inv_sq_eigs / A);
    const double radicand = 4 * R * R - (16 / pi) * std::log(arg);
    if (radicand < 0) throw vacuous_bound_error("cover_radius: bound vacuous (negative radicand)");
    return -R + std::sqrt(radicand);
}

double frame_local_bound(double A, double B, double eps_tilde, double c, double eps)
{
    if (!(A > 0 && A <= B)) throw precondition_error("frame_local_bound: expected 0 < A <= B");
    if (!(eps >= 0 && eps < 1 && c > 1)) throw precondition_error("frame_local_bound: expected 0 <= eps < 1 < c");
    if (!(eps_tilde >= 0)) throw precondition_error("frame_local_bound: negative eps_tilde");
    return (1 + std::sqrt(B / A)) * (std::sqrt(c * eps) + eps_tilde);
}

DecayCheck check_decay(const LocalizationOp& H, const Signal& f, const Signal& g,
                       const std::function<double(double)>& bound, double tolerance, double bin_width)
{
    const int L = static_cast<int>(f.size());
    if (H.matrix.rows() != L || g.size() != L) throw precondition_error("check_decay: length mismatch");
    if (!(bin_width > 0)) throw precondition_error("check_decay: bin width must be positive");

    const CMatrix V = stft(Signal(H.matrix * f), g);
    const auto dist = distance_field(H.region);
    const double h = continuum_scale(L);

    DecayCheck out;
    out.max_slack = -std::numeric_limits<double>::infinity();
    std::vector<DecayRow> bins;
    for (int x = 0; x < L; ++x) {
        for (int w = 0; w < L; ++w) {
            const double d = h * dist[static_cast<std::size_t>(x) * L + w];
            const double v = std::abs(V(x, w));
            const double slack = v - bound(d);
            out.max_slack = std::max(out.max_slack, slack);
            out.violations += slack > tolerance;

            const auto k = static_cast<std::size_t>(d / bin_width);
            if (k >= bins.size()) {
                const std::size_t old = bins.size();
                bins.resize(k + 1);
                for (std::size_t j = old; j <= k; ++j) {
                    bins[j].dist = static_cast<double>(j) * bin_width;
                    bins[j].value = -1;
                    bins[j].slack = -std::numeric_limits<double>::infinity();
                }
            }
            auto& row = bins[k];
            row.value = std::max(row.value, v);
            row.slack = std::max(row.slack, slack);
        }
    }
    for (auto& row : bins) {
        if (row.value < 0) continue;   // no grid point in this bin
        row.bound = bound(row.dist);
        out.rows.push_back(row);
    }
    return out;
}

DecayCheck check_gaussian_decay(const LocalizationOp& H, const Signal& f, double delta, double tolerance)
{
    check_delta(delta);
    const double fn = f.norm();
    return check_decay(H, f, H.window, [&](double d) { return gaussian_decay_bound(d, delta, fn); }, tolerance);
}

DecayCheck check_poly_decay(const LocalizationOp& H, const Signal& f, const Signal& g, const DecayProfile& profile,
                            double tolerance)
{
    const double fn = f.norm();
    return check_decay(H, f, g, [&](double d) { return poly_decay_bound(d, profile, fn); }, tolerance);
}

double fit_decay_constant(const Signal& phi, const Signal& g, double s)
{
    if (!(s > 1)) throw precondition_error("fit_decay_constant: s must exceed 1");
    const int L = static_cast<int>(phi.size());
    const CMatrix V = stft(g, phi);
    const double h = continuum_scale(L);
    double C = 0;
    for (int x = 0; x < L; ++x) {
        const double zx = h * symmetric_rep(x, L);
        for (int w = 0; w < L; ++w) {
            const double zw = h * symmetric_rep(w, L);
            const double r2 = zx * zx + zw * zw;
            C = std::max(C, std::abs(V(x, w)) * (1 + std::pow(r2, s)));
        }
    }
    return C;
}

} // namespace tflg
