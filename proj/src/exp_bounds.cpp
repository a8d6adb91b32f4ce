#include <tflg/bounds.hpp>
#include <tflg/dsignal.hpp>
#include <tflg/expcli.hpp>
#include <tflg/localframe.hpp>
#include <tflg/random.hpp>

#include "params.hpp"

#include <cmath>

namespace tflg {

using detail::param;
using nlohmann::json;

namespace {

std::string fmt(double v) { return cell(v); }

void add_decay_rows(ResultTable& t, const std::string& family, const DecayCheck& d)
{
    for (const auto& r : d.rows) t.add({family, fmt(r.dist), fmt(r.value), fmt(r.bound), fmt(r.slack)});
}

/// Build passes unless slack exceeds `fail`; the detail says whether it stayed within `report`.
void check_decay_result(ExperimentResult& res, const std::string& id, const DecayCheck& d, double report, double fail)
{
    res.check(id, d.max_slack <= fail,
              "max slack " + fmt(d.max_slack) + (d.max_slack <= report ? " within " : " exceeds ") + fmt(report) + ", " +
                  cell(d.violations) + " grid points above bound + " + fmt(report) + " (fails only above " + fmt(fail) + ")");
}

} // namespace

ExperimentResult run_bounds(const ExperimentConfig& cfg)
{
    const json& p = cfg.params;
    const int L = cfg.L;
    ExperimentResult res;
    res.experiment = "bounds";
    Rng rng(cfg.seed);

    const auto c = param(p, "center", std::array<int, 2>{L / 2, L / 2});
    const TFPoint center{c[0], c[1]};
    const double radius = param(p, "radius", 80.0);
    const double delta = param(p, "delta", 0.5);
    const double report_slack = param(p, "decay_report_slack", 1e-6);
    const double fail_slack = param(p, "decay_fail_slack", 1e-3);
    const Lattice lattice = detail::lattice_param(L, p, "lattice", {20, 20});
    const double threshold = param(p, "n_threshold", 0.5);

    const Signal phi = gaussian_window(L);
    const Region omega = region_disk(L, center, radius);
    const auto H = localization_op(phi, omega);
    const double h = continuum_scale(L);

    // decay of V(Hf) away from the region
    ResultTable decay{"bounds_decay", {"family", "dist", "lhs", "bound", "slack"}, {}, {{"delta", fmt(delta)}}};
    const Signal f = rng.unit_signal(L);
    const auto dg = check_gaussian_decay(H, f, delta, report_slack);
    add_decay_rows(decay, "gaussian", dg);
    check_decay_result(res, "bounds.decay_gaussian", dg, report_slack, fail_slack);

    const json poly = param(p, "poly", json::object());
    const Signal g = tight_window(GaborSystem(phi, lattice));
    DecayProfile profile;
    profile.s = param(poly, "s", 2.0, "params.poly");
    profile.delta = param(poly, "delta", delta, "params.poly");
    profile.C = fit_decay_constant(phi, g, profile.s);
    const auto dp = check_poly_decay(H, f, g, profile, report_slack);
    add_decay_rows(decay, "polynomial", dp);
    decay.meta.emplace_back("poly_C", fmt(profile.C));
    decay.meta.emplace_back("poly_s", fmt(profile.s));
    check_decay_result(res, "bounds.decay_polynomial", dp, report_slack, fail_slack);

    // tail sums over lattices
    const json tail = param(p, "tail", json::object());
    const int configs = param(tail, "configs", 20, "params.tail");
    const auto spacing = param(tail, "spacing", std::array<double, 2>{0.4, 1.6}, "params.tail");
    const auto r_range = param(tail, "R", std::array<double, 2>{0.0, 3.0}, "params.tail");
    const auto gap = param(tail, "gap", std::array<double, 2>{0.5, 8.0}, "params.tail");
    ResultTable tails{"bounds_tail", {"config", "h1", "h2", "R", "R_star", "N_Lambda", "lhs", "bound", "slack"}, {}, {}};
    int tail_violations = 0;
    auto tail_row = [&](const std::string& name, double h1, double h2, double R, double Rs, double lhs) {
        const TailBoundParams tp{R, Rs, per_cell_max(h1, h2)};
        const double b = tail_sum_bound(tp);
        tail_violations += lhs > b;
        tails.add({name, fmt(h1), fmt(h2), fmt(R), fmt(Rs), cell(tp.N_Lambda), fmt(lhs), fmt(b), fmt(lhs - b)});
    };
    tail_row("unit", 1, 1, 2, 6, tail_sum_lhs(rect_lattice_points(1, 1, 6 + 10), 2, 6));
    for (int k = 0; k < configs; ++k) {
        const auto uni = [&](const std::array<double, 2>& r) { return r[0] + (r[1] - r[0]) * rng.uniform(); };
        const double h1 = uni(spacing), h2 = uni(spacing), R = uni(r_range), Rs = R + uni(gap);
        tail_row("random" + cell(k + 1), h1, h2, R, Rs, tail_sum_lhs(rect_lattice_points(h1, h2, Rs + 10), R, Rs));
    }
    {
        const double R = radius * h, Rs = R + 2;
        tail_row("grid", lattice.a * h, lattice.b * h, R, Rs, tail_sum_lhs(lattice, R, Rs));
    }
    res.check("bounds.tail_sum", tail_violations == 0,
              cell(tail_violations) + " violations over " + cell(static_cast<int>(tails.rows.size())) + " configurations");

    // cover radius from the closed-form bound, checked end to end
    const auto E = eigensystem(H);
    const int N = E.count_above(threshold);
    const EigenspaceProjector P(E, N);
    const GaborSystem sys(phi, lattice);
    const LocalSystem base = restrict_to(sys, Region(L));
    double inv_sq = 0;
    for (int k = 0; k < N; ++k) inv_sq += 1 / (E.values(k) * E.values(k));
    const double C_Lambda = TailBoundParams{0, 1, per_cell_max(lattice.a * h, lattice.b * h)}.C_Lambda();
    const auto eps_list = param(p, "cover_eps", std::vector<double>{0.5, 0.1, 0.01});
    ResultTable cover{"bounds_cover_radius", {"eps", "R_eps", "cover_radius", "active_points", "trunc_error", "slack"}, {},
                      {{"A", fmt(base.bounds.lower)}, {"B", fmt(base.bounds.upper)}, {"N", cell(N)}}};
    bool cover_ok = true;
    std::string cover_text;
    for (double eps : eps_list) {
        double Re = 0;
        try {
            Re = cover_radius(radius * h, eps, base.bounds.lower, C_Lambda, inv_sq);
        } catch (const vacuous_bound_error&) {
            cover.add({fmt(eps), "vacuous", "", "", "", ""});
            continue;
        }
        const double grid_radius = std::max(radius, (radius * h + Re) / h);
        const LocalSystem ls = base.with_cover(region_disk(L, center, grid_radius));
        const double err = trunc_error(ls, P);
        cover_ok = cover_ok && err <= eps;
        cover.add({fmt(eps), fmt(Re), fmt(grid_radius), cell(ls.active_count()), fmt(err), fmt(err - eps)});
        cover_text += " eps " + fmt(eps) + ": error " + fmt(err) + " at radius " + fmt(grid_radius) + ";";
    }
    res.check("bounds.cover_radius", cover_ok, "empirical error <= eps at the formula radius:" + cover_text);

    // truncation error of concentrated signals against the local frame bound
    const json fl = param(p, "frame_local", json::object());
    const double cc = param(fl, "c", 2.0, "params.frame_local");
    const auto fl_covers = param(fl, "covers", std::vector<double>{100, 120, 140}, "params.frame_local");
    const int fl_signals = param(fl, "signals", 10, "params.frame_local");
    const double tail_weight = param(fl, "tail_weight", 0.05, "params.frame_local");
    const int Nc = E.count_above((cc - 1) / cc);
    const EigenspaceProjector Pc(E, Nc);
    ResultTable local{"bounds_frame_local", {"cover_radius", "signal", "eps", "eps_tilde", "measured", "bound", "slack"}, {},
                      {{"c", fmt(cc)}, {"N", cell(Nc)}}};
    int local_violations = 0;
    std::vector<Signal> conc;
    for (int s = 0; s < fl_signals; ++s) {
        CVector coeff = rng.complex_normal_signal(L);
        for (int k = Nc; k < L; ++k) coeff(k) *= tail_weight;
        conc.push_back((E.vectors * coeff).normalized());
    }
    for (double r : fl_covers) {
        const LocalSystem ls = base.with_cover(region_disk(L, center, r));
        const double et = trunc_error(ls, Pc);
        const CMatrix S = trunc_frame_op(ls, SynthesisMode::dual_pair);
        for (int s = 0; s < fl_signals; ++s) {
            const Signal& x = conc[static_cast<std::size_t>(s)];
            const double eps = 1 - concentration(H, x);
            const double measured = (x - S * x).norm();
            const double b = frame_local_bound(base.bounds.lower, base.bounds.upper, et, cc, eps);
            local_violations += measured > b;
            local.add({fmt(r), cell(s + 1), fmt(eps), fmt(et), fmt(measured), fmt(b), fmt(measured - b)});
        }
    }
    res.check("bounds.frame_local", local_violations == 0,
              cell(local_violations) + " violations over " + cell(static_cast<int>(local.rows.size())) + " signal/cover pairs");

    res.tables = {decay, tails, cover, local};
    res.masks.emplace_back("bounds_region", omega);
    return res;
}

} // namespace tflg
