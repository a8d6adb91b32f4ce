#include <tflg/dsignal.hpp>
#include <tflg/expcli.hpp>
#include <tflg/localframe.hpp>
#include <tflg/quilt.hpp>
#include <tflg/random.hpp>
#include <tflg/tfloc.hpp>

#include "params.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

namespace tflg {

using detail::param;
using nlohmann::json;

namespace {

class Stopwatch
{
    std::chrono::steady_clock::time_point _start = std::chrono::steady_clock::now();

public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - _start).count();
    }
};

std::string fmt(double v) { return cell(v); }

std::string join(const std::vector<std::string>& parts, const char* sep = "/")
{
    std::string out;
    for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? sep : "") + parts[k];
    return out;
}

Boundary boundary_param(const json& p, const std::string& key)
{
    const auto b = param(p, key, std::string("strict"));
    if (b == "strict") return Boundary::strict;
    if (b == "closed") return Boundary::closed;
    throw config_error("params." + key + ": strict | closed");
}

Signal random_in_span(const CMatrix& U, Rng& rng)
{
    return (U * rng.complex_normal_signal(static_cast<int>(U.cols()))).normalized();
}

} // namespace

// ---------------------------------------------------------------------------

ExperimentResult run_exp1(const ExperimentConfig& cfg)
{
    const json& p = cfg.params;
    const int L = cfg.L;
    ExperimentResult res;
    res.experiment = "exp1";

    const auto c = param(p, "center", std::array<int, 2>{L / 2, L / 2});
    const TFPoint center{c[0], c[1]};
    const double radius = param(p, "radius", 80.0);
    const auto covers = param(p, "covers", std::vector<double>{80, 100, 120, 140});
    const Boundary boundary = boundary_param(p, "boundary");
    const Lattice lattice = detail::lattice_param(L, p, "lattice", {20, 20});
    const double threshold = param(p, "n_threshold", 0.5);
    const json recon = param(p, "recon", json::object());
    const double tol = param(recon, "tol", 1e-8, "params.recon");
    const int max_iter = param(recon, "max_iter", 5000, "params.recon");
    const double rate_slack = param(recon, "rate_slack", 0.05, "params.recon");
    const auto expected = param(p, "expected_counts", std::vector<std::array<double, 2>>{});
    const auto ranges = param(p, "count_ranges", std::vector<std::array<double, 3>>{});
    const auto frame_covers = param(p, "frame_bound_covers", std::vector<double>{});
    const double largest_max = param(p, "largest_cover_error_max", 0.01);
    const double shift_tol = param(p, "shift_tol", 1e-8);
    const auto reference = param(p, "reference_errors", std::vector<std::array<double, 2>>{});
    const double reference_decades = param(p, "reference_decades", 1.0);
    if (covers.empty()) throw config_error("params.covers: must not be empty");
    Rng rng(cfg.seed);

    // lattice counts, timed on their own
    const Stopwatch count_clock;
    std::vector<int> counts;
    for (double r : covers) {
        const Region cover = region_disk(L, center, r, boundary);
        int n = 0;
        for (const auto& z : lattice.points()) n += cover.contains(z);
        counts.push_back(n);
    }
    const double count_seconds = count_clock.seconds();

    const Stopwatch error_clock;
    const Signal phi = gaussian_window(L);
    const Region omega = region_disk(L, center, radius, boundary);
    const auto H = localization_op(phi, omega);
    const auto E = eigensystem(H);
    const int N = E.count_above(threshold);
    if (N == 0) throw config_error("params.n_threshold: eigenspace is empty");
    const EigenspaceProjector P(E, N);

    const GaborSystem sys(detail::window_param(lattice, param(p, "window", json::object()), cfg.base_dir, "params.window"),
                          lattice);
    const LocalSystem base = restrict_to(sys, Region(L));

    std::vector<LocalSystem> locals;
    std::vector<double> errs;
    for (double r : covers) {
        locals.push_back(base.with_cover(region_disk(L, center, r, boundary)));
        errs.push_back(trunc_error(locals.back(), P));
    }
    const double error_seconds = error_clock.seconds();

    ResultTable eig{"exp1_eigenvalues", {"k", "alpha"}, {}, {}};
    for (int k = 0; k < E.size(); ++k) eig.add({cell(k + 1), fmt(E.values(k))});

    // reconstruction of one random f in V_N from its samples on each cover
    const Stopwatch recon_clock;
    const Signal f = random_in_span(P.basis(), rng);
    ResultTable table{"exp1_counts_and_errors",
                      {"cover_radius", "active_points", "trunc_error", "frame_lower", "frame_upper", "guaranteed_lower",
                       "recon_iterations", "recon_rate", "recon_final_error"},
                      {}, {{"N", cell(N)}, {"region_radius", fmt(radius)}}};
    ResultTable traces{"exp1_recon_convergence", {"cover_radius", "iteration", "rel_error"}, {}, {}};
    std::vector<ReconTrace> recon_traces;
    std::vector<FrameBounds> fbs;
    for (std::size_t k = 0; k < covers.size(); ++k) {
        const auto& ls = locals[k];
        ReconTrace tr;
        try {
            tr = iterative_reconstruct(ls, P, local_analysis(ls, f), max_iter, tol, f).trace;
        } catch (const divergence_error& e) {
            tr = e.trace();
        }
        recon_traces.push_back(tr);
        FrameBounds fb{std::nan(""), std::nan("")};
        if (errs[k] < 1 && ls.active_count() > 0) fb = local_frame_bounds(ls, P);
        fbs.push_back(fb);
        const double guaranteed = base.bounds.lower * (1 - errs[k]) * (1 - errs[k]);
        table.add({fmt(covers[k]), cell(ls.active_count()), fmt(errs[k]), fmt(fb.lower), fmt(fb.upper), fmt(guaranteed),
                   cell(tr.iterations()), fmt(tr.rate), fmt(tr.errors.empty() ? 1.0 : tr.errors.back())});
        for (int it = 0; it < tr.iterations(); ++it) traces.add({fmt(covers[k]), cell(it + 1), fmt(tr.errors[it])});
    }
    const double recon_seconds = recon_clock.seconds();

    // counts
    for (const auto& [r, n] : expected) {
        const auto it = std::find(covers.begin(), covers.end(), r);
        if (it == covers.end()) throw config_error("params.expected_counts: radius " + fmt(r) + " is not in covers");
        const int got = counts[static_cast<std::size_t>(it - covers.begin())];
        res.check("exp1.count_r" + fmt(r), got == static_cast<int>(n),
                  "radius " + fmt(r) + ": " + cell(got) + " active points, expected " + fmt(n));
    }
    for (const auto& [r, lo, hi] : ranges) {
        const auto it = std::find(covers.begin(), covers.end(), r);
        if (it == covers.end()) throw config_error("params.count_ranges: radius " + fmt(r) + " is not in covers");
        const int got = counts[static_cast<std::size_t>(it - covers.begin())];
        res.check("exp1.count_range_r" + fmt(r), got >= lo && got <= hi,
                  "radius " + fmt(r) + ": " + cell(got) + " active points, accepted range [" + fmt(lo) + ", " + fmt(hi) + "]");
    }
    res.check("exp1.count_runtime", count_seconds < 1.0, "lattice counting took " + fmt(count_seconds) + " s (< 1 s)");

    // truncation error trend
    bool decreasing = true;
    std::vector<std::string> err_text;
    for (std::size_t k = 0; k < errs.size(); ++k) {
        err_text.push_back(fmt(errs[k]));
        if (k > 0 && !(errs[k] < errs[k - 1])) decreasing = false;
    }
    res.check("exp1.trunc_error_decreasing", decreasing, "errors over covers: " + join(err_text));
    res.check("exp1.trunc_error_largest", errs.back() < largest_max,
              "error at cover " + fmt(covers.back()) + " = " + fmt(errs.back()) + " (< " + fmt(largest_max) + ")");
    if (!reference.empty()) {
        bool close = true;
        std::string text;
        for (const auto& [r, ref] : reference) {
            const auto it = std::find(covers.begin(), covers.end(), r);
            if (it == covers.end()) throw config_error("params.reference_errors: radius " + fmt(r) + " is not in covers");
            const double got = errs[static_cast<std::size_t>(it - covers.begin())];
            const double decades = std::abs(std::log10(got / ref));
            close = close && decades <= reference_decades;
            text += " r" + fmt(r) + " " + fmt(got) + " vs " + fmt(ref);
        }
        res.check("exp1.reference_magnitude", close, "within " + fmt(reference_decades) + " decade(s) of reference:" + text);
    }
    res.check("exp1.trunc_error_runtime", error_seconds < 120,
              "eigendecomposition and operator norms took " + fmt(error_seconds) + " s (< 120 s)");

    // reconstruction
    bool all_converged = true, rates_ok = true, budget_ok = true, fewer = true;
    std::vector<std::string> iters;
    for (std::size_t k = 0; k < covers.size(); ++k) {
        const auto& tr = recon_traces[k];
        iters.push_back(cell(tr.iterations()));
        all_converged = all_converged && tr.converged && tr.errors.back() < tol;
        if (errs[k] < 1) {
            rates_ok = rates_ok && tr.rate <= errs[k] + rate_slack;
            if (errs[k] > 0) {
                const int budget = static_cast<int>(std::ceil(std::log(tol) / std::log(errs[k]))) + 5;
                budget_ok = budget_ok && tr.iterations() <= std::max(budget, 1);
            }
        }
        if (k > 0 && !(tr.iterations() < recon_traces[k - 1].iterations())) fewer = false;
    }
    res.check("exp1.recon_converged", all_converged, "final relative error below " + fmt(tol) + " on every cover");
    std::vector<std::string> rate_text;
    for (std::size_t k = 0; k < covers.size(); ++k) rate_text.push_back(fmt(recon_traces[k].rate) + "<=" + fmt(errs[k] + rate_slack));
    res.check("exp1.recon_rate", rates_ok, "fitted rates " + join(rate_text, " "));
    res.check("exp1.recon_budget", budget_ok, "iterations within ceil(log tol / log eps) + 5: " + join(iters));
    res.check("exp1.recon_fewer_iterations", fewer, "iterations over covers: " + join(iters));
    res.check("exp1.recon_runtime", recon_seconds < 60, "reconstruction took " + fmt(recon_seconds) + " s (< 60 s)");

    // frame property on V_N and its TF shift
    const TFPoint nu{rng.integer(0, L - 1), rng.integer(0, L - 1)};
    const EigenspaceProjector Pnu = P.shifted(nu);
    for (double r : frame_covers) {
        const auto it = std::find(covers.begin(), covers.end(), r);
        if (it == covers.end()) throw config_error("params.frame_bound_covers: radius " + fmt(r) + " is not in covers");
        const auto k = static_cast<std::size_t>(it - covers.begin());
        const auto& fb = fbs[k];
        const double guaranteed = base.bounds.lower * (1 - errs[k]) * (1 - errs[k]);
        const bool ok = fb.lower >= guaranteed - 1e-12 && fb.upper <= base.bounds.upper + 1e-10;
        res.check("exp1.frame_bounds_r" + fmt(r), ok,
                  "lower " + fmt(fb.lower) + " >= A(1-eps)^2 = " + fmt(guaranteed) + ", upper " + fmt(fb.upper) +
                      " <= B = " + fmt(base.bounds.upper));
        const auto fs = local_frame_bounds(locals[k].shifted(nu), Pnu);
        const double diff = std::max(std::abs(fs.lower - fb.lower), std::abs(fs.upper - fb.upper));
        res.check("exp1.frame_bounds_shift_r" + fmt(r), diff <= shift_tol,
                  "shift (" + cell(nu.x) + "," + cell(nu.w) + ") changes bounds by " + fmt(diff));
    }

    res.tables = {table, traces, eig};
    res.masks.emplace_back("exp1_region", omega);
    for (std::size_t k = 0; k < covers.size(); ++k) res.masks.emplace_back("exp1_cover_" + fmt(covers[k]), locals[k].cover);
    return res;
}

// ---------------------------------------------------------------------------

ExperimentResult run_exp2(const ExperimentConfig& cfg)
{
    const Stopwatch total;
    const json& p = cfg.params;
    ExperimentResult res;
    res.experiment = "exp2";

    const auto family_path = detail::resolve_path(cfg.base_dir, param(p, "family", std::string("family_voronoi10.json")));
    const int less = param(p, "margin_less", 0);
    const int more = param(p, "margin_more", 20);
    const int trials = param(p, "trials", 1000);
    const json fa = param(p, "frame_algorithm", json::object());
    const double fa_tol = param(fa, "tol", 1e-10, "params.frame_algorithm");
    const double fa_target = param(fa, "target", 1e-8, "params.frame_algorithm");
    const int fa_iter = param(fa, "max_iter", 5000, "params.frame_algorithm");
    const double rate_slack = param(fa, "rate_slack", 0.05, "params.frame_algorithm");
    const int norm_trials = param(p, "norm_trials", 500);
    const double runtime_max = param(p, "runtime_max", 600.0);
    if (trials < 1) throw config_error("params.trials: must be positive");
    if (less < 0 || more < 0) throw config_error("params.margin_*: must be non-negative");

    RegionFamily F = load_family(family_path);
    if (F.L != cfg.L) throw config_error("params.family: family L " + cell(F.L) + " != config L " + cell(cfg.L));
    F.prepare();

    Rng rng(cfg.seed);
    std::vector<Signal> signals;
    for (int t = 0; t < trials; ++t) signals.push_back(rng.unit_signal(cfg.L));
    const Signal probe = rng.unit_signal(cfg.L);

    const std::vector<std::pair<std::string, int>> overlaps{{"less", less}, {"more", more}};
    const std::vector<std::pair<std::string, FamilyMode>> projections{{"no", FamilyMode::none}, {"yes", FamilyMode::exact}};
    const std::vector<std::pair<std::string, std::string>> meta{{"family", F.name}, {"geometry", "stand-in"}};

    ResultTable err_table{"exp2_avg_error", {"overlap", "margin", "projection", "mean_rel_error"}, {}, meta};
    ResultTable cond_table{"exp2_condition_numbers", {"overlap", "projection", "lower", "upper", "condition"}, {}, meta};
    ResultTable conv_table{"exp2_frame_alg_convergence", {"overlap", "projection", "iteration", "rel_error"}, {}, meta};
    ResultTable reg_table{"exp2_regions", {"name", "area", "a", "b", "n_eig", "active_less", "active_more"}, {}, meta};

    std::map<std::string, double> mean_err, cond;
    std::map<std::string, int> iterations;
    std::map<std::string, std::vector<int>> active;   // per overlap, per member
    bool converged = true, rate_ok = true, monotone = true;
    std::vector<std::string> conv_text;
    for (const auto& [oname, margin] : overlaps) {
        const RegionFamily Fm = F.with_margin(margin);
        for (const auto& [pname, mode] : projections) {
            const std::string key = oname + "/" + pname;
            const GlobalFrame G = build_global(Fm, mode);
            if (mode == FamilyMode::none) {
                std::vector<int> counts(F.members.size(), 0);
                for (const auto& s : G.provenance) ++counts[static_cast<std::size_t>(s.member)];
                active[oname] = counts;
            }
            double e = 0;
            for (const auto& f : signals) e += apply_and_error(G, f);
            mean_err[key] = e / trials;
            err_table.add({oname, cell(margin), pname, fmt(mean_err[key])});

            const FrameBounds fb = global_spectrum(G);
            cond[key] = fb.lower <= not_a_frame_ratio * fb.upper ? std::numeric_limits<double>::infinity() : fb.condition();
            cond_table.add({oname, pname, fmt(fb.lower), fmt(fb.upper), fmt(cond[key])});

            ReconTrace tr;
            if (std::isfinite(cond[key])) tr = frame_algorithm(G, probe, fa_iter, fa_tol).trace;
            iterations[key] = tr.iterations();
            for (int it = 0; it < tr.iterations(); ++it) conv_table.add({oname, pname, cell(it + 1), fmt(tr.errors[it])});
            const bool ok = !tr.errors.empty() && tr.errors.back() < fa_target;
            converged = converged && ok;
            conv_text.push_back(key + ":" + (tr.errors.empty() ? "none" : fmt(tr.errors.back())) + "@" + cell(tr.iterations()));
            if (ok) {
                const double bound = (fb.upper - fb.lower) / (fb.upper + fb.lower) + rate_slack;
                rate_ok = rate_ok && tr.rate <= bound;
                for (std::size_t k = 2; k < tr.errors.size(); ++k) monotone = monotone && tr.errors[k] <= tr.errors[k - 1];
            }
        }
    }
    for (std::size_t k = 0; k < F.members.size(); ++k) {
        const auto& m = F.members[k];
        reg_table.add({m.name, cell(m.region.area()), cell(m.lattice.a), cell(m.lattice.b), cell(m.n_eig),
                       cell(active["less"][k]), cell(active["more"][k])});
    }
    const auto eq = norm_equivalence_check(F, norm_trials, rng);
    ResultTable eq_table{"exp2_norm_equivalence", {"trials", "min_ratio", "max_ratio"}, {}, meta};
    eq_table.add({cell(norm_trials), fmt(eq.min_ratio), fmt(eq.max_ratio)});

    for (const auto& [oname, margin] : overlaps) {
        const double a = mean_err[oname + "/yes"], b = mean_err[oname + "/no"];
        res.check("exp2.error_projection_" + oname, a < b,
                  oname + " overlap: with projection " + fmt(a) + " < without " + fmt(b));
    }
    const double best = cond["more/yes"];
    bool smallest = true;
    std::vector<std::string> cond_text;
    for (const auto& [k, v] : cond) {
        cond_text.push_back(k + "=" + fmt(v));
        if (k != "more/yes" && !(best < v)) smallest = false;
    }
    res.check("exp2.condition_smallest", smallest && std::isfinite(best), "more/yes is smallest: " + join(cond_text, " "));
    res.check("exp2.condition_less_vs_more", cond["less/yes"] > cond["more/yes"],
              "with projection: less " + fmt(cond["less/yes"]) + " > more " + fmt(cond["more/yes"]));
    res.check("exp2.frame_alg_converged", converged, "final errors below " + fmt(fa_target) + ": " + join(conv_text, " "));
    res.check("exp2.frame_alg_rate", rate_ok, "fitted rates within (B-A)/(B+A) + " + fmt(rate_slack));
    res.check("exp2.frame_alg_monotone", monotone, "error non-increasing after iteration 2");
    bool fastest = true;
    for (const auto& [k, v] : iterations) {
        if (k != "more/yes" && !(iterations["more/yes"] <= v)) fastest = false;
    }
    res.check("exp2.frame_alg_fastest", fastest, "more/yes needs the fewest iterations (" + cell(iterations["more/yes"]) + ")");
    res.check("exp2.norm_equivalence", eq.min_ratio > 0 && std::isfinite(eq.max_ratio),
              "ratio range [" + fmt(eq.min_ratio) + ", " + fmt(eq.max_ratio) + "]");
    const double seconds = total.seconds();
    res.check("exp2.runtime", seconds < runtime_max, "took " + fmt(seconds) + " s (< " + fmt(runtime_max) + " s)");

    res.tables = {err_table, cond_table, conv_table, reg_table, eq_table};
    for (const auto& m : F.members) res.masks.emplace_back("exp2_region_" + m.name, m.region);
    return res;
}

// ---------------------------------------------------------------------------

ExperimentResult run_exp3(const ExperimentConfig& cfg)
{
    const Stopwatch total;
    const json& p = cfg.params;
    const int L = cfg.L;
    ExperimentResult res;
    res.experiment = "exp3";

    const json default_regions = json::array({
        {{"name", "low_early"}, {"x", {0, L / 2}}, {"w", {-L / 4, L / 4}}, {"lattice", {20, 8}}},
        {{"name", "high_early"}, {"x", {0, L / 2}}, {"w", {L / 4, 3 * L / 4}}, {"lattice", {24, 10}}},
        {{"name", "low_late"}, {"x", {L / 2, L}}, {"w", {-L / 4, L / 4}}, {"lattice", {12, 24}}},
        {{"name", "high_late"}, {"x", {L / 2, L}}, {"w", {L / 4, 3 * L / 4}}, {"lattice", {15, 20}}},
    });
    const json regions = param(p, "regions", default_regions);
    const auto overlaps = param(p, "overlaps", std::vector<int>{0, 4, 8, 12, 16, 24, 32, 48});
    auto nevs = param(p, "nev", std::vector<int>{80, 120, 160});
    const int trials = param(p, "trials", 50);
    const json window = param(p, "window", json{{"kind", "gaussian"}, {"tight", true}});
    const double runtime_max = param(p, "runtime_max", 600.0);
    const double mono_tol = param(p, "monotone_tol", 1e-12);
    if (overlaps.empty() || nevs.empty() || trials < 1) throw config_error("params: overlaps, nev and trials must be non-empty");
    std::sort(nevs.begin(), nevs.end());

    RegionFamily F;
    F.L = L;
    F.name = "quadrants";
    F.analysis_window = gaussian_window(L);
    F.mode = FamilyMode::approximate;
    F.max_overlap = param(p, "max_overlap", 1);
    for (std::size_t k = 0; k < regions.size(); ++k) {
        const std::string where = "params.regions[" + std::to_string(k) + "]";
        const json& r = regions[k];
        FamilyMember m;
        m.name = param(r, "name", "Q" + std::to_string(k + 1), where);
        const auto x = param(r, "x", std::array<int, 2>{0, L}, where);
        const auto w = param(r, "w", std::array<int, 2>{0, L}, where);
        m.region = region_rect(L, x[0], x[1], w[0], w[1]);
        m.cover = m.region;
        m.lattice = detail::lattice_param(L, r, "lattice", {L, L}, where);
        m.window = detail::window_param(m.lattice, window, cfg.base_dir, "params.window");
        F.members.push_back(std::move(m));
    }
    F.validate();
    F.prepare();

    Rng rng(cfg.seed);
    std::vector<Signal> signals;
    for (int t = 0; t < trials; ++t) signals.push_back(rng.unit_signal(L));
    const auto mean_error = [&](const GlobalFrame& G) {
        double e = 0;
        for (const auto& f : signals) e += apply_and_error(G, f);
        return e / trials;
    };

    std::vector<std::string> cols{"overlap_b", "atoms", "quilted"};
    for (int n : nevs) cols.push_back("approx_nev" + cell(n));
    ResultTable table{"exp3_error_vs_overlap", cols, {}, {}};
    std::vector<double> quilted;
    std::vector<std::vector<double>> approx(nevs.size());
    for (int b : overlaps) {
        if (b < 0) throw config_error("params.overlaps: must be non-negative");
        const RegionFamily Fb = F.with_margin(b);
        const GlobalFrame Gq = build_global(Fb, FamilyMode::none);
        quilted.push_back(mean_error(Gq));
        std::vector<std::string> row{cell(b), cell(Gq.atom_count()), fmt(quilted.back())};
        for (std::size_t j = 0; j < nevs.size(); ++j) {
            RegionFamily Fn = Fb;
            for (auto& m : Fn.members) m.n_fixed = nevs[j];
            Fn.prepare();
            approx[j].push_back(mean_error(build_global(Fn, FamilyMode::approximate)));
            row.push_back(fmt(approx[j].back()));
        }
        table.add(row);
    }

    bool monotone = true;
    std::vector<std::string> first_last;
    for (std::size_t j = 0; j < nevs.size(); ++j) {
        for (std::size_t k = 1; k < approx[j].size(); ++k) monotone = monotone && approx[j][k] <= approx[j][k - 1] + mono_tol;
        first_last.push_back("nev" + cell(nevs[j]) + ":" + fmt(approx[j].front()) + "->" + fmt(approx[j].back()));
    }
    res.check("exp3.approx_nonincreasing_in_overlap", monotone, join(first_last, " "));
    bool by_nev = true;
    for (std::size_t k = 0; k < overlaps.size(); ++k) {
        for (std::size_t j = 1; j < nevs.size(); ++j) by_nev = by_nev && approx[j][k] <= approx[j - 1][k] + mono_tol;
    }
    res.check("exp3.approx_improves_with_nev", by_nev, "larger nEV gives error <= smaller nEV at every overlap");
    const auto imin = static_cast<std::size_t>(std::min_element(quilted.begin(), quilted.end()) - quilted.begin());
    bool rises = false;
    for (std::size_t k = imin + 1; k < quilted.size(); ++k) rises = rises || quilted[k] > quilted[k - 1];
    res.check("exp3.quilted_eventually_increases", rises && quilted.back() > quilted[imin],
              "quilted minimum " + fmt(quilted[imin]) + " at b=" + cell(overlaps[imin]) + ", final " + fmt(quilted.back()));
    const double seconds = total.seconds();
    res.check("exp3.runtime", seconds < runtime_max, "took " + fmt(seconds) + " s (< " + fmt(runtime_max) + " s)");

    ResultTable reg{"exp3_regions", {"name", "area", "a", "b", "redundancy"}, {}, {}};
    for (const auto& m : F.members) {
        reg.add({m.name, cell(m.region.area()), cell(m.lattice.a), cell(m.lattice.b), fmt(m.lattice.redundancy())});
        res.masks.emplace_back("exp3_region_" + m.name, m.region);
    }
    res.tables = {table, reg};
    return res;
}

} // namespace tflg
