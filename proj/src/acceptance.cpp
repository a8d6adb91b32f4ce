#include <tflg/acceptance.hpp>
#include <tflg/dsignal.hpp>
#include <tflg/expcli.hpp>
#include <tflg/gabor.hpp>
#include <tflg/random.hpp>
#include <tflg/tfloc.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

namespace tflg {

namespace {

namespace fs = std::filesystem;

double elapsed(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// All assertions whose id starts with one of the prefixes must be present and pass.
std::pair<bool, std::string> gather(const ExperimentResult& r, const std::vector<std::string>& prefixes)
{
    bool ok = true;
    int matched = 0;
    std::string failed;
    for (const auto& a : r.assertions) {
        bool hit = false;
        for (const auto& p : prefixes) hit = hit || a.id.rfind(p, 0) == 0;
        if (!hit) continue;
        ++matched;
        if (!a.passed) {
            ok = false;
            failed += " [" + a.id + ": " + a.detail + "]";
        }
    }
    if (matched == 0) return {false, "no assertions matched"};
    return {ok, ok ? cell(matched) + " assertions passed" : "failed:" + failed};
}

std::string detail_of(const ExperimentResult& r, const std::string& id)
{
    const Assertion* a = r.find(id);
    return a ? a->detail : "";
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

CriterionResult exactness_suite()
{
    const auto t0 = std::chrono::steady_clock::now();
    const int L = 480;
    const double tol = 1e-8;
    Rng rng(2024);
    const Signal phi = gaussian_window(L);
    const Signal f = rng.unit_signal(L);
    std::map<std::string, double> err;

    err["stft_roundtrip"] = (istft(stft(f, phi), phi) - f).norm() / f.norm();
    err["full_grid_localization"] = (localization_op(phi, Region::full(L)).matrix - CMatrix::Identity(L, L)).norm() / std::sqrt(L);

    const Lattice lat(L, 20, 20);
    const GaborSystem sys(phi, lat);
    const GaborSystem tight(tight_window(sys), lat);
    err["tight_frame_operator"] = (frame_operator(tight) - CMatrix::Identity(L, L)).norm() / std::sqrt(L);
    const GaborSystem dual(dual_window(sys), lat);
    err["dual_reconstruction"] = (synthesis(dual, analysis(sys, f)) - f).norm() / f.norm();

    CriterionResult c;
    c.passed = true;
    for (const auto& [k, v] : err) {
        c.passed = c.passed && v <= tol;
        c.detail += k + "=" + cell(v) + " ";
    }
    const double seconds = elapsed(t0);
    c.passed = c.passed && seconds < 30;
    c.detail += "(all <= " + cell(tol) + ", " + cell(seconds) + " s < 30 s)";
    return c;
}

/// Signals spread over the eigenbasis with random tail weights, so concentration varies.
std::vector<Signal> mixed_signals(const EigenSystem& E, int count, int head, Rng& rng)
{
    const int L = E.size();
    std::vector<Signal> out;
    for (int s = 0; s < count; ++s) {
        CVector coeff = rng.complex_normal_signal(L);
        // random cuts stay within the leading part of the spectrum so both outcomes occur
        const int cut = head >= 0 ? head : rng.integer(0, std::min(L - 1, 2 * E.count_above(0.5)));
        const double w = head >= 0 ? 0.02 + 0.5 * rng.uniform() : 0.4 * rng.uniform();
        for (int k = cut; k < L; ++k) coeff(k) *= w;
        out.push_back((E.vectors * coeff).normalized());
    }
    return out;
}

} // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& log)
{
    std::vector<CriterionResult> results;
    auto report = [&](CriterionResult c) {
        char line[64];
        std::snprintf(line, sizeof line, "criterion %2d %s (%.2f s) ", c.id, c.passed ? "PASS" : "FAIL", c.seconds);
        log << line << c.title << ": " << c.detail << std::endl;
        results.push_back(std::move(c));
    };
    auto guarded = [&](int id, const std::string& title, const std::function<CriterionResult()>& body) {
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult c;
        try {
            c = body();
        } catch (const std::exception& e) {
            c.passed = false;
            c.detail = std::string("exception: ") + e.what();
        }
        c.id = id;
        c.title = title;
        c.seconds = elapsed(t0);
        report(std::move(c));
    };

    const fs::path cdir(opt.config_dir);
    const fs::path run1 = fs::path(opt.out_dir) / "run1";
    const fs::path run2 = fs::path(opt.out_dir) / "run2";

    std::map<std::string, ExperimentConfig> cfgs;
    std::map<std::string, ExperimentResult> first;
    std::map<std::string, std::string> errors;
    auto run_first = [&](const std::string& name) -> const ExperimentResult& {
        if (!first.count(name) && !errors.count(name)) {
            try {
                cfgs[name] = ExperimentConfig::load((cdir / (name + ".json")).string());
                first[name] = run_experiment(cfgs[name]);
                write_outputs(first[name], cfgs[name], (run1 / name).string());
            } catch (const std::exception& e) {
                errors[name] = e.what();
            }
        }
        if (errors.count(name)) throw error(name + ": " + errors[name]);
        return first[name];
    };

    guarded(1, "lattice counts", [&] {
        const auto& r = run_first("exp1");
        const auto [ok, d] = gather(r, {"exp1.count_"});
        std::string counts;
        for (const auto& row : r.table("exp1_counts_and_errors")->rows) counts += row[0] + ":" + row[1] + " ";
        return CriterionResult{0, "", ok, counts + "| " + d + " | " + detail_of(r, "exp1.count_runtime"), 0};
    });
    guarded(2, "exactness suite", exactness_suite);
    guarded(3, "truncation error trend", [&] {
        const auto& r = run_first("exp1");
        const auto [ok, d] = gather(r, {"exp1.trunc_error_", "exp1.reference_magnitude"});
        return CriterionResult{0, "", ok,
                               detail_of(r, "exp1.trunc_error_decreasing") + " | " + detail_of(r, "exp1.reference_magnitude") +
                                   " | " + d, 0};
    });
    guarded(4, "local reconstruction", [&] {
        const auto& r = run_first("exp1");
        const auto [ok, d] = gather(r, {"exp1.recon_"});
        return CriterionResult{0, "", ok, detail_of(r, "exp1.recon_fewer_iterations") + " | " + d, 0};
    });
    guarded(5, "concentration certificate equivalence", [&] {
        const int L = 480;
        const auto H = localization_op(gaussian_window(L), region_disk(L, {240, 240}, 80));
        const auto E = eigensystem(H);
        Rng rng(5);
        const auto sig = mixed_signals(E, 100, -1, rng);
        int disagree = 0, yes = 0, no = 0;
        for (const auto& f : sig) {
            const double conc = concentration(H, f);
            for (double eps : {0.05, 0.1, 0.2, 0.3, 0.5}) {
                const bool direct = conc >= 1 - eps;
                const bool cert = concentration_certificate(E, f, eps).concentrated;
                disagree += direct != cert;
                (direct ? yes : no) += 1;
            }
        }
        return CriterionResult{0, "", disagree == 0,
                               cell(disagree) + " disagreements over 500 cases (" + cell(yes) + " concentrated, " + cell(no) +
                                   " not)", 0};
    });
    guarded(6, "eigenspace approximation bound", [&] {
        const int L = 480;
        const auto H = localization_op(gaussian_window(L), region_disk(L, {240, 240}, 80));
        const auto E = eigensystem(H);
        Rng rng(6);
        const auto sig = mixed_signals(E, 50, E.count_above(0.5), rng);
        int violations = 0;
        double worst = 0;
        for (double c : {1.5, 2.0, 4.0}) {
            const EigenspaceProjector P(E, E.count_above((c - 1) / c));
            for (const auto& f : sig) {
                const double eps = 1 - concentration(H, f);
                const double lhs = (f - P.apply(f)).squaredNorm();
                const double rhs = c * eps * f.squaredNorm();
                violations += !(lhs < rhs);
                worst = std::max(worst, lhs / rhs);
            }
        }
        return CriterionResult{0, "", violations == 0,
                               cell(violations) + " violations over 150 cases, max lhs/rhs " + cell(worst), 0};
    });
    guarded(7, "bound suite", [&] {
        const auto& r = run_first("bounds");
        const auto [ok, d] = gather(r, {"bounds."});
        return CriterionResult{0, "", ok,
                               detail_of(r, "bounds.tail_sum") + " | gaussian " + detail_of(r, "bounds.decay_gaussian") +
                                   " | " + d, 0};
    });
    guarded(8, "local frame bounds", [&] {
        const auto& r = run_first("exp1");
        const auto [ok, d] = gather(r, {"exp1.frame_bounds_"});
        return CriterionResult{0, "", ok, detail_of(r, "exp1.frame_bounds_r100") + " | " + d, 0};
    });
    guarded(9, "quilted family trends", [&] {
        const auto& r = run_first("exp2");
        const auto [ok, d] = gather(r, {"exp2."});
        return CriterionResult{0, "", ok,
                               detail_of(r, "exp2.error_projection_less") + "; " + detail_of(r, "exp2.error_projection_more") +
                                   " | " + detail_of(r, "exp2.condition_smallest") + " | " + d, 0};
    });
    guarded(10, "overlap sweep trends", [&] {
        const auto& r = run_first("exp3");
        const auto [ok, d] = gather(r, {"exp3."});
        return CriterionResult{0, "", ok,
                               detail_of(r, "exp3.approx_nonincreasing_in_overlap") + " | " +
                                   detail_of(r, "exp3.quilted_eventually_increases") + " | " + d, 0};
    });
    guarded(11, "determinism", [&] {
        int files = 0;
        std::string diff;
        for (const std::string name : {"exp1", "exp2", "exp3", "bounds"}) {
            run_first(name);
            const auto again = run_experiment(cfgs[name]);
            const auto paths = write_outputs(again, cfgs[name], (run2 / name).string());
            for (const auto& p2 : paths) {
                if (fs::path(p2).extension() != ".csv") continue;
                const auto p1 = (run1 / name / fs::path(p2).filename()).string();
                ++files;
                if (slurp(p1) != slurp(p2)) diff += " " + name + "/" + fs::path(p2).filename().string();
            }
        }
        return CriterionResult{0, "", diff.empty() && files > 0,
                               diff.empty() ? cell(files) + " CSV files byte-identical across two runs" : "differs:" + diff, 0};
    });
    return results;
}

nlohmann::json acceptance_report(const std::vector<CriterionResult>& results)
{
    nlohmann::json failures = nlohmann::json::array();
    bool ok = true;
    for (const auto& c : results) {
        if (c.passed) continue;
        ok = false;
        failures.push_back({{"criterion", c.id}, {"title", c.title}, {"detail", c.detail}});
    }
    return {{"passed", ok}, {"failures", failures}};
}

} // namespace tflg
