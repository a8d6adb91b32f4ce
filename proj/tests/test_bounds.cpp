#include <doctest.h>
#include <tflg/bounds.hpp>
#include <tflg/dsignal.hpp>
#include <tflg/random.hpp>

#include <cmath>
#include <numbers>

using namespace tflg;
using std::numbers::pi;

TEST_CASE("gaussian decay bound formula")
{
    CHECK(gaussian_decay_bound(0, 0.5, 1) == doctest::Approx(1));
    CHECK(gaussian_decay_bound(2, 0.5, 3) == doctest::Approx(3 * std::exp(-pi)));
    CHECK(gaussian_decay_bound(3, 0.5, 1) < gaussian_decay_bound(2, 0.5, 1));
    CHECK_THROWS_AS(gaussian_decay_bound(1, 0, 1), precondition_error);
    CHECK_THROWS_AS(gaussian_decay_bound(1, 1, 1), precondition_error);
}

TEST_CASE("polynomial decay constant and bound")
{
    DecayProfile p{1, 2, 0.5};
    CHECK(p.constant() == doctest::Approx(pi));   // sqrt2 pi / sqrt(2 sin(pi/2))
    CHECK(poly_decay_bound(0, p, 1) == doctest::Approx(pi * std::pow(0.5, -0.25)));
    CHECK(poly_decay_bound(10, p, 1) == doctest::Approx(pi * std::pow(0.5, -0.25) / 51));
    DecayProfile bad{1, 1, 0.5};
    CHECK_THROWS_AS(bad.constant(), precondition_error);
}

TEST_CASE("tail sum: lattice constant and bound")
{
    CHECK(TailBoundParams{0, 1, 1}.C_Lambda() == doctest::Approx(8 * std::exp(5 * pi / 4)));
    CHECK(TailBoundParams{0, 1, 1}.C_Lambda() == doctest::Approx(406.03).epsilon(1e-4));
    CHECK(TailBoundParams{0, 1, 4}.C_Lambda() == doctest::Approx(4 * 406.03).epsilon(1e-4));
    CHECK(tail_sum_bound({2, 6, 1}) == doctest::Approx(8 * std::exp(5 * pi / 4) * std::exp(-pi / 4 * (9 - 4))));
    CHECK_THROWS_AS(tail_sum_bound({3, 2, 1}), precondition_error);
}

TEST_CASE("tail sum left side matches a direct loop and sits under the bound")
{
    Rng rng(31);
    for (int k = 0; k < 10; ++k) {
        const double h1 = 0.4 + rng.uniform(), h2 = 0.4 + rng.uniform();
        const double R = 2 * rng.uniform(), Rs = R + 1 + 6 * rng.uniform();
        double direct = 0;
        for (int m = -60; m <= 60; ++m)
            for (int n = -60; n <= 60; ++n) {
                const double r = std::hypot(m * h1, n * h2);
                if (r > Rs) direct += std::exp(-pi / 2 * (r - R) * (r - R));
            }
        const double lhs = tail_sum_lhs(rect_lattice_points(h1, h2, Rs + 12), R, Rs);
        CHECK(lhs == doctest::Approx(direct).epsilon(1e-10));
        CHECK(lhs <= tail_sum_bound({R, Rs, per_cell_max(h1, h2)}));
    }
    CHECK(tail_sum_lhs(std::vector<PlanePoint>{}, 0, 1) == 0);
}

TEST_CASE("per_cell_max agrees with brute-force counting over offsets")
{
    for (auto [h1, h2] : {std::pair{1.0, 1.0}, std::pair{0.4, 1.6}, std::pair{0.3, 0.7}, std::pair{2.5, 0.5}}) {
        int best = 0;
        for (int i = 0; i < 40; ++i)
            for (int j = 0; j < 40; ++j) {
                const double ox = i / 40.0 * h1, oy = j / 40.0 * h2;
                int cx = 0, cy = 0;
                for (int m = -20; m <= 20; ++m) {
                    cx += m * h1 >= ox && m * h1 < ox + 1;
                    cy += m * h2 >= oy && m * h2 < oy + 1;
                }
                best = std::max(best, cx * cy);
            }
        CHECK(per_cell_max(h1, h2) == best);
    }
}

TEST_CASE("cover radius: closed form, monotone in eps, vacuous case")
{
    const double R = 3, A = 0.6, C = 406, s = 50;
    const double r1 = cover_radius(R, 0.1, A, C, s);
    CHECK(r1 == doctest::Approx(-R + std::sqrt(4 * R * R - 16 / pi * std::log(0.01 / (C * s / A)))));
    CHECK(cover_radius(R, 0.01, A, C, s) > r1);
    CHECK(cover_radius(R, 0.5, A, C, s) < r1);
    CHECK_THROWS_AS(cover_radius(0, 100, 1, 1, 1), vacuous_bound_error);
    CHECK_THROWS_AS(cover_radius(1, -1, 1, 1, 1), precondition_error);
}

TEST_CASE("frame-local bound formula")
{
    CHECK(frame_local_bound(1, 1, 0.1, 2, 0.02) == doctest::Approx(2 * (0.2 + 0.1)));
    CHECK(frame_local_bound(1, 4, 0, 2, 0) == 0);
    CHECK_THROWS_AS(frame_local_bound(1, 4, 0, 1, 0.1), precondition_error);
    CHECK_THROWS_AS(frame_local_bound(2, 1, 0, 2, 0.1), precondition_error);
}

TEST_CASE("decay checks hold on a small grid")
{
    const int L = 64;
    Rng rng(32);
    const Signal phi = gaussian_window(L);
    const auto H = localization_op(phi, region_disk(L, {32, 32}, 10));
    const Signal f = rng.unit_signal(L);
    const auto dg = check_gaussian_decay(H, f, 0.5, 1e-12);
    CHECK(dg.violations == 0);
    CHECK(dg.max_slack <= 1e-12);
    REQUIRE_FALSE(dg.rows.empty());
    CHECK(dg.rows.front().dist == 0);

    const Signal g = tight_window(GaborSystem(phi, Lattice(L, 4, 4)));
    DecayProfile p{fit_decay_constant(phi, g, 2), 2, 0.5};
    const auto dp = check_poly_decay(H, f, g, p, 1e-12);
    CHECK(dp.violations == 0);
}

TEST_CASE("fitted decay constant is the tightest one")
{
    const int L = 48;
    const Signal phi = gaussian_window(L);
    const double C = fit_decay_constant(phi, phi, 2);
    const CMatrix V = stft(phi, phi);
    const double h = continuum_scale(L);
    double tight = 0;
    for (int x = 0; x < L; ++x)
        for (int w = 0; w < L; ++w) {
            const double r = std::hypot(symmetric_rep(x, L) * h, symmetric_rep(w, L) * h);
            const double need = std::abs(V(x, w)) * (1 + std::pow(r, 4));
            CHECK(need <= C * (1 + 1e-12));
            tight = std::max(tight, need);
        }
    CHECK(C == doctest::Approx(tight));
}
