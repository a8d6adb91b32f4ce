#include <doctest.h>
#include <tflg/dsignal.hpp>
#include <tflg/localframe.hpp>
#include <tflg/numkernel.hpp>
#include <tflg/random.hpp>

#include <Eigen/SVD>
#include <cmath>

using namespace tflg;

namespace {

constexpr int L = 48;

struct Setup
{
    GaborSystem sys{gaussian_window(L), Lattice(L, 4, 4)};
    EigenSystem E = eigensystem(localization_op(gaussian_window(L), region_disk(L, {24, 24}, 8)));
    EigenspaceProjector P{E, E.count_above(0.5)};
    LocalSystem full = restrict_to(sys, Region::full(L));
};

} // namespace

TEST_CASE("restriction keeps lattice points inside the cover")
{
    Setup s;
    const Region cover = region_disk(L, {24, 24}, 10);
    const LocalSystem ls = s.full.with_cover(cover);
    int expected = 0;
    for (const auto& z : s.sys.lattice().points()) expected += cover.contains(z);
    CHECK(ls.active_count() == expected);
    for (const auto& z : ls.active) CHECK(cover.contains(z));
    CHECK(s.full.active_count() == s.sys.atom_count());
    CHECK(s.full.with_cover(Region(L)).active_count() == 0);
    CHECK(trunc_frame_op(s.full.with_cover(Region(L))).norm() == 0);
}

TEST_CASE("truncated frame operator equals the sum of dual and analysis atom products")
{
    Setup s;
    const LocalSystem ls = s.full.with_cover(region_disk(L, {20, 28}, 12));
    const Signal d = dual_window(s.sys);
    CMatrix S = CMatrix::Zero(L, L);
    for (const auto& z : ls.active) S += tf_shift(d, z) * tf_shift(s.sys.window(), z).adjoint();
    CHECK((trunc_frame_op(ls, SynthesisMode::dual_pair) - S).norm() < 1e-12);
    CHECK((trunc_frame_op(s.full) - CMatrix::Identity(L, L)).norm() < 1e-10);

    const GaborSystem tight(tight_window(s.sys), s.sys.lattice());
    const LocalSystem lt = restrict_to(tight, Region::full(L));
    CHECK((trunc_frame_op(lt, SynthesisMode::tight) - CMatrix::Identity(L, L)).norm() < 1e-10);
}

TEST_CASE("truncation error is the SVD norm of (I - S_loc) P and shrinks with the cover")
{
    Setup s;
    double prev = 10;
    for (double r : {6.0, 10.0, 14.0, 18.0, 24.0}) {
        const LocalSystem ls = s.full.with_cover(region_disk(L, {24, 24}, r));
        const double err = trunc_error(ls, s.P);
        const CMatrix M = s.P.matrix() - trunc_frame_op(ls) * s.P.matrix();
        CHECK(err == doctest::Approx(Eigen::JacobiSVD<CMatrix>(M).singularValues()(0)).epsilon(1e-7));
        CHECK(err <= prev + 1e-12);
        prev = err;
    }
    CHECK(trunc_error(s.full, s.P) < 1e-8);
}

TEST_CASE("local frame bounds are the extreme eigenvalues of the compressed Gram matrix")
{
    Setup s;
    const LocalSystem ls = s.full.with_cover(region_disk(L, {24, 24}, 14));
    const auto fb = local_frame_bounds(ls, s.P);
    const CMatrix C = ls.analysis_atoms().adjoint() * s.P.basis();
    const auto eig = herm_eig(CMatrix(C.adjoint() * C));
    CHECK(fb.upper == doctest::Approx(eig.values(0)));
    CHECK(fb.lower == doctest::Approx(eig.values(eig.values.size() - 1)));
    const auto full = frame_bounds(s.sys);
    CHECK(fb.lower >= full.lower - 1e-10);
    CHECK(fb.upper <= full.upper + 1e-10);
    CHECK_THROWS_AS(local_frame_bounds(s.full.with_cover(Region(L)), s.P), precondition_error);
}

TEST_CASE("shifting the whole setup leaves errors and bounds unchanged")
{
    Setup s;
    const LocalSystem ls = s.full.with_cover(region_disk(L, {24, 24}, 12));
    const TFPoint nu{7, -5};
    const LocalSystem moved = ls.shifted(nu);
    const EigenspaceProjector Pm = s.P.shifted(nu);
    CHECK(trunc_error(moved, Pm) == doctest::Approx(trunc_error(ls, s.P)).epsilon(1e-9));
    const auto a = local_frame_bounds(ls, s.P), b = local_frame_bounds(moved, Pm);
    CHECK(a.lower == doctest::Approx(b.lower).epsilon(1e-9));
    CHECK(a.upper == doctest::Approx(b.upper).epsilon(1e-9));
    CHECK(moved.active_count() == ls.active_count());
}

TEST_CASE("iterative reconstruction converges and is a fixed point of the samples")
{
    Setup s;
    Rng rng(41);
    const Signal f = s.P.apply(rng.complex_normal_signal(L));
    const LocalSystem ls = s.full.with_cover(region_disk(L, {24, 24}, 16));
    const auto out = iterative_reconstruct(ls, s.P, local_analysis(ls, f), 5000, 1e-10, f);
    CHECK(out.trace.converged);
    CHECK((out.f - f).norm() <= 1e-10 * f.norm() * (1 + 1e-9));
    CHECK(out.trace.rate < 1);

    const auto one = iterative_reconstruct(s.full, s.P, local_analysis(s.full, f), 10, 1e-10, f);
    CHECK(one.trace.iterations() == 1);

    CHECK_THROWS_AS(iterative_reconstruct(ls, s.P, CVector::Zero(3)), precondition_error);
}

TEST_CASE("an overshooting update is reported as divergence with its trace")
{
    Setup s;
    Rng rng(42);
    const int N = s.P.N();
    const EigenspaceProjector scaled(s.P.basis() * std::sqrt(3.0), RVector::Ones(N), ProjectionMode::exact);
    const Signal f = s.P.apply(rng.complex_normal_signal(L));
    try {
        iterative_reconstruct(s.full, scaled, local_analysis(s.full, f), 100, 1e-10, f);
        FAIL("expected divergence");
    } catch (const divergence_error& e) {
        REQUIRE(e.trace().iterations() >= 4);
        CHECK(e.trace().errors[1] == doctest::Approx(2 * e.trace().errors[0]).epsilon(1e-6));
        CHECK_FALSE(e.trace().converged);
    }
}

TEST_CASE("fit_rate recovers a geometric ratio")
{
    std::vector<double> e{5.0};
    for (int k = 1; k < 30; ++k) e.push_back(0.7 * std::pow(0.3, k));
    CHECK(fit_rate(e) == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(fit_rate({1.0, 0.5}) == doctest::Approx(0.5));
    CHECK(fit_rate({}) == 0);
}
