#include <doctest.h>
#include <tflg/dsignal.hpp>
#include <tflg/gabor.hpp>
#include <tflg/numkernel.hpp>
#include <tflg/random.hpp>

using namespace tflg;

TEST_CASE("lattice indexing and membership")
{
    const Lattice lat(48, 4, 6);
    CHECK(lat.size() == 12 * 8);
    CHECK(lat.redundancy() == doctest::Approx(2));
    const auto pts = lat.points();
    REQUIRE(pts.size() == 96);
    for (int k = 0; k < lat.size(); ++k) {
        CHECK(pts[k] == lat.point(k));
        CHECK(lat.contains(pts[k]));
    }
    CHECK(lat.point(9) == TFPoint{4, 6});
    CHECK_FALSE(lat.contains({2, 0}));
    CHECK(lat.contains({-4, 48}));
    CHECK_THROWS_AS(Lattice(48, 5, 4), precondition_error);
    CHECK_THROWS_AS(Lattice(48, 0, 4), precondition_error);
}

TEST_CASE("analysis, synthesis and frame operator agree with explicit atoms")
{
    const int L = 48;
    Rng rng(7);
    const GaborSystem sys(gaussian_window(L), Lattice(L, 4, 4));
    const auto pts = sys.lattice().points();
    const Signal f = rng.complex_normal_signal(L);
    const CVector c = rng.complex_normal_signal(sys.atom_count());

    const CVector coeff = analysis(sys, f);
    for (int k = 0; k < sys.atom_count(); k += 7) {
        CHECK(std::abs(coeff(k) - inner(f, tf_shift(sys.window(), pts[k]))) < 1e-12);
    }
    // adjointness <U f, c> = <f, U^* c>
    CHECK(std::abs(inner(coeff, c) - inner(f, synthesis(sys, c))) < 1e-10);

    CMatrix S = CMatrix::Zero(L, L);
    for (const auto& z : pts) {
        const Signal a = tf_shift(sys.window(), z);
        S += a * a.adjoint();
    }
    CHECK((frame_operator(sys) - S).norm() < 1e-11);
    CHECK((atom_matrix(sys.window(), pts) * atom_matrix(sys.window(), pts).adjoint() - S).norm() < 1e-11);
    CHECK((outer_sum(sys.window(), pts) - S).norm() < 1e-11);
}

TEST_CASE("frame bounds are the extreme eigenvalues; trace equals atoms times energy")
{
    const int L = 48;
    const GaborSystem sys(gaussian_window(L), Lattice(L, 4, 4));
    const CMatrix S = frame_operator(sys);
    const auto eig = herm_eig(S);
    const auto fb = frame_bounds(sys);
    CHECK(fb.upper == doctest::Approx(eig.values(0)));
    CHECK(fb.lower == doctest::Approx(eig.values(L - 1)));
    CHECK(S.trace().real() == doctest::Approx(sys.atom_count()));
    // S commutes with lattice shifts
    const Signal d = Signal::Unit(L, 3);
    CHECK((S * tf_shift(d, {4, 8}) - tf_shift(Signal(S * d), {4, 8})).norm() < 1e-12);
}

TEST_CASE("tight and dual windows")
{
    const int L = 48;
    Rng rng(8);
    const Lattice lat(L, 4, 6);
    const GaborSystem sys(gaussian_window(L), lat);
    const GaborSystem tight(tight_window(sys), lat);
    CHECK((frame_operator(tight) - CMatrix::Identity(L, L)).norm() < 1e-10);
    CHECK(tight.window().squaredNorm() == doctest::Approx(4.0 * 6 / L).epsilon(1e-10));

    const GaborSystem dual(dual_window(sys), lat);
    const Signal f = rng.complex_normal_signal(L);
    CHECK((synthesis(dual, analysis(sys, f)) - f).norm() < 1e-10 * f.norm());
    CHECK((synthesis(sys, analysis(dual, f)) - f).norm() < 1e-10 * f.norm());
    const auto fb = frame_bounds(sys);
    const auto fd = frame_bounds(dual);
    CHECK(fd.upper == doctest::Approx(1 / fb.lower).epsilon(1e-8));
    CHECK(fd.lower == doctest::Approx(1 / fb.upper).epsilon(1e-8));
}

TEST_CASE("undersampled systems are not frames")
{
    const int L = 48;
    const GaborSystem sparse(gaussian_window(L), Lattice(L, 8, 12));   // 24 atoms < 48
    CHECK_THROWS_AS(frame_bounds(sparse), not_a_frame_error);
    CHECK_THROWS_AS(dual_window(sparse), not_a_frame_error);
    CHECK_THROWS_AS(GaborSystem(Signal::Zero(L), Lattice(L, 4, 4)), precondition_error);
    CHECK_THROWS_AS(GaborSystem(gaussian_window(L), Lattice(24, 4, 4)), precondition_error);
}
