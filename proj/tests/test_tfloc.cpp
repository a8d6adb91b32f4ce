#include <doctest.h>
#include <tflg/dsignal.hpp>
#include <tflg/random.hpp>
#include <tflg/tfloc.hpp>

using namespace tflg;

namespace {

constexpr int L = 48;

CMatrix shift_matrix(TFPoint z)
{
    CMatrix M(L, L);
    for (int k = 0; k < L; ++k) M.col(k) = tf_shift(Signal(Signal::Unit(L, k)), z);
    return M;
}

CMatrix brute_H(const Signal& phi, const Region& omega)
{
    CMatrix H = CMatrix::Zero(L, L);
    for (int x = 0; x < L; ++x)
        for (int w = 0; w < L; ++w)
            if (omega(x, w)) {
                const Signal a = tf_shift(phi, {x, w});
                H += a * a.adjoint();
            }
    return H / L;
}

Region complement(const Region& r)
{
    Region c(r.L());
    for (int x = 0; x < r.L(); ++x)
        for (int w = 0; w < r.L(); ++w) c.set(x, w, !r(x, w));
    return c;
}

} // namespace

TEST_CASE("localization operator equals the explicit atom sum")
{
    const Signal phi = gaussian_window(L);
    const Region omega = region_disk(L, {20, 30}, 9) | region_rect(L, 40, 50, 0, 6);
    const auto H = localization_op(phi, omega);
    CHECK((H.matrix - brute_H(phi, omega)).norm() < 1e-12);
    CHECK((H.matrix - H.matrix.adjoint()).norm() < 1e-14);
    CHECK(H.matrix.trace().real() == doctest::Approx(double(omega.area()) / L));
}

TEST_CASE("full, empty and complementary regions")
{
    const Signal phi = gaussian_window(L);
    CHECK((localization_op(phi, Region::full(L)).matrix - CMatrix::Identity(L, L)).norm() < 1e-12);
    CHECK(localization_op(phi, Region(L)).matrix.norm() == 0);
    const Region r = region_disk(L, {10, 10}, 12);
    const CMatrix sum = localization_op(phi, r).matrix + localization_op(phi, complement(r)).matrix;
    CHECK((sum - CMatrix::Identity(L, L)).norm() < 1e-12);
}

TEST_CASE("translating the region conjugates the operator by the TF shift")
{
    const Signal phi = gaussian_window(L);
    const Region r = region_disk(L, {24, 24}, 8);
    const TFPoint z{7, -13};
    const CMatrix P = shift_matrix(z);
    const CMatrix lhs = localization_op(phi, r.translated(z)).matrix;
    CHECK((lhs - P * localization_op(phi, r).matrix * P.adjoint()).norm() < 1e-12);
}

TEST_CASE("eigensystem: spectrum in [0, 1], sorted, kernel counted")
{
    const auto H = localization_op(gaussian_window(L), region_disk(L, {24, 24}, 8));
    const auto E = eigensystem(H);
    REQUIRE(E.size() == L);
    for (int k = 0; k < L; ++k) {
        CHECK(E.values(k) > -1e-12);
        CHECK(E.values(k) < 1 + 1e-12);
        if (k) CHECK(E.values(k - 1) >= E.values(k));
    }
    CHECK((H.matrix * E.vectors - E.vectors * E.values.asDiagonal()).norm() < 1e-10);
    int above = 0, kernel = 0;
    for (int k = 0; k < L; ++k) {
        above += E.values(k) > 0.5;
        kernel += E.values(k) <= E.kernel_tol;
    }
    CHECK(E.count_above(0.5) == above);
    CHECK(E.kernel_dim == kernel);
    CHECK(E.retained() == L - kernel);
}

TEST_CASE("concentration equals the STFT energy fraction inside the region")
{
    Rng rng(21);
    const Signal phi = gaussian_window(L);
    const Region r = region_disk(L, {12, 30}, 10);
    const auto H = localization_op(phi, r);
    const Signal f = rng.complex_normal_signal(L);
    const CMatrix V = stft(f, phi);
    double inside = 0;
    for (int x = 0; x < L; ++x)
        for (int w = 0; w < L; ++w)
            if (r(x, w)) inside += std::norm(V(x, w));
    CHECK(concentration(H, f) == doctest::Approx(inside / (L * f.squaredNorm())).epsilon(1e-12));
}

TEST_CASE("certificate decides the same as the direct concentration test")
{
    Rng rng(22);
    const auto H = localization_op(gaussian_window(L), region_disk(L, {24, 24}, 10));
    const auto E = eigensystem(H);
    int disagreements = 0;
    for (int s = 0; s < 60; ++s) {
        CVector c = rng.complex_normal_signal(L);
        const int cut = rng.integer(0, L - 1);
        const double wgt = rng.uniform();
        for (int k = cut; k < L; ++k) c(k) *= wgt;
        const Signal f = E.vectors * c;
        for (double eps : {0.05, 0.2, 0.5, 0.8}) {
            const auto cert = concentration_certificate(E, f, eps);
            disagreements += cert.concentrated != (concentration(H, f) >= 1 - eps);
            CHECK(cert.n0 == E.count_at_least(1 - eps));
        }
    }
    CHECK(disagreements == 0);
    CHECK_THROWS_AS(concentration_certificate(E, Signal(Signal::Ones(L)), 1.0), precondition_error);
}

TEST_CASE("eigenspace projector in exact and approximate mode")
{
    Rng rng(23);
    const auto E = eigensystem(localization_op(gaussian_window(L), region_disk(L, {24, 24}, 9)));
    const int N = E.count_above(0.5);
    const EigenspaceProjector P(E, N);
    const CMatrix M = P.matrix();
    CHECK((M * M - M).norm() < 1e-12);
    CHECK((M - M.adjoint()).norm() < 1e-14);
    CHECK(M.trace().real() == doctest::Approx(N));

    const EigenspaceProjector A(E, N, ProjectionMode::approximate);
    const CMatrix Psi = E.vectors.leftCols(N);
    CHECK((A.matrix() - Psi * E.values.head(N).asDiagonal() * Psi.adjoint()).norm() < 1e-12);
    const Signal f = rng.complex_normal_signal(L);
    CHECK((A.apply(f) - A.matrix() * f).norm() < 1e-12);
    CHECK((project(P, f) - M * f).norm() < 1e-12);

    CHECK((EigenspaceProjector(E, L).matrix() - CMatrix::Identity(L, L)).norm() < 1e-10);
    CHECK_THROWS_AS(EigenspaceProjector(E, L + 1), precondition_error);
    CHECK_THROWS_AS(EigenspaceProjector(E, -1), precondition_error);
}

TEST_CASE("shifted projector is the conjugated projector")
{
    const auto E = eigensystem(localization_op(gaussian_window(L), region_disk(L, {24, 24}, 9)));
    const EigenspaceProjector P(E, 10);
    const TFPoint nu{5, 9};
    const CMatrix S = shift_matrix(nu);
    CHECK((P.shifted(nu).matrix() - S * P.matrix() * S.adjoint()).norm() < 1e-12);
}
