#include <doctest.h>
#include <tflg/dsignal.hpp>
#include <tflg/random.hpp>

#include <filesystem>
#include <numbers>

using namespace tflg;

namespace {

Complex e(double turns) { return std::polar(1.0, 2 * std::numbers::pi * turns); }

// direct triple loop, no shared code with the library
CMatrix naive_stft(const Signal& f, const Signal& phi)
{
    const int L = static_cast<int>(f.size());
    CMatrix V(L, L);
    for (int x = 0; x < L; ++x)
        for (int w = 0; w < L; ++w) {
            Complex acc = 0;
            for (int t = 0; t < L; ++t) acc += f(t) * std::conj(phi(((t - x) % L + L) % L)) * e(-double(w) * t / L);
            V(x, w) = acc;
        }
    return V;
}

} // namespace

TEST_CASE("roots of unity are conjugate symmetric bitwise")
{
    for (int L : {7, 24, 480}) {
        const auto r = roots_of_unity<double>(L, +1);
        CHECK(r(0) == Complex(1, 0));
        for (int k = 1; k < L; ++k) CHECK(r(L - k) == std::conj(r(k)));
    }
}

TEST_CASE("dft_matrix matches the exponential formula and is unitary up to L")
{
    const int L = 30;
    const CMatrix F = dft_matrix<double>(L, -1);
    double worst = 0;
    for (int j = 0; j < L; ++j)
        for (int k = 0; k < L; ++k) worst = std::max(worst, std::abs(F(j, k) - e(-double(j) * k / L)));
    CHECK(worst < 1e-13);
    CHECK((F.adjoint() * F - L * CMatrix::Identity(L, L)).norm() < 1e-10);
}

TEST_CASE("tf_shift matches its definition and composes with a phase")
{
    const int L = 36;
    Rng rng(1);
    const Signal f = rng.complex_normal_signal(L);
    const TFPoint z{5, -7};
    const Signal s = tf_shift(f, z);
    for (int t = 0; t < L; ++t) CHECK(std::abs(s(t) - f(((t - 5) % L + L) % L) * e(-7.0 * t / L)) < 1e-12);

    // pi(x1,w1) pi(x2,w2) = e^{-2 pi i w2 x1 / L} pi(x1+x2, w1+w2)
    const TFPoint z1{3, 4}, z2{11, -2};
    const Signal lhs = tf_shift(tf_shift(f, z2), z1);
    const Signal rhs = e(-double(z2.w) * z1.x / L) * tf_shift(f, TFPoint{z1.x + z2.x, z1.w + z2.w});
    CHECK((lhs - rhs).norm() < 1e-12);
    CHECK(tf_shift(f, TFPoint{L, 2 * L}) == f);
}

TEST_CASE("stft agrees with a direct evaluation")
{
    const int L = 24;
    Rng rng(2);
    const Signal f = rng.complex_normal_signal(L);
    const Signal phi = rng.complex_normal_signal(L);
    CHECK((stft(f, phi) - naive_stft(f, phi)).norm() < 1e-10);
}

TEST_CASE("stft energy identity and inversion")
{
    const int L = 60;
    Rng rng(3);
    const Signal f = rng.complex_normal_signal(L);
    const Signal phi = gaussian_window(L);
    const CMatrix V = stft(f, phi);
    CHECK(V.squaredNorm() == doctest::Approx(L * f.squaredNorm()).epsilon(1e-12));
    CHECK((istft(V, phi) - f).norm() < 1e-11 * f.norm());
    CHECK_THROWS_AS(istft(V, Signal(2 * phi)), precondition_error);
    CHECK_THROWS_AS(stft(f, Signal(Signal::Zero(L))), precondition_error);
    CHECK_THROWS_AS(stft(f, Signal(Signal::Ones(L + 1))), precondition_error);
}

TEST_CASE("gaussian window: unit norm, even, and fixed by the unitary DFT")
{
    for (int L : {16, 48, 480}) {
        const Signal g = gaussian_window(L);
        CHECK(g.norm() == doctest::Approx(1).epsilon(1e-14));
        for (int t = 1; t < L; ++t) CHECK(g(t) == g(L - t));
        const Signal Fg = dft_matrix<double>(L, -1) * g / std::sqrt(double(L));
        CHECK((Fg - g).norm() < 1e-12);
    }
    CHECK_THROWS_AS(gaussian_window(3), precondition_error);
}

TEST_CASE("templates work in single precision")
{
    const auto g = gaussian_window<float>(32);
    const auto V = stft(g, g);
    CHECK(V.squaredNorm() == doctest::Approx(32.0f).epsilon(1e-4));
}

TEST_CASE("signal CSV round trip is exact")
{
    Rng rng(4);
    const Signal f = rng.complex_normal_signal(17);
    const auto path = (std::filesystem::path(TFLG_TEST_TMP) / "signal_roundtrip.csv").string();
    write_signal_csv(path, f);
    CHECK(read_signal_csv(path) == f);
    CHECK_THROWS(read_signal_csv(path + ".missing"));
}
