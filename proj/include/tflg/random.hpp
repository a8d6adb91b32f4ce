#pragma once
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <tflg/types.hpp>

namespace tflg {

/**
 * Seeded generator: std::mt19937_64 (fully specified by the standard) with
 * normals from Box-Muller on 53-bit uniforms, so streams match across platforms.
 */
class Rng
{
    std::mt19937_64 _engine;

public:
    explicit Rng(std::uint64_t seed) : _engine(seed) {}

    /// Uniform on (0, 1].
    double uniform()
    {
        return (static_cast<double>(_engine() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform integer in [lo, hi].
    int integer(int lo, int hi)
    {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(_engine() % span);
    }

    /// Standard complex normal: real and imaginary parts N(0, 1/2).
    Complex complex_normal()
    {
        const double r = std::sqrt(-std::log(uniform()));
        const double th = 2 * std::numbers::pi * uniform();
        return {r * std::cos(th), r * std::sin(th)};
    }

    Signal complex_normal_signal(int L)
    {
        Signal f(L);
        for (int t = 0; t < L; ++t) f(t) = complex_normal();
        return f;
    }

    /// I.i.d. complex normal, normalized to unit energy.
    Signal unit_signal(int L) { return complex_normal_signal(L).normalized(); }
};

} // namespace tflg
