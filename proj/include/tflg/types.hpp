#pragma once
#include <Eigen/Core>
#include <complex>
#include <cstdint>

namespace tflg {

template <class Real_>
using complex_type = std::complex<Real_>;

template <class Real_>
using cvec_type = Eigen::Matrix<std::complex<Real_>, Eigen::Dynamic, 1>;

template <class Real_>
using cmat_type = Eigen::Matrix<std::complex<Real_>, Eigen::Dynamic, Eigen::Dynamic>;

template <class Real_>
using rvec_type = Eigen::Matrix<Real_, Eigen::Dynamic, 1>;

template <class Real_>
using rmat_type = Eigen::Matrix<Real_, Eigen::Dynamic, Eigen::Dynamic>;

// The experiment-level modules work in double precision.
using Real = double;
using Complex = complex_type<Real>;
using CVector = cvec_type<Real>;
using CMatrix = cmat_type<Real>;
using RVector = rvec_type<Real>;
using RMatrix = rmat_type<Real>;

/// Element of C^L: signals, windows, eigenfunctions.
using Signal = CVector;

/// L x L array indexed by (time x, frequency w).
using TFMatrix = CMatrix;

/// Grid point of Z_L x Z_L.
struct TFPoint
{
    int x = 0;
    int w = 0;

    friend bool operator==(const TFPoint&, const TFPoint&) = default;
};

/// Reduce an integer index into [0, L).
inline int wrap(long long i, int L)
{
    const long long r = i % L;
    return static_cast<int>(r < 0 ? r + L : r);
}

/// Symmetric representative of i mod L in [-L/2, L/2).
inline int symmetric_rep(long long i, int L)
{
    const int r = wrap(i, L);
    return r >= L - L / 2 ? r - L : r;
}

} // namespace tflg
