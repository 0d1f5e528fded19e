#pragma once

#include <complex>
#include <Eigen/Dense>

namespace cyclelab {

using cplx = std::complex<double>;

// Small dense types; scenarios live in dimension <= kMaxDim, so storage stays on the stack.
inline constexpr int kMaxDim = 4;

using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
using CVec = Eigen::Matrix<cplx, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using CRow = Eigen::Matrix<cplx, 1, Eigen::Dynamic, Eigen::RowMajor, 1, kMaxDim>;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

/// Numerical tolerances shared by all modules. Every field can be overridden from a config file.
struct Tolerances {
    double det = 1e-10;
    double membership = 1e-10;
    double sign_margin = 1e-14;
    double rank = 1e-8;
    double intersection = 1e-10;
    double zero_band = 1e-6;
    double fd_step = 1e-3;
    double boundary = 1e-15;  ///< distance to B_S below which r_S reports OnCellBoundary
    double probe_radius = 1e-2;
};

}  // namespace cyclelab
