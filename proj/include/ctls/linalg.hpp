#pragma once

#include <complex>

#include <Eigen/Dense>

namespace ctls {

using Complex = std::complex<double>;
using Matrix3c = Eigen::Matrix<Complex, 3, 3>;
using Vector3c = Eigen::Matrix<Complex, 3, 1>;

/// Largest absolute entry of a - b.
inline double max_norm_diff(const Matrix3c& a, const Matrix3c& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

/// max |U^dagger U - I|
inline double unitarity_defect(const Matrix3c& u) {
    return max_norm_diff(u.adjoint() * u, Matrix3c::Identity());
}

}  // namespace ctls
