#include "ctls/density.hpp"

#include <cmath>

#include "ctls/error.hpp"

namespace ctls {

namespace {
constexpr double kTolerance = 1e-12;
}

DensityMatrix3::DensityMatrix3(const Matrix3c& m) : m_(m) {
    if (!m.allFinite()) throw DomainError("density matrix has non-finite entries");
    if (max_norm_diff(m, m.adjoint()) > kTolerance) {
        throw DomainError("density matrix is not Hermitian");
    }
    if (std::abs(m.trace() - Complex(1.0, 0.0)) > kTolerance) {
        throw DomainError("density matrix must have unit trace");
    }
}

DensityMatrix3 DensityMatrix3::diagonal(const OccupationTriple& p) {
    p.validate();
    Matrix3c m = Matrix3c::Zero();
    m(0, 0) = p.p1;
    m(1, 1) = p.p2;
    m(2, 2) = p.p3;
    return DensityMatrix3(m);
}

DensityMatrix3 apply_to_density(const Matrix3c& u, const DensityMatrix3& rho) {
    Matrix3c out = u * rho.matrix() * u.adjoint();
    // Symmetrize away rounding asymmetry; the trace check still applies.
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityMatrix3(out);
}

}  // namespace ctls
