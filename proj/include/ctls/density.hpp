#pragma once

#include "ctls/linalg.hpp"
#include "ctls/thermal.hpp"

namespace ctls {

/// Hermitian, unit-trace 3x3 density matrix over {|1>, |2>, |3>}.
class DensityMatrix3 {
public:
    /// Throws DomainError unless `m` is Hermitian and has unit trace (1e-12).
    explicit DensityMatrix3(const Matrix3c& m);

    /// diag(p1, p2, p3)
    static DensityMatrix3 diagonal(const OccupationTriple& p);

    const Matrix3c& matrix() const { return m_; }
    double population(int n) const { return m_(n, n).real(); }
    OccupationTriple populations() const { return {population(0), population(1), population(2)}; }

private:
    Matrix3c m_;
};

/// U rho U^dagger
DensityMatrix3 apply_to_density(const Matrix3c& u, const DensityMatrix3& rho);

}  // namespace ctls
