#include "ctls/rotor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ctls/error.hpp"

namespace ctls {

RotationalConstants::RotationalConstants(double a_ghz, double b_ghz, double c_ghz)
    : a_(a_ghz), b_(b_ghz), c_(c_ghz) {
    if (!std::isfinite(a_) || !std::isfinite(b_) || !std::isfinite(c_)) {
        throw DomainError("rotational constants must be finite");
    }
    if (!(a_ >= b_ && b_ >= c_ && c_ > 0.0)) {
        throw DomainError("rotational constants must satisfy A >= B >= C > 0");
    }
}

RotationalConstants propanediol_constants() { return {8.5244, 3.6354, 2.7887}; }

namespace {

void require_j(int J) {
    if (J < 0) throw DomainError("J must be non-negative, got " + std::to_string(J));
}

double diagonal_element(int J, int k, const RotationalConstants& c) {
    const double jj = double(J) * (J + 1);
    return 0.5 * (c.B() + c.C()) * (jj - double(k) * k) + c.A() * double(k) * k;
}

// <J,k+2| H |J,k>
double raise_two_element(int J, int k, const RotationalConstants& c) {
    const double jj = double(J) * (J + 1);
    return 0.25 * (c.B() - c.C()) * std::sqrt(jj - double(k) * (k + 1)) *
           std::sqrt(jj - double(k + 1) * (k + 2));
}

// H only couples k to k +/- 2, so the even-k and odd-k subsets each form a
// symmetric tridiagonal matrix.
void append_parity_eigenvalues(int J, int first_k, const RotationalConstants& c,
                               std::vector<double>& out) {
    if (first_k > J) return;
    const int n = (J - first_k) / 2 + 1;
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) {
        const int k = first_k + 2 * i;
        diag(i) = diagonal_element(J, k, c);
        if (i + 1 < n) sub(i) = raise_two_element(J, k, c);
    }
    if (n == 1) {
        out.push_back(diag(0));
        return;
    }
    // computeFromTridiagonal skips the scaling that compute() applies; without
    // it the QL iteration can stall on large blocks.
    const double scale = std::max(diag.cwiseAbs().maxCoeff(), sub.cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag / scale, sub / scale, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("rotor eigensolver failed to converge for J = " + std::to_string(J));
    }
    for (int i = 0; i < n; ++i) out.push_back(scale * solver.eigenvalues()(i));
}

}  // namespace

Eigen::MatrixXd build_rotor_block(int J, const RotationalConstants& constants) {
    require_j(J);
    const int n = 2 * J + 1;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const int k = i - J;
        h(i, i) = diagonal_element(J, k, constants);
        if (i + 2 < n) {
            const double v = raise_two_element(J, k, constants);
            h(i, i + 2) = v;
            h(i + 2, i) = v;
        }
    }
    return h;
}

std::vector<RotorLevel> rotor_levels(int J, const RotationalConstants& constants) {
    require_j(J);
    std::vector<double> energies;
    energies.reserve(2 * J + 1);
    append_parity_eigenvalues(J, -J, constants, energies);
    append_parity_eigenvalues(J, -J + 1, constants, energies);
    std::stable_sort(energies.begin(), energies.end());

    std::vector<RotorLevel> levels;
    levels.reserve(energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i) {
        // Rounding can push the J = 0 (or k = 0, B = C) eigenvalue a hair below zero.
        const double e = (J == 0) ? 0.0 : std::max(energies[i], 0.0);
        levels.push_back({J, static_cast<int>(i) - J, e, 2 * J + 1});
    }
    return levels;
}

RotorSpectrum::RotorSpectrum(const RotationalConstants& constants, int j_max)
    : constants_(constants), j_max_(j_max) {
    if (j_max < 0) throw DomainError("J_max must be non-negative");
    levels_.reserve(static_cast<std::size_t>(j_max + 1) * (j_max + 1));
    for (int J = 0; J <= j_max; ++J) {
        auto block = rotor_levels(J, constants);
        levels_.insert(levels_.end(), block.begin(), block.end());
    }
}

std::span<const RotorLevel> RotorSpectrum::block(int J) const {
    if (J < 0 || J > j_max_) {
        throw DomainError("J = " + std::to_string(J) + " outside spectrum range 0.." +
                          std::to_string(j_max_));
    }
    // Blocks 0..J-1 hold sum(2j+1) = J^2 levels.
    return std::span<const RotorLevel>(levels_).subspan(std::size_t(J) * J, 2 * J + 1);
}

const RotorLevel& RotorSpectrum::level(int J, int tau) const {
    auto b = block(J);
    if (tau < -J || tau > J) {
        throw DomainError("tau = " + std::to_string(tau) + " outside [-J, J] for J = " +
                          std::to_string(J));
    }
    return b[tau + J];
}

RotorSpectrum rotor_spectrum(const RotationalConstants& constants, int j_max) {
    return RotorSpectrum(constants, j_max);
}

}  // namespace ctls
