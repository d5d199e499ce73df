#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ctls {

/// Asymmetric-top rotational constants as level frequencies (energy/h), GHz.
/// Construction enforces A >= B >= C > 0.
class RotationalConstants {
public:
    RotationalConstants(double a_ghz, double b_ghz, double c_ghz);

    double A() const { return a_; }
    double B() const { return b_; }
    double C() const { return c_; }

    bool operator==(const RotationalConstants&) const = default;

private:
    double a_;
    double b_;
    double c_;
};

/// 1,2-propanediol: A = 8.5244, B = 3.6354, C = 2.7887 GHz.
RotationalConstants propanediol_constants();

/// One asymmetric-top level |J_tau>. tau runs -J..J in ascending energy.
struct RotorLevel {
    int J = 0;
    int tau = 0;
    double energy_ghz = 0.0;
    int degeneracy = 1;  // 2J+1 magnetic sublevels
};

/// Rigid-rotor Hamiltonian block for fixed J in the symmetric-top basis
/// |J,k>, k = -J..J, quantization axis along the a-axis. Units GHz.
Eigen::MatrixXd build_rotor_block(int J, const RotationalConstants& constants);

/// Eigenvalues of the J block, ascending, labelled tau = -J..J.
std::vector<RotorLevel> rotor_levels(int J, const RotationalConstants& constants);

/// All levels for J = 0..J_max, grouped by J.
class RotorSpectrum {
public:
    RotorSpectrum(const RotationalConstants& constants, int j_max);

    const RotationalConstants& constants() const { return constants_; }
    int j_max() const { return j_max_; }
    std::span<const RotorLevel> levels() const { return levels_; }
    /// The 2J+1 levels of one J block, tau ascending.
    std::span<const RotorLevel> block(int J) const;
    const RotorLevel& level(int J, int tau) const;

private:
    RotationalConstants constants_;
    int j_max_;
    std::vector<RotorLevel> levels_;
};

RotorSpectrum rotor_spectrum(const RotationalConstants& constants, int j_max);

}  // namespace ctls
