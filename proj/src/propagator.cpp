#include "ctls/propagator.hpp"

#include <cmath>
#include <string>

#include "ctls/error.hpp"

namespace ctls {

namespace {

constexpr double kAreaTolerance = 1e-9;

const char* step_name(ProtocolStep s) {
    switch (s) {
        case ProtocolStep::A: return "A";
        case ProtocolStep::B: return "B";
        case ProtocolStep::C: return "C";
    }
    return "?";
}

// exp(-i H dt) for Hermitian H via its eigendecomposition.
Matrix3c hermitian_exponential(const Matrix3c& h, double dt) {
    Eigen::SelfAdjointEigenSolver<Matrix3c> solver(h);
    if (solver.info() != Eigen::Success) throw NumericalError("Hamiltonian diagonalization failed");
    const auto& v = solver.eigenvectors();
    Vector3c phases;
    for (int i = 0; i < 3; ++i) phases(i) = std::exp(Complex(0.0, -solver.eigenvalues()(i) * dt));
    return v * phases.asDiagonal() * v.adjoint();
}

bool is_step_c_area(double area) {
    // -pi/4, or equivalently (k + 3/4) pi.
    const double k = (area + std::numbers::pi / 4) / std::numbers::pi;
    return std::abs(k - std::round(k)) * std::numbers::pi < kAreaTolerance;
}

}  // namespace

Matrix3c interaction_hamiltonian(double t, const CouplingSet& fields) {
    Matrix3c h = Matrix3c::Zero();
    for (Transition tr : kTransitions) {
        const DriveField& f = fields[tr];
        const auto [n, m] = levels_of(tr);
        const Complex coupling = f.rabi(t) * std::exp(Complex(0.0, f.detuning * t));
        h(n, m) += coupling;
        h(m, n) += std::conj(coupling);
    }
    return h;
}

Matrix3c propagate(const CouplingSet& fields, const TimeGrid& grid) {
    grid.validate();
    const double dt = grid.dt();
    Matrix3c u = Matrix3c::Identity();
    for (int k = 0; k < grid.steps; ++k) {
        const double t_mid = grid.t0 + (k + 0.5) * dt;
        const Matrix3c h = interaction_hamiltonian(t_mid, fields);
        if (!h.allFinite()) throw NumericalError("non-finite Rabi amplitude at t = " + std::to_string(t_mid));
        if (h.cwiseAbs().maxCoeff() == 0.0) continue;
        u = hermitian_exponential(h, dt) * u;
    }
    // Rounding accumulates over long grids; return the nearest unitary
    // (polar factor), which differs from u by O(N eps).
    Eigen::JacobiSVD<Matrix3c> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

PulseSchedule::PulseSchedule(std::array<StepPulse, 3> steps) : steps_(std::move(steps)) {
    constexpr std::array<ProtocolStep, 3> order{ProtocolStep::A, ProtocolStep::B, ProtocolStep::C};
    for (int i = 0; i < 3; ++i) {
        const StepPulse& s = steps_[i];
        if (s.step != order[i]) throw ConfigError("schedule steps must be ordered A, B, C");
        if (!(s.envelope.t_end() > s.envelope.t_start())) {
            throw ConfigError(std::string("step ") + step_name(s.step) + " has an empty time window");
        }
        if (i > 0 && s.envelope.t_start() < steps_[i - 1].envelope.t_end()) {
            throw ConfigError(std::string("step ") + step_name(s.step) +
                              " overlaps the previous step");
        }
        const double area = pulse_area(s.envelope);
        if (std::abs(area - std::abs(s.target_area)) > kAreaTolerance * std::max(1.0, area)) {
            throw ConfigError(std::string("step ") + step_name(s.step) + " envelope area " +
                              std::to_string(area) + " does not match target |" +
                              std::to_string(s.target_area) + "|");
        }
    }
    if (std::abs(steps_[0].target_area - kStepAArea) > kAreaTolerance) {
        throw ConfigError("step A must have pulse area pi/4");
    }
    if (std::abs(steps_[1].target_area - kStepBArea) > kAreaTolerance) {
        throw ConfigError("step B must have pulse area pi/2");
    }
    if (!is_step_c_area(steps_[2].target_area)) {
        throw ConfigError("step C must have pulse area -pi/4 (mod pi)");
    }
}

PulseSchedule PulseSchedule::ideal(PulseShape shape, double step_duration, double gap,
                                   double step_c_area) {
    if (!(gap >= 0.0)) throw ConfigError("gap between steps must be non-negative");
    std::array<StepPulse, 3> steps;
    const std::array<ProtocolStep, 3> order{ProtocolStep::A, ProtocolStep::B, ProtocolStep::C};
    const std::array<double, 3> areas{kStepAArea, kStepBArea, step_c_area};
    double t = 0.0;
    for (int i = 0; i < 3; ++i) {
        steps[i] = {order[i],
                    PulseEnvelope::with_area(shape, std::abs(areas[i]), t, step_duration),
                    areas[i]};
        t += step_duration + gap;
    }
    return PulseSchedule(steps);
}

BaseCouplings PulseSchedule::base_couplings(ProtocolStep s) const {
    const StepPulse& sp = step(s);
    BaseCouplings base;
    for (Transition tr : kTransitions) base[tr] = DriveField{tr};

    if (s == ProtocolStep::B) {
        const double r = 1.0 / std::numbers::sqrt2;
        // Omega_12 = i Omega_0 / sqrt(2), Omega_23 = Omega_0 / sqrt(2)
        base[Transition::t12]->prefactor = Complex(0.0, r);
        base[Transition::t12]->envelope = sp.envelope;
        base[Transition::t23]->prefactor = Complex(r, 0.0);
        base[Transition::t23]->envelope = sp.envelope;
    } else {
        // A negative area is a pi phase flip on a non-negative envelope.
        base[Transition::t13]->prefactor = sp.target_area < 0.0 ? -1.0 : 1.0;
        base[Transition::t13]->envelope = sp.envelope;
    }
    return base;
}

ProtocolResult run_protocol(const PulseSchedule& schedule, Chirality q, int steps_per_pulse) {
    ProtocolResult result;
    result.total = Matrix3c::Identity();
    for (int i = 0; i < 3; ++i) {
        const StepPulse& sp = schedule.steps()[i];
        const CouplingSet fields = signed_couplings(schedule.base_couplings(sp.step), q);
        const TimeGrid grid{sp.envelope.t_start(), sp.envelope.t_end(), steps_per_pulse};
        result.step_unitaries[i] = propagate(fields, grid);
        result.total = result.step_unitaries[i] * result.total;
    }
    return result;
}

}  // namespace ctls
