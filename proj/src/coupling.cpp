#include "ctls/coupling.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ctls/error.hpp"

namespace ctls {

const char* to_string(Chirality q) { return q == Chirality::L ? "L" : "R"; }

Chirality parse_chirality(const char* name) {
    const std::string s(name);
    if (s == "L" || s == "l") return Chirality::L;
    if (s == "R" || s == "r") return Chirality::R;
    throw DomainError("chirality must be L or R, got '" + s + "'");
}

std::array<int, 2> levels_of(Transition tr) {
    switch (tr) {
        case Transition::t12: return {0, 1};
        case Transition::t23: return {1, 2};
        case Transition::t13: return {0, 2};
    }
    return {0, 0};
}

CouplingSet signed_couplings(const BaseCouplings& base, Chirality q) {
    CouplingSet out;
    out.chirality = q;
    for (Transition tr : kTransitions) {
        const auto& field = base[tr];
        if (!field) {
            const auto [n, m] = levels_of(tr);
            throw DomainError("coupling set is missing transition (" + std::to_string(n + 1) +
                              "," + std::to_string(m + 1) + ")");
        }
        out[tr] = *field;
        out[tr].transition = tr;
    }
    if (q == Chirality::L) out[Transition::t13].prefactor = -out[Transition::t13].prefactor;
    return out;
}

double overall_phase(const CouplingSet& couplings, double t) {
    const Complex o12 = couplings[Transition::t12].rabi(t);
    const Complex o23 = couplings[Transition::t23].rabi(t);
    const Complex o13 = couplings[Transition::t13].rabi(t);
    if (o12 == 0.0 || o23 == 0.0 || o13 == 0.0) {
        throw DomainError("overall phase undefined: a loop amplitude vanishes");
    }
    double phi = std::arg(o12 * o23 * std::conj(o13));
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    if (phi >= 2.0 * std::numbers::pi) phi -= 2.0 * std::numbers::pi;
    return phi;
}

namespace {

// exp(-i theta (|1><3| + |3><1|)) for theta = sign * pi/4.
Matrix3c rotation_13(double sign) {
    const double r = 1.0 / std::numbers::sqrt2;
    const Complex off(0.0, -sign * r);
    Matrix3c u;
    u << r, 0.0, off,
         0.0, 1.0, 0.0,
         off, 0.0, r;
    return u;
}

}  // namespace

Matrix3c analytic_step_unitary(ProtocolStep step, Chirality q) {
    // Sign of the (1,3) amplitude seen by this enantiomer.
    const double chiral_sign = (q == Chirality::L) ? -1.0 : 1.0;
    switch (step) {
        case ProtocolStep::A: return rotation_13(chiral_sign);
        case ProtocolStep::C: return rotation_13(-chiral_sign);
        case ProtocolStep::B: {
            const double r = 1.0 / std::numbers::sqrt2;
            const Complex i(0.0, 1.0);
            Matrix3c u;
            u << 0.5, r, -0.5 * i,
                 -r, 0.0, -r * i,
                 0.5 * i, -r * i, 0.5;
            return u;
        }
    }
    return Matrix3c::Identity();
}

Matrix3c total_unitary(Chirality q) {
    return analytic_step_unitary(ProtocolStep::C, q) * analytic_step_unitary(ProtocolStep::B, q) *
           analytic_step_unitary(ProtocolStep::A, q);
}

Vector3c bright_state(Chirality) {
    const double r = 1.0 / std::numbers::sqrt2;
    return Vector3c(Complex(0.0, r), 0.0, r);
}

}  // namespace ctls
