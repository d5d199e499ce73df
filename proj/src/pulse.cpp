#include "ctls/pulse.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ctls/error.hpp"

namespace ctls {

namespace {
// Gaussians default to a window of +/- kGaussianHalfWindow standard deviations.
constexpr double kGaussianHalfWindow = 3.0;
}  // namespace

const char* to_string(PulseShape shape) {
    switch (shape) {
        case PulseShape::rectangular: return "rectangular";
        case PulseShape::gaussian: return "gaussian";
        case PulseShape::sin_squared: return "sin_squared";
    }
    return "?";
}

PulseShape parse_pulse_shape(const char* name) {
    const std::string s(name);
    if (s == "rectangular") return PulseShape::rectangular;
    if (s == "gaussian") return PulseShape::gaussian;
    if (s == "sin_squared") return PulseShape::sin_squared;
    throw DomainError("unknown pulse shape '" + s + "'");
}

PulseEnvelope::PulseEnvelope(PulseShape shape, double peak, double t_start, double t_end,
                             double center, double width)
    : shape_(shape), peak_(peak), t_start_(t_start), t_end_(t_end), center_(center),
      width_(width) {
    if (!std::isfinite(peak) || peak < 0.0) throw DomainError("pulse peak must be finite and >= 0");
    if (!std::isfinite(t_start) || !std::isfinite(t_end) || t_end < t_start) {
        throw DomainError("pulse window must satisfy t_start <= t_end");
    }
    if (shape == PulseShape::gaussian && !(width > 0.0)) {
        throw DomainError("gaussian width must be positive");
    }
}

PulseEnvelope PulseEnvelope::rectangular(double peak, double t_start, double t_end) {
    return {PulseShape::rectangular, peak, t_start, t_end, 0.5 * (t_start + t_end), 0.0};
}

PulseEnvelope PulseEnvelope::gaussian(double peak, double t_start, double t_end, double width) {
    return gaussian(peak, t_start, t_end, 0.5 * (t_start + t_end), width);
}

PulseEnvelope PulseEnvelope::gaussian(double peak, double t_start, double t_end, double center,
                                      double width) {
    return {PulseShape::gaussian, peak, t_start, t_end, center, width};
}

PulseEnvelope PulseEnvelope::sin_squared(double peak, double t_start, double t_end) {
    return {PulseShape::sin_squared, peak, t_start, t_end, 0.5 * (t_start + t_end), 0.0};
}

PulseEnvelope PulseEnvelope::off() { return rectangular(0.0, 0.0, 0.0); }

PulseEnvelope PulseEnvelope::with_area(PulseShape shape, double area, double t_start,
                                       double duration) {
    if (!(area >= 0.0)) throw DomainError("envelope area must be non-negative");
    if (!(duration > 0.0)) throw DomainError("pulse duration must be positive");
    const double t_end = t_start + duration;
    PulseEnvelope unit = [&] {
        switch (shape) {
            case PulseShape::gaussian:
                return gaussian(1.0, t_start, t_end, duration / (2.0 * kGaussianHalfWindow));
            case PulseShape::sin_squared: return sin_squared(1.0, t_start, t_end);
            case PulseShape::rectangular: break;
        }
        return rectangular(1.0, t_start, t_end);
    }();
    unit.peak_ = area / pulse_area(unit);
    return unit;
}

double PulseEnvelope::operator()(double t) const {
    if (t < t_start_ || t > t_end_ || peak_ == 0.0) return 0.0;
    switch (shape_) {
        case PulseShape::rectangular: return peak_;
        case PulseShape::gaussian: {
            const double x = (t - center_) / width_;
            return peak_ * std::exp(-0.5 * x * x);
        }
        case PulseShape::sin_squared: {
            const double s = std::sin(std::numbers::pi * (t - t_start_) / (t_end_ - t_start_));
            return peak_ * s * s;
        }
    }
    return 0.0;
}

double pulse_area(const PulseEnvelope& envelope) {
    const double duration = envelope.t_end() - envelope.t_start();
    if (envelope.is_off() || duration == 0.0) return 0.0;
    if (envelope.shape() == PulseShape::rectangular) return envelope.peak() * duration;

    // Integrate on the unit interval so the tolerance is scale-free.
    auto f = [&](double u) { return envelope(envelope.t_start() + u * duration); };
    double error = 0.0;
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 15, 1e-12, &error);
    return integral * duration;
}

void TimeGrid::validate() const {
    if (steps < 1) throw DomainError("time grid needs at least one step");
    if (!(t1 > t0) || !std::isfinite(t0) || !std::isfinite(t1)) {
        throw DomainError("time grid window must satisfy t0 < t1");
    }
}

}  // namespace ctls
