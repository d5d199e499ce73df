#pragma once

namespace ctls {

enum class PulseShape { rectangular, gaussian, sin_squared };

const char* to_string(PulseShape shape);
PulseShape parse_pulse_shape(const char* name);

/// Real, non-negative Rabi-frequency envelope (rad/s), zero outside
/// [t_start, t_end]. Gaussians are truncated at the window edges.
class PulseEnvelope {
public:
    static PulseEnvelope rectangular(double peak, double t_start, double t_end);
    /// Centred in the window with standard deviation `width`.
    static PulseEnvelope gaussian(double peak, double t_start, double t_end, double width);
    static PulseEnvelope gaussian(double peak, double t_start, double t_end, double center,
                                  double width);
    static PulseEnvelope sin_squared(double peak, double t_start, double t_end);
    /// Identically zero.
    static PulseEnvelope off();

    /// Envelope of the same shape and window over [t_start, t_start + duration],
    /// with the peak chosen so the pulse area equals `area` (must be >= 0).
    static PulseEnvelope with_area(PulseShape shape, double area, double t_start,
                                   double duration);

    double operator()(double t) const;

    PulseShape shape() const { return shape_; }
    double peak() const { return peak_; }
    double t_start() const { return t_start_; }
    double t_end() const { return t_end_; }
    double center() const { return center_; }
    double width() const { return width_; }
    bool is_off() const { return peak_ == 0.0; }

private:
    PulseEnvelope(PulseShape shape, double peak, double t_start, double t_end, double center,
                  double width);

    PulseShape shape_;
    double peak_;
    double t_start_;
    double t_end_;
    double center_;
    double width_;
};

/// Integral of the envelope over its window: closed form for rectangular,
/// adaptive Gauss-Kronrod quadrature (relative error 1e-10) otherwise.
double pulse_area(const PulseEnvelope& envelope);

/// Uniform grid of `steps` intervals over [t0, t1].
struct TimeGrid {
    double t0 = 0.0;
    double t1 = 0.0;
    int steps = 1;

    double dt() const { return (t1 - t0) / steps; }
    void validate() const;
};

}  // namespace ctls
