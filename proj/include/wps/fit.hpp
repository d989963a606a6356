#pragma once

#include <vector>

namespace wps {

struct DecayFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double r_squared = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    int samples = 0;  // points that survived the floor filter
    bool valid() const { return samples >= 2; }
};

// Values at or below this are treated as round-off and dropped from fits.
inline constexpr double kFitFloor = 10.0 * 2.220446049250313e-16;

// Least squares of log y against log t over samples with y > kFitFloor.
DecayFit fit_power_law(const std::vector<double>& t, const std::vector<double>& y);

// <t> = sqrt(1 + t^2)
double japanese(double t);

}  // namespace wps
