#include "wps/fit.hpp"

#include <cmath>
#include <limits>

#include "wps/errors.hpp"

namespace wps {

double japanese(double t) { return std::sqrt(1.0 + t * t); }

DecayFit fit_power_law(const std::vector<double>& t, const std::vector<double>& y) {
    if (t.size() != y.size()) throw ParameterError("fit: t and y differ in length");
    std::vector<double> lx, ly;
    DecayFit fit;
    fit.t_min = std::numeric_limits<double>::infinity();
    fit.t_max = -fit.t_min;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(y[i] > kFitFloor) || !(t[i] > 0.0)) continue;
        lx.push_back(std::log(t[i]));
        ly.push_back(std::log(y[i]));
        fit.t_min = std::min(fit.t_min, t[i]);
        fit.t_max = std::max(fit.t_max, t[i]);
    }
    fit.samples = int(lx.size());
    if (fit.samples < 2) {
        fit.exponent = std::numeric_limits<double>::quiet_NaN();
        fit.prefactor = std::numeric_limits<double>::quiet_NaN();
        fit.r_squared = std::numeric_limits<double>::quiet_NaN();
        return fit;
    }
    const double n = double(lx.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) throw ParameterError("fit: all sample times coincide");
    fit.exponent = sxy / sxx;
    fit.prefactor = std::exp(my - fit.exponent * mx);
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

}  // namespace wps
