#include "wps/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wps/errors.hpp"
#include "wps/fit.hpp"

namespace wps {

namespace {

double psi_ramp(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

double radius(const std::array<double, 2>& x, const std::array<double, 2>& c) {
    return std::hypot(x[0] - c[0], x[1] - c[1]);
}

}  // namespace

bool PotentialSpec::time_independent() const {
    return family == Family::zero || family == Family::poschl_teller ||
           (profile == Profile::constant && !rho.has_value());
}

void validate(const PotentialSpec& spec) {
    if (spec.family == Family::power_law && !(spec.delta > 1.0)) {
        std::ostringstream os;
        os << "potential.delta = " << spec.delta
           << " violates the short-range assumption |V| <= C(1+|x|)^-delta with delta > 1";
        throw ParameterError(os.str());
    }
    if (spec.rho && !(*spec.rho > 0.0 && *spec.rho < 1.0)) throw ParameterError("potential.rho must lie in (0, 1)");
    if (spec.profile == Profile::ramp && !(spec.ramp_time > 0.0)) throw ParameterError("potential.ramp_time must be positive");
    if (!std::isfinite(spec.coupling)) throw ParameterError("potential.g0 must be finite");
}

double coupling_at(const PotentialSpec& spec, double t) {
    switch (spec.profile) {
        case Profile::constant: return spec.coupling;
        case Profile::sinusoidal: return spec.coupling * std::cos(spec.omega * t);
        case Profile::ramp: return spec.coupling * std::min(1.0, std::abs(t) / spec.ramp_time);
    }
    return spec.coupling;
}

double chi0(double u) {
    double s = 2.0 * std::abs(u) - 1.0;
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    double a = psi_ramp(s), b = psi_ramp(1.0 - s);
    return a / (a + b);
}

rvec evaluate(const PotentialSpec& spec, double t, const SpatialGrid& grid) {
    validate(spec);
    rvec v(grid.size(), 0.0);
    if (spec.family == Family::zero) return v;
    const double tt = t + spec.time_shift;
    const double g = spec.family == Family::power_law ? coupling_at(spec, tt) : spec.coupling;
    const double cut = spec.rho ? *spec.rho * japanese(tt) : 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto x = grid.position(i);
        double r = radius(x, spec.center);
        double val;
        if (spec.family == Family::power_law) {
            val = g * std::pow(1.0 + r * r, -0.5 * spec.delta);
        } else {
            double s = 1.0 / std::cosh(r);
            val = -g * s * s;
        }
        if (spec.rho) val *= chi0(std::hypot(x[0], x[1]) / cut);
        v[i] = val;
    }
    return v;
}

bool SupBoundReport::within() const {
    for (double p : product)
        if (p > bound * (1.0 + 1e-12)) return false;
    return true;
}

SupBoundReport sup_bound_check(const PotentialSpec& spec, const std::vector<double>& t_samples,
                               const SpatialGrid& grid) {
    if (!spec.rho) throw ParameterError("sup_bound_check needs potential.rho");
    if (spec.center[0] != 0.0 || spec.center[1] != 0.0)
        throw UnsupportedError("sup_bound_check assumes a potential centered at the origin");
    SupBoundReport rep;
    const double rho = *spec.rho;
    const double g0 = std::abs(spec.coupling);
    switch (spec.family) {
        case Family::zero: rep.bound = 0.0; break;
        case Family::power_law: rep.bound = g0 * std::pow(0.5 * rho, -spec.delta); break;
        case Family::poschl_teller: {
            double ts = std::max(1.0, spec.delta / rho);
            // sech^2(r) <= 4 e^{-2r} on |x| >= rho<t>/2, then maximize e^{-rho s} s^delta over s >= 1
            rep.bound = 4.0 * g0 * std::exp(-rho * ts) * std::pow(ts, spec.delta);
            break;
        }
    }
    for (double t : t_samples) {
        auto v = evaluate(spec, t, grid);
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        rep.t.push_back(t);
        rep.product.push_back(m * std::pow(japanese(t + spec.time_shift), spec.delta));
    }
    return rep;
}

double short_range_envelope(const PotentialSpec& spec, double t, const SpatialGrid& grid) {
    auto v = evaluate(spec, t, grid);
    double m = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double r = radius(grid.position(i), spec.center);
        m = std::max(m, std::abs(v[i]) * std::pow(1.0 + r, spec.delta));
    }
    return m;
}

std::pair<WaveFunction, double> bound_state(const SpatialGrid& grid) {
    if (grid.dim() != 1) throw UnsupportedError("bound_state is closed-form only in one dimension");
    WaveFunction f(grid);
    for (int j = 0; j < grid.n(); ++j) f.values[j] = 1.0 / (std::cosh(grid.x(j)) * std::sqrt(2.0));
    return {f, -0.5};
}

std::string family_name(Family f) {
    switch (f) {
        case Family::power_law: return "power_law";
        case Family::poschl_teller: return "poschl_teller";
        case Family::zero: return "zero";
    }
    return "?";
}

std::string profile_name(Profile p) {
    switch (p) {
        case Profile::constant: return "constant";
        case Profile::sinusoidal: return "sinusoidal";
        case Profile::ramp: return "ramp";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    if (s == "power_law") return Family::power_law;
    if (s == "poschl_teller") return Family::poschl_teller;
    if (s == "zero") return Family::zero;
    throw ParameterError("unknown potential family '" + s + "'");
}

Profile parse_profile(const std::string& s) {
    if (s == "constant") return Profile::constant;
    if (s == "sinusoidal") return Profile::sinusoidal;
    if (s == "ramp") return Profile::ramp;
    throw ParameterError("unknown time profile '" + s + "'");
}

}  // namespace wps
