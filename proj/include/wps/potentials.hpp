#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wps/grid.hpp"

namespace wps {

enum class Family { power_law, poschl_teller, zero };
enum class Profile { constant, sinusoidal, ramp };

struct PotentialSpec {
    Family family = Family::zero;
    double delta = 2.0;
    double coupling = 0.0;
    Profile profile = Profile::constant;
    double omega = 0.0;      // sinusoidal: g(t) = g0 cos(omega t)
    double ramp_time = 1.0;  // ramp: g(t) = g0 min(1, |t| / ramp_time)
    std::optional<double> rho;
    std::array<double, 2> center{0.0, 0.0};
    double time_shift = 0.0;  // evaluate V(t + time_shift); used for tau != 0

    bool time_independent() const;
};

void validate(const PotentialSpec& spec);

double coupling_at(const PotentialSpec& spec, double t);

// chi0: 0 for |u| <= 1/2, 1 for |u| >= 1, smooth ramp between
double chi0(double u);

rvec evaluate(const PotentialSpec& spec, double t, const SpatialGrid& grid);

struct SupBoundReport {
    std::vector<double> t;
    std::vector<double> product;  // max_x |V_rho(t,x)| <t>^delta
    double bound = 0.0;           // t-independent analytic constant
    bool within() const;
};

SupBoundReport sup_bound_check(const PotentialSpec& spec, const std::vector<double>& t_samples,
                               const SpatialGrid& grid);

// max over the lattice of |V(t,x)| (1 + |x - center|)^delta
double short_range_envelope(const PotentialSpec& spec, double t, const SpatialGrid& grid);

// Ground state of -1/2 d^2 - sech^2(x): sech(x)/sqrt(2), E = -1/2.
std::pair<WaveFunction, double> bound_state(const SpatialGrid& grid);

std::string family_name(Family f);
std::string profile_name(Profile p);
Family parse_family(const std::string& s);
Profile parse_profile(const std::string& s);

}  // namespace wps
