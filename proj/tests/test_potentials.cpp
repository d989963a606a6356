#include <doctest.h>

#include <cmath>

#include "wps/errors.hpp"
#include "wps/potentials.hpp"
#include "wps/propagators.hpp"

using namespace wps;

namespace {

PotentialSpec power_law(double delta, double g0) {
    PotentialSpec p;
    p.family = Family::power_law;
    p.delta = delta;
    p.coupling = g0;
    return p;
}

}  // namespace

TEST_CASE("zero and power-law values") {
    SpatialGrid g(1, 256, 20.0);
    PotentialSpec z;
    for (double v : evaluate(z, 3.0, g)) CHECK(v == 0.0);

    auto p = power_law(2.0, 1.0);
    auto v = evaluate(p, 7.5, g);
    CHECK(v[g.n() / 2] == 1.0);
    CHECK(v[0] == doctest::Approx(1.0 / 401.0));
}

TEST_CASE("time profiles stay within the coupling") {
    auto p = power_law(2.0, 3.0);
    p.profile = Profile::sinusoidal;
    p.omega = 5.0;
    CHECK(coupling_at(p, 0.0) == 3.0);
    for (double t = 0; t < 10; t += 0.37) CHECK(std::abs(coupling_at(p, t)) <= 3.0);
    p.profile = Profile::ramp;
    p.ramp_time = 2.0;
    CHECK(coupling_at(p, 1.0) == 1.5);
    CHECK(coupling_at(p, 5.0) == 3.0);
}

TEST_CASE("Assumption A is enforced") {
    auto p = power_law(0.9, 1.0);
    CHECK_THROWS_AS(validate(p), ParameterError);
    try {
        validate(p);
    } catch (const ParameterError& e) {
        CHECK(std::string(e.what()).find("short-range") != std::string::npos);
    }
    p.delta = 1.0;
    CHECK_THROWS_AS(validate(p), ParameterError);
    p.delta = 1.5;
    p.rho = 1.5;
    CHECK_THROWS_AS(validate(p), ParameterError);
}

TEST_CASE("moving cutoff") {
    SpatialGrid g(1, 4096, 40.0);
    auto p = power_law(2.0, 1.0);
    p.rho = 1.0 / 6.0;
    auto cut = evaluate(p, 12.0, g);
    auto plain = power_law(2.0, 1.0);
    auto full = evaluate(plain, 12.0, g);
    const double jt = std::sqrt(145.0) / 6.0;  // rho <12>
    for (int j = 0; j < g.n(); ++j) {
        double r = std::abs(g.x(j));
        if (r <= 0.5 * jt) CHECK(cut[j] == 0.0);
        if (r >= jt) CHECK(cut[j] == full[j]);
        CHECK(std::abs(cut[j]) <= std::abs(full[j]));
    }
    CHECK(chi0(0.5) == 0.0);
    CHECK(chi0(1.0) == 1.0);
    CHECK(chi0(0.75) == doctest::Approx(0.5));
}

TEST_CASE("sup bound for the cut potential") {
    SpatialGrid g(1, 4096, 400.0);
    auto p = power_law(2.0, 1.0);
    p.rho = 1.0 / 6.0;
    auto rep = sup_bound_check(p, {0.0, 1.0, 10.0, 100.0}, g);
    CHECK(rep.within());
    double hi = *std::max_element(rep.product.begin(), rep.product.end());
    double lo = *std::min_element(rep.product.begin() + 1, rep.product.end());
    CHECK(hi <= rep.bound);
    CHECK(lo > 0.0);
    // at t = 0 the product is the plain sup
    auto v0 = evaluate(p, 0.0, g);
    double s0 = 0.0;
    for (double v : v0) s0 = std::max(s0, std::abs(v));
    CHECK(rep.product[0] == s0);

    PotentialSpec z;
    z.rho = 1.0 / 6.0;
    for (double v : sup_bound_check(z, {0.0, 5.0}, g).product) CHECK(v == 0.0);

    auto pt = power_law(2.0, 1.0);
    pt.family = Family::poschl_teller;
    pt.rho = 0.2;
    CHECK(sup_bound_check(pt, {0.0, 3.0, 30.0}, g).within());
}

TEST_CASE("short-range envelope is uniform in time") {
    SpatialGrid g(1, 1024, 100.0);
    auto p = power_law(1.5, 2.0);
    p.profile = Profile::sinusoidal;
    p.omega = 1.3;
    double m = 0.0;
    for (double t : {0.0, 1.0, 10.0, 100.0}) m = std::max(m, short_range_envelope(p, t, g));
    CHECK(m <= 2.0 * std::pow(2.0, 0.75));
}

TEST_CASE("bound state of the sech^2 well") {
    SpatialGrid g(1, 1024, 40.0);
    auto [psi, e] = bound_state(g);
    CHECK(e == -0.5);
    CHECK(std::abs(norm(psi) - 1.0) <= 1e-12);
    PotentialSpec pt;
    pt.family = Family::poschl_teller;
    pt.coupling = 1.0;
    auto h = apply_hamiltonian(psi, evaluate(pt, 0.0, g));
    CHECK(distance(h, cplx(e) * psi) <= 1e-8);

    WaveFunction odd(g);
    for (int j = 0; j < g.n(); ++j) odd[j] = g.x(j) * std::exp(-0.1 * g.x(j) * g.x(j));
    odd[0] = 0.0;  // the unpaired node -L
    CHECK(std::abs(inner(psi, odd)) <= 1e-12);

    CHECK_THROWS_AS(bound_state(SpatialGrid(2, 32, 10.0)), UnsupportedError);
}

TEST_CASE("family and profile names round trip") {
    for (auto f : {Family::power_law, Family::poschl_teller, Family::zero}) CHECK(parse_family(family_name(f)) == f);
    for (auto p : {Profile::constant, Profile::sinusoidal, Profile::ramp}) CHECK(parse_profile(profile_name(p)) == p);
    CHECK_THROWS_AS(parse_family("coulomb"), ParameterError);
}
