#pragma once

#include <string>
#include <vector>

#include "wps/fit.hpp"
#include "wps/propagators.hpp"
#include "wps/windows.hpp"
#include "wps/wpt.hpp"

namespace wps {

enum class Direction { plus, minus };

// a * T_max + R + 6 sigma_w < L
void check_propagation_budget(const SpatialGrid& grid, double a, double t_max, double R, double sigma_w);

struct Guard {
    double boundary_mass = 1e-6;
    double norm_drift = 1e-9;
};

struct WaveOperatorRun {
    Direction direction = Direction::plus;
    double tau = 0.0;
    std::vector<double> schedule;  // horizon times T (signed)
    std::vector<WaveFunction> states;
    std::vector<double> tails;     // |state(T_{j+1}) - state(T_j)|
    std::vector<double> boundary;  // largest boundary mass seen per horizon
    DecayFit fit;                  // tails against |T_j - tau|
};

// U(tau, T) e^{-i(T - tau) H0} psi for each horizon; horizons are given as
// positive offsets from tau and negated for the minus direction.
WaveOperatorRun estimate_wave_operator(const WaveFunction& psi, Direction dir, double tau,
                                       const std::vector<double>& offsets, const EvolutionConfig& cfg,
                                       const Guard& guard = {});

// e^{i(t - tau) H0} U(t, tau) u0 per horizon, evolved incrementally.
WaveOperatorRun inverse_limit(const WaveFunction& u0, Direction dir, double tau, const std::vector<double>& offsets,
                              const EvolutionConfig& cfg, const Guard& guard = {});

enum class ShiftMode { plain, plus_s_xi };

// W_{phi(s)}[V(s) u](x (+ s xi), xi) with phi(s) = e^{-isH0} w
PhaseSpaceField remainder(double s, ShiftMode mode, const WaveFunction& u, const Window& w, const PotentialSpec& spec,
                          Sampling sampling = {});

struct RhoChain {
    double a = 0.0, R = 0.0, c = 0.0;
    double rho = 0.0;      // c / 6
    double t_start = 0.0;  // max(R / (a - c), 1)
    bool consistent(double r) const { return c > 0.0 && c < a && r > 0.0 && r <= rho; }
};

RhoChain rho_chain(double a, double R, double c);

struct RemainderDecay {
    RhoChain chain;
    double r = 0.0;
    std::vector<double> s;
    std::vector<double> complement_norm;
    std::vector<double> total_norm;  // |W_phi(s) (V u)|_ps = |V u|
    DecayFit fit;
};

// Complement-of-Gamma norm of R(s, x + s xi, xi; u0) along s_list.
RemainderDecay remainder_decay(const WaveFunction& u0, const Window& annulus, const EvolutionConfig& cfg,
                               const std::vector<double>& s_list, double a, double R, double c,
                               const Guard& guard = {});

struct ClassifierOptions {
    double threshold_frac = 0.1;
    double floor_frac = 0.5;
    Sampling sampling{};
    Guard guard{};
};

struct MaskSeries {
    PhaseSpaceMask mask;
    std::vector<double> m;
    double ratio = 0.0;  // m(last) / m(first)
    DecayFit fit;        // m against <t - tau>
    std::string contrib; // decay | persist | mixed | degenerate
};

struct ClassifierResult {
    std::vector<double> t;
    std::vector<double> total;
    std::vector<double> boundary;
    std::vector<MaskSeries> series;
    std::string verdict;
};

ClassifierResult classify_scattering(const WaveFunction& f, const Window& phi, double tau,
                                     const std::vector<PhaseSpaceMask>& masks, const std::vector<double>& schedule,
                                     const EvolutionConfig& cfg, const ClassifierOptions& opt = {});

struct OrthogonalityRun {
    std::vector<double> horizons;
    std::vector<double> overlap;  // |(W_+ psi estimate, psi_b)|
};

OrthogonalityRun orthogonality_check(const WaveFunction& psi, const std::vector<double>& horizons,
                                     const EvolutionConfig& cfg, const Guard& guard = {});

struct CookRun {
    std::vector<double> t;
    std::vector<double> value;  // |V(t) e^{-itH0} psi|
    DecayFit fit;
};

CookRun cook_integrand(const WaveFunction& psi, const std::vector<double>& t_samples, const PotentialSpec& spec);

// W_phi^{-1} of bump(|y - x0| / rx) bump(|xi - xi0| / rxi), normalized to 1.
WaveFunction phase_space_bump(const Window& phi, std::array<double, 2> x0, double rx, std::array<double, 2> xi0,
                              double rxi);

// Gaussian packet exp(-|x - x0|^2 / (2 width^2) + i p.x), normalized.
WaveFunction gaussian_packet(const SpatialGrid& grid, double width, std::array<double, 2> x0,
                             std::array<double, 2> p);

std::vector<PhaseSpaceMask> default_gamma_masks();

}  // namespace wps
