#pragma once

#include <cstdint>

#include "wps/grid.hpp"
#include "wps/potentials.hpp"

namespace wps {

enum class Scheme { strang_midpoint };

struct EvolutionConfig {
    double dt = 0.01;
    Scheme scheme = Scheme::strang_midpoint;
    PotentialSpec potential;
};

WaveFunction free_evolve(const WaveFunction& f, double t);

// Step i covers [i dt, (i+1) dt] with V sampled at (i + 1/2) dt. Both endpoints
// must be lattice times; backward runs apply the exact inverse of each step.
WaveFunction evolve(const WaveFunction& f, double t_from, double t_to, const EvolutionConfig& cfg);

// In-place variant used by incremental drivers.
void evolve_inplace(WaveFunction& f, double t_from, double t_to, const EvolutionConfig& cfg);

// lattice index of t, throws ParameterError when t is not a multiple of dt
std::int64_t step_index(double t, double dt);

struct OrderEstimate {
    double order = 0.0;
    double err_coarse = 0.0;  // |u_dt - u_dt/2|
    double err_fine = 0.0;    // |u_dt/2 - u_dt/4|
    bool exact = false;       // both differences at round-off level
};

OrderEstimate convergence_order(const EvolutionConfig& cfg, const WaveFunction& f, double T);

// H f = -1/2 Laplacian f + V f with spectral derivatives
WaveFunction apply_hamiltonian(const WaveFunction& f, const rvec& v);

// spectral gradient component along an axis
WaveFunction derivative(const WaveFunction& f, int axis);

// Imaginary-time relaxation to the lowest eigenstate of a time-independent H.
std::pair<WaveFunction, double> relax_ground_state(const WaveFunction& guess, const PotentialSpec& spec, double dt,
                                                   int steps);

}  // namespace wps
