#pragma once

#include <string>
#include <vector>

#include "wps/fit.hpp"
#include "wps/grid.hpp"

namespace wps {

enum class WindowKind { gaussian_scat, bandlimited_annulus };

struct Window {
    WaveFunction wavefunction;
    WindowKind kind = WindowKind::gaussian_scat;
    double param = 1.0;  // width for gaussian_scat, outer radius r for bandlimited_annulus

    const SpatialGrid& grid() const { return wavefunction.grid; }
};

Window make_scat_window(const SpatialGrid& grid, double width);
Window make_annulus_window(const SpatialGrid& grid, double r);

// Re-checks the kind's invariants; throws ParameterError on violation.
void validate(const Window& w);

// Smooth bump e^{-1/(1-u^2)} on |u| < 1, zero elsewhere.
double bump(double u);

struct DispersionReport {
    std::vector<double> t;
    std::vector<double> sup;  // max |e^{-itH0} phi0(x)| over x/t outside K'
    DecayFit fit;
};

// K' is the open velocity shell r/2 - gap < |v| < r + gap around the Fourier support.
DispersionReport check_dispersion_decay(const Window& w, const std::vector<double>& t_list, double k_prime_gap);

std::string window_kind_name(WindowKind k);

}  // namespace wps
