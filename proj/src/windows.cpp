#include "wps/windows.hpp"

#include <cmath>
#include <sstream>

#include "wps/errors.hpp"
#include "wps/propagators.hpp"

namespace wps {

double bump(double u) {
    if (!(std::abs(u) < 1.0)) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

Window make_scat_window(const SpatialGrid& grid, double width) {
    if (!(width > 0.0)) throw ParameterError("window width must be positive");
    WaveFunction f(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto x = grid.position(i);
        f.values[i] = std::exp(-(x[0] * x[0] + x[1] * x[1]) / (2.0 * width * width));
    }
    const double bm = boundary_mass(f);
    if (bm > 1e-12) {
        std::ostringstream os;
        os << "window width " << width << " too large for L = " << grid.half_length() << " (boundary mass " << bm
           << ")";
        throw BudgetError(os.str());
    }
    f = cplx(1.0 / norm(f)) * f;
    return Window{std::move(f), WindowKind::gaussian_scat, width};
}

Window make_annulus_window(const SpatialGrid& grid, double r) {
    if (!(r > 0.0)) throw ParameterError("annulus radius must be positive");
    if (!(r < 0.8 * grid.xi_max())) {
        std::ostringstream os;
        os << "annulus radius " << r << " outside the resolved band (limit " << 0.8 * grid.xi_max() << ")";
        throw ParameterError(os.str());
    }
    if (!(0.5 * r > 4.0 * grid.dxi())) {
        std::ostringstream os;
        os << "annulus radius " << r << " resolved by fewer than 4 frequency nodes (need r > " << 8.0 * grid.dxi()
           << ")";
        throw ParameterError(os.str());
    }
    Spectrum s{grid, cvec(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto xi = grid.frequency(i);
        double u = (std::hypot(xi[0], xi[1]) - 0.75 * r) / (0.25 * r);
        s.values[i] = bump(u);
    }
    double nrm = spectral_norm(s);
    for (auto& v : s.values) v /= nrm;
    return Window{inverse_fourier(s), WindowKind::bandlimited_annulus, r};
}

void validate(const Window& w) {
    if (w.kind == WindowKind::gaussian_scat) {
        double n = norm(w.wavefunction);
        if (std::abs(n - 1.0) > 1e-12) throw ParameterError("scattering window is not normalized");
        auto F = fourier(w.wavefunction);
        cplx at0 = F.values[w.grid().dim() == 1 ? w.grid().n() / 2 : w.grid().flatten(w.grid().n() / 2, w.grid().n() / 2)];
        if (!(std::abs(at0) > 0.0)) throw ParameterError("scattering window has vanishing mean");
        return;
    }
    const double r = w.param;
    auto F = fourier(w.wavefunction);
    double outside = 0.0, total = 0.0;
    for (std::size_t i = 0; i < F.values.size(); ++i) {
        auto xi = w.grid().frequency(i);
        double k = std::hypot(xi[0], xi[1]);
        double m = std::norm(F.values[i]);
        total += m;
        if (k <= 0.5 * r || k >= r) outside += m;
    }
    if (!(total > 0.0) || outside > 1e-20 * total)
        throw ParameterError("annulus window has Fourier mass outside r/2 < |xi| < r");
}

DispersionReport check_dispersion_decay(const Window& w, const std::vector<double>& t_list, double k_prime_gap) {
    if (w.kind != WindowKind::bandlimited_annulus)
        throw ParameterError("dispersion check needs a band-limited annulus window");
    const double r = w.param;
    const double lo = 0.5 * r - k_prime_gap, hi = r + k_prime_gap;
    DispersionReport rep;
    double prev = 0.0;
    for (double t : t_list) {
        if (!(t > 0.0) || t <= prev) throw ParameterError("dispersion times must be positive and increasing");
        prev = t;
        auto u = free_evolve(w.wavefunction, t);
        double sup = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            auto x = w.grid().position(i);
            double v = std::hypot(x[0], x[1]) / t;
            if (v <= lo || v >= hi) sup = std::max(sup, std::abs(u.values[i]));
        }
        rep.t.push_back(t);
        rep.sup.push_back(sup);
    }
    rep.fit = fit_power_law(rep.t, rep.sup);
    return rep;
}

std::string window_kind_name(WindowKind k) {
    return k == WindowKind::gaussian_scat ? "gaussian_scat" : "bandlimited_annulus";
}

}  // namespace wps
