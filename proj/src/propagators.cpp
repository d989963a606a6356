#include "wps/propagators.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "wps/errors.hpp"

namespace wps {

namespace {

// |xi|^2 in the natural (unshifted) DFT order
rvec natural_xi2(const SpatialGrid& g) {
    const int n = g.n();
    rvec k(n);
    for (int q = 0; q < n; ++q) {
        double kk = (q < n / 2 ? q : q - n) * g.dxi();
        k[q] = kk * kk;
    }
    rvec out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto a = g.unflatten(i);
        out[i] = g.dim() == 1 ? k[a[0]] : k[a[0]] + k[a[1]];
    }
    return out;
}

cvec half_phase(const rvec& v, double dt) {
    cvec p(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) p[i] = std::polar(1.0, -0.5 * dt * v[i]);
    return p;
}

}  // namespace

std::int64_t step_index(double t, double dt) {
    if (!(dt > 0.0)) throw ParameterError("evolution dt must be positive");
    double r = t / dt;
    auto k = std::llround(r);
    if (std::abs(r - double(k)) > 1e-9 * std::max(1.0, std::abs(r))) {
        std::ostringstream os;
        os << "time " << t << " is not aligned with the step lattice dt = " << dt;
        throw ParameterError(os.str());
    }
    return k;
}

WaveFunction free_evolve(const WaveFunction& f, double t) {
    if (t == 0.0) return f;
    auto F = fourier(f);
    const auto& g = f.grid;
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto xi = g.frequency(i);
        F.values[i] *= std::polar(1.0, -0.5 * t * (xi[0] * xi[0] + xi[1] * xi[1]));
    }
    return inverse_fourier(F);
}

void evolve_inplace(WaveFunction& f, double t_from, double t_to, const EvolutionConfig& cfg) {
    const double dt = cfg.dt;
    const auto i0 = step_index(t_from, dt);
    const auto i1 = step_index(t_to, dt);
    if (i0 == i1) return;
    validate(cfg.potential);
    const auto& g = f.grid;
    const bool forward = i1 > i0;
    const double scale = 1.0 / double(g.size());

    auto xi2 = natural_xi2(g);
    cvec kin(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        kin[i] = std::polar(scale, (forward ? -0.5 : 0.5) * dt * xi2[i]);

    const bool has_v = cfg.potential.family != Family::zero;
    const bool frozen = cfg.potential.time_independent();
    cvec phase;
    if (has_v && frozen) {
        phase = half_phase(evaluate(cfg.potential, 0.0, g), dt);
        if (!forward)
            for (auto& p : phase) p = std::conj(p);
    }

    auto* u = f.values.data();
    const std::size_t n = g.size();
    auto step = [&](std::int64_t i) {
        if (has_v && !frozen) {
            phase = half_phase(evaluate(cfg.potential, (double(i) + 0.5) * dt, g), dt);
            if (!forward)
                for (auto& p : phase) p = std::conj(p);
        }
        if (has_v)
            for (std::size_t k = 0; k < n; ++k) u[k] *= phase[k];
        dft_inplace(g, u, -1);
        for (std::size_t k = 0; k < n; ++k) u[k] *= kin[k];
        dft_inplace(g, u, +1);
        if (has_v)
            for (std::size_t k = 0; k < n; ++k) u[k] *= phase[k];
    };
    if (forward) {
        for (auto i = i0; i < i1; ++i) step(i);
    } else {
        for (auto i = i0 - 1; i >= i1; --i) step(i);
    }
}

WaveFunction evolve(const WaveFunction& f, double t_from, double t_to, const EvolutionConfig& cfg) {
    WaveFunction out = f;
    evolve_inplace(out, t_from, t_to, cfg);
    return out;
}

OrderEstimate convergence_order(const EvolutionConfig& cfg, const WaveFunction& f, double T) {
    EvolutionConfig c2 = cfg, c4 = cfg;
    c2.dt = cfg.dt / 2;
    c4.dt = cfg.dt / 4;
    auto u1 = evolve(f, 0.0, T, cfg);
    auto u2 = evolve(f, 0.0, T, c2);
    auto u4 = evolve(f, 0.0, T, c4);
    OrderEstimate est;
    est.err_coarse = distance(u1, u2);
    est.err_fine = distance(u2, u4);
    const double floor = 1e-12 * std::max(1.0, norm(f));
    if (est.err_coarse < floor && est.err_fine < floor) {
        est.exact = true;
        est.order = std::numeric_limits<double>::infinity();
        return est;
    }
    est.order = std::log2(est.err_coarse / est.err_fine);
    return est;
}

WaveFunction apply_hamiltonian(const WaveFunction& f, const rvec& v) {
    auto F = fourier(f);
    const auto& g = f.grid;
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto xi = g.frequency(i);
        F.values[i] *= 0.5 * (xi[0] * xi[0] + xi[1] * xi[1]);
    }
    auto out = inverse_fourier(F);
    for (std::size_t i = 0; i < g.size(); ++i) out.values[i] += v[i] * f.values[i];
    return out;
}

WaveFunction derivative(const WaveFunction& f, int axis) {
    if (axis < 0 || axis >= f.grid.dim()) throw ParameterError("derivative axis out of range");
    auto F = fourier(f);
    for (std::size_t i = 0; i < F.values.size(); ++i) F.values[i] *= cplx(0.0, f.grid.frequency(i)[axis]);
    return inverse_fourier(F);
}

std::pair<WaveFunction, double> relax_ground_state(const WaveFunction& guess, const PotentialSpec& spec, double dt,
                                                   int steps) {
    if (!spec.time_independent()) throw UnsupportedError("ground-state relaxation needs a time-independent potential");
    const auto& g = guess.grid;
    auto v = evaluate(spec, 0.0, g);
    auto xi2 = natural_xi2(g);
    const double scale = 1.0 / double(g.size());
    rvec kin(g.size()), half(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        kin[i] = scale * std::exp(-0.5 * dt * xi2[i]);
        half[i] = std::exp(-0.5 * dt * v[i]);
    }
    WaveFunction u = guess;
    for (int s = 0; s < steps; ++s) {
        for (std::size_t k = 0; k < g.size(); ++k) u.values[k] *= half[k];
        dft_inplace(g, u.values.data(), -1);
        for (std::size_t k = 0; k < g.size(); ++k) u.values[k] *= kin[k];
        dft_inplace(g, u.values.data(), +1);
        for (std::size_t k = 0; k < g.size(); ++k) u.values[k] *= half[k];
        u = cplx(1.0 / norm(u)) * u;
    }
    double e = std::real(inner(apply_hamiltonian(u, v), u));
    return {u, e};
}

}  // namespace wps
