#include "wps/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wps/errors.hpp"

namespace wps {

namespace {

void guard_boundary(const WaveFunction& u, const Guard& g, double t, double& seen) {
    double bm = boundary_mass(u);
    seen = std::max(seen, bm);
    if (bm > g.boundary_mass) {
        std::ostringstream os;
        os << "boundary mass " << bm << " at t = " << t << " exceeds " << g.boundary_mass << "; enlarge grid.L";
        throw NumericalGuard(os.str());
    }
}

void guard_norm(const WaveFunction& u, double expected, const Guard& g, double t) {
    double d = std::abs(norm(u) - expected);
    if (d > g.norm_drift * std::max(1.0, expected)) {
        std::ostringstream os;
        os << "norm drift " << d << " at t = " << t;
        throw NumericalGuard(os.str());
    }
}

void require_normalized(const WaveFunction& psi) {
    if (std::abs(norm(psi) - 1.0) > 1e-10) throw ParameterError("input state must be normalized");
}

void require_increasing(const std::vector<double>& v, const char* what) {
    if (v.empty()) throw ParameterError(std::string(what) + " is empty");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0) || (i && !(v[i] > v[i - 1])))
            throw ParameterError(std::string(what) + " must be positive and increasing");
    }
}

DecayFit tail_fit(const std::vector<double>& offsets, const std::vector<double>& tails) {
    std::vector<double> t(offsets.begin(), offsets.begin() + tails.size());
    return fit_power_law(t, tails);
}

}  // namespace

void check_propagation_budget(const SpatialGrid& grid, double a, double t_max, double R, double sigma_w) {
    const double need = a * std::abs(t_max) + R + 6.0 * sigma_w;
    if (!(need < grid.half_length())) {
        std::ostringstream os;
        os << "propagation budget violated: a*T + R + 6*sigma = " << need << " >= L = " << grid.half_length();
        throw BudgetError(os.str());
    }
}

WaveOperatorRun estimate_wave_operator(const WaveFunction& psi, Direction dir, double tau,
                                       const std::vector<double>& offsets, const EvolutionConfig& cfg,
                                       const Guard& guard) {
    require_normalized(psi);
    require_increasing(offsets, "horizon schedule");
    EvolutionConfig shifted = cfg;
    shifted.potential.time_shift += tau;
    const double sign = dir == Direction::plus ? 1.0 : -1.0;
    WaveOperatorRun run;
    run.direction = dir;
    run.tau = tau;
    for (double T : offsets) {
        const double s = sign * T;
        double seen = 0.0;
        auto u = free_evolve(psi, s);
        guard_boundary(u, guard, tau + s, seen);
        evolve_inplace(u, s, 0.0, shifted);
        guard_boundary(u, guard, tau, seen);
        guard_norm(u, 1.0, guard, tau);
        run.schedule.push_back(tau + s);
        run.boundary.push_back(seen);
        run.states.push_back(std::move(u));
    }
    for (std::size_t j = 0; j + 1 < run.states.size(); ++j) run.tails.push_back(distance(run.states[j + 1], run.states[j]));
    run.fit = tail_fit(offsets, run.tails);
    return run;
}

WaveOperatorRun inverse_limit(const WaveFunction& u0, Direction dir, double tau, const std::vector<double>& offsets,
                              const EvolutionConfig& cfg, const Guard& guard) {
    require_normalized(u0);
    require_increasing(offsets, "horizon schedule");
    EvolutionConfig shifted = cfg;
    shifted.potential.time_shift += tau;
    const double sign = dir == Direction::plus ? 1.0 : -1.0;
    WaveOperatorRun run;
    run.direction = dir;
    run.tau = tau;
    WaveFunction u = u0;
    double prev = 0.0;
    for (double T : offsets) {
        const double s = sign * T;
        double seen = 0.0;
        evolve_inplace(u, prev, s, shifted);
        prev = s;
        guard_boundary(u, guard, tau + s, seen);
        guard_norm(u, 1.0, guard, tau + s);
        run.schedule.push_back(tau + s);
        run.boundary.push_back(seen);
        run.states.push_back(free_evolve(u, -s));
    }
    for (std::size_t j = 0; j + 1 < run.states.size(); ++j) run.tails.push_back(distance(run.states[j + 1], run.states[j]));
    run.fit = tail_fit(offsets, run.tails);
    return run;
}

PhaseSpaceField remainder(double s, ShiftMode mode, const WaveFunction& u, const Window& w, const PotentialSpec& spec,
                          Sampling sampling) {
    require_same_grid(u.grid, w.grid(), "remainder");
    if (u.grid.dim() == 2 && sampling.cx == 1 && sampling.cxi == 1 && u.grid.n() > 32) sampling = {4, 4};
    auto phi_s = free_evolve(w.wavefunction, s);
    auto v = evaluate(spec, s, u.grid);
    WaveFunction vu(u.grid);
    for (std::size_t i = 0; i < u.size(); ++i) vu.values[i] = v[i] * u.values[i];
    const double shift = mode == ShiftMode::plus_s_xi ? s : 0.0;
    PhaseSpaceField F(vu, phi_s, shift, sampling);
    if (mode == ShiftMode::plain && u.grid.dim() == 1 && u.grid.size() <= 2048) F.materialize();
    return F;
}

RhoChain rho_chain(double a, double R, double c) {
    RhoChain ch;
    ch.a = a;
    ch.R = R;
    ch.c = c;
    ch.rho = c / 6.0;
    ch.t_start = c < a ? std::max(R / (a - c), 1.0) : std::numeric_limits<double>::infinity();
    return ch;
}

RemainderDecay remainder_decay(const WaveFunction& u0, const Window& annulus, const EvolutionConfig& cfg,
                               const std::vector<double>& s_list, double a, double R, double c, const Guard& guard) {
    if (annulus.kind != WindowKind::bandlimited_annulus) throw ParameterError("remainder decay needs an annulus window");
    RemainderDecay out;
    out.chain = rho_chain(a, R, c);
    out.r = annulus.param;
    if (!out.chain.consistent(out.r)) {
        std::ostringstream os;
        os << "annulus radius r = " << out.r << " not within rho = c/6 = " << out.chain.rho << " for c = " << c
           << " in (0, a = " << a << ")";
        throw ParameterError(os.str());
    }
    require_increasing(s_list, "remainder times");
    const auto mask = PhaseSpaceMask::gamma(a, R);
    WaveFunction u = u0;
    double prev = 0.0, seen = 0.0;
    for (double s : s_list) {
        evolve_inplace(u, prev, s, cfg);
        prev = s;
        guard_boundary(u, guard, s, seen);
        auto F = remainder(s, ShiftMode::plus_s_xi, u, annulus, cfg.potential);
        out.s.push_back(s);
        out.complement_norm.push_back(masked_complement_norm(F, mask));
        out.total_norm.push_back(F.norm_product());
    }
    out.fit = fit_power_law(out.s, out.complement_norm);
    return out;
}

ClassifierResult classify_scattering(const WaveFunction& f, const Window& phi, double tau,
                                     const std::vector<PhaseSpaceMask>& masks, const std::vector<double>& schedule,
                                     const EvolutionConfig& cfg, const ClassifierOptions& opt) {
    if (phi.kind != WindowKind::gaussian_scat) throw ParameterError("classifier window must be a Gaussian scattering window");
    validate(phi);
    require_same_grid(f.grid, phi.grid(), "classify");
    if (masks.empty()) throw ParameterError("classifier needs at least one mask");
    for (const auto& m : masks) check_mask_dim(m, f.grid.dim());
    if (schedule.size() < 2) throw ParameterError("classifier schedule needs at least two times");
    const bool up = schedule.back() > schedule.front();
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if ((schedule[i] > schedule[i - 1]) != up || schedule[i] == schedule[i - 1])
            throw ParameterError("classifier schedule must be strictly monotone");

    ClassifierResult res;
    res.series.resize(masks.size());
    for (std::size_t k = 0; k < masks.size(); ++k) res.series[k].mask = masks[k];
    const double n0 = norm(f);
    WaveFunction u = f;
    double prev = tau;
    for (double t : schedule) {
        evolve_inplace(u, prev, t, cfg);
        prev = t;
        double seen = 0.0;
        if (n0 > 0.0) {
            guard_boundary(u, opt.guard, t, seen);
            guard_norm(u, n0, opt.guard, t);
        }
        auto phi_t = free_evolve(phi.wavefunction, t - tau);
        auto F = wpt_shifted(u, phi_t, t, tau, opt.sampling);
        auto mn = masked_norms(F, masks);
        res.t.push_back(t);
        res.total.push_back(mn.total);
        res.boundary.push_back(seen);
        for (std::size_t k = 0; k < masks.size(); ++k) res.series[k].m.push_back(mn.masked[k]);
    }

    std::vector<double> tj;
    for (double t : res.t) tj.push_back(japanese(t - tau));
    bool any_decay = false, any_degenerate = false, all_persist = true;
    for (auto& s : res.series) {
        const double m0 = s.m.front();
        const double mmax = *std::max_element(s.m.begin(), s.m.end());
        const double mmin = *std::min_element(s.m.begin(), s.m.end());
        s.fit = fit_power_law(tj, s.m);
        if (!(mmax > kFitFloor)) {
            s.ratio = 0.0;
            s.contrib = "degenerate";
            any_degenerate = true;
            continue;
        }
        s.ratio = m0 > 0.0 ? s.m.back() / m0 : std::numeric_limits<double>::infinity();
        if (s.ratio <= opt.threshold_frac && s.fit.valid() && s.fit.exponent < 0.0) {
            s.contrib = "decay";
            any_decay = true;
            all_persist = false;
        } else if (m0 > 0.0 && mmin >= opt.floor_frac * m0) {
            s.contrib = "persist";
        } else {
            s.contrib = "mixed";
            all_persist = false;
        }
    }
    if (any_decay)
        res.verdict = "scattering";
    else if (any_degenerate)
        res.verdict = "scattering (trivial)";
    else if (all_persist)
        res.verdict = "non-scattering";
    else
        res.verdict = "inconclusive";
    return res;
}

OrthogonalityRun orthogonality_check(const WaveFunction& psi, const std::vector<double>& horizons,
                                     const EvolutionConfig& cfg, const Guard& guard) {
    const auto& p = cfg.potential;
    if (p.family != Family::poschl_teller || p.coupling != 1.0 || p.center[0] != 0.0 || p.center[1] != 0.0 ||
        p.rho.has_value())
        throw UnsupportedError("orthogonality check needs the unit Poschl-Teller well -sech^2(x)");
    if (psi.grid.dim() != 1) throw UnsupportedError("orthogonality check is one-dimensional");
    auto [psi_b, e] = bound_state(psi.grid);
    (void)e;
    auto run = estimate_wave_operator(psi, Direction::plus, 0.0, horizons, cfg, guard);
    OrthogonalityRun out;
    out.horizons = horizons;
    for (const auto& s : run.states) out.overlap.push_back(std::abs(inner(s, psi_b)));
    return out;
}

CookRun cook_integrand(const WaveFunction& psi, const std::vector<double>& t_samples, const PotentialSpec& spec) {
    require_normalized(psi);
    CookRun out;
    for (double t : t_samples) {
        auto u = free_evolve(psi, t);
        auto v = evaluate(spec, t, psi.grid);
        for (std::size_t i = 0; i < u.size(); ++i) u.values[i] *= v[i];
        out.t.push_back(t);
        out.value.push_back(norm(u));
    }
    out.fit = fit_power_law(out.t, out.value);
    return out;
}

WaveFunction phase_space_bump(const Window& phi, std::array<double, 2> x0, double rx, std::array<double, 2> xi0,
                              double rxi) {
    const auto& g = phi.grid();
    if (!(rx > 0.0) || !(rxi > 0.0)) throw ParameterError("bump radii must be positive");
    // B(y, xi) = bx(y) bxi(xi) separates: W^{-1}B = |phi|^-2 (phi * bx)(x) h(x), h = F^{-1} bxi
    std::vector<std::size_t> supp;
    rvec bx(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto y = g.position(i);
        bx[i] = bump(std::hypot(y[0] - x0[0], y[1] - x0[1]) / rx);
        if (bx[i] != 0.0) supp.push_back(i);
    }
    if (supp.empty()) throw ParameterError("bump position support misses every lattice node");
    Spectrum bxi{g, cvec(g.size())};
    bool any = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto k = g.frequency(i);
        bxi.values[i] = bump(std::hypot(k[0] - xi0[0], k[1] - xi0[1]) / rxi);
        any = any || bxi.values[i] != cplx(0.0);
    }
    if (!any) throw ParameterError("bump frequency support misses every lattice node");
    auto h = inverse_fourier(bxi);
    const long n = g.n();
    WaveFunction out(g);
    for (std::size_t x = 0; x < g.size(); ++x) {
        auto ax = g.unflatten(x);
        cplx conv = 0.0;
        for (std::size_t y : supp) {
            auto ay = g.unflatten(y);
            long d0 = ((n / 2 + ax[0] - ay[0]) % n + n) % n;
            long d1 = g.dim() == 1 ? 0 : ((n / 2 + ax[1] - ay[1]) % n + n) % n;
            conv += phi.wavefunction.values[g.dim() == 1 ? d0 : d0 * n + d1] * bx[y];
        }
        out.values[x] = conv * h.values[x];
    }
    const double nn = norm(out);
    if (!(nn > 0.0)) throw ParameterError("phase-space bump vanished on the grid");
    return cplx(1.0 / nn) * out;
}

WaveFunction gaussian_packet(const SpatialGrid& grid, double width, std::array<double, 2> x0,
                             std::array<double, 2> p) {
    WaveFunction f(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto x = grid.position(i);
        double d0 = x[0] - x0[0], d1 = grid.dim() == 2 ? x[1] - x0[1] : 0.0;
        double ph = p[0] * x[0] + (grid.dim() == 2 ? p[1] * x[1] : 0.0);
        f.values[i] = std::exp(-(d0 * d0 + d1 * d1) / (2.0 * width * width)) * std::polar(1.0, ph);
    }
    return cplx(1.0 / norm(f)) * f;
}

std::vector<PhaseSpaceMask> default_gamma_masks() {
    std::vector<PhaseSpaceMask> m;
    for (double a : {0.25, 0.5, 1.0})
        for (double R : {5.0, 10.0}) m.push_back(PhaseSpaceMask::gamma(a, R));
    return m;
}

}  // namespace wps
