#include "wps/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "wps/errors.hpp"
#include "wps/io.hpp"
#include "wps/scattering.hpp"

namespace wps {

using nlohmann::json;

namespace {

const std::vector<std::string> kGridKeys = {"grid.dim", "grid.N", "grid.L"};
const std::vector<std::string> kPotentialKeys = {"potential.family", "potential.delta", "potential.g0",
                                                 "potential.profile", "potential.omega", "potential.ramp_time",
                                                 "potential.rho", "potential.center"};
const std::vector<std::string> kStateKeys = {"state.kind", "state.width", "state.x0", "state.p", "state.rx",
                                             "state.xi0", "state.rxi", "state.horizon"};

std::vector<std::string> cat(std::initializer_list<std::vector<std::string>> parts) {
    std::vector<std::string> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::array<double, 2> pair_of(const Config& c, const std::string& key, std::array<double, 2> fallback) {
    if (!c.has(key)) return fallback;
    auto v = c.list(key);
    if (v.size() > 2) throw ConfigError("key '" + key + "' takes at most two components");
    return {v[0], v.size() > 1 ? v[1] : 0.0};
}

SpatialGrid grid_from(const Config& c) {
    return SpatialGrid(int(c.integer("grid.dim", 1)), int(c.integer("grid.N")), c.num("grid.L"));
}

PotentialSpec potential_from(const Config& c) {
    PotentialSpec p;
    p.family = parse_family(c.str("potential.family", "zero"));
    p.delta = c.num("potential.delta", 2.0);
    p.coupling = c.num("potential.g0", p.family == Family::zero ? 0.0 : 1.0);
    p.profile = parse_profile(c.str("potential.profile", "constant"));
    p.omega = c.num("potential.omega", 0.0);
    p.ramp_time = c.num("potential.ramp_time", 1.0);
    if (c.has("potential.rho")) p.rho = c.num("potential.rho");
    p.center = pair_of(c, "potential.center", {0.0, 0.0});
    validate(p);
    return p;
}

EvolutionConfig evolution_from(const Config& c) {
    EvolutionConfig e;
    e.dt = c.num("evolution.dt", 0.01);
    if (!(e.dt > 0.0)) throw ParameterError("evolution.dt must be positive");
    e.potential = potential_from(c);
    return e;
}

Guard guard_from(const Config& c) {
    Guard g;
    g.boundary_mass = c.num("guard.boundary_mass", 1e-6);
    return g;
}

Window window_from(const Config& c, const SpatialGrid& g) {
    auto kind = c.str("window.kind", "gaussian_scat");
    if (kind == "gaussian_scat") return make_scat_window(g, c.num("window.width", 1.0));
    if (kind == "bandlimited_annulus") return make_annulus_window(g, c.num("window.r"));
    throw ParameterError("unknown window.kind '" + kind + "'");
}

std::vector<double> horizons(const Config& c) { return c.list("schedule.times"); }

Direction direction_from(const Config& c) {
    auto d = c.str("schedule.direction", "plus");
    if (d == "plus") return Direction::plus;
    if (d == "minus") return Direction::minus;
    throw ParameterError("schedule.direction must be plus or minus");
}

WaveFunction state_from(const Config& c, const SpatialGrid& g, const EvolutionConfig& evo, const Guard& guard) {
    auto kind = c.str("state.kind", "gaussian");
    if (kind == "gaussian")
        return gaussian_packet(g, c.num("state.width", 1.0), pair_of(c, "state.x0", {0, 0}),
                               pair_of(c, "state.p", {0, 0}));
    if (kind == "zero") return WaveFunction(g);
    if (kind == "bound_state") {
        if (g.dim() == 1) return bound_state(g).first;
        auto guess = gaussian_packet(g, 1.0, {0, 0}, {0, 0});
        return relax_ground_state(guess, evo.potential, c.num("state.relax_dt", 0.01),
                                  int(c.integer("state.relax_steps", 3000)))
            .first;
    }
    if (kind == "bump") {
        auto phi = window_from(c, g);
        auto b = phase_space_bump(phi, pair_of(c, "state.x0", {0, 0}), c.num("state.rx", 1.5),
                                  pair_of(c, "state.xi0", {0, 0}), c.num("state.rxi", 1.5));
        const double T = c.num("state.horizon", 0.0);
        if (T == 0.0) return b;
        return estimate_wave_operator(b, Direction::plus, 0.0, {T}, evo, guard).states.back();
    }
    throw ParameterError("unknown state.kind '" + kind + "'");
}

std::vector<PhaseSpaceMask> masks_from(const Config& c, int dim) {
    auto kind = c.str("mask.kind", "gamma");
    auto as = c.list("mask.a", {0.25, 0.5, 1.0});
    std::vector<PhaseSpaceMask> out;
    if (kind == "gamma" || kind == "both")
        for (double a : as)
            for (double R : c.list("mask.R", {5.0, 10.0})) out.push_back(PhaseSpaceMask::gamma(a, R));
    if (kind == "conic" || kind == "both")
        for (double a : as)
            for (double s : c.list("mask.sigma", {0.5, 0.9, 0.99})) out.push_back(PhaseSpaceMask::conic(a, s));
    if (out.empty()) throw ParameterError("mask.kind must be gamma, conic or both");
    for (const auto& m : out) check_mask_dim(m, dim);
    return out;
}

// a T + R + 6 sigma < L with the largest mask parameters in play
void budget_for(const Config& c, const SpatialGrid& g, double t_max) {
    auto as = c.list("mask.a", {0.25, 0.5, 1.0});
    auto rs = c.list("mask.R", {5.0, 10.0});
    double sigma = c.str("window.kind", "gaussian_scat") == "gaussian_scat" ? c.num("window.width", 1.0) : 0.0;
    check_propagation_budget(g, *std::max_element(as.begin(), as.end()), t_max,
                             *std::max_element(rs.begin(), rs.end()), sigma);
}

json fit_json(const DecayFit& f) {
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    return {{"exponent", num(f.exponent)},  {"prefactor", num(f.prefactor)}, {"r_squared", num(f.r_squared)},
            {"t_min", num(f.t_min)},        {"t_max", num(f.t_max)},         {"samples", f.samples}};
}

std::string path_in(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

cvec random_field(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> nd;
    cvec v(n);
    for (auto& z : v) z = cplx(nd(rng), nd(rng));
    return v;
}

// ---------------------------------------------------------------- experiments

json run_transform_check(const Config& c, const std::string& out) {
    auto g = grid_from(c);
    if (g.dim() == 2 && g.n() > 32) throw ParameterError("transform-check in two dimensions needs grid.N <= 32");
    const long samples = c.integer("check.samples", 100);
    std::mt19937_64 rng(std::uint64_t(c.integer("seed", 1)));
    double iso = 0, pol = 0, inv = 0;
    for (long s = 0; s < samples; ++s) {
        WaveFunction f(g, random_field(rng, g.size())), h(g, random_field(rng, g.size()));
        WaveFunction phi(g, random_field(rng, g.size())), psi(g, random_field(rng, g.size()));
        auto Wf = wpt_forward(f, phi, {});
        auto Wh = wpt_forward(h, psi, {});
        const double scale = norm(f) * norm(phi);
        iso = std::max(iso, std::abs(ps_norm(Wf) - scale) / scale);
        cplx lhs = ps_inner(Wf, Wh), rhs = inner(psi, phi) * inner(f, h);
        pol = std::max(pol, std::abs(lhs - rhs) / (scale * norm(h) * norm(psi)));
        inv = std::max(inv, distance(wpt_inverse(Wf, phi), f) / norm(f));
    }
    auto phi0 = make_scat_window(g, c.num("window.width", 1.0));
    auto psi = gaussian_packet(g, c.num("state.width", 1.0), pair_of(c, "state.x0", {0, 0}),
                               pair_of(c, "state.p", {2, 0}));
    auto W0 = wpt_forward(psi, phi0);
    double cov = 0.0;
    for (double t : c.list("check.times", {1.0, 4.0, 16.0})) {
        auto G = wpt_shifted(free_evolve(psi, t), free_evolve(phi0.wavefunction, t), t, 0.0, W0.sampling());
        G.materialize();
        for (std::size_t ix = 0; ix < W0.x_nodes().size(); ++ix)
            for (std::size_t ik = 0; ik < W0.xi_nodes().size(); ++ik) {
                auto xi = g.frequency(W0.xi_nodes()[ik]);
                cplx expect = std::polar(1.0, -0.5 * t * (xi[0] * xi[0] + xi[1] * xi[1])) * W0.at(ix, ik);
                cov = std::max(cov, std::abs(G.at(ix, ik) - expect));
            }
    }
    json s;
    s["metrics"] = {{"max_parseval_residual", iso},
                    {"max_polarization_residual", pol},
                    {"max_inversion_residual", inv},
                    {"max_covariance_error", cov},
                    {"samples", samples}};
    s["pass"] = iso <= 1e-10 && pol <= 1e-10 && inv <= 1e-10 && cov <= 1e-9;
    (void)out;
    return s;
}

json run_evolve(const Config& c, const std::string& out) {
    auto g = grid_from(c);
    auto evo = evolution_from(c);
    auto guard = guard_from(c);
    auto times = horizons(c);
    budget_for(c, g, *std::max_element(times.begin(), times.end(), [](double a, double b) {
        return std::abs(a) < std::abs(b);
    }));
    auto u = state_from(c, g, evo, guard);
    const double n0 = norm(u);
    CsvWriter csv(path_in(out, "trajectory.csv"), {"t", "norm", "boundary_mass"});
    csv.row({fmt(0.0), fmt(n0), fmt(boundary_mass(u))});
    write_snapshot(path_in(out, "state_0.wps"), u);
    double prev = 0.0, drift = 0.0;
    int idx = 1;
    for (double t : times) {
        evolve_inplace(u, prev, t, evo);
        prev = t;
        const double bm = boundary_mass(u);
        drift = std::max(drift, std::abs(norm(u) - n0));
        csv.row({fmt(t), fmt(norm(u)), fmt(bm)});
        write_snapshot(path_in(out, "state_" + std::to_string(idx++) + ".wps"), u);
        if (bm > guard.boundary_mass) throw NumericalGuard("boundary mass " + fmt(bm) + " at t = " + fmt(t));
    }
    json s;
    s["metrics"] = {{"norm_drift", drift}, {"final_time", prev}};
    return s;
}

json run_wave_op(const Config& c, const std::string& out, bool inverse) {
    auto g = grid_from(c);
    auto evo = evolution_from(c);
    auto guard = guard_from(c);
    auto T = horizons(c);
    budget_for(c, g, T.back());
    const double tau = c.num("schedule.tau", 0.0);
    auto dir = direction_from(c);
    auto psi = state_from(c, g, evo, guard);
    auto run = inverse ? inverse_limit(psi, dir, tau, T, evo, guard) : estimate_wave_operator(psi, dir, tau, T, evo, guard);
    CsvWriter csv(path_in(out, inverse ? "inverse_limit.csv" : "wave_op.csv"), {"T", "tail_norm"});
    for (std::size_t j = 0; j < run.tails.size(); ++j) csv.row({fmt(run.schedule[j]), fmt(run.tails[j])});
    write_snapshot(path_in(out, "state_final.wps"), run.states.back());
    json s;
    s["fits"] = {{"tails", fit_json(run.fit)}};
    json m = {{"expected_exponent", 1.0 - evo.potential.delta}, {"max_boundary_mass", *std::max_element(run.boundary.begin(), run.boundary.end())}};
    if (inverse) {
        auto back = estimate_wave_operator(run.states.back(), dir, tau, {T.back()}, evo, guard);
        m["round_trip_error"] = distance(back.states.back(), psi);
    }
    s["metrics"] = m;
    return s;
}

json run_classify(const Config& c, const std::string& out) {
    auto g = grid_from(c);
    auto evo = evolution_from(c);
    auto guard = guard_from(c);
    auto times = horizons(c);
    const double tau = c.num("schedule.tau", 0.0);
    budget_for(c, g, times.back() - tau);
    auto phi = window_from(c, g);
    auto masks = masks_from(c, g.dim());
    auto f = state_from(c, g, evo, guard);
    ClassifierOptions opt;
    opt.threshold_frac = c.num("classifier.threshold_frac", 0.1);
    opt.floor_frac = c.num("classifier.floor_frac", 0.5);
    opt.sampling = {int(c.integer("sampling.cx", g.dim() == 2 ? 4 : 1)),
                    int(c.integer("sampling.cxi", g.dim() == 2 ? 4 : 1))};
    opt.guard = guard;
    auto res = classify_scattering(f, phi, tau, masks, times, evo, opt);

    CsvWriter csv(path_in(out, "classifier.csv"), {"t", "mask_a", "mask_R", "masked_norm", "ratio", "verdict_contrib"});
    for (const auto& s : res.series)
        for (std::size_t i = 0; i < res.t.size(); ++i) {
            double r = s.m.front() > 0.0 ? s.m[i] / s.m.front() : 0.0;
            csv.row({fmt(res.t[i]), fmt(s.mask.a), fmt(s.mask.second()), fmt(s.m[i]), fmt(r), s.contrib});
        }
    for (std::size_t k = 0; k < res.series.size(); ++k) {
        CsvWriter ms(path_in(out, "masked_norm_" + std::to_string(k) + ".csv"),
                     {"t", "masked_norm", "total_norm", "ratio"});
        const auto& s = res.series[k];
        for (std::size_t i = 0; i < res.t.size(); ++i)
            ms.row({fmt(res.t[i]), fmt(s.m[i]), fmt(res.total[i]), fmt(res.total[i] > 0 ? s.m[i] / res.total[i] : 0.0)});
    }
    write_snapshot(path_in(out, "window.wps"), phi.wavefunction);
    write_window_sidecar(path_in(out, "window.txt"), phi);
    write_snapshot(path_in(out, "initial_state.wps"), f);
    if (g.dim() == 1 && g.n() <= 1024) write_field(path_in(out, "phase_space_t0.wpf"), wpt_forward(f, phi));

    json s;
    s["verdict"] = res.verdict;
    json fits = json::object(), per = json::array();
    for (const auto& m : res.series) {
        fits[m.mask.label()] = fit_json(m.fit);
        per.push_back({{"mask", m.mask.label()}, {"ratio", m.ratio}, {"contrib", m.contrib}});
    }
    s["fits"] = fits;
    s["metrics"] = {{"masks", per}, {"max_boundary_mass", *std::max_element(res.boundary.begin(), res.boundary.end())}};
    return s;
}

json run_remainder(const Config& c, const std::string& out) {
    auto g = grid_from(c);
    auto evo = evolution_from(c);
    auto guard = guard_from(c);
    auto s_list = horizons(c);
    auto w = window_from(c, g);
    auto u0 = state_from(c, g, evo, guard);
    const double a = c.num("remainder.a", 1.0), R = c.num("remainder.R", 5.0), cc = c.num("remainder.c", 0.375);
    check_propagation_budget(g, a, s_list.back(), R, 0.0);
    auto rd = remainder_decay(u0, w, evo, s_list, a, R, cc, guard);
    CsvWriter csv(path_in(out, "remainder.csv"), {"t", "masked_norm", "total_norm", "ratio"});
    for (std::size_t i = 0; i < rd.s.size(); ++i) {
        const double tot = rd.total_norm[i];
        csv.row({fmt(rd.s[i]), fmt(rd.complement_norm[i]), fmt(tot), fmt(tot > 0 ? rd.complement_norm[i] / tot : 0.0)});
    }
    write_snapshot(path_in(out, "window.wps"), w.wavefunction);
    write_window_sidecar(path_in(out, "window.txt"), w);
    json s;
    s["fits"] = {{"complement_norm", fit_json(rd.fit)}};
    s["metrics"] = {{"expected_exponent", -evo.potential.delta},
                    {"c", rd.chain.c},
                    {"rho", rd.chain.rho},
                    {"r", rd.r},
                    {"decay_regime_starts_at", rd.chain.t_start}};
    return s;
}

json run_bound_state(const Config& c, const std::string& out) {
    auto g = grid_from(c);
    EvolutionConfig evo;
    evo.dt = c.num("evolution.dt", 1e-3);
    evo.potential.family = Family::poschl_teller;
    evo.potential.coupling = 1.0;
    auto [psi, e] = bound_state(g);
    auto v = evaluate(evo.potential, 0.0, g);
    auto hpsi = apply_hamiltonian(psi, v);
    const double residual = distance(hpsi, cplx(e) * psi);
    const double T = c.num("schedule.t_end", 10.0);
    auto u = evolve(psi, 0.0, T, evo);
    const double fid = std::abs(inner(u, std::polar(1.0, -e * T) * psi));
    CsvWriter csv(path_in(out, "trajectory.csv"), {"t", "norm", "boundary_mass"});
    csv.row({fmt(0.0), fmt(norm(psi)), fmt(boundary_mass(psi))});
    csv.row({fmt(T), fmt(norm(u)), fmt(boundary_mass(u))});
    write_snapshot(path_in(out, "bound_state.wps"), psi);
    json s;
    s["metrics"] = {{"energy", e}, {"residual", residual}, {"fidelity", fid}, {"t_end", T}};
    return s;
}

json run_orthogonality(const Config& c, const std::string& out) {
    auto g = grid_from(c);
    auto evo = evolution_from(c);
    auto guard = guard_from(c);
    auto T = horizons(c);
    budget_for(c, g, T.back());
    auto psi = state_from(c, g, evo, guard);
    auto run = orthogonality_check(psi, T, evo, guard);
    CsvWriter csv(path_in(out, "orthogonality.csv"), {"T", "overlap"});
    bool mono = true;
    for (std::size_t i = 0; i < T.size(); ++i) {
        csv.row({fmt(T[i]), fmt(run.overlap[i])});
        if (i && !(run.overlap[i] < run.overlap[i - 1])) mono = false;
    }
    json s;
    s["metrics"] = {{"final_overlap", run.overlap.back()}, {"monotone", mono}};
    return s;
}

json run_cook(const Config& c, const std::string& out) {
    auto g = grid_from(c);
    auto evo = evolution_from(c);
    auto guard = guard_from(c);
    auto psi = state_from(c, g, evo, guard);
    auto run = cook_integrand(psi, horizons(c), evo.potential);
    CsvWriter csv(path_in(out, "cook.csv"), {"t", "integrand"});
    for (std::size_t i = 0; i < run.t.size(); ++i) csv.row({fmt(run.t[i]), fmt(run.value[i])});
    json s;
    s["fits"] = {{"integrand", fit_json(run.fit)}};
    return s;
}

}  // namespace

const std::vector<ExperimentInfo>& experiments() {
    static const std::vector<ExperimentInfo> list = {
        {"transform-check", "Parseval, polarization, inversion and free covariance of the wave packet transform",
         kGridKeys, {"seed", "check.samples", "check.times", "window.width", "state.width", "state.p"}},
        {"evolve", "Strang split-step evolution of a state with trajectory CSV and snapshots",
         cat({kGridKeys, {"schedule.times"}}), cat({kPotentialKeys, kStateKeys, {"evolution.dt"}})},
        {"wave-op", "Cauchy tails of U(tau,T) e^{-i(T-tau)H0} psi over a horizon schedule",
         cat({kGridKeys, {"schedule.times"}}),
         cat({kPotentialKeys, kStateKeys, {"evolution.dt", "schedule.tau", "schedule.direction"}})},
        {"inverse-limit", "Cauchy tails of e^{i(t-tau)H0} U(t,tau) u0 plus the round trip through the forward limit",
         cat({kGridKeys, {"schedule.times"}}),
         cat({kPotentialKeys, kStateKeys, {"evolution.dt", "schedule.tau", "schedule.direction"}})},
        {"classify", "Masked phase-space norm decay along free trajectories and the scattering verdict",
         cat({kGridKeys, {"schedule.times"}}),
         cat({kPotentialKeys, kStateKeys,
              {"evolution.dt", "schedule.tau", "window.width", "mask.kind", "mask.a", "mask.R", "mask.sigma",
               "classifier.threshold_frac", "classifier.floor_frac", "sampling.cx", "sampling.cxi"}})},
        {"remainder-decay", "Complement-of-Gamma norm of the remainder term along s with an annulus window",
         cat({kGridKeys, {"schedule.times", "window.kind", "window.r"}}),
         cat({kPotentialKeys, kStateKeys, {"evolution.dt", "remainder.a", "remainder.R", "remainder.c"}})},
        {"bound-state", "Closed-form -sech^2 ground state: residual and evolution fidelity", kGridKeys,
         {"evolution.dt", "schedule.t_end"}},
        {"orthogonality", "Overlap of the wave-operator estimate with the -sech^2 bound state per horizon",
         cat({kGridKeys, {"schedule.times"}}), cat({kPotentialKeys, kStateKeys, {"evolution.dt"}})},
        {"cook", "Cook integrand |V(t) e^{-itH0} psi| and its decay fit", cat({kGridKeys, {"schedule.times"}}),
         cat({kPotentialKeys, kStateKeys})},
    };
    return list;
}

std::string listing_text() {
    std::ostringstream os;
    for (const auto& e : experiments()) {
        os << e.name << "\n    " << e.description << "\n    required:";
        for (const auto& k : e.required) os << " " << k;
        os << "\n";
    }
    return os.str();
}

json listing_json() {
    json arr = json::array();
    for (const auto& e : experiments())
        arr.push_back({{"name", e.name}, {"description", e.description}, {"required", e.required}, {"optional", e.optional}});
    return arr;
}

json run_experiment(const Config& cfg, const std::string& outdir) {
    const auto name = cfg.str("experiment");
    const auto& list = experiments();
    auto it = std::find_if(list.begin(), list.end(), [&](const ExperimentInfo& e) { return e.name == name; });
    if (it == list.end()) throw ConfigError("unknown experiment '" + name + "'");
    for (const auto& k : it->required)
        if (!cfg.has(k) && k != "grid.dim") throw ConfigError("experiment " + name + " needs key '" + k + "'");
    // mask.a / mask.R also size the propagation budget of experiments without masks
    static const std::vector<std::string> common = {
        "experiment", "output.dir",     "seed",           "guard.boundary_mass", "window.kind", "window.width",
        "window.r",   "state.relax_dt", "state.relax_steps", "mask.a",           "mask.R"};
    for (const auto& k : cfg.keys()) {
        auto known = [&](const std::vector<std::string>& v) { return std::find(v.begin(), v.end(), k) != v.end(); };
        if (!known(it->required) && !known(it->optional) && !known(common))
            throw ConfigError("unknown key '" + k + "' for experiment " + name);
    }
    std::filesystem::create_directories(outdir);

    json s;
    if (name == "transform-check") s = run_transform_check(cfg, outdir);
    else if (name == "evolve") s = run_evolve(cfg, outdir);
    else if (name == "wave-op") s = run_wave_op(cfg, outdir, false);
    else if (name == "inverse-limit") s = run_wave_op(cfg, outdir, true);
    else if (name == "classify") s = run_classify(cfg, outdir);
    else if (name == "remainder-decay") s = run_remainder(cfg, outdir);
    else if (name == "bound-state") s = run_bound_state(cfg, outdir);
    else if (name == "orthogonality") s = run_orthogonality(cfg, outdir);
    else s = run_cook(cfg, outdir);

    s["experiment"] = name;
    if (!s.contains("verdict")) s["verdict"] = nullptr;
    if (!s.contains("fits")) s["fits"] = json::object();
    s["config"] = cfg.text();
    s["config_hash"] = config_hash(cfg.text());
    std::ofstream os(path_in(outdir, "summary.json"));
    os << s.dump(2) << "\n";
    return s;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    if (dynamic_cast<const NumericalGuard*>(&e)) return 4;
    if (dynamic_cast<const Error*>(&e)) return 3;
    return 1;
}

}  // namespace wps
