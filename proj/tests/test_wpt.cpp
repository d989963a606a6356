#include <doctest.h>

#include <cmath>
#include <random>

#include "wps/errors.hpp"
#include "wps/parallel.hpp"
#include "wps/propagators.hpp"
#include "wps/scattering.hpp"
#include "wps/wpt.hpp"

using namespace wps;

namespace {

WaveFunction random_wave(const SpatialGrid& g, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    WaveFunction f(g);
    for (auto& z : f.values) z = cplx(nd(rng), nd(rng));
    return f;
}

double max_diff(const cvec& a, const cvec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("transform of a Gaussian by itself at the origin") {
    SpatialGrid g(1, 256, 20.0);
    auto w = make_scat_window(g, 1.0);
    auto F = wpt_forward(w.wavefunction, w);
    CHECK(std::abs(F.at(g.n() / 2, g.n() / 2) - 1.0) <= 1e-12);
}

TEST_CASE("isometry, polarization and inversion on random data") {
    std::mt19937_64 rng(2024);
    SpatialGrid g(1, 128, 10.0);
    double iso = 0, pol = 0, inv = 0;
    for (int s = 0; s < 20; ++s) {
        auto f = random_wave(g, rng), h = random_wave(g, rng);
        auto phi = random_wave(g, rng), psi = random_wave(g, rng);
        auto Wf = wpt_forward(f, phi, {});
        auto Wh = wpt_forward(h, psi, {});
        const double scale = norm(f) * norm(phi);
        iso = std::max(iso, std::abs(ps_norm(Wf) - scale) / scale);
        pol = std::max(pol, std::abs(ps_inner(Wf, Wh) - inner(psi, phi) * inner(f, h)) /
                                (scale * norm(h) * norm(psi)));
        inv = std::max(inv, distance(wpt_inverse(Wf, phi), f) / norm(f));
    }
    CHECK(iso <= 1e-10);
    CHECK(pol <= 1e-10);
    CHECK(inv <= 1e-10);
}

TEST_CASE("two-dimensional transform identities on the full lattice") {
    std::mt19937_64 rng(5);
    SpatialGrid g(2, 16, 4.0);
    auto f = random_wave(g, rng), phi = random_wave(g, rng);
    auto Wf = wpt_forward(f, phi, {});
    CHECK(std::abs(ps_norm(Wf) - norm(f) * norm(phi)) <= 1e-10 * norm(f) * norm(phi));
    CHECK(distance(wpt_inverse(Wf, phi), f) <= 1e-10 * norm(f));
}

TEST_CASE("inverse of the zero field and of a cross window") {
    std::mt19937_64 rng(9);
    SpatialGrid g(1, 128, 10.0);
    auto phi = random_wave(g, rng), psi = random_wave(g, rng), f = random_wave(g, rng);
    auto zero = PhaseSpaceField::from_dense(g, {}, cvec(g.size() * g.size()));
    CHECK(norm(wpt_inverse(zero, phi)) == 0.0);

    auto cross = wpt_inverse(wpt_forward(f, phi, {}), psi);
    cplx scale = inner(psi, phi) / std::pow(norm(psi), 2);
    CHECK(distance(cross, scale * f) <= 1e-10 * std::abs(scale) * norm(f));
}

TEST_CASE("streaming field cannot be inverted") {
    SpatialGrid g(2, 64, 8.0);
    auto phi = make_scat_window(g, 1.0);
    auto F = wpt_forward(phi.wavefunction, phi.wavefunction, {4, 4});
    CHECK_THROWS_AS(wpt_inverse(F, phi), UnsupportedError);
}

TEST_CASE("modulus peaks at the packet's phase-space center") {
    SpatialGrid g(1, 512, 20.0);
    auto w = make_scat_window(g, 1.0);
    WaveFunction f(g);
    for (int j = 0; j < g.n(); ++j) f[j] = std::exp(-0.5 * std::pow(g.x(j) - 2.0, 2)) * std::polar(1.0, 3.0 * g.x(j));
    auto F = wpt_forward(f, w);
    std::size_t bx = 0, bk = 0;
    double best = -1;
    for (std::size_t ix = 0; ix < F.x_nodes().size(); ++ix)
        for (std::size_t ik = 0; ik < F.xi_nodes().size(); ++ik)
            if (std::abs(F.at(ix, ik)) > best) best = std::abs(F.at(ix, ik)), bx = ix, bk = ik;
    CHECK(std::abs(g.x(int(bx)) - 2.0) <= 0.5 * g.dx());
    CHECK(std::abs(g.xi(int(bk)) - 3.0) <= 0.5 * g.dxi());
}

TEST_CASE("derivative intertwining") {
    SpatialGrid g(1, 256, 20.0);
    auto phi = make_scat_window(g, 1.0).wavefunction;
    auto f = gaussian_packet(g, 1.5, {1.0, 0.0}, {2.0, 0.0});
    auto lhs = wpt_forward(derivative(f, 0), phi, {});
    auto Wf = wpt_forward(f, phi, {});
    auto Wdphi = wpt_forward(f, derivative(phi, 0), {});
    double resid = 0.0, printed = 0.0, scale = 0.0;
    for (std::size_t ix = 0; ix < Wf.x_nodes().size(); ++ix)
        for (std::size_t ik = 0; ik < Wf.xi_nodes().size(); ++ik) {
            cplx ixi(0.0, g.xi(int(Wf.xi_nodes()[ik])));
            resid = std::max(resid, std::abs(lhs.at(ix, ik) - ixi * Wf.at(ix, ik) + Wdphi.at(ix, ik)));
            printed = std::max(printed, std::abs(lhs.at(ix, ik) + ixi * Wf.at(ix, ik) - Wdphi.at(ix, ik)));
            scale = std::max(scale, std::abs(lhs.at(ix, ik)));
        }
    CHECK(resid <= 1e-8);
    // the opposite-sign form misses by twice the transform itself
    CHECK(printed == doctest::Approx(2.0 * scale).epsilon(1e-8));

    SpatialGrid g2(2, 64, 8.0);
    auto p2 = make_scat_window(g2, 1.0).wavefunction;
    auto f2 = gaussian_packet(g2, 1.2, {0.5, -0.5}, {1.0, -1.0});
    for (int axis : {0, 1}) {
        auto L = wpt_forward(derivative(f2, axis), p2, {2, 2});
        auto W = wpt_forward(f2, p2, {2, 2});
        auto D = wpt_forward(f2, derivative(p2, axis), {2, 2});
        double r = 0.0;
        for (std::size_t ix = 0; ix < W.x_nodes().size(); ++ix)
            for (std::size_t ik = 0; ik < W.xi_nodes().size(); ++ik) {
                cplx ixi(0.0, g2.frequency(W.xi_nodes()[ik])[axis]);
                r = std::max(r, std::abs(L.at(ix, ik) - ixi * W.at(ix, ik) + D.at(ix, ik)));
            }
        CHECK(r <= 1e-8);
    }
}

TEST_CASE("zero shift reproduces the forward transform") {
    std::mt19937_64 rng(1);
    SpatialGrid g(1, 128, 10.0);
    auto f = random_wave(g, rng), w = random_wave(g, rng);
    auto A = wpt_forward(f, w, {});
    auto B = wpt_shifted(f, w, 3.0, 3.0);
    B.materialize();
    CHECK(max_diff(A.dense(), B.dense()) <= 1e-12 * norm(f) * norm(w));
}

TEST_CASE("spectral shift route matches direct evaluation") {
    std::mt19937_64 rng(4);
    SpatialGrid g(2, 32, 8.0);
    auto f = gaussian_packet(g, 1.0, {0.5, 0.0}, {1.0, 0.5});
    auto w = make_scat_window(g, 0.8).wavefunction;
    auto A = wpt_forward(f, w, {2, 2});
    A.materialize();
    auto B = wpt_shifted(f, w, 0.0, 0.0, {2, 2});
    B.materialize();
    CHECK(max_diff(A.dense(), B.dense()) <= 1e-12);

    // sampled 2D field against the dense full-lattice one
    auto full = wpt_forward(f, w, {});
    double m = 0.0;
    for (std::size_t ix = 0; ix < A.x_nodes().size(); ++ix)
        for (std::size_t ik = 0; ik < A.xi_nodes().size(); ++ik) {
            std::size_t fx = A.x_nodes()[ix], fk = A.xi_nodes()[ik];
            m = std::max(m, std::abs(A.at(ix, ik) - full.at(fx, fk)));
        }
    CHECK(m <= 1e-12);
}

TEST_CASE("shift by whole cells equals rolling each column") {
    std::mt19937_64 rng(6);
    SpatialGrid g(1, 64, 8.0);
    auto f = random_wave(g, rng), w = random_wave(g, rng);
    // (t - tau) xi_k = k dxi * s is a multiple of dx when s = dx / dxi
    const double s = g.dx() / g.dxi();
    auto A = wpt_forward(f, w, {});
    auto B = wpt_shifted(f, w, s, 0.0);
    B.materialize();
    const int n = g.n();
    double m = 0.0;
    for (int ik = 0; ik < n; ++ik) {
        if (B.wraps(std::size_t(ik))) continue;
        int kk = ik - n / 2;
        for (int ix = 0; ix < n; ++ix) {
            int src = ((ix + kk) % n + n) % n;
            m = std::max(m, std::abs(B.at(std::size_t(ix), std::size_t(ik)) - A.at(std::size_t(src), std::size_t(ik))));
        }
    }
    CHECK(m <= 1e-12 * norm(f) * norm(w));
}

TEST_CASE("free covariance") {
    SpatialGrid g(1, 1024, 40.0);
    auto phi0 = make_scat_window(g, 1.0);
    auto psi = gaussian_packet(g, 1.0, {0.0, 0.0}, {2.0, 0.0});
    auto W0 = wpt_forward(psi, phi0);
    for (double t : {1.0, 4.0, 16.0}) {
        auto G = wpt_shifted(free_evolve(psi, t), free_evolve(phi0.wavefunction, t), t, 0.0);
        G.materialize();
        double err = 0.0;
        for (std::size_t ix = 0; ix < W0.x_nodes().size(); ++ix)
            for (std::size_t ik = 0; ik < W0.xi_nodes().size(); ++ik) {
                double xi = g.xi(int(ik));
                cplx expect = std::polar(1.0, -0.5 * t * xi * xi) * W0.at(ix, ik);
                err = std::max(err, std::abs(G.at(ix, ik) - expect));
            }
        CHECK(err <= 1e-9);
        // xi = 0 column carries no shift
        auto F = wpt_forward(free_evolve(psi, t), free_evolve(phi0.wavefunction, t), {});
        double c0 = 0.0;
        for (std::size_t ix = 0; ix < W0.x_nodes().size(); ++ix)
            c0 = std::max(c0, std::abs(G.at(ix, g.n() / 2) - F.at(ix, g.n() / 2)));
        CHECK(c0 <= 1e-12);
    }
}

TEST_CASE("mask membership") {
    auto m = PhaseSpaceMask::gamma(1.0, 5.0);
    CHECK(m.contains({0.0, 0.0}, {0.5, 0.0}));
    CHECK(m.contains({6.0, 0.0}, {3.0, 0.0}));
    CHECK_FALSE(m.contains({1.0, 0.0}, {3.0, 0.0}));
    CHECK(m.contains({5.0, 0.0}, {3.0, 0.0}));

    auto c = PhaseSpaceMask::conic(0.5, 0.9);
    CHECK(c.contains({1.0, 0.0}, {2.0, 0.1}));
    CHECK_FALSE(c.contains({1.0, 0.0}, {0.0, 2.0}));
    CHECK(c.contains({-1.0, 0.0}, {2.0, 0.0}));  // anti-parallel counts too
    CHECK(c.contains({0.0, 0.0}, {0.0, 2.0}));
    CHECK(c.contains({0.0, 3.0}, {0.1, 0.2}));
    CHECK_THROWS_AS(check_mask_dim(c, 1), UnsupportedError);
}

TEST_CASE("masked norms: degenerate and full masks") {
    std::mt19937_64 rng(8);
    SpatialGrid g(1, 128, 10.0);
    auto f = random_wave(g, rng), w = random_wave(g, rng);
    auto F = wpt_forward(f, w, {});
    auto zero_col = PhaseSpaceMask::gamma(0.0, 1e9);
    double col = 0.0;
    for (std::size_t ix = 0; ix < F.x_nodes().size(); ++ix) col += std::norm(F.at(ix, g.n() / 2));
    CHECK(masked_norm(F, zero_col) == doctest::Approx(std::sqrt(col * F.weight())).epsilon(1e-12));
    CHECK(masked_norm(F, PhaseSpaceMask::gamma(g.xi_max() + 1, 1.0)) == doctest::Approx(ps_norm(F)).epsilon(1e-12));
    auto mn = masked_norms(F, {zero_col});
    CHECK(mn.total == doctest::Approx(ps_norm(F)).epsilon(1e-12));
    CHECK(std::pow(masked_norm(F, zero_col), 2) + std::pow(masked_complement_norm(F, zero_col), 2) ==
          doctest::Approx(std::pow(ps_norm(F), 2)).epsilon(1e-10));
    CHECK_THROWS_AS(masked_norm(F, PhaseSpaceMask::conic(0.5, 0.5)), UnsupportedError);
}

TEST_CASE("phase-space bump in the mask complement leaks little") {
    SpatialGrid g(1, 1024, 40.0);
    // Gaussian smoothing costs e^{-dx^2/4s^2 - s^2 dxi^2/4}; margins 19 and 4.5 leave room for 1e-6
    auto phi = make_scat_window(g, 2.0);
    auto f = phase_space_bump(phi, {0.0, 0.0}, 1.0, {5.0, 0.0}, 0.25);
    auto F = wpt_forward(f, phi);
    CHECK(masked_norm(F, PhaseSpaceMask::gamma(0.5, 20.0)) / ps_norm(F) <= 1e-6);
}

TEST_CASE("masked norms are thread-count invariant") {
    SpatialGrid g(2, 64, 10.0);
    auto phi = make_scat_window(g, 1.0);
    auto f = gaussian_packet(g, 1.0, {1.0, 0.0}, {2.0, 0.0});
    std::vector<PhaseSpaceMask> masks = {PhaseSpaceMask::gamma(0.5, 5.0), PhaseSpaceMask::conic(0.5, 0.9)};
    set_max_threads(1);
    auto a = masked_norms(wpt_shifted(f, phi, 2.0, 0.0, {4, 4}), masks);
    set_max_threads(3);
    auto b = masked_norms(wpt_shifted(f, phi, 2.0, 0.0, {4, 4}), masks);
    set_max_threads(1);
    CHECK(a.masked == b.masked);
    CHECK(a.total == b.total);
}

TEST_CASE("wrapping columns with mass are refused") {
    SpatialGrid g(1, 128, 10.0);
    auto w = make_scat_window(g, 1.0);
    auto f = gaussian_packet(g, 0.3, {0.0, 0.0}, {0.0, 0.0});  // broad spectrum
    auto F = wpt_shifted(f, w, 50.0, 0.0);
    CHECK_THROWS_AS(masked_norms(F, {PhaseSpaceMask::gamma(0.5, 5.0)}), BudgetError);
}
