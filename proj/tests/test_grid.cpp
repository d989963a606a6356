#include <doctest.h>

#include <cmath>
#include <random>

#include "wps/errors.hpp"
#include "wps/grid.hpp"
#include "wps/parallel.hpp"

using namespace wps;

namespace {

WaveFunction random_wave(const SpatialGrid& g, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    WaveFunction f(g);
    for (auto& z : f.values) z = cplx(nd(rng), nd(rng));
    return f;
}

}  // namespace

TEST_CASE("grid lattice layout") {
    SpatialGrid g(1, 512, 20.0);
    CHECK(g.dx() * g.n() == 40.0);
    CHECK(g.x(0) == -20.0);
    CHECK(g.xi(0) == doctest::Approx(-M_PI / 20.0 * 256));
    CHECK(g.xi(g.n() / 2) == 0.0);
    // only the first node is unpaired
    for (int k = 1; k < g.n() / 2; ++k) CHECK(g.xi(g.n() / 2 + k) == -g.xi(g.n() / 2 - k));

    SpatialGrid g2(2, 8, 1.0);
    CHECK(g2.size() == 64);
    auto ij = g2.unflatten(g2.flatten(3, 5));
    CHECK(ij[0] == 3);
    CHECK(ij[1] == 5);
}

TEST_CASE("grid rejects bad sizes") {
    CHECK_THROWS_AS(SpatialGrid(1, 100, 1.0), ParameterError);
    CHECK_THROWS_AS(SpatialGrid(3, 16, 1.0), ParameterError);
    CHECK_THROWS_AS(SpatialGrid(1, 16, -1.0), ParameterError);
}

TEST_CASE("fourier of a constant is a discrete delta of height 2L") {
    SpatialGrid g(1, 64, 5.0);
    WaveFunction f(g, cvec(g.size(), 1.0));
    auto F = fourier(f);
    for (int i = 0; i < g.n(); ++i) {
        double expect = i == g.n() / 2 ? 10.0 : 0.0;
        CHECK(std::abs(F.values[i] - expect) < 1e-12);
    }
    SpatialGrid g2(2, 16, 3.0);
    auto F2 = fourier(WaveFunction(g2, cvec(g2.size(), 1.0)));
    CHECK(std::abs(F2.values[g2.flatten(8, 8)] - 36.0) < 1e-12);
}

TEST_CASE("Gaussian Fourier pair") {
    SpatialGrid g(1, 512, 20.0);
    WaveFunction f(g);
    for (int j = 0; j < g.n(); ++j) f[j] = std::exp(-0.5 * g.x(j) * g.x(j));
    auto F = fourier(f);
    double err = 0.0;
    for (int i = 0; i < g.n(); ++i)
        err = std::max(err, std::abs(F.values[i] - std::sqrt(2 * M_PI) * std::exp(-0.5 * g.xi(i) * g.xi(i))));
    CHECK(err <= 1e-10);
}

TEST_CASE("Gaussian Fourier pair in two dimensions") {
    SpatialGrid g(2, 64, 10.0);
    WaveFunction f(g);
    for (std::size_t k = 0; k < g.size(); ++k) {
        auto x = g.position(k);
        f[k] = std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1]));
    }
    auto F = fourier(f);
    double err = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        auto xi = g.frequency(k);
        err = std::max(err, std::abs(F.values[k] - 2 * M_PI * std::exp(-0.5 * (xi[0] * xi[0] + xi[1] * xi[1]))));
    }
    CHECK(err <= 1e-10);
}

TEST_CASE("round trip and Parseval") {
    std::mt19937_64 rng(7);
    for (int n : {128, 256, 512}) {
        SpatialGrid g(1, n, 20.0);
        auto f = random_wave(g, rng);
        CHECK(distance(inverse_fourier(fourier(f)), f) / norm(f) <= 1e-12);
    }
    SpatialGrid g2(2, 32, 4.0);
    auto f2 = random_wave(g2, rng);
    CHECK(distance(inverse_fourier(fourier(f2)), f2) / norm(f2) <= 1e-12);

    SpatialGrid g(1, 256, 20.0);
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
        auto f = random_wave(g, rng);
        worst = std::max(worst, std::abs(spectral_norm(fourier(f)) / norm(f) - 1.0));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("inner product") {
    std::mt19937_64 rng(11);
    SpatialGrid g(1, 128, 10.0);
    auto f = random_wave(g, rng), h = random_wave(g, rng), k = random_wave(g, rng);
    CHECK(inner(f, f).real() == doctest::Approx(norm(f) * norm(f)).epsilon(1e-13));
    CHECK(std::abs(inner(f, f).imag()) < 1e-12 * norm(f) * norm(f));
    CHECK(std::abs(inner(f, h) - std::conj(inner(h, f))) < 1e-12 * norm(f) * norm(h));

    const cplx a(0.3, -1.2), b(-2.0, 0.5);
    cplx lhs = inner(a * f + b * h, k);
    cplx rhs = a * inner(f, k) + b * inner(h, k);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (std::abs(a) * norm(f) + std::abs(b) * norm(h)) * norm(k));

    WaveFunction s1(g), s2(g);
    for (int j = 0; j < g.n(); ++j) {
        s1[j] = std::sin(M_PI * g.x(j) / 10.0);
        s2[j] = std::sin(3 * M_PI * g.x(j) / 10.0);
    }
    CHECK(std::abs(inner(s1, s2)) <= 1e-12);

    SpatialGrid other(1, 64, 10.0);
    CHECK_THROWS_AS(inner(f, WaveFunction(other)), StructuralError);
}

TEST_CASE("boundary mass") {
    SpatialGrid g(1, 256, 20.0);
    WaveFunction f(g);
    for (int j = 0; j < g.n(); ++j) f[j] = std::exp(-0.5 * g.x(j) * g.x(j));
    CHECK(boundary_mass(f) < 1e-30);
    WaveFunction edge(g);
    edge[0] = 1.0;
    edge[100] = 1.0;
    CHECK(boundary_mass(edge) == doctest::Approx(0.5));
}

TEST_CASE("parallel transforms match serial bits") {
    std::mt19937_64 rng(3);
    SpatialGrid g(2, 64, 8.0);
    auto f = random_wave(g, rng);
    set_max_threads(1);
    auto a = fourier(f);
    set_max_threads(4);
    auto b = fourier(f);
    set_max_threads(1);
    CHECK(a.values == b.values);
}

TEST_CASE("pairwise sum is exact on integers and order fixed") {
    std::vector<double> v(1000);
    for (int i = 0; i < 1000; ++i) v[i] = i;
    CHECK(pairwise_sum(v) == 499500.0);
    CHECK(pairwise_sum(nullptr, 0) == 0.0);
}
