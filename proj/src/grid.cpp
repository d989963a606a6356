#include "wps/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>

#include "wps/errors.hpp"

namespace wps {

namespace {

bool is_pow2(int n) { return n >= 4 && (n & (n - 1)) == 0; }

struct PlanCache {
    std::mutex mu;
    std::map<std::tuple<int, int, int>, fftw_plan> plans;

    ~PlanCache() {
        for (auto& [k, p] : plans) fftw_destroy_plan(p);
    }

    // FFTW_UNALIGNED keeps the same codelets regardless of buffer alignment,
    // so repeated transforms of equal data give identical bits.
    fftw_plan get(int dim, int n, int sign) {
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_tuple(dim, n, sign);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;
        std::size_t total = dim == 1 ? std::size_t(n) : std::size_t(n) * n;
        auto* buf = fftw_alloc_complex(total);
        int dims[2] = {n, n};
        fftw_plan p = fftw_plan_dft(dim, dims, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
        plans.emplace(key, p);
        return p;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

// (-1)^(sum of axis indices)
double parity(const SpatialGrid& g, std::size_t idx) {
    auto a = g.unflatten(idx);
    return ((a[0] + a[1]) & 1) ? -1.0 : 1.0;
}

}  // namespace

SpatialGrid::SpatialGrid(int dim, int n, double half_length) : dim_(dim), n_(n), l_(half_length) {
    if (dim != 1 && dim != 2) throw ParameterError("grid.dim must be 1 or 2");
    if (!is_pow2(n)) throw ParameterError("grid.N must be a power of two >= 4, got " + std::to_string(n));
    if (!(half_length > 0.0)) throw ParameterError("grid.L must be positive");
    dx_ = 2.0 * l_ / n_;
    dxi_ = std::numbers::pi / l_;
    size_ = dim == 1 ? std::size_t(n) : std::size_t(n) * n;
}

std::array<int, 2> SpatialGrid::unflatten(std::size_t idx) const {
    if (dim_ == 1) return {int(idx), 0};
    return {int(idx / n_), int(idx % n_)};
}

std::array<double, 2> SpatialGrid::position(std::size_t idx) const {
    auto a = unflatten(idx);
    if (dim_ == 1) return {x(a[0]), 0.0};
    return {x(a[0]), x(a[1])};
}

std::array<double, 2> SpatialGrid::frequency(std::size_t idx) const {
    auto a = unflatten(idx);
    if (dim_ == 1) return {xi(a[0]), 0.0};
    return {xi(a[0]), xi(a[1])};
}

double SpatialGrid::cell() const { return std::pow(dx_, dim_); }

double SpatialGrid::cell_xi() const { return std::pow(dxi_ / (2.0 * std::numbers::pi), dim_); }

WaveFunction::WaveFunction(const SpatialGrid& g, cvec v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size()) throw StructuralError("wavefunction size does not match grid");
}

void require_same_grid(const SpatialGrid& a, const SpatialGrid& b, const char* what) {
    if (a != b) throw StructuralError(std::string(what) + ": grid mismatch");
}

void dft_inplace(const SpatialGrid& g, cplx* data, int sign) {
    fftw_plan p = cache().get(g.dim(), g.n(), sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
    auto* d = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(p, d, d);
}

Spectrum fourier(const WaveFunction& f) {
    const auto& g = f.grid;
    Spectrum out{g, cvec(g.size())};
    for (std::size_t i = 0; i < g.size(); ++i) out.values[i] = parity(g, i) * f.values[i];
    dft_inplace(g, out.values.data(), -1);
    const double w = g.cell();
    for (std::size_t i = 0; i < g.size(); ++i) out.values[i] *= parity(g, i) * w;
    return out;
}

WaveFunction inverse_fourier(const Spectrum& F) {
    const auto& g = F.grid;
    WaveFunction out(g);
    for (std::size_t i = 0; i < g.size(); ++i) out.values[i] = parity(g, i) * F.values[i];
    dft_inplace(g, out.values.data(), +1);
    const double w = 1.0 / std::pow(g.n() * g.dx(), g.dim());
    for (std::size_t i = 0; i < g.size(); ++i) out.values[i] *= parity(g, i) * w;
    return out;
}

cplx inner(const WaveFunction& f, const WaveFunction& g) {
    require_same_grid(f.grid, g.grid, "inner");
    cplx s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f.values[i] * std::conj(g.values[i]);
    return s * f.grid.cell();
}

double norm(const WaveFunction& f) {
    double s = 0.0;
    for (const auto& v : f.values) s += std::norm(v);
    return std::sqrt(s * f.grid.cell());
}

double spectral_norm(const Spectrum& F) {
    double s = 0.0;
    for (const auto& v : F.values) s += std::norm(v);
    return std::sqrt(s * F.grid.cell_xi());
}

double boundary_mass(const WaveFunction& f) {
    const auto& g = f.grid;
    const int n = g.n();
    double edge = 0.0, total = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double m = std::norm(f.values[i]);
        total += m;
        auto a = g.unflatten(i);
        bool near = a[0] < 4 || a[0] >= n - 4;
        if (g.dim() == 2) near = near || a[1] < 4 || a[1] >= n - 4;
        if (near) edge += m;
    }
    return total > 0.0 ? edge / total : 0.0;
}

WaveFunction operator+(const WaveFunction& a, const WaveFunction& b) {
    require_same_grid(a.grid, b.grid, "add");
    WaveFunction r(a.grid);
    for (std::size_t i = 0; i < a.size(); ++i) r.values[i] = a.values[i] + b.values[i];
    return r;
}

WaveFunction operator-(const WaveFunction& a, const WaveFunction& b) {
    require_same_grid(a.grid, b.grid, "subtract");
    WaveFunction r(a.grid);
    for (std::size_t i = 0; i < a.size(); ++i) r.values[i] = a.values[i] - b.values[i];
    return r;
}

WaveFunction operator*(cplx s, const WaveFunction& a) {
    WaveFunction r(a.grid);
    for (std::size_t i = 0; i < a.size(); ++i) r.values[i] = s * a.values[i];
    return r;
}

double distance(const WaveFunction& a, const WaveFunction& b) { return norm(a - b); }

}  // namespace wps
