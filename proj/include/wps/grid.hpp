#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace wps {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;
using rvec = std::vector<double>;

// Periodic box [-L, L)^dim with N points per axis.
// Frequency arrays are stored centered: index i <-> k = i - N/2.
class SpatialGrid {
public:
    SpatialGrid() = default;
    SpatialGrid(int dim, int n, double half_length);

    int dim() const { return dim_; }
    int n() const { return n_; }
    double half_length() const { return l_; }
    double dx() const { return dx_; }
    double dxi() const { return dxi_; }
    std::size_t size() const { return size_; }

    double x(int j) const { return -l_ + j * dx_; }
    double xi(int i) const { return dxi_ * (i - n_ / 2); }
    double xi_max() const { return dxi_ * (n_ / 2); }

    // axis indices of a flat row-major index
    std::array<int, 2> unflatten(std::size_t idx) const;
    std::size_t flatten(int i0, int i1) const { return dim_ == 1 ? std::size_t(i0) : std::size_t(i0) * n_ + i1; }

    // position / frequency vectors at a flat index (second component 0 for dim = 1)
    std::array<double, 2> position(std::size_t idx) const;
    std::array<double, 2> frequency(std::size_t idx) const;

    double cell() const;      // dx^dim
    double cell_xi() const;   // (dxi / 2pi)^dim

    bool operator==(const SpatialGrid& o) const { return dim_ == o.dim_ && n_ == o.n_ && l_ == o.l_; }
    bool operator!=(const SpatialGrid& o) const { return !(*this == o); }

private:
    int dim_ = 1;
    int n_ = 0;
    double l_ = 0.0;
    double dx_ = 0.0;
    double dxi_ = 0.0;
    std::size_t size_ = 0;
};

struct WaveFunction {
    SpatialGrid grid;
    cvec values;

    WaveFunction() = default;
    explicit WaveFunction(const SpatialGrid& g) : grid(g), values(g.size()) {}
    WaveFunction(const SpatialGrid& g, cvec v);

    std::size_t size() const { return values.size(); }
    cplx& operator[](std::size_t i) { return values[i]; }
    const cplx& operator[](std::size_t i) const { return values[i]; }
};

// Frequency-side samples, centered order, same grid.
struct Spectrum {
    SpatialGrid grid;
    cvec values;
};

Spectrum fourier(const WaveFunction& f);
WaveFunction inverse_fourier(const Spectrum& F);

cplx inner(const WaveFunction& f, const WaveFunction& g);
double norm(const WaveFunction& f);
double spectral_norm(const Spectrum& F);
// fraction of |f|^2 within 4 cells of any box face
double boundary_mass(const WaveFunction& f);

WaveFunction operator+(const WaveFunction& a, const WaveFunction& b);
WaveFunction operator-(const WaveFunction& a, const WaveFunction& b);
WaveFunction operator*(cplx s, const WaveFunction& a);
double distance(const WaveFunction& a, const WaveFunction& b);

void require_same_grid(const SpatialGrid& a, const SpatialGrid& b, const char* what);

// Raw unnormalized DFT in natural order (sign -1 forward, +1 backward), in place.
void dft_inplace(const SpatialGrid& g, cplx* data, int sign);

}  // namespace wps
