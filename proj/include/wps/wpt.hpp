#pragma once

#include <string>
#include <vector>

#include "wps/grid.hpp"
#include "wps/windows.hpp"

namespace wps {

enum class MaskKind { gamma_aR, gamma_tilde };

struct PhaseSpaceMask {
    MaskKind kind = MaskKind::gamma_aR;
    double a = 0.0;
    double R = 1.0;      // gamma_aR
    double sigma = 1.0;  // gamma_tilde

    static PhaseSpaceMask gamma(double a, double R) { return {MaskKind::gamma_aR, a, R, 1.0}; }
    static PhaseSpaceMask conic(double a, double sigma) { return {MaskKind::gamma_tilde, a, 1.0, sigma}; }

    bool contains(const std::array<double, 2>& x, const std::array<double, 2>& xi) const;
    // second mask parameter as written to CSV (R or sigma)
    double second() const { return kind == MaskKind::gamma_aR ? R : sigma; }
    std::string label() const;
};

struct Sampling {
    int cx = 1;
    int cxi = 1;
};

// W_w f(x + shift*xi, xi) on the (x, xi) lattice. One-dimensional transforms of
// moderate size are stored densely; otherwise columns (fixed xi) are produced on
// demand from the spectra of f and w.
class PhaseSpaceField {
public:
    PhaseSpaceField() = default;
    PhaseSpaceField(const WaveFunction& f, const WaveFunction& w, double shift, Sampling s);

    const SpatialGrid& grid() const { return grid_; }
    Sampling sampling() const { return samp_; }
    double shift() const { return shift_; }
    bool materialized() const { return !dense_.empty(); }
    bool full_lattice() const { return samp_.cx == 1 && samp_.cxi == 1; }

    const std::vector<std::size_t>& x_nodes() const { return xs_; }
    const std::vector<std::size_t>& xi_nodes() const { return ks_; }

    // value at sampled positions (ix into x_nodes, ik into xi_nodes)
    cplx at(std::size_t ix, std::size_t ik) const;

    // values of one sampled xi column at the given x lattice nodes (flat indices)
    void column(std::size_t ik, const std::vector<std::size_t>& rows, cvec& out) const;

    // true when |shift * xi| exceeds the box period on some axis
    bool wraps(std::size_t ik) const;

    // phase-space cell weight including coarsening
    double weight() const;

    // store every sampled value
    void materialize();
    const cvec& dense() const { return dense_; }
    cvec& dense() { return dense_; }

    // L^2 norm bound ||f|| ||w||, exact on the full lattice
    double norm_product() const { return norm_product_; }

    static PhaseSpaceField from_dense(const SpatialGrid& g, Sampling s, cvec values);

private:
    SpatialGrid grid_;
    Sampling samp_;
    double shift_ = 0.0;
    Spectrum fhat_, what_;
    std::vector<std::size_t> support_;  // nonzero window spectrum nodes
    std::vector<std::size_t> xs_, ks_;
    cvec dense_;  // x-major: dense_[ix * ks_.size() + ik]
    double norm_product_ = 0.0;

    void init_nodes();
};

// Direct route: per x, conj(w(y - x)) f(y) transformed in y.
PhaseSpaceField wpt_forward(const WaveFunction& f, const Window& w);
PhaseSpaceField wpt_forward(const WaveFunction& f, const WaveFunction& w, Sampling s);

WaveFunction wpt_inverse(const PhaseSpaceField& F, const Window& w);
WaveFunction wpt_inverse(const PhaseSpaceField& F, const WaveFunction& w);

// G(x, xi) = W_w f(x + (t - tau) xi, xi), spectral shift per column.
PhaseSpaceField wpt_shifted(const WaveFunction& f, const WaveFunction& w, double t, double tau, Sampling s = {});
PhaseSpaceField wpt_shifted(const WaveFunction& f, const Window& w, double t, double tau, Sampling s = {});

struct MaskedNorms {
    std::vector<double> masked;  // one per mask
    double total = 0.0;
    int wrapped_columns = 0;     // flagged columns carrying negligible mass
};

// Columns whose shift wraps the box and whose mass exceeds wrap_tol * ||f||^2 ||w||^2
// raise BudgetError instead of being silently folded back.
inline constexpr double kWrapTolerance = 1e-10;

MaskedNorms masked_norms(const PhaseSpaceField& F, const std::vector<PhaseSpaceMask>& masks);
double masked_norm(const PhaseSpaceField& F, const PhaseSpaceMask& m);
// norm over the complement of the mask
double masked_complement_norm(const PhaseSpaceField& F, const PhaseSpaceMask& m);
double ps_norm(const PhaseSpaceField& F);
cplx ps_inner(const PhaseSpaceField& F, const PhaseSpaceField& G);

void check_mask_dim(const PhaseSpaceMask& m, int dim);

}  // namespace wps
