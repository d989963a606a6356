#include "wps/wpt.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "wps/errors.hpp"
#include "wps/parallel.hpp"

namespace wps {

namespace {

// flat index of the node displaced by (d0, d1) cells from index (a0, a1), periodic
std::size_t wrap_index(const SpatialGrid& g, long a0, long a1) {
    const long n = g.n();
    a0 = ((a0 % n) + n) % n;
    if (g.dim() == 1) return std::size_t(a0);
    a1 = ((a1 % n) + n) % n;
    return std::size_t(a0) * n + std::size_t(a1);
}

// window value w(y - x) for lattice nodes y, x
std::size_t window_index(const SpatialGrid& g, std::size_t y, std::size_t x) {
    auto ay = g.unflatten(y), ax = g.unflatten(x);
    const long h = g.n() / 2;
    return wrap_index(g, h + ay[0] - ax[0], h + ay[1] - ax[1]);
}

std::vector<std::size_t> sampled(const SpatialGrid& g, int c) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto a = g.unflatten(i);
        if (a[0] % c == 0 && a[1] % c == 0) out.push_back(i);
    }
    return out;
}

double dot(const std::array<double, 2>& a, const std::array<double, 2>& b) { return a[0] * b[0] + a[1] * b[1]; }

double len(const std::array<double, 2>& a) { return std::hypot(a[0], a[1]); }

}  // namespace

bool PhaseSpaceMask::contains(const std::array<double, 2>& x, const std::array<double, 2>& xi) const {
    const double k = len(xi);
    if (k <= a) return true;
    if (kind == MaskKind::gamma_aR) return len(x) >= R;
    return std::abs(dot(x, xi)) >= sigma * len(x) * k;
}

std::string PhaseSpaceMask::label() const {
    std::ostringstream os;
    if (kind == MaskKind::gamma_aR)
        os << "gamma(a=" << a << ",R=" << R << ")";
    else
        os << "conic(a=" << a << ",sigma=" << sigma << ")";
    return os.str();
}

void check_mask_dim(const PhaseSpaceMask& m, int dim) {
    if (m.kind == MaskKind::gamma_tilde && dim < 2) throw UnsupportedError("conic mask needs dim >= 2");
    if (m.kind == MaskKind::gamma_tilde && !(m.sigma > 0.0 && m.sigma <= 1.0))
        throw ParameterError("conic mask sigma must lie in (0, 1]");
    if (m.a < 0.0) throw ParameterError("mask a must be non-negative");
    if (m.kind == MaskKind::gamma_aR && !(m.R > 0.0)) throw ParameterError("mask R must be positive");
}

PhaseSpaceField::PhaseSpaceField(const WaveFunction& f, const WaveFunction& w, double shift, Sampling s)
    : grid_(f.grid), samp_(s), shift_(shift) {
    require_same_grid(f.grid, w.grid, "wave packet transform");
    if (s.cx < 1 || s.cxi < 1 || grid_.n() % s.cx || grid_.n() % s.cxi)
        throw ParameterError("coarsening factors must divide N");
    fhat_ = fourier(f);
    what_ = fourier(w);
    for (std::size_t l = 0; l < what_.values.size(); ++l)
        if (what_.values[l] != cplx(0.0)) support_.push_back(l);
    norm_product_ = norm(f) * norm(w);
    init_nodes();
}

void PhaseSpaceField::init_nodes() {
    xs_ = sampled(grid_, samp_.cx);
    ks_ = sampled(grid_, samp_.cxi);
}

PhaseSpaceField PhaseSpaceField::from_dense(const SpatialGrid& g, Sampling s, cvec values) {
    PhaseSpaceField F;
    F.grid_ = g;
    F.samp_ = s;
    F.init_nodes();
    if (values.size() != F.xs_.size() * F.ks_.size()) throw StructuralError("dense field size does not match lattice");
    F.dense_ = std::move(values);
    double s2 = 0.0;
    for (auto& v : F.dense_) s2 += std::norm(v);
    F.norm_product_ = std::sqrt(s2 * F.weight());
    return F;
}

double PhaseSpaceField::weight() const {
    return grid_.cell() * grid_.cell_xi() * std::pow(double(samp_.cx) * samp_.cxi, grid_.dim());
}

bool PhaseSpaceField::wraps(std::size_t ik) const {
    auto xi = grid_.frequency(ks_[ik]);
    const double period = 2.0 * grid_.half_length();
    return std::abs(shift_ * xi[0]) > period || std::abs(shift_ * xi[1]) > period;
}

cplx PhaseSpaceField::at(std::size_t ix, std::size_t ik) const {
    if (materialized()) return dense_[ix * ks_.size() + ik];
    cvec out;
    column(ik, {xs_[ix]}, out);
    return out[0];
}

void PhaseSpaceField::column(std::size_t ik, const std::vector<std::size_t>& rows, cvec& out) const {
    out.assign(rows.size(), 0.0);
    if (materialized()) {
        const int nxa = grid_.n() / samp_.cx;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            auto a = grid_.unflatten(rows[r]);
            if (a[0] % samp_.cx || a[1] % samp_.cx) throw StructuralError("row is not a sampled node");
            std::size_t ix = grid_.dim() == 1 ? std::size_t(a[0] / samp_.cx)
                                              : std::size_t(a[0] / samp_.cx) * nxa + std::size_t(a[1] / samp_.cx);
            out[r] = dense_[ix * ks_.size() + ik];
        }
        return;
    }
    const auto& g = grid_;
    const std::size_t kk = ks_[ik];
    const auto ka = g.unflatten(kk);
    const auto xi = g.frequency(kk);
    const long h = g.n() / 2;
    auto spectral = [&](std::size_t l) {
        auto la = g.unflatten(l);
        cplx v = fhat_.values[wrap_index(g, ka[0] + la[0] - h, ka[1] + la[1] - h)] * std::conj(what_.values[l]);
        if (shift_ != 0.0) v *= std::polar(1.0, shift_ * dot(g.frequency(l), xi));
        return v;
    };
    const double direct_cost = double(support_.size()) * double(rows.size());
    const double fft_cost = double(g.size()) * (std::log2(double(g.size())) + 4.0);
    if (direct_cost < fft_cost) {
        const double w = g.cell_xi();
        for (std::size_t l : support_) {
            cplx a = spectral(l) * w;
            auto eta = g.frequency(l);
            for (std::size_t r = 0; r < rows.size(); ++r)
                out[r] += a * std::polar(1.0, dot(g.position(rows[r]), eta));
        }
        return;
    }
    Spectrum arr{g, cvec(g.size())};
    for (std::size_t l : support_) arr.values[l] = spectral(l);
    auto col = inverse_fourier(arr);
    for (std::size_t r = 0; r < rows.size(); ++r) out[r] = col.values[rows[r]];
}

void PhaseSpaceField::materialize() {
    if (materialized()) return;
    cvec vals(xs_.size() * ks_.size());
    parallel_for(ks_.size(), [&](std::size_t ik) {
        cvec col;
        column(ik, xs_, col);
        for (std::size_t ix = 0; ix < xs_.size(); ++ix) vals[ix * ks_.size() + ik] = col[ix];
    });
    dense_ = std::move(vals);
}

PhaseSpaceField wpt_forward(const WaveFunction& f, const WaveFunction& w, Sampling s) {
    PhaseSpaceField F(f, w, 0.0, s);
    const auto& g = f.grid;
    const auto& xs = F.x_nodes();
    const auto& ks = F.xi_nodes();
    if (xs.size() * ks.size() > (std::size_t(1) << 24)) return F;  // stays column-streamed
    cvec vals(xs.size() * ks.size());
    parallel_for(xs.size(), [&](std::size_t ix) {
        WaveFunction prod(g);
        for (std::size_t y = 0; y < g.size(); ++y)
            prod.values[y] = std::conj(w.values[window_index(g, y, xs[ix])]) * f.values[y];
        auto row = fourier(prod);
        for (std::size_t ik = 0; ik < ks.size(); ++ik) vals[ix * ks.size() + ik] = row.values[ks[ik]];
    });
    F.dense() = std::move(vals);
    return F;
}

PhaseSpaceField wpt_forward(const WaveFunction& f, const Window& w) {
    Sampling s;
    if (f.grid.dim() == 2 && f.grid.n() > 32) s = {4, 4};
    return wpt_forward(f, w.wavefunction, s);
}

WaveFunction wpt_inverse(const PhaseSpaceField& F, const WaveFunction& w) {
    require_same_grid(F.grid(), w.grid, "wpt_inverse");
    if (!F.materialized() || !F.full_lattice())
        throw UnsupportedError("wpt_inverse needs a dense field on the complete (x, xi) lattice");
    const auto& g = F.grid();
    const std::size_t n = g.size();
    const double wn2 = std::pow(norm(w), 2);
    if (!(wn2 > 0.0)) throw ParameterError("wpt_inverse: zero window");
    // per-y contributions kept separately, then summed in a fixed order
    std::vector<cvec> parts(n);
    parallel_for(n, [&](std::size_t y) {
        Spectrum row{g, cvec(n)};
        for (std::size_t k = 0; k < n; ++k) row.values[k] = F.dense()[y * n + k];
        auto h = inverse_fourier(row);
        cvec c(n);
        for (std::size_t x = 0; x < n; ++x) c[x] = w.values[window_index(g, x, y)] * h.values[x];
        parts[y] = std::move(c);
    });
    WaveFunction out(g);
    const double scale = g.cell() / wn2;
    for (std::size_t x = 0; x < n; ++x) {
        cplx s = 0.0;
        for (std::size_t y = 0; y < n; ++y) s += parts[y][x];
        out.values[x] = s * scale;
    }
    return out;
}

WaveFunction wpt_inverse(const PhaseSpaceField& F, const Window& w) { return wpt_inverse(F, w.wavefunction); }

PhaseSpaceField wpt_shifted(const WaveFunction& f, const WaveFunction& w, double t, double tau, Sampling s) {
    PhaseSpaceField F(f, w, t - tau, s);
    if (f.grid.dim() == 1 && F.x_nodes().size() * F.xi_nodes().size() <= (std::size_t(1) << 22)) F.materialize();
    return F;
}

PhaseSpaceField wpt_shifted(const WaveFunction& f, const Window& w, double t, double tau, Sampling s) {
    if (f.grid.dim() == 2 && s.cx == 1 && s.cxi == 1 && f.grid.n() > 32) s = {4, 4};
    return wpt_shifted(f, w.wavefunction, t, tau, s);
}

namespace {

struct Reduction {
    std::vector<std::size_t> rows;
    bool complement = false;
};

MaskedNorms reduce(const PhaseSpaceField& F, const std::vector<PhaseSpaceMask>& masks, const Reduction& red) {
    const auto& g = F.grid();
    for (const auto& m : masks) check_mask_dim(m, g.dim());
    const auto& ks = F.xi_nodes();
    const std::size_t M = masks.size();
    std::vector<double> col_total(ks.size(), 0.0), col_mask(ks.size() * M, 0.0);
    std::vector<char> wrapped(ks.size(), 0);
    std::vector<std::array<double, 2>> xpos(red.rows.size());
    for (std::size_t r = 0; r < red.rows.size(); ++r) xpos[r] = g.position(red.rows[r]);

    parallel_for(ks.size(), [&](std::size_t ik) {
        const auto xi = g.frequency(ks[ik]);
        if (red.complement) {
            bool any = false;
            for (const auto& m : masks) any = any || std::hypot(xi[0], xi[1]) > m.a;
            if (!any) return;
        }
        cvec col;
        F.column(ik, red.rows, col);
        double tot = 0.0;
        std::vector<double> acc(M, 0.0);
        for (std::size_t r = 0; r < col.size(); ++r) {
            const double p = std::norm(col[r]);
            tot += p;
            for (std::size_t m = 0; m < M; ++m)
                if (masks[m].contains(xpos[r], xi) != red.complement) acc[m] += p;
        }
        col_total[ik] = tot;
        for (std::size_t m = 0; m < M; ++m) col_mask[ik * M + m] = acc[m];
        wrapped[ik] = F.wraps(ik) ? 1 : 0;
    });

    MaskedNorms out;
    const double w = F.weight();
    const double budget = kWrapTolerance * F.norm_product() * F.norm_product();
    for (std::size_t ik = 0; ik < ks.size(); ++ik) {
        if (!wrapped[ik]) continue;
        if (col_total[ik] * w > budget) {
            std::ostringstream os;
            os << "phase-space shift " << F.shift() << " wraps the box for a column carrying mass "
               << col_total[ik] * w;
            throw BudgetError(os.str());
        }
        ++out.wrapped_columns;
    }
    out.total = std::sqrt(pairwise_sum(col_total) * w);
    std::vector<double> tmp(ks.size());
    for (std::size_t m = 0; m < M; ++m) {
        for (std::size_t ik = 0; ik < ks.size(); ++ik) tmp[ik] = col_mask[ik * M + m];
        out.masked.push_back(std::sqrt(pairwise_sum(tmp) * w));
    }
    return out;
}

}  // namespace

MaskedNorms masked_norms(const PhaseSpaceField& F, const std::vector<PhaseSpaceMask>& masks) {
    return reduce(F, masks, Reduction{F.x_nodes(), false});
}

double masked_norm(const PhaseSpaceField& F, const PhaseSpaceMask& m) { return masked_norms(F, {m}).masked[0]; }

double masked_complement_norm(const PhaseSpaceField& F, const PhaseSpaceMask& m) {
    Reduction red{{}, true};
    for (std::size_t x : F.x_nodes()) {
        if (m.kind == MaskKind::gamma_aR && std::hypot(F.grid().position(x)[0], F.grid().position(x)[1]) >= m.R)
            continue;
        red.rows.push_back(x);
    }
    return reduce(F, {m}, red).masked[0];
}

double ps_norm(const PhaseSpaceField& F) { return masked_norms(F, {}).total; }

cplx ps_inner(const PhaseSpaceField& F, const PhaseSpaceField& G) {
    require_same_grid(F.grid(), G.grid(), "ps_inner");
    if (!F.materialized() || !G.materialized()) throw UnsupportedError("ps_inner needs dense fields");
    if (F.sampling().cx != G.sampling().cx || F.sampling().cxi != G.sampling().cxi)
        throw StructuralError("ps_inner: sampling mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < F.dense().size(); ++i) s += F.dense()[i] * std::conj(G.dense()[i]);
    return s * F.weight();
}

}  // namespace wps
