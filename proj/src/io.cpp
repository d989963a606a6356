#include "wps/io.hpp"

#include <bit>
#include <cmath>
#include <charconv>
#include <cstring>
#include <iomanip>
#include <sstream>

#include "wps/errors.hpp"

namespace wps {

static_assert(std::endian::native == std::endian::little, "snapshot formats assume a little-endian host");

namespace {

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is, const std::string& path) {
    T v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) throw ParameterError("truncated file " + path);
    return v;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ParameterError("cannot open " + path + " for writing");
    return os;
}

std::ifstream open_in(const std::string& path, const char magic[4]) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ParameterError("cannot open " + path);
    char m[4];
    if (!is.read(m, 4) || std::memcmp(m, magic, 4) != 0) throw ParameterError(path + ": bad magic");
    return is;
}

}  // namespace

void write_snapshot(const std::string& path, const WaveFunction& f) {
    auto os = open_out(path);
    os.write("WPS1", 4);
    put<std::uint32_t>(os, f.grid.dim());
    put<std::uint32_t>(os, f.grid.n());
    put<double>(os, f.grid.half_length());
    os.write(reinterpret_cast<const char*>(f.values.data()), std::streamsize(f.values.size() * sizeof(cplx)));
}

WaveFunction read_snapshot(const std::string& path) {
    auto is = open_in(path, "WPS1");
    auto dim = get<std::uint32_t>(is, path);
    auto n = get<std::uint32_t>(is, path);
    auto l = get<double>(is, path);
    WaveFunction f(SpatialGrid(int(dim), int(n), l));
    if (!is.read(reinterpret_cast<char*>(f.values.data()), std::streamsize(f.values.size() * sizeof(cplx))))
        throw ParameterError("truncated snapshot " + path);
    return f;
}

void write_window_sidecar(const std::string& path, const Window& w) {
    std::ofstream os(path);
    if (!os) throw ParameterError("cannot open " + path);
    os << "kind = " << window_kind_name(w.kind) << "\n";
    os << (w.kind == WindowKind::gaussian_scat ? "width = " : "r = ") << fmt(w.param) << "\n";
}

void write_field(const std::string& path, const PhaseSpaceField& F) {
    PhaseSpaceField tmp;
    const PhaseSpaceField* src = &F;
    if (!F.materialized()) {
        tmp = F;
        tmp.materialize();
        src = &tmp;
    }
    auto os = open_out(path);
    os.write("WPF1", 4);
    put<std::uint32_t>(os, F.grid().dim());
    put<std::uint32_t>(os, F.grid().n());
    put<double>(os, F.grid().half_length());
    put<std::uint32_t>(os, F.sampling().cx);
    put<std::uint32_t>(os, F.sampling().cxi);
    const auto& d = src->dense();
    os.write(reinterpret_cast<const char*>(d.data()), std::streamsize(d.size() * sizeof(cplx)));
}

PhaseSpaceField read_field(const std::string& path) {
    auto is = open_in(path, "WPF1");
    auto dim = get<std::uint32_t>(is, path);
    auto n = get<std::uint32_t>(is, path);
    auto l = get<double>(is, path);
    auto cx = get<std::uint32_t>(is, path);
    auto cxi = get<std::uint32_t>(is, path);
    SpatialGrid g(int(dim), int(n), l);
    Sampling s{int(cx), int(cxi)};
    std::size_t nx = g.size() / std::size_t(std::pow(double(cx), double(dim)));
    std::size_t nk = g.size() / std::size_t(std::pow(double(cxi), double(dim)));
    cvec vals(nx * nk);
    if (!is.read(reinterpret_cast<char*>(vals.data()), std::streamsize(vals.size() * sizeof(cplx))))
        throw ParameterError("truncated field " + path);
    return PhaseSpaceField::from_dense(g, s, std::move(vals));
}

std::string fmt(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path), out_(path), width_(header.size()) {
    if (!out_) throw ParameterError("cannot open " + path);
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw StructuralError("csv row width mismatch in " + path_);
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
    out_.flush();
}

std::string config_hash(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

}  // namespace wps
