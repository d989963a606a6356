#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "wps/grid.hpp"
#include "wps/windows.hpp"
#include "wps/wpt.hpp"

namespace wps {

void write_snapshot(const std::string& path, const WaveFunction& f);
WaveFunction read_snapshot(const std::string& path);

// "kind = ...", "width = ..." or "r = ..."
void write_window_sidecar(const std::string& path, const Window& w);

// WPF1: header {dim, N, L, c_x, c_xi}, sampled values x-major
void write_field(const std::string& path, const PhaseSpaceField& F);
PhaseSpaceField read_field(const std::string& path);

// Shortest round-trip decimal form, so equal runs give equal bytes.
std::string fmt(double v);

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ofstream out_;
    std::size_t width_;
};

// FNV-1a 64-bit over the bytes, as 16 hex digits
std::string config_hash(const std::string& text);

}  // namespace wps
