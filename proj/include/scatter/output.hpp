#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scatter/config.hpp"
#include "scatter/cross_sections.hpp"
#include "scatter/states.hpp"
#include "scatter/timing.hpp"

namespace scatter {

/// Deterministic text outputs: every number is printed with 12
/// significant digits so reruns are byte-identical.
std::string format_number(double v);

/// CSV writer; `header` like "E,dsigma_dE".  Rows are written through
/// format_number.  Throws IoError on failure.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

/// FNV-1a 64 of a file's bytes, hex-encoded; used in the manifest.
std::string file_checksum(const std::string& path);

/// Collects written files plus run metadata into manifest.json.
class Manifest {
  public:
    void record(const std::string& path);                   // output file
    void note(const std::string& key, const std::string& value);
    void note_curve(const std::string& name, const SpectrumCurve& curve);
    void write(const std::string& path, const Config& config) const;

  private:
    std::vector<std::string> files_;
    std::vector<std::pair<std::string, std::string>> notes_;
};

/// DensityMap export: CSV ("R,x,P") or JSON with grid metadata.
void write_density_map_csv(const std::string& path, const DensityMap& map);
void write_density_map_json(const std::string& path, const DensityMap& map);

/// SpectrumCurve JSON including convergence metadata.
void write_curve_json(const std::string& path, const std::string& x_name,
                      const std::string& y_name, const SpectrumCurve& curve);

}  // namespace scatter
