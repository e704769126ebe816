#include "scatter/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "scatter/errors.hpp"

namespace scatter {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << header << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_number(row[i]);
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

std::string file_checksum(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot checksum " + path);
    std::uint64_t h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void Manifest::record(const std::string& path) { files_.push_back(path); }

void Manifest::note(const std::string& key, const std::string& value) {
    notes_.emplace_back(key, value);
}

void Manifest::note_curve(const std::string& name, const SpectrumCurve& curve) {
    note(name + ".total", format_number(curve.total));
    note(name + ".l_max_used", std::to_string(curve.meta.l_max_used));
    note(name + ".last_l_fraction", format_number(curve.meta.last_l_fraction));
    note(name + ".l_converged", curve.meta.l_converged ? "true" : "false");
    for (const auto& w : curve.meta.warnings) note(name + ".warning", w);
}

void Manifest::write(const std::string& path, const Config& config) const {
    nlohmann::ordered_json j;
    j["inputs"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config.entries()) j["inputs"][k] = v;
    j["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : notes_) {
        if (j["metadata"].contains(k)) {
            // repeated notes (warnings) become arrays
            if (!j["metadata"][k].is_array()) {
                auto prev = j["metadata"][k];
                j["metadata"][k] = nlohmann::ordered_json::array({prev});
            }
            j["metadata"][k].push_back(v);
        } else {
            j["metadata"][k] = v;
        }
    }
    j["outputs"] = nlohmann::ordered_json::array();
    for (const auto& f : files_) {
        j["outputs"].push_back({{"file", std::filesystem::path(f).filename().string()},
                                {"fnv1a64", file_checksum(f)}});
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

void write_density_map_csv(const std::string& path, const DensityMap& map) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "R,x,P\n";
    for (std::size_t i = 0; i < map.r_grid.size(); ++i) {
        for (std::size_t j = 0; j < map.x_grid.size(); ++j) {
            out << format_number(map.r_grid[i]) << ',' << format_number(map.x_grid[j]) << ','
                << format_number(map.at(i, j)) << '\n';
        }
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_density_map_json(const std::string& path, const DensityMap& map) {
    nlohmann::ordered_json j;
    j["r_grid"] = map.r_grid;
    j["x_grid"] = map.x_grid;
    j["values"] = map.values;
    j["layout"] = "row-major values[iR * nx + ix]";
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump() << '\n';
    if (!out) throw IoError("write failed: " + path);
}

void write_curve_json(const std::string& path, const std::string& x_name,
                      const std::string& y_name, const SpectrumCurve& curve) {
    nlohmann::ordered_json j;
    j[x_name] = curve.grid;
    j[y_name] = curve.values;
    j["total"] = curve.total;
    j["meta"] = {{"scenario", curve.meta.scenario},
                 {"l_max_used", curve.meta.l_max_used},
                 {"last_l_fraction", curve.meta.last_l_fraction},
                 {"l_converged", curve.meta.l_converged},
                 {"l_values", curve.meta.l_values},
                 {"sigma_per_l", curve.meta.sigma_per_l},
                 {"shells", curve.meta.shell_count},
                 {"dropped_components", curve.meta.dropped_components},
                 {"warnings", curve.meta.warnings}};
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace scatter
