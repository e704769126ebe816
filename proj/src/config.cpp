#include "scatter/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "scatter/constants.hpp"
#include "scatter/errors.hpp"

namespace scatter {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool schema_has(const std::string& key) {
    for (const auto& entry : Config::schema()) {
        if (key == entry.key) return true;
    }
    return false;
}

}  // namespace

const std::vector<Config::SchemaEntry>& Config::schema() {
    static const std::vector<SchemaEntry> entries = {
        {"morse.D", "double", "Sigma_g Morse well depth (hartree)"},
        {"morse.alpha", "double", "Morse range parameter (1/bohr)"},
        {"morse.Re", "double", "equilibrium separation (bohr)"},
        {"masses.mp", "double", "proton mass (electron masses)"},
        {"grid.Rmin", "double", "radial grid start (bohr)"},
        {"grid.Rmax", "double", "radial grid end (bohr)"},
        {"grid.dR", "double", "radial grid step (bohr)"},
        {"spectrum.Emin", "double", "fragment energy grid start (hartree)"},
        {"spectrum.Emax", "double", "fragment energy grid end (hartree)"},
        {"spectrum.nE", "int", "fragment energy grid points"},
        {"spectrum.grid", "string", "fragment grid spacing: uniform | log"},
        {"quad.theta_nodes", "int", "Gauss-Legendre nodes for the outgoing angle"},
        {"quad.theta_mode", "string", "angular node mapping: cos | logk2"},
        {"quad.Lmax", "int", "largest partial wave before auto-extension"},
        {"quad.L_auto_extend", "bool", "extend L until the last wave is below 1%"},
        {"quad.hermite_nodes", "int", "Gauss-Hermite nodes per packet dimension"},
        {"engine.interpolate", "bool", "use log-k~ amplitude tables for packet states"},
        {"engine.kt_nodes", "int", "k~ table nodes"},
        {"scan.phi_nodes", "int", "phase nodes over [0, 2pi)"},
        {"state.nu1", "int", "first vibrational label of the two-state scenario"},
        {"state.nu2", "int", "second vibrational label"},
        {"state.p1", "double", "electron lab momentum of component 1 (au)"},
        {"state.P1", "double", "ion lab momentum of component 1 (au)"},
        {"state.C1", "double", "real weight of component 1"},
        {"state.C2", "double", "real weight of component 2"},
        {"state.phi", "double", "relative phase (rad)"},
        {"envelope.max_center", "int", "center of the bond-stretching envelope"},
        {"envelope.max_width", "double", "width of the bond-stretching envelope"},
        {"envelope.min_center", "int", "center of the bond-compressing envelope"},
        {"envelope.min_width", "double", "width of the bond-compressing envelope"},
        {"envelope.k0", "double", "relative momentum anchored at nu = 0 (au)"},
        {"packet.p0", "double", "electron packet momentum center (au)"},
        {"packet.dp", "double", "electron packet momentum width (au)"},
        {"packet.P0", "double", "ion packet momentum center (au)"},
        {"packet.dP", "double", "ion packet momentum width (au)"},
        {"packet.tau_d", "double", "focus offset (au time)"},
        {"timing.points", "int", "collision-profile time grid points"},
        {"timing.width_factor", "double", "window width over estimated duration"},
        {"sweep.targets_fs", "list", "target collision durations (fs)"},
        {"sweep.methods", "string", "sweep methods: both | shrink_dp | offset_focus"},
        {"thermal.kT", "list", "temperatures kT (hartree) for the thermal scan"},
        {"map.Rmin", "double", "density map R window start (bohr)"},
        {"map.Rmax", "double", "density map R window end (bohr)"},
        {"map.nR", "int", "density map R points"},
        {"map.xmax", "double", "density map half-window in x (bohr)"},
        {"map.nx", "int", "density map x points"},
    };
    return entries;
}

Config Config::defaults() {
    Config c;
    auto setd = [&c](const char* k, double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        c.values_[k] = os.str();
    };
    setd("morse.D", kDefaultMorseD);
    setd("morse.alpha", kDefaultMorseAlpha);
    setd("morse.Re", kDefaultMorseRe);
    setd("masses.mp", kProtonMass);
    setd("grid.Rmin", kDefaultRmin);
    setd("grid.Rmax", kDefaultRmax);
    setd("grid.dR", kDefaultDr);
    setd("spectrum.Emin", 0.01);
    setd("spectrum.Emax", 0.8);
    c.values_["spectrum.nE"] = "64";
    c.values_["spectrum.grid"] = "uniform";
    c.values_["quad.theta_nodes"] = "32";
    c.values_["quad.theta_mode"] = "logk2";
    c.values_["quad.Lmax"] = "9";
    c.values_["quad.L_auto_extend"] = "true";
    c.values_["quad.hermite_nodes"] = "16";
    c.values_["engine.interpolate"] = "true";
    c.values_["engine.kt_nodes"] = "360";
    c.values_["scan.phi_nodes"] = "24";
    c.values_["state.nu1"] = "0";
    c.values_["state.nu2"] = "1";
    setd("state.p1", 4.0);
    setd("state.P1", 0.0);
    setd("state.C1", 0.70710678118654752);
    setd("state.C2", 0.70710678118654752);
    setd("state.phi", 0.0);
    c.values_["envelope.max_center"] = "18";
    setd("envelope.max_width", 1.8);
    c.values_["envelope.min_center"] = "7";
    setd("envelope.min_width", 6.0);
    setd("envelope.k0", 4.0);
    setd("packet.p0", 4.0);
    setd("packet.dp", 0.01);
    setd("packet.P0", 0.0);
    setd("packet.dP", 1.0);
    setd("packet.tau_d", 0.0);
    c.values_["timing.points"] = "2048";
    setd("timing.width_factor", 20.0);
    c.values_["sweep.targets_fs"] = "0.87,1.5,3,6,10,14.9,18";
    c.values_["sweep.methods"] = "both";
    c.values_["thermal.kT"] = "0.001,0.00316,0.01,0.0316,0.1";
    setd("map.Rmin", 0.5);
    setd("map.Rmax", 12.0);
    c.values_["map.nR"] = "231";
    setd("map.xmax", 2500.0);
    c.values_["map.nx"] = "251";
    return c;
}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    Config c = defaults();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return c;
}

void Config::set(const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("override must have the form key=value: " + assignment);
    }
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void Config::set(const std::string& key, const std::string& value) {
    if (!schema_has(key)) throw ConfigError("unknown config key: " + key);
    if (value.empty()) throw ConfigError("empty value for config key: " + key);
    values_[key] = value;
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing config key: " + key);
    return it->second;
}

double Config::get_double(const std::string& key) const {
    std::string v = get_string(key);
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + " is not a number: " + v);
    }
}

int Config::get_int(const std::string& key) const {
    double d = get_double(key);
    int i = static_cast<int>(std::lround(d));
    if (std::abs(d - i) > 1e-9) throw ConfigError("config key " + key + " is not an integer");
    return i;
}

bool Config::get_bool(const std::string& key) const {
    std::string v = get_string(key);
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config key " + key + " is not a boolean: " + v);
}

std::vector<double> Config::get_list(const std::string& key) const {
    std::string v = get_string(key);
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("config key " + key + " has a non-numeric entry: " + item);
        }
    }
    if (out.empty()) throw ConfigError("config key " + key + " is an empty list");
    return out;
}

std::vector<std::string> Config::validate() const {
    std::vector<std::string> issues;
    auto positive = [&](const char* key) {
        try {
            if (!(get_double(key) > 0.0)) issues.push_back(std::string(key) + " must be > 0");
        } catch (const ConfigError& e) {
            issues.push_back(e.what());
        }
    };
    for (const char* key : {"morse.D", "morse.alpha", "morse.Re", "masses.mp", "grid.Rmin",
                            "grid.dR", "spectrum.Emin", "spectrum.Emax", "packet.dp",
                            "packet.dP", "envelope.k0", "envelope.max_width",
                            "envelope.min_width"}) {
        positive(key);
    }
    try {
        if (get_double("grid.Rmax") <= get_double("grid.Rmin")) {
            issues.push_back("grid.Rmax must exceed grid.Rmin");
        }
        if (get_double("spectrum.Emax") <= get_double("spectrum.Emin")) {
            issues.push_back("spectrum.Emax must exceed spectrum.Emin");
        }
        if (get_int("spectrum.nE") < 4) issues.push_back("spectrum.nE must be >= 4");
        if (get_int("quad.theta_nodes") < 4) issues.push_back("quad.theta_nodes must be >= 4");
        if (get_int("quad.Lmax") % 2 == 0) issues.push_back("quad.Lmax must be odd");
        if (get_int("scan.phi_nodes") < 4) issues.push_back("scan.phi_nodes must be >= 4");
        std::string sg = get_string("spectrum.grid");
        if (sg != "uniform" && sg != "log") issues.push_back("spectrum.grid must be uniform|log");
        std::string tm = get_string("quad.theta_mode");
        if (tm != "cos" && tm != "logk2") issues.push_back("quad.theta_mode must be cos|logk2");
        std::string sm = get_string("sweep.methods");
        if (sm != "both" && sm != "shrink_dp" && sm != "offset_focus") {
            issues.push_back("sweep.methods must be both|shrink_dp|offset_focus");
        }
        for (double t : get_list("sweep.targets_fs")) {
            if (!(t > 0.0)) issues.push_back("sweep.targets_fs entries must be > 0");
        }
    } catch (const ConfigError& e) {
        issues.push_back(e.what());
    }
    return issues;
}

}  // namespace scatter
