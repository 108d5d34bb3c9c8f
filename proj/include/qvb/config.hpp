#pragma once

// Run configuration: plain-text files with bracketed section headers and
// key = value lines ('#' and ';' start comments).  Rejection messages always
// name the offending section and key.

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "qvb/fgsynth.hpp"
#include "qvb/signal.hpp"
#include "qvb/units.hpp"

namespace qvb {

class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& section, const std::string& key, const std::string& what_arg)
        : std::runtime_error("config error in [" + section + "] " + key + ": " + what_arg),
          section_(section),
          key_(key) {}
    const std::string& section() const { return section_; }
    const std::string& key() const { return key_; }

  private:
    std::string section_, key_;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace detail

class IniFile {
  public:
    static IniFile parse_stream(std::istream& in) {
        IniFile ini;
        std::string line, section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find_first_of("#;");
            if (hash != std::string::npos) line.erase(hash);
            line = detail::trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw ConfigError("?", "line " + std::to_string(lineno),
                                      "malformed section header");
                section = detail::trim(line.substr(1, line.size() - 2));
                ini.sections_[section];
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError(section.empty() ? "?" : section,
                                  "line " + std::to_string(lineno), "expected key = value");
            const std::string key = detail::trim(line.substr(0, eq));
            const std::string value = detail::trim(line.substr(eq + 1));
            if (key.empty())
                throw ConfigError(section, "line " + std::to_string(lineno), "empty key");
            ini.sections_[section][key] = value;
        }
        return ini;
    }

    static IniFile parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("?", path, "cannot open config file");
        return parse_stream(in);
    }

    bool has(const std::string& section, const std::string& key) const {
        auto s = sections_.find(section);
        return s != sections_.end() && s->second.count(key) > 0;
    }

    std::string get_string(const std::string& section, const std::string& key) const {
        auto s = sections_.find(section);
        if (s == sections_.end()) throw ConfigError(section, key, "missing section");
        auto k = s->second.find(key);
        if (k == s->second.end()) throw ConfigError(section, key, "missing key");
        return k->second;
    }

    double get_number(const std::string& section, const std::string& key) const {
        const std::string v = get_string(section, key);
        try {
            std::size_t pos = 0;
            const double x = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument("trailing characters");
            return x;
        } catch (const std::exception&) {
            throw ConfigError(section, key, "not a number: '" + v + "'");
        }
    }

    int get_int(const std::string& section, const std::string& key) const {
        const double x = get_number(section, key);
        const int i = static_cast<int>(x);
        if (static_cast<double>(i) != x) throw ConfigError(section, key, "not an integer");
        return i;
    }

    double get_number_or(const std::string& section, const std::string& key, double fallback) const {
        return has(section, key) ? get_number(section, key) : fallback;
    }
    int get_int_or(const std::string& section, const std::string& key, int fallback) const {
        return has(section, key) ? get_int(section, key) : fallback;
    }

  private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

// ---------------------------------------------------------------------------
// typed run configuration
// ---------------------------------------------------------------------------

enum class ProbeProfile { gauss, fg, fg_hole };

struct RunConfig {
    // probe
    ProbeProfile profile = ProbeProfile::fg_hole;
    int N = 0;
    std::optional<int> Nprime;
    Zeta0 zeta0 = Zeta0::farfield();
    std::optional<double> photons;    // N0
    std::optional<double> energy_J;   // alternative to photons
    double photon_energy_eV = 0.0;
    double duration_fs = 0.0;
    double waist_um = 0.0;

    // pump
    double pump_energy_J = 0.0;
    double pump_duration_fs = 0.0;
    double pump_wavelength_nm = 0.0;
    double pump_waist_um = 0.0;

    // detection
    double purity = 0.0;

    // grid
    SignalGridConfig grid;

    static RunConfig from_ini(const IniFile& ini) {
        RunConfig rc;
        const std::string prof = ini.get_string("probe", "profile");
        if (prof == "gauss") rc.profile = ProbeProfile::gauss;
        else if (prof == "fg") rc.profile = ProbeProfile::fg;
        else if (prof == "fg_hole") rc.profile = ProbeProfile::fg_hole;
        else throw ConfigError("probe", "profile", "expected gauss|fg|fg_hole, got '" + prof + "'");

        if (rc.profile != ProbeProfile::gauss) {
            rc.N = ini.get_int("probe", "N");
            if (rc.N < 0 || rc.N > fg_max_order)
                throw ConfigError("probe", "N", "outside supported range 0..60");
            const std::string z0 = ini.has("probe", "zeta0") ? ini.get_string("probe", "zeta0")
                                                             : std::string("farfield");
            if (z0 == "focus") rc.zeta0 = Zeta0::focus();
            else if (z0 == "farfield") rc.zeta0 = Zeta0::farfield();
            else throw ConfigError("probe", "zeta0", "expected focus|farfield, got '" + z0 + "'");
        }
        if (rc.profile == ProbeProfile::fg_hole) {
            rc.Nprime = ini.get_int("probe", "Nprime");
            if (*rc.Nprime < 0 || *rc.Nprime >= rc.N)
                throw ConfigError("probe", "Nprime", "requires 0 <= Nprime < N");
        }

        if (ini.has("probe", "photons")) rc.photons = ini.get_number("probe", "photons");
        if (ini.has("probe", "energy_J")) rc.energy_J = ini.get_number("probe", "energy_J");
        if (!rc.photons && !rc.energy_J)
            throw ConfigError("probe", "photons", "need photons or energy_J");
        if (rc.photons && rc.energy_J)
            throw ConfigError("probe", "photons", "photons and energy_J are exclusive");
        if ((rc.photons && !(*rc.photons > 0)) || (rc.energy_J && !(*rc.energy_J > 0)))
            throw ConfigError("probe", rc.photons ? "photons" : "energy_J", "must be positive");

        rc.photon_energy_eV = ini.get_number("probe", "photon_energy_eV");
        rc.duration_fs = ini.get_number("probe", "duration_fs");
        rc.waist_um = ini.get_number("probe", "waist_um");
        if (!(rc.photon_energy_eV > 0)) throw ConfigError("probe", "photon_energy_eV", "must be positive");
        if (!(rc.duration_fs > 0)) throw ConfigError("probe", "duration_fs", "must be positive");
        if (!(rc.waist_um > 0)) throw ConfigError("probe", "waist_um", "must be positive");

        rc.pump_energy_J = ini.get_number("pump", "energy_J");
        rc.pump_duration_fs = ini.get_number("pump", "duration_fs");
        rc.pump_wavelength_nm = ini.get_number("pump", "wavelength_nm");
        rc.pump_waist_um = ini.get_number("pump", "waist_um");
        if (rc.pump_energy_J < 0) throw ConfigError("pump", "energy_J", "must be >= 0");
        if (!(rc.pump_duration_fs > 0)) throw ConfigError("pump", "duration_fs", "must be positive");
        if (!(rc.pump_wavelength_nm > 0)) throw ConfigError("pump", "wavelength_nm", "must be positive");
        if (!(rc.pump_waist_um > 0)) throw ConfigError("pump", "waist_um", "must be positive");

        rc.purity = ini.get_number("detection", "purity");
        if (!(rc.purity > 0 && rc.purity < 1))
            throw ConfigError("detection", "purity", "must lie in (0, 1)");

        rc.grid.theta_max = to_natural(ini.get_number_or("grid", "theta_max_urad", 250.0),
                                       Unit::microradian);
        rc.grid.n_theta = ini.get_int_or("grid", "n_theta", 251);
        rc.grid.n_k = ini.get_int_or("grid", "n_k", 16);
        rc.grid.n_z = ini.get_int_or("grid", "n_z", 64);
        rc.grid.rel_tol = ini.get_number_or("grid", "rel_tol", 1e-6);
        try {
            rc.grid.validate();
        } catch (const std::exception& e) {
            throw ConfigError("grid", "n_theta", e.what());
        }
        return rc;
    }

    double probe_energy_eV() const {
        return photons ? *photons * photon_energy_eV : to_natural(*energy_J, Unit::joule);
    }

    FgRecipe probe_recipe() const {
        FgRecipe r;
        r.N = (profile == ProbeProfile::gauss) ? 0 : N;
        if (profile == ProbeProfile::fg_hole) r.Nprime = Nprime;
        r.zeta0 = (profile == ProbeProfile::gauss) ? Zeta0::farfield() : zeta0;
        r.W = probe_energy_eV();
        r.omega = photon_energy_eV;
        r.tau = to_natural(duration_fs, Unit::femtosecond);
        r.w0 = to_natural(waist_um, Unit::micrometre);
        return r;
    }

    PulseSpec make_probe() const { return synthesize(probe_recipe()); }

    CollisionScenario make_scenario() const {
        CollisionScenario sc;
        sc.probe = make_probe();
        sc.pump.W = to_natural(pump_energy_J, Unit::joule);
        sc.pump.tau = to_natural(pump_duration_fs, Unit::femtosecond);
        sc.pump.wavelength = to_natural(pump_wavelength_nm, Unit::nanometre);
        sc.pump.w0 = to_natural(pump_waist_um, Unit::micrometre);
        sc.purity = purity;
        return sc;
    }
};

// fixed-precision scientific notation, 9 significant digits
inline std::string csv_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8e", x);
    return buf;
}

}  // namespace qvb
