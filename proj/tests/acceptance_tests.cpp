// End-to-end acceptance runs: drives the CLI on the bundled HIBEF scenario,
// checks the published reference numbers at their stated tolerances and
// prints one PASS/FAIL line per criterion.  Exit status is the number of
// failed criteria.
//
// usage: acceptance_tests <source_dir> <qvb_cli> <property_tests>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qvb/fgsynth.hpp"

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %d %s: %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++g_failures;
}

bool within(double value, double target, double rel) {
    return std::fabs(value - target) <= rel * std::fabs(target);
}

struct CliRun {
    int exit_code = -1;
    double seconds = 0.0;
    std::string summary;
};

CliRun run_command(const std::string& cmd) {
    CliRun r;
    const auto t0 = std::chrono::steady_clock::now();
    const int rc = std::system(cmd.c_str());
    const auto t1 = std::chrono::steady_clock::now();
    r.exit_code = rc == -1 ? -1 : WEXITSTATUS(rc);
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::optional<double> parse_scalar(const std::string& text, const std::string& key) {
    const auto pos = text.find(key + " = ");
    if (pos == std::string::npos) return std::nullopt;
    return std::atof(text.c_str() + pos + key.size() + 3);
}

struct Window {
    double lo = 0.0, hi = 0.0, yield = 0.0;
    bool open = false;
};

std::vector<Window> parse_windows(const std::string& text) {
    std::vector<Window> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        Window w;
        int idx = 0;
        if (std::sscanf(line.c_str(), "window %d: [%lf, %lf] urad, yield = %lf", &idx, &w.lo,
                        &w.hi, &w.yield) == 4) {
            out.push_back(w);
        } else if (std::sscanf(line.c_str(), "window %d: [%lf, inf) urad, yield = %lf", &idx,
                               &w.lo, &w.yield) == 3) {
            w.open = true;
            out.push_back(w);
        }
    }
    return out;
}

struct CsvRow {
    double theta_urad, signal, background;
};

std::vector<CsvRow> parse_csv(const std::string& path) {
    std::vector<CsvRow> rows;
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        CsvRow r;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &r.theta_urad, &r.signal, &r.background) == 3)
            rows.push_back(r);
    }
    return rows;
}

double row_at(const std::vector<CsvRow>& rows, double theta_urad,
              double CsvRow::*member) {
    for (const auto& r : rows)
        if (std::fabs(r.theta_urad - theta_urad) < 1e-9) return r.*member;
    throw std::runtime_error("acceptance: missing CSV row at requested angle");
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 4) {
        std::fprintf(stderr, "usage: acceptance_tests <source_dir> <qvb_cli> <property_tests>\n");
        return 99;
    }
    const std::string src = argv[1], cli = argv[2], props = argv[3];
    const std::string csv_path = "acceptance_hibef.csv";
    const std::string summary_path = "acceptance_hibef_summary.txt";

    // ----- the paper scenario, end to end through the CLI -----
    const CliRun run = run_command(cli + " signal --config " + src + "/examples/hibef.cfg" +
                                   " --output " + csv_path + " > " + summary_path + " 2>&1");
    const std::string summary = read_file(summary_path);
    const auto nperp = parse_scalar(summary, "N_perp");
    const auto navail = parse_scalar(summary, "N_probe_available");
    const auto nblocked = parse_scalar(summary, "N_probe_blocked");
    const auto windows = parse_windows(summary);

    // 1: total polarization-flipped yield 1.47 +- 5%, runtime budget 5 min
    {
        const bool ok = run.exit_code == 0 && nperp && within(*nperp, 1.47, 0.05) &&
                        run.seconds <= 300.0;
        report(1, ok,
               fmt("N_perp = %.6g (target 1.47 +- 5%%), exit %d, runtime %.1f s (<= 300 s)",
                   nperp.value_or(-1.0), run.exit_code, run.seconds));
    }

    // 2: probe photon budget of the blocking construction
    {
        const bool have = navail && nblocked;
        const bool ok_n = have && within(*navail, 8.63e11, 0.01);
        const bool ok_b = have && within(*nblocked, 1.37e11, 0.01);
        report(2, ok_n && ok_b,
               fmt("N_available = %.6g (target 8.63e11 +- 1%%: %s), N_blocked = %.6g "
                   "(target 1.37e11 +- 1%%: %s)",
                   navail.value_or(-1.0), ok_n ? "ok" : "off", nblocked.value_or(-1.0),
                   ok_b ? "ok" : "off"));
    }

    // 3: discernibility window edges and per-window yields
    {
        const Window* w1 = nullptr;
        const Window* w2 = nullptr;
        for (const auto& w : windows) {
            if (!w.open && w.lo == 0.0) w1 = &w;
            if (w.open) w2 = &w;
        }
        const bool ok = windows.size() == 2 && w1 && w2 && std::fabs(w1->hi - 15.0) <= 2.0 &&
                        std::fabs(w2->lo - 76.0) <= 4.0 && within(w1->yield, 0.094, 0.10) &&
                        within(w2->yield, 0.14, 0.10);
        report(3, ok,
               w1 && w2 ? fmt("lower edge %.3g urad (15 +- 2), upper edge %.3g urad (76 +- 4), "
                              "yields %.3g (0.094 +- 10%%) and %.3g (0.14 +- 10%%)",
                              w1->hi, w2->lo, w1->yield, w2->yield)
                        : std::string("expected exactly the two published windows"));
    }

    // 4: effective waist of the hole beam for w0 = 3.3 um
    {
        const double w_um = qvb::effective_waist(50, 5).exact * 3.3;
        const bool ok = std::fabs(w_um - 0.55) <= 0.02;
        report(4, ok, fmt("w_50,5 = %.4f um (target 0.55 +- 0.02 um)", w_um));
    }

    // 5: scaling-law suite
    {
        bool sigma_ok = true;
        for (int n = 0; n <= 60 && sigma_ok; ++n) {
            const auto s = qvb::peak_intensity_factor(n);
            sigma_ok = std::fabs(s.summed - s.closed) <= 1e-12 * s.closed &&
                       qvb::coefficients(n).sum_identity_exact();
        }
        bool theta_ok = true;
        for (int n : {1, 5, 10, 50}) {
            const auto d = qvb::effective_divergence(n);
            theta_ok = theta_ok && std::fabs(d.exact - d.estimate) <= 0.10 * d.estimate;
        }
        double lo = 1e300, hi = 0.0;
        for (int n = 30; n <= 60; ++n) {
            const double prod = qvb::peak_intensity_factor(n).closed *
                                std::pow(qvb::effective_waist(n).estimate, 2);
            lo = std::min(lo, prod);
            hi = std::max(hi, prod);
        }
        const bool drift_ok = (hi - lo) / lo < 0.10;
        report(5, sigma_ok && theta_ok && drift_ok,
               fmt("sigma summed=closed to 1e-12 for N<=60: %s; theta_N within 10%% of "
                   "sqrt(1+N): %s; sigma s^2 drift %.1f%% over N in [30,60] (< 10%%)",
                   sigma_ok ? "ok" : "off", theta_ok ? "ok" : "off", 100.0 * (hi - lo) / lo));
    }

    // 6: property suite passes inside its time budget
    {
        const CliRun p = run_command(props + " > acceptance_properties.log 2>&1");
        const bool ok = p.exit_code == 0 && p.seconds < 60.0;
        report(6, ok, fmt("property suite exit %d in %.1f s (< 60 s)", p.exit_code, p.seconds));
    }

    // 7: qualitative far-field shape of the signal and probe columns
    {
        std::string detail;
        bool ok = false;
        try {
            const auto rows = parse_csv(csv_path);
            double sig_min = 1e300, sig_max = 0.0, bg_max = 0.0;
            for (const auto& r : rows) {
                if (r.theta_urad <= 20.0) {
                    sig_min = std::min(sig_min, r.signal);
                    sig_max = std::max(sig_max, r.signal);
                }
                bg_max = std::max(bg_max, r.background);
            }
            const bool plateau = sig_min >= 0.85 * sig_max;

            // hole: background algebraically zero on axis, negligible against
            // the signal throughout the hole region
            const double purity = 5.7e-10;
            bool hole_dark = row_at(rows, 0.0, &CsvRow::background) <= 1e-25 * bg_max;
            for (const auto& r : rows)
                if (r.theta_urad <= 10.0)
                    hole_dark = hole_dark && purity * r.background <= 0.05 * r.signal;

            // beyond the outer crossing the background dies faster
            const double sig_ratio =
                row_at(rows, 120.0, &CsvRow::signal) / row_at(rows, 90.0, &CsvRow::signal);
            const double bg_ratio = row_at(rows, 120.0, &CsvRow::background) /
                                    row_at(rows, 90.0, &CsvRow::background);
            const bool slower = sig_ratio > bg_ratio && bg_ratio < 1.0;

            ok = plateau && hole_dark && slower;
            detail = fmt("plateau min/max %.3f (>= 0.85) for theta <= 20 urad: %s; dark hole: "
                         "%s; signal outlives background past 90 urad: %s",
                         sig_min / sig_max, plateau ? "ok" : "off", hole_dark ? "ok" : "off",
                         slower ? "ok" : "off");
        } catch (const std::exception& e) {
            detail = e.what();
        }
        report(7, ok, detail);
    }

    std::printf("%d of 7 criteria passed\n", 7 - g_failures);
    return g_failures;
}
