// qvb command line: synthesize tailored probe profiles, tabulate the
// flattened-Gaussian scaling laws and run the pump-probe signal estimate.
// Output is CSV (header row, LF endings, 9 significant digits); summaries go
// to stdout.  Exit codes: 0 success, 2 configuration error, 3 numerical
// failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qvb/beam.hpp"
#include "qvb/config.hpp"
#include "qvb/fgsynth.hpp"
#include "qvb/signal.hpp"
#include "qvb/units.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // LF line endings on every platform
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

void warn_envelope(const qvb::PulseSpec& spec) {
    if (auto w = spec.envelope_warning()) std::cerr << "warning: " << *w << "\n";
}

int cmd_profile(const std::string& config_path, const std::string& where,
                const std::string& output) {
    const auto ini = qvb::IniFile::parse_file(config_path);
    const auto rc = qvb::RunConfig::from_ini(ini);
    const qvb::PulseSpec spec = rc.make_probe();
    warn_envelope(spec);

    // FG0 reference of equal pulse energy defines the normalisation
    qvb::FgRecipe ref_recipe = rc.probe_recipe();
    ref_recipe.N = 0;
    ref_recipe.Nprime.reset();
    ref_recipe.W = spec.total_energy();
    const qvb::PulseSpec ref = qvb::synthesize(ref_recipe);

    auto out = open_output(output);
    if (where == "focus") {
        const double ref_peak = qvb::intensity(ref, 0.0, 0.0, 0.0);
        out << "r_over_w0,intensity_rel\n";
        const int n = 301;
        for (int i = 0; i < n; ++i) {
            const double x = 3.0 * i / (n - 1.0);
            const double v = qvb::intensity(spec, x * spec.w0, 0.0, 0.0) / ref_peak;
            out << qvb::csv_number(x) << ',' << qvb::csv_number(v) << '\n';
        }
    } else {
        const double ref_peak = qvb::farfield_intensity_shape(ref, 0.0);
        const double xmax = std::max(3.0, 1.5 * std::sqrt(spec.max_p() + 1.0));
        out << "theta_over_theta0,intensity_rel\n";
        const int n = 601;
        for (int i = 0; i < n; ++i) {
            const double x = xmax * i / (n - 1.0);
            const double v = qvb::farfield_intensity_shape(spec, x) / ref_peak;
            out << qvb::csv_number(x) << ',' << qvb::csv_number(v) << '\n';
        }
    }
    return exit_ok;
}

int cmd_scaling(int nmax, const std::string& output) {
    if (nmax < 0 || nmax > qvb::fg_max_order)
        throw qvb::ConfigError("scaling", "nmax", "outside supported range 0..60");
    auto out = open_output(output);
    out << "N,c_sum,C2,s_exact,s_estimate,sigma,theta_exact,theta_estimate\n";
    for (int n = 0; n <= nmax; ++n) {
        const auto co = qvb::coefficients(n);
        const auto s = qvb::effective_waist(n);
        const auto sigma = qvb::peak_intensity_factor(n);
        const auto th = qvb::effective_divergence(n);
        out << n << ',' << qvb::csv_number(co.coefficient_sum()) << ','
            << qvb::csv_number(co.C2) << ',' << qvb::csv_number(s.exact) << ','
            << qvb::csv_number(s.estimate) << ',' << qvb::csv_number(sigma.summed) << ','
            << qvb::csv_number(th.exact) << ',' << qvb::csv_number(th.estimate) << '\n';
    }
    return exit_ok;
}

int cmd_signal(const std::string& config_path, const std::string& output) {
    const auto ini = qvb::IniFile::parse_file(config_path);
    const auto rc = qvb::RunConfig::from_ini(ini);
    const qvb::CollisionScenario scenario = rc.make_scenario();
    warn_envelope(scenario.probe);

    const qvb::SignalEvaluator evaluator(scenario, rc.grid);
    const qvb::TotalSignal total = qvb::total_signal(evaluator, rc.grid);
    const auto windows = qvb::discernibility(total.spectrum, scenario.purity);

    auto out = open_output(output);
    out << "theta_urad,dNperp_dthetatheta_per_rad2,dNprobe_dthetatheta_per_rad2\n";
    for (std::size_t i = 0; i < total.spectrum.theta.size(); ++i)
        out << qvb::csv_number(qvb::from_natural(total.spectrum.theta[i], qvb::Unit::microradian))
            << ',' << qvb::csv_number(total.spectrum.signal[i]) << ','
            << qvb::csv_number(total.spectrum.background[i]) << '\n';

    std::printf("N_perp = %.8e\n", total.value);
    std::printf("N_probe_pulse = %.8e\n", scenario.probe.total_energy() / scenario.probe.omega);
    if (rc.profile == qvb::ProbeProfile::fg_hole && rc.photons) {
        const auto budget = qvb::photon_budget(rc.N, *rc.Nprime, *rc.photons);
        std::printf("N_probe_available = %.8e\n", budget.available);
        std::printf("N_probe_blocked = %.8e\n", budget.blocked);
    }
    for (std::size_t i = 0; i < windows.size(); ++i) {
        const auto& w = windows[i];
        const double lo = qvb::from_natural(w.lo, qvb::Unit::microradian);
        if (w.open_ended)
            std::printf("window %zu: [%.8e, inf) urad, yield = %.8e\n", i + 1, lo, w.yield);
        else
            std::printf("window %zu: [%.8e, %.8e] urad, yield = %.8e\n", i + 1, lo,
                        qvb::from_natural(w.hi, qvb::Unit::microradian), w.yield);
    }
    if (total.tail_warning)
        std::fprintf(stderr, "warning: angular tail estimate %.2e relative exceeds 1e-3\n",
                     total.tail_estimate);

    if (!total.diagnostics.all_converged) {
        std::fprintf(stderr,
                     "numerical failure: quadrature did not converge, worst point "
                     "k = %.6e eV, theta = %.6e rad, achieved relative error %.2e\n",
                     total.diagnostics.worst_k, total.diagnostics.worst_theta,
                     total.diagnostics.worst_rel_error);
        return exit_numerical;
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tailored flattened-Gaussian beams and vacuum-birefringence signals"};
    app.require_subcommand(1);

    std::string config_path, output_path, where = "farfield";
    int nmax = 50;

    auto* profile = app.add_subcommand("profile", "radial intensity profile CSV");
    profile->add_option("--config", config_path, "run configuration file")->required();
    profile->add_option("--output", output_path, "output CSV path")->required();
    profile->add_option("--where", where, "focus|farfield")
        ->check(CLI::IsMember({"focus", "farfield"}));

    auto* scaling = app.add_subcommand("scaling", "FG_N scaling-law table CSV");
    scaling->add_option("--nmax", nmax, "largest order N");
    scaling->add_option("--output", output_path, "output CSV path")->required();

    auto* signal = app.add_subcommand("signal", "angular spectrum, totals and windows");
    signal->add_option("--config", config_path, "run configuration file")->required();
    signal->add_option("--output", output_path, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_config;
    }

    try {
        if (profile->parsed()) return cmd_profile(config_path, where, output_path);
        if (scaling->parsed()) return cmd_scaling(nmax, output_path);
        if (signal->parsed()) return cmd_signal(config_path, output_path);
    } catch (const qvb::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return exit_config;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::out_of_range& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_ok;
}
