#pragma once

// Vacuum-birefringence signal of a head-on probe/pump collision: the
// polarization-flipped photon amplitude per probe mode,
//   M_p = (8/pi)^{3/4} (Wp_pump/w0) (sqrt(tau)/T+) e^{-(tau taut/(4T+))^2 (k-w)^2}
//         sqrt(W_p) e^{-i phi_p}
//         int dz  [2-r^2]^p/[2+r^2]^{p+1} L_p(w0^2 kperp^2 r^4 / (2[r^4-4]))
//                 e^{-w0^2 kperp^2 r^2/(4[2+r^2]) - 2(4z/T+)^2}
//                 e^{i[(k-w)(T-/T+)^2 + kz - w] z},
// the differential photon number
//   d^3N = d^3k/(2pi)^3 (32/225) alpha^4 (k/m_e^8) |sum_p M_p|^2,
// angular spectra, totals and purity-limited discernibility windows.
// The singular-looking Laguerre-times-power combination at r^2 = 2 is
// evaluated through the regular scaled form t^p L_p(-u/t), t = 2 - r^2,
// u = w0^2 kperp^2 r^4 / (2 (2+r^2)).

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qvb/beam.hpp"
#include "qvb/fgsynth.hpp"
#include "qvb/mathkit.hpp"
#include "qvb/units.hpp"

namespace qvb {

struct PumpParams {
    double W = 0.0;          // pulse energy [eV]
    double tau = 0.0;        // duration [eV^-1]
    double wavelength = 0.0; // [eV^-1]
    double w0 = 0.0;         // waist [eV^-1]

    double rayleigh_range() const { return std::numbers::pi * w0 * w0 / wavelength; }
};

struct CollisionScenario {
    PulseSpec probe;  // propagating towards +z, zeta ~ 0 across the interaction region
    PumpParams pump;  // counter-propagating FG0
    double purity = 0.0;

    void validate() const {
        probe.validate();
        if (probe.direction != BeamDirection::plus_z)
            throw std::invalid_argument("CollisionScenario: probe must propagate towards +z");
        if (!(pump.W >= 0) || !(pump.tau > 0) || !(pump.wavelength > 0) || !(pump.w0 > 0))
            throw std::invalid_argument("CollisionScenario: pump parameters out of range");
        if (!(purity > 0 && purity < 1))
            throw std::invalid_argument("CollisionScenario: purity must lie in (0, 1)");
        if (2.0 * probe.tau * probe.tau < pump.tau * pump.tau)
            throw std::invalid_argument(
                "CollisionScenario: T_- imaginary (pump duration^2 exceeds 2 tau^2), unsupported");
    }
};

struct KinematicPoint {
    double k = 0.0;      // signal photon energy [eV]
    double theta = 0.0;  // polar angle [rad]

    double kz() const { return k * std::cos(theta); }
    double kperp2() const {
        const double s = std::sin(theta);
        return k * k * s * s;
    }
    void validate() const {
        if (!(k > 0)) throw std::invalid_argument("KinematicPoint: k must be positive");
        if (!(theta >= 0 && theta < 0.01))
            throw std::invalid_argument("KinematicPoint: theta outside paraxial range [0, 0.01)");
    }
};

struct DerivedCollisionScales {
    double T_plus = 0.0;   // sqrt(2 tau^2 + taut^2)
    double T_minus = 0.0;  // sqrt(2 tau^2 - taut^2)
    double rho2 = 0.0;     // (w0_pump / w0_probe)^2
    double pump_zR = 0.0;

    double r2(double z) const {
        const double q = z / pump_zR;
        return rho2 * (1.0 + q * q);
    }

    static DerivedCollisionScales from(const CollisionScenario& sc) {
        DerivedCollisionScales d;
        const double tau2 = sc.probe.tau * sc.probe.tau;
        const double taut2 = sc.pump.tau * sc.pump.tau;
        if (2.0 * tau2 < taut2)
            throw std::invalid_argument("DerivedCollisionScales: 2 tau^2 >= taut^2 required");
        d.T_plus = std::sqrt(2.0 * tau2 + taut2);
        d.T_minus = std::sqrt(2.0 * tau2 - taut2);
        d.rho2 = (sc.pump.w0 / sc.probe.w0) * (sc.pump.w0 / sc.probe.w0);
        d.pump_zR = sc.pump.rayleigh_range();
        return d;
    }
};

struct AngularSpectrum {
    std::vector<double> theta;       // [rad], ascending
    std::vector<double> signal;      // dN_perp/(theta dtheta) [1/rad^2]
    std::vector<double> background;  // probe dN/(theta dtheta) [1/rad^2]
};

struct SignalGridConfig {
    double theta_max = 250e-6;  // [rad]
    int n_theta = 251;
    int n_k = 16;    // initial panels of the k quadrature
    int n_z = 64;    // floor on initial panels of the z quadrature
    double rel_tol = 1e-6;
    int max_subdivisions = 60000;

    void validate() const {
        if (!(theta_max > 0) || n_theta < 3)
            throw std::invalid_argument("SignalGridConfig: bad theta grid");
        if (n_k < 1 || n_z < 1 || !(rel_tol > 0))
            throw std::invalid_argument("SignalGridConfig: bad quadrature settings");
        if (theta_max > 0.01)
            throw std::invalid_argument("SignalGridConfig: theta_max outside paraxial range");
    }
};

struct QuadratureDiagnostics {
    bool all_converged = true;
    double worst_rel_error = 0.0;
    double worst_k = 0.0;
    double worst_theta = 0.0;

    void merge(const QuadratureDiagnostics& o) {
        if (!o.all_converged && o.worst_rel_error >= worst_rel_error) {
            all_converged = false;
            worst_rel_error = o.worst_rel_error;
            worst_k = o.worst_k;
            worst_theta = o.worst_theta;
        }
        all_converged = all_converged && o.all_converged;
    }
};

namespace detail {

// chunked deterministic parallel map: results land by index, reduction order
// is fixed regardless of thread count
template <typename F>
void parallel_for(std::size_t n, F&& body) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const unsigned nthreads = static_cast<unsigned>(std::min<std::size_t>(hw, n));
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += nthreads) body(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace detail

// Per-scenario evaluator holding the precomputed mode table and collision
// scales.  All evaluation methods are const and thread-safe.
class SignalEvaluator {
  public:
    SignalEvaluator(const CollisionScenario& scenario, const SignalGridConfig& grid)
        : sc_(scenario), grid_(grid), scales_(DerivedCollisionScales::from(scenario)) {
        scenario.validate();
        grid.validate();
        const double sqw = std::sqrt(sc_.probe.total_energy());
        pmax_ = sc_.probe.max_p();
        mode_amp_.assign(pmax_ + 1, {0.0, 0.0});
        for (const auto& m : sc_.probe.modes)
            mode_amp_[m.p] = m.signed_amplitude * sqw *
                             std::complex<double>(std::cos(m.phase), -std::sin(m.phase));
        omega_ = sc_.probe.omega;
        w0_ = sc_.probe.w0;
        ratio_T2_ = (scales_.T_minus * scales_.T_minus) / (scales_.T_plus * scales_.T_plus);
        spectral_a_ = sc_.probe.tau * sc_.pump.tau / (4.0 * scales_.T_plus);
        prefactor_ = std::pow(8.0 / std::numbers::pi, 0.75) * (sc_.pump.W / w0_) *
                     std::sqrt(sc_.probe.tau) / scales_.T_plus;
        // both the temporal overlap envelope and the pump divergence bound
        // the support of the z integrand
        z_max_ = std::max(1.5 * scales_.T_plus, 8.0 * scales_.pump_zR);
    }

    const CollisionScenario& scenario() const { return sc_; }
    const DerivedCollisionScales& scales() const { return scales_; }
    double z_range() const { return z_max_; }

    // 1/e half-width of the Gaussian spectral factor of |M|^2
    double sigma_k() const {
        return 4.0 * scales_.T_plus / (sc_.probe.tau * sc_.pump.tau) / std::numbers::sqrt2;
    }

    // phase slope of the z integrand at (k, theta)
    double phase_slope(const KinematicPoint& pt) const {
        return (pt.k - omega_) * ratio_T2_ + pt.kz() - omega_;
    }

    int z_panels(double slope_abs) const {
        const double periods = slope_abs * (2.0 * z_max_) / (2.0 * std::numbers::pi);
        const double p = 8.0 * periods;  // >= 8 panels per oscillation period
        int panels = grid_.n_z;
        if (p > panels) panels = static_cast<int>(std::ceil(p));
        return std::min(panels, grid_.max_subdivisions / 2);
    }

    // z integral of the full probe mode sum (shared factors evaluated once
    // per node, all p accumulated in one pass over the scaled-Laguerre
    // recurrence).  abs_anchor sets the absolute tolerance floor; pass the
    // on-peak magnitude so strongly cancelling off-peak points are not
    // refined beyond their contribution.
    IntegrationResult<std::complex<double>> mode_sum_z_integral(const KinematicPoint& pt,
                                                                double abs_anchor = 0.0) const {
        const double kperp2 = pt.kperp2();
        const double slope = phase_slope(pt);
        QuadratureConfig cfg;
        cfg.rel_tol = grid_.rel_tol;
        cfg.abs_tol = 0.1 * grid_.rel_tol * abs_anchor;
        cfg.initial_panels = z_panels(std::fabs(slope));
        cfg.max_subdivisions = grid_.max_subdivisions;
        auto f = [&](double z) { return integrand(z, kperp2, slope); };
        return integrate_1d(f, -z_max_, z_max_, cfg);
    }

    // single-mode amplitude M_p per the compact expression; the bracketed
    // Laguerre-times-power combination goes through scaled_laguerre_pole
    IntegrationResult<std::complex<double>> amplitude_mp(const ModeEntry& mode,
                                                         const KinematicPoint& pt) const {
        pt.validate();
        const double kperp2 = pt.kperp2();
        const double slope = phase_slope(pt);
        QuadratureConfig cfg;
        cfg.rel_tol = grid_.rel_tol;
        cfg.initial_panels = z_panels(std::fabs(slope));
        cfg.max_subdivisions = grid_.max_subdivisions;
        auto f = [&](double z) -> std::complex<double> {
            const double r2 = scales_.r2(z);
            const double dn = 2.0 + r2;
            const double t = 2.0 - r2;
            const double u = w0_ * w0_ * kperp2 * r2 * r2 / (2.0 * dn);
            const double radial = scaled_laguerre_pole(mode.p, t, u) / std::pow(dn, mode.p + 1);
            const double zt = 4.0 * z / scales_.T_plus;
            const double damp = std::exp(-w0_ * w0_ * kperp2 * r2 / (4.0 * dn) - 2.0 * zt * zt);
            return radial * damp *
                   std::complex<double>(std::cos(slope * z), std::sin(slope * z));
        };
        auto zint = integrate_1d(f, -z_max_, z_max_, cfg);

        const double sqw = std::sqrt(sc_.probe.total_energy());
        const std::complex<double> amp =
            mode.signed_amplitude * sqw *
            std::complex<double>(std::cos(mode.phase), -std::sin(mode.phase));
        const double d = pt.k - omega_;
        const double spectral = std::exp(-spectral_a_ * spectral_a_ * d * d);
        IntegrationResult<std::complex<double>> out = zint;
        out.value = prefactor_ * spectral * amp * zint.value;
        out.error_estimate = std::abs(prefactor_ * spectral * amp) * zint.error_estimate;
        return out;
    }

    // d^3N_perp / d^3k at a kinematic point, evaluated through the fast
    // mode-sum path
    IntegrationResult<double> differential_number(const KinematicPoint& pt,
                                                  double abs_anchor = 0.0) const {
        pt.validate();
        auto zint = mode_sum_z_integral(pt, abs_anchor);
        const double d = pt.k - omega_;
        const double spectral = std::exp(-spectral_a_ * spectral_a_ * d * d);
        const double m = prefactor_ * spectral * std::abs(zint.value);
        constexpr double geom = 32.0 / 225.0;
        const double pref = geom * std::pow(constants::alpha, 4) * pt.k /
                            std::pow(constants::m_e, 8) /
                            std::pow(2.0 * std::numbers::pi, 3);
        IntegrationResult<double> out;
        out.value = pref * m * m;
        out.error_estimate =
            2.0 * pref * m * prefactor_ * spectral * zint.error_estimate;
        out.converged = zint.converged;
        out.panels = zint.panels;
        return out;
    }

    // dN_perp/(theta dtheta) at one angle: 2pi/(2pi)^3 int k^2 |..|^2 dk over
    // omega +- 6 sigma_k
    IntegrationResult<double> signal_at(double theta, QuadratureDiagnostics* diag = nullptr) const {
        const double sk = sigma_k();
        const double klo = omega_ - 6.0 * sk, khi = omega_ + 6.0 * sk;
        // on-peak magnitude anchors the absolute tolerance of the z integrals
        const double anchor = std::abs(mode_sum_z_integral({omega_, theta}).value);

        QuadratureDiagnostics local;
        auto f = [&](double k) {
            const KinematicPoint pt{k, theta};
            auto dn = differential_number(pt, anchor);
            if (!dn.converged) {
                local.all_converged = false;
                const double rel = dn.value != 0.0 ? dn.error_estimate / std::fabs(dn.value) : 0.0;
                if (rel >= local.worst_rel_error) {
                    local.worst_rel_error = rel;
                    local.worst_k = k;
                    local.worst_theta = theta;
                }
            }
            return k * k * dn.value;
        };
        QuadratureConfig cfg;
        cfg.rel_tol = grid_.rel_tol;
        cfg.initial_panels = grid_.n_k;
        cfg.max_subdivisions = std::max(grid_.n_k * 64, 4096);
        auto r = integrate_1d(f, klo, khi, cfg);
        IntegrationResult<double> out;
        out.value = 2.0 * std::numbers::pi * r.value;
        out.error_estimate = 2.0 * std::numbers::pi * r.error_estimate;
        out.converged = r.converged && local.all_converged;
        out.panels = r.panels;
        if (diag) diag->merge(local);
        return out;
    }

  private:
    std::complex<double> integrand(double z, double kperp2, double slope) const {
        const double r2 = scales_.r2(z);
        const double dn = 2.0 + r2;
        const double t = 2.0 - r2;
        const double u = w0_ * w0_ * kperp2 * r2 * r2 / (2.0 * dn);

        thread_local std::vector<double> scratch;
        if (scratch.size() < static_cast<std::size_t>(pmax_ + 1)) scratch.resize(pmax_ + 1);
        scaled_laguerre_all(pmax_, t, u, scratch);

        const double inv = 1.0 / dn;
        double powb = inv;
        std::complex<double> acc{0.0, 0.0};
        for (int p = 0; p <= pmax_; ++p) {
            acc += mode_amp_[p] * (scratch[p] * powb);
            powb *= inv;
        }
        const double zt = 4.0 * z / scales_.T_plus;
        const double damp = std::exp(-w0_ * w0_ * kperp2 * r2 / (4.0 * dn) - 2.0 * zt * zt);
        return acc * damp * std::complex<double>(std::cos(slope * z), std::sin(slope * z));
    }

    CollisionScenario sc_;
    SignalGridConfig grid_;
    DerivedCollisionScales scales_;
    std::vector<std::complex<double>> mode_amp_;  // a_p sqrt(W) e^{-i phi_p}
    int pmax_ = 0;
    double omega_ = 0.0, w0_ = 0.0;
    double ratio_T2_ = 0.0;   // (T_-/T_+)^2
    double spectral_a_ = 0.0; // tau taut / (4 T_+)
    double prefactor_ = 0.0;  // (8/pi)^{3/4} (W_pump/w0) sqrt(tau)/T_+
    double z_max_ = 0.0;
};

// ---------------------------------------------------------------------------
// spectra, totals, windows
// ---------------------------------------------------------------------------

inline std::vector<double> uniform_theta_grid(double theta_max, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = theta_max * i / (n - 1.0);
    return g;
}

inline AngularSpectrum angular_spectrum(const SignalEvaluator& ev,
                                        const std::vector<double>& theta_grid,
                                        QuadratureDiagnostics* diag = nullptr) {
    if (theta_grid.empty() || !std::is_sorted(theta_grid.begin(), theta_grid.end()))
        throw std::invalid_argument("angular_spectrum: theta grid must be ascending");
    AngularSpectrum out;
    out.theta = theta_grid;
    out.signal.resize(theta_grid.size());
    out.background.resize(theta_grid.size());
    std::vector<QuadratureDiagnostics> diags(theta_grid.size());

    QuadratureConfig bgcfg;
    bgcfg.rel_tol = 1e-10;
    bgcfg.initial_panels = 32;
    detail::parallel_for(theta_grid.size(), [&](std::size_t i) {
        out.signal[i] = ev.signal_at(theta_grid[i], &diags[i]).value;
        out.background[i] =
            farfield_photon_decay(ev.scenario().probe, theta_grid[i], bgcfg).value;
    });
    if (diag)
        for (const auto& d : diags) diag->merge(d);
    return out;
}

namespace detail {

// composite Simpson on a uniform grid of f(theta) * theta; trapezoid closes
// an even interval count
inline double integrate_theta_moment(const std::vector<double>& theta,
                                     const std::vector<double>& f, std::size_t lo,
                                     std::size_t hi) {
    if (hi <= lo) return 0.0;
    const double h = theta[1] - theta[0];
    auto g = [&](std::size_t i) { return f[i] * theta[i]; };
    double acc = 0.0;
    std::size_t i = lo;
    for (; i + 2 <= hi; i += 2) acc += (h / 3.0) * (g(i) + 4.0 * g(i + 1) + g(i + 2));
    if (i + 1 <= hi) acc += 0.5 * h * (g(i) + g(i + 1));
    return acc;
}

}  // namespace detail

struct TotalSignal {
    double value = 0.0;           // N_perp per shot
    double tail_estimate = 0.0;   // relative, from the grid extension
    bool tail_warning = false;    // estimate exceeded 1e-3 relative
    AngularSpectrum spectrum;     // grid actually used (may extend past theta_max)
    QuadratureDiagnostics diagnostics;
};

// N_perp = int dN/(theta dtheta) theta dtheta over the grid, extended in
// chunks of the same spacing until a chunk contributes < 1e-4 relative.
inline TotalSignal total_signal(const SignalEvaluator& ev, const SignalGridConfig& grid) {
    TotalSignal out;
    auto theta = uniform_theta_grid(grid.theta_max, grid.n_theta);
    out.spectrum = angular_spectrum(ev, theta, &out.diagnostics);
    out.value = detail::integrate_theta_moment(out.spectrum.theta, out.spectrum.signal, 0,
                                               out.spectrum.theta.size() - 1);

    const double h = theta[1] - theta[0];
    const int chunk = std::max(8, grid.n_theta / 10);
    double prev_add = 0.0;
    bool tail_resolved = false;
    for (int ext = 0; ext < 64; ++ext) {
        const double last = out.spectrum.theta.back();
        if (last + chunk * h > 0.009) break;  // paraxial guard
        std::vector<double> more(chunk);
        for (int i = 0; i < chunk; ++i) more[i] = last + (i + 1) * h;
        AngularSpectrum extra = angular_spectrum(ev, more, &out.diagnostics);
        // stitch: integrate from the previous endpoint across the chunk
        std::vector<double> th{last};
        th.insert(th.end(), more.begin(), more.end());
        std::vector<double> sg{out.spectrum.signal.back()};
        sg.insert(sg.end(), extra.signal.begin(), extra.signal.end());
        const double add = detail::integrate_theta_moment(th, sg, 0, th.size() - 1);
        out.spectrum.theta.insert(out.spectrum.theta.end(), more.begin(), more.end());
        out.spectrum.signal.insert(out.spectrum.signal.end(), extra.signal.begin(),
                                   extra.signal.end());
        out.spectrum.background.insert(out.spectrum.background.end(), extra.background.begin(),
                                       extra.background.end());
        out.value += add;
        if (add < 1e-4 * out.value) {
            // geometric estimate of what remains beyond the extension
            const double r = prev_add > 0.0 ? add / prev_add : 0.0;
            out.tail_estimate = (r > 0.0 && r < 1.0) ? add * r / (1.0 - r) / out.value
                                                     : add / std::max(out.value, 1e-300);
            tail_resolved = true;
            break;
        }
        prev_add = add;
    }
    out.tail_warning = !tail_resolved || out.tail_estimate > 1e-3;
    return out;
}

struct DiscernibilityWindow {
    double lo = 0.0;         // [rad]
    double hi = 0.0;         // [rad]; meaningful when open_ended is false
    bool open_ended = false; // window extends past the sampled grid
    double yield = 0.0;      // signal photons inside the window
};

// Maximal intervals with signal >= purity * background.  Crossings are
// located by linear interpolation of log(signal / (purity background));
// points with zero background always qualify.
inline std::vector<DiscernibilityWindow> discernibility(const AngularSpectrum& spec,
                                                        double purity) {
    if (spec.theta.empty() || spec.theta.size() != spec.signal.size() ||
        spec.theta.size() != spec.background.size())
        throw std::invalid_argument("discernibility: empty or misaligned spectrum");
    if (!(purity > 0)) throw std::invalid_argument("discernibility: purity must be positive");

    const std::size_t n = spec.theta.size();
    auto qualifies = [&](std::size_t i) { return spec.signal[i] >= purity * spec.background[i]; };
    auto crossing = [&](std::size_t i) {
        // between i and i+1; falls back to the midpoint when the log ratio is
        // not finite on either side
        const double si = spec.signal[i], sj = spec.signal[i + 1];
        const double bi = purity * spec.background[i], bj = purity * spec.background[i + 1];
        if (si > 0 && sj > 0 && bi > 0 && bj > 0) {
            const double fi = std::log(si / bi), fj = std::log(sj / bj);
            if (fi != fj) {
                const double x = fi / (fi - fj);
                return spec.theta[i] + x * (spec.theta[i + 1] - spec.theta[i]);
            }
        }
        return 0.5 * (spec.theta[i] + spec.theta[i + 1]);
    };
    auto interp_signal = [&](double th, std::size_t i) {
        const double w = (th - spec.theta[i]) / (spec.theta[i + 1] - spec.theta[i]);
        return (1.0 - w) * spec.signal[i] + w * spec.signal[i + 1];
    };

    std::vector<DiscernibilityWindow> windows;
    std::optional<double> open_lo;
    auto trapz = [&](double t0, double s0, double t1, double s1) {
        return 0.5 * (s0 * t0 + s1 * t1) * (t1 - t0);
    };

    double acc = 0.0;
    double seg_t = 0.0, seg_s = 0.0;  // left endpoint of the active segment
    for (std::size_t i = 0; i < n; ++i) {
        const bool q = qualifies(i);
        if (q && !open_lo) {
            if (i == 0) {
                open_lo = spec.theta[0];
                seg_t = spec.theta[0];
                seg_s = spec.signal[0];
            } else {
                const double tc = crossing(i - 1);
                open_lo = tc;
                seg_t = tc;
                seg_s = interp_signal(tc, i - 1);
            }
            acc = 0.0;
            if (i > 0 && *open_lo < spec.theta[i])
                acc += trapz(seg_t, seg_s, spec.theta[i], spec.signal[i]);
            seg_t = spec.theta[i];
            seg_s = spec.signal[i];
        } else if (q && open_lo && i > 0) {
            acc += trapz(seg_t, seg_s, spec.theta[i], spec.signal[i]);
            seg_t = spec.theta[i];
            seg_s = spec.signal[i];
        } else if (!q && open_lo) {
            const double tc = crossing(i - 1);
            acc += trapz(seg_t, seg_s, tc, interp_signal(tc, i - 1));
            windows.push_back({*open_lo, tc, false, acc});
            open_lo.reset();
        }
    }
    if (open_lo) windows.push_back({*open_lo, spec.theta.back(), true, acc});
    return windows;
}

// ---------------------------------------------------------------------------
// Hankel-transform oracle
// ---------------------------------------------------------------------------

struct HankelRatioPair {
    double direct = 0.0;  // ratio of the radial J0 quadratures at the two kperp
    double closed = 0.0;  // ratio of the compact transverse factors
};

// Validates the compact transverse factor of the amplitude against its
// definition: at fixed z, the transverse Fourier transform
//   2pi int dr r J0(kperp r) L_p(2 r^2/w0^2) e^{-r^2/w0^2} e^{-2 r^2/wt^2(z)}
// is proportional to
//   [2-r^2]^p/[2+r^2]^{p+1} L_p(.) e^{-w0^2 kperp^2 r^2/(4(2+r^2))}
// with a kperp-independent prefactor, so the two ratios must agree.
inline HankelRatioPair hankel_oracle(const CollisionScenario& sc, int p, double z, double kperp1,
                                     double kperp2) {
    sc.validate();
    const auto scales = DerivedCollisionScales::from(sc);
    const double w0 = sc.probe.w0;
    const double r2 = scales.r2(z);
    const double wt2 = r2 * w0 * w0;  // pump spot size squared at z

    auto direct = [&](double kperp) {
        const double rmax = w0 * (6.0 + std::sqrt(2.0 * p));
        QuadratureConfig cfg;
        cfg.rel_tol = 1e-10;
        const double periods = kperp * rmax / (2.0 * std::numbers::pi);
        cfg.initial_panels = std::max(32, static_cast<int>(std::ceil(8.0 * periods)));
        cfg.max_subdivisions = cfg.initial_panels * 64;
        auto f = [&](double r) {
            const double q = r / w0;
            return 2.0 * std::numbers::pi * r * bessel_j0(kperp * r) *
                   laguerre(p, 2.0 * q * q) * std::exp(-q * q) * std::exp(-2.0 * r * r / wt2);
        };
        return integrate_1d(f, 0.0, rmax, cfg).value;
    };
    auto closed = [&](double kperp) {
        const double dn = 2.0 + r2;
        const double t = 2.0 - r2;
        const double u = w0 * w0 * kperp * kperp * r2 * r2 / (2.0 * dn);
        return scaled_laguerre_pole(p, t, u) / std::pow(dn, p + 1) *
               std::exp(-w0 * w0 * kperp * kperp * r2 / (4.0 * dn));
    };

    HankelRatioPair out;
    out.direct = direct(kperp1) / direct(kperp2);
    out.closed = closed(kperp1) / closed(kperp2);
    return out;
}

}  // namespace qvb
