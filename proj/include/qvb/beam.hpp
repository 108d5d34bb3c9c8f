#pragma once

// Tailored laser pulses as finite superpositions of LG_{p,0} modes sharing
// one waist, frequency and Gaussian temporal envelope.  A pulse is fully
// characterised by (omega, tau, w0) plus the per-mode (p, phase, energy).
// All evaluators are pure; PulseSpec is immutable after construction.

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qvb/mathkit.hpp"

namespace qvb {

struct ModeEntry {
    int p = 0;                     // radial LG index
    double phase = 0.0;            // phi_p [rad]
    double energy = 0.0;           // W_p [eV]
    double signed_amplitude = 0.0; // a_p with a_p^2 = W_p / W_total; sign convention
                                   // for the physical coefficient a_p sqrt(W_total)
};

enum class BeamDirection { plus_z, minus_z };

// How a spec was produced; the far-field/focus duality is only defined for
// the two special synthesis points.
enum class SynthOrigin { custom, fg_focus, fg_farfield, fg_finite_zeta0 };

struct PulseSpec {
    double omega = 0.0;  // photon energy [eV]
    double tau = 0.0;    // pulse duration [eV^-1]
    double w0 = 0.0;     // waist of the FG0 basis mode [eV^-1]
    std::vector<ModeEntry> modes;
    BeamDirection direction = BeamDirection::plus_z;
    SynthOrigin origin = SynthOrigin::custom;

    double wavelength() const { return 2.0 * std::numbers::pi / omega; }
    double rayleigh_range() const { return std::numbers::pi * w0 * w0 / wavelength(); }
    double divergence() const { return w0 / rayleigh_range(); }  // theta = lambda/(pi w0)
    double total_energy() const {
        double w = 0.0;
        for (const auto& m : modes) w += m.energy;
        return w;
    }
    int max_p() const {
        int pm = 0;
        for (const auto& m : modes) pm = std::max(pm, m.p);
        return pm;
    }

    void validate() const {
        if (!(omega > 0) || !(tau > 0) || !(w0 > 0))
            throw std::invalid_argument("PulseSpec: omega, tau, w0 must be positive");
        if (modes.empty()) throw std::invalid_argument("PulseSpec: no modes");
        std::set<int> ps;
        for (const auto& m : modes) {
            if (m.p < 0 || m.energy < 0)
                throw std::invalid_argument("PulseSpec: mode with p < 0 or W_p < 0");
            if (!ps.insert(m.p).second)
                throw std::invalid_argument("PulseSpec: duplicate mode index p");
        }
    }

    // the ad hoc Gaussian envelope violates the wave equation at O(1/(tau omega))
    std::optional<std::string> envelope_warning() const {
        if (tau * omega < 40.0)
            return "tau*omega = " + std::to_string(tau * omega) +
                   " < 40: Gaussian-envelope paraxial description is marginal";
        return std::nullopt;
    }
};

// Rebuild signed amplitudes from the energies (positive sign), a_p^2 = W_p/W.
inline void normalize_amplitudes(PulseSpec& spec) {
    const double w = spec.total_energy();
    for (auto& m : spec.modes)
        m.signed_amplitude = (w > 0) ? std::sqrt(m.energy / w) : 0.0;
}

namespace detail {

// sum_p a_p sqrt(W) e^{i(phi_p - 2 p atan(zeta))} L_p(2 chi^2); |.|^2 of this
// reproduces the double mode sum of the cycle-averaged intensity.
inline std::complex<double> mode_amplitude_sum(const PulseSpec& spec, double atan_zeta,
                                               double two_chi2) {
    const double sqw = std::sqrt(spec.total_energy());
    const int pmax = spec.max_p();
    std::vector<double> lag(pmax + 1);
    lag[0] = 1.0;
    if (pmax >= 1) lag[1] = 1.0 - two_chi2;
    for (int k = 1; k < pmax; ++k)
        lag[k + 1] = ((2 * k + 1 - two_chi2) * lag[k] - k * lag[k - 1]) / (k + 1);
    std::complex<double> acc{0.0, 0.0};
    for (const auto& m : spec.modes) {
        const double arg = m.phase - 2.0 * m.p * atan_zeta;
        acc += m.signed_amplitude * sqw * lag[m.p] *
               std::complex<double>(std::cos(arg), std::sin(arg));
    }
    return acc;
}

inline double signed_z(const PulseSpec& spec, double z) {
    return spec.direction == BeamDirection::plus_z ? z : -z;
}

}  // namespace detail

// Field of a single mode entry at (r, z, t):
//   E_p = sign(a_p) sqrt(8 sqrt(2/pi) W_p / (pi w0^2 tau))
//         * exp[-((z-t)/(tau/2))^2] * (w0/w) L_p(2 chi^2) e^{-chi^2} cos Phi_p
//   Phi_p = omega (z-t) + zeta chi^2 - (2p+1) atan(zeta) + phi_p
// with z -> -z for beams propagating towards -z.
inline double mode_field(const PulseSpec& spec, const ModeEntry& mode, double r, double z,
                         double t) {
    spec.validate();
    const double zz = detail::signed_z(spec, z);
    const double zeta = zz / spec.rayleigh_range();
    const double w = spec.w0 * std::sqrt(1.0 + zeta * zeta);
    const double chi = r / w;
    const double peak2 =
        8.0 * std::sqrt(2.0 / std::numbers::pi) * mode.energy /
        (std::numbers::pi * spec.w0 * spec.w0 * spec.tau);
    const double sign = (mode.signed_amplitude < 0) ? -1.0 : 1.0;
    const double envarg = (zz - t) / (0.5 * spec.tau);
    const double phase = spec.omega * (zz - t) + zeta * chi * chi -
                         (2.0 * mode.p + 1.0) * std::atan(zeta) + mode.phase;
    return sign * std::sqrt(peak2) * std::exp(-envarg * envarg) * (spec.w0 / w) *
           laguerre(mode.p, 2.0 * chi * chi) * std::exp(-chi * chi) * std::cos(phase);
}

// Cycle-averaged intensity [eV^4].
inline double intensity(const PulseSpec& spec, double r, double z, double t) {
    const double zz = detail::signed_z(spec, z);
    const double zeta = zz / spec.rayleigh_range();
    const double w = spec.w0 * std::sqrt(1.0 + zeta * zeta);
    const double chi2 = (r / w) * (r / w);
    const double envarg = (zz - t) / (0.5 * spec.tau);
    const auto amp = detail::mode_amplitude_sum(spec, std::atan(zeta), 2.0 * chi2);
    const double pref = 4.0 * std::sqrt(2.0 / std::numbers::pi) /
                        (std::numbers::pi * spec.w0 * spec.w0 * spec.tau * (1.0 + zeta * zeta));
    return pref * std::exp(-2.0 * envarg * envarg) * std::norm(amp) * std::exp(-2.0 * chi2);
}

// zeta -> infinity limit of zeta^2 I with the temporal envelope at its peak;
// chi is the far-field radial coordinate theta/theta_div.  Used for far-field
// shapes and the photon decay below.
inline double farfield_intensity_shape(const PulseSpec& spec, double chi) {
    const double chi2 = chi * chi;
    const auto amp = detail::mode_amplitude_sum(spec, 0.5 * std::numbers::pi, 2.0 * chi2);
    const double pref = 4.0 * std::sqrt(2.0 / std::numbers::pi) /
                        (std::numbers::pi * spec.w0 * spec.w0 * spec.tau);
    return pref * std::norm(amp) * std::exp(-2.0 * chi2);
}

// Pulse energy 2 pi int r dr int dt I(x) at fixed z; equals sum_p W_p.
// The envelope separates from the radial profile at fixed z, so the two
// 1-D integrals factorise exactly.
inline IntegrationResult<double> pulse_energy(const PulseSpec& spec, const QuadratureConfig& cfg,
                                              double z = 0.0) {
    spec.validate();
    const double zz = detail::signed_z(spec, z);
    const double zeta = zz / spec.rayleigh_range();
    const double w = spec.w0 * std::sqrt(1.0 + zeta * zeta);
    const double chi_max = 6.0 + std::sqrt(2.0 * spec.max_p());

    auto radial = integrate_1d(
        [&](double r) { return intensity(spec, r, z, zz) * r; }, 0.0, w * chi_max, cfg);
    // envelope exp[-2((z-t)/(tau/2))^2] around its centre t = z (or -z)
    auto temporal = integrate_1d(
        [&](double t) {
            const double a = (zz - t) / (0.5 * spec.tau);
            return std::exp(-2.0 * a * a);
        },
        zz - 4.0 * spec.tau, zz + 4.0 * spec.tau, cfg);

    IntegrationResult<double> out;
    // intensity() evaluated at t = zz carries envelope 1, so the product is
    // exactly the nested integral
    out.value = 2.0 * std::numbers::pi * radial.value * temporal.value;
    out.error_estimate = 2.0 * std::numbers::pi *
                         (radial.error_estimate * temporal.value +
                          temporal.error_estimate * std::abs(radial.value));
    out.converged = radial.converged && temporal.converged;
    out.panels = radial.panels + temporal.panels;
    return out;
}

// Far-field angular photon-number decay dN/(theta dtheta) [photons / rad^2],
// azimuthally integrated so that int dN/(theta dtheta) theta dtheta = W/omega:
//   (2 pi / omega) (w0/theta_div)^2 int dt zeta^2 I |_{zeta->inf}
inline IntegrationResult<double> farfield_photon_decay(const PulseSpec& spec, double theta,
                                                       const QuadratureConfig& cfg) {
    spec.validate();
    if (theta < 0) throw std::invalid_argument("farfield_photon_decay: theta must be >= 0");
    const double th = spec.divergence();
    auto temporal = integrate_1d(
        [&](double t) {
            const double a = t / (0.5 * spec.tau);
            return std::exp(-2.0 * a * a);
        },
        -4.0 * spec.tau, 4.0 * spec.tau, cfg);

    const double shape = farfield_intensity_shape(spec, theta / th);
    IntegrationResult<double> out;
    out.value = (2.0 * std::numbers::pi / spec.omega) * (spec.w0 / th) * (spec.w0 / th) *
                temporal.value * shape;
    out.error_estimate = out.value == 0.0
                             ? 0.0
                             : std::abs(out.value) * temporal.error_estimate /
                                   std::max(temporal.value, 1e-300);
    out.converged = temporal.converged;
    out.panels = temporal.panels;
    return out;
}

}  // namespace qvb
