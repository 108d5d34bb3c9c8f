#pragma once

// Flattened-Gaussian (FG_N) and hole (FG(o)_{N,N'}) pulse synthesis.  The
// radial field profile e^{-chi^2} sum_{n<=N} chi^{2n}/n! at a chosen
// longitudinal position zeta0 is realised by the LG mode set p = 0..N with
//   phi_p = p (pi + 2 atan(zeta0)),   W_p = (c_{p,N} / C_N)^2 W,
//   c_{p,N} = sum_{k=p..N} binom(k,p) / 2^k.
// Hole profiles subtract an amplitude-matched FG_{N'}:
//   c_{p,N} -> c_{p,N} - Theta(N'-p) c_{p,N'}   (all positive).
// Coefficients are kept exact as integer numerators over 2^N.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qvb/beam.hpp"
#include "qvb/mathkit.hpp"

namespace qvb {

// Accuracy of the downstream Laguerre sums is only guaranteed up to N = 60.
inline constexpr int fg_max_order = 60;

struct FgCoefficients {
    int N = 0;
    std::optional<int> Nprime;            // set for hole profiles
    std::vector<std::uint64_t> numerators; // c_p = numerators[p] / 2^N, exact
    std::vector<double> c;                // double conversions
    double C2 = 0.0;                      // C_N^2 = sum_p c_{p,N}^2 of the FG_N base

    double coefficient_sum() const {
        double s = 0.0;
        for (double x : c) s += x;
        return s;
    }
    // exact layer: sum_p numerators == (N+1) 2^N for plain FG_N,
    //              (N - N') 2^N for holes
    bool sum_identity_exact() const {
        unsigned __int128 s = 0;
        for (auto n : numerators) s += n;
        const int expect = Nprime ? N - *Nprime : N + 1;
        return s == (static_cast<unsigned __int128>(expect) << N);
    }
};

namespace detail {

inline const std::vector<std::vector<std::uint64_t>>& binom_table() {
    static const auto table = [] {
        std::vector<std::vector<std::uint64_t>> t(fg_max_order + 1);
        for (int n = 0; n <= fg_max_order; ++n) {
            t[n].resize(n + 1);
            t[n][0] = t[n][n] = 1;
            for (int k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
        }
        return t;
    }();
    return table;
}

// numerator of c_{p,N} over the common denominator 2^N (fits: c_p < 2 so
// numerator < 2^{N+1} <= 2^61)
inline std::uint64_t coeff_numerator(int p, int N) {
    const auto& binom = binom_table();
    std::uint64_t acc = 0;
    for (int k = p; k <= N; ++k) acc += binom[k][p] << (N - k);
    return acc;
}

}  // namespace detail

inline FgCoefficients coefficients(int N) {
    if (N < 0 || N > fg_max_order)
        throw std::out_of_range("fgsynth: order N outside supported range 0..60");
    FgCoefficients out;
    out.N = N;
    out.numerators.resize(N + 1);
    out.c.resize(N + 1);
    const double denom = std::ldexp(1.0, N);  // 2^N
    for (int p = 0; p <= N; ++p) {
        out.numerators[p] = detail::coeff_numerator(p, N);
        out.c[p] = static_cast<double>(out.numerators[p]) / denom;
        out.C2 += out.c[p] * out.c[p];
    }
    return out;
}

// Coefficients of the FG(o)_{N,N'} hole profile; C2 stays the C_N^2 of the
// underlying FG_N (the energy normalisation in W_p = (c/C_N)^2 W).
inline FgCoefficients hole_coefficients(int N, int Nprime) {
    if (Nprime < 0 || Nprime >= N)
        throw std::invalid_argument("fgsynth: hole requires 0 <= N' < N");
    FgCoefficients base = coefficients(N);
    FgCoefficients out;
    out.N = N;
    out.Nprime = Nprime;
    out.C2 = base.C2;
    out.numerators.resize(N + 1);
    out.c.resize(N + 1);
    const double denom = std::ldexp(1.0, N);
    for (int p = 0; p <= N; ++p) {
        std::uint64_t num = base.numerators[p];
        if (p <= Nprime) {
            // rescale the N' numerator to the 2^N denominator; positivity is
            // exact: c_{p,N} - c_{p,N'} = sum_{k=max(p,N'+1)..N} binom(k,p)/2^k > 0
            const std::uint64_t sub = detail::coeff_numerator(p, Nprime) << (N - Nprime);
            if (sub >= num) throw std::logic_error("fgsynth: hole coefficient not positive");
            num -= sub;
        }
        out.numerators[p] = num;
        out.c[p] = static_cast<double>(num) / denom;
    }
    return out;
}

// ---------------------------------------------------------------------------
// recipes and synthesis
// ---------------------------------------------------------------------------

struct Zeta0 {
    enum class Kind { focus, farfield, finite };
    Kind kind = Kind::focus;
    double value = 0.0;  // used for Kind::finite

    static Zeta0 focus() { return {Kind::focus, 0.0}; }
    static Zeta0 farfield() { return {Kind::farfield, 0.0}; }
    static Zeta0 finite(double z) { return {Kind::finite, z}; }

    double atan_value() const {
        switch (kind) {
            case Kind::focus: return 0.0;
            case Kind::farfield: return 0.5 * std::numbers::pi;
            case Kind::finite: return std::atan(value);
        }
        return 0.0;
    }
};

struct FgRecipe {
    int N = 0;
    std::optional<int> Nprime;  // hole profile when set
    Zeta0 zeta0 = Zeta0::farfield();
    double W = 0.0;     // energy of the FG_N constituent [eV]
    double w0 = 0.0;    // [eV^-1]
    double tau = 0.0;   // [eV^-1]
    double omega = 0.0; // [eV]

    void validate() const {
        if (!(W > 0)) throw std::invalid_argument("FgRecipe: W must be positive");
        if (N < 0 || N > fg_max_order)
            throw std::out_of_range("FgRecipe: N outside supported range 0..60");
        if (Nprime && !(*Nprime < N && *Nprime >= 0))
            throw std::invalid_argument("FgRecipe: requires 0 <= N' < N");
    }
};

// PulseSpec with modes p = 0..N, phi_p = p (pi + 2 atan zeta0) and
// W_p = (c_p / C_N)^2 W.  The spec's total energy is sum_p W_p, which for
// hole profiles is smaller than W.
inline PulseSpec synthesize(const FgRecipe& recipe) {
    recipe.validate();
    const FgCoefficients co =
        recipe.Nprime ? hole_coefficients(recipe.N, *recipe.Nprime) : coefficients(recipe.N);
    PulseSpec spec;
    spec.omega = recipe.omega;
    spec.tau = recipe.tau;
    spec.w0 = recipe.w0;
    switch (recipe.zeta0.kind) {
        case Zeta0::Kind::focus: spec.origin = SynthOrigin::fg_focus; break;
        case Zeta0::Kind::farfield: spec.origin = SynthOrigin::fg_farfield; break;
        case Zeta0::Kind::finite: spec.origin = SynthOrigin::fg_finite_zeta0; break;
    }
    const double phase_step = std::numbers::pi + 2.0 * recipe.zeta0.atan_value();
    spec.modes.resize(recipe.N + 1);
    for (int p = 0; p <= recipe.N; ++p) {
        auto& m = spec.modes[p];
        m.p = p;
        m.phase = p * phase_step;
        const double frac = co.c[p] / std::sqrt(co.C2);
        m.energy = frac * frac * recipe.W;
    }
    normalize_amplitudes(spec);
    spec.validate();
    return spec;
}

// ---------------------------------------------------------------------------
// scaling laws
// ---------------------------------------------------------------------------

struct ScaleEstimate {
    double exact = 0.0;     // root of the defining equation
    double estimate = 0.0;  // quadratic-order closed form
};

// Effective focus waist w_N = s w0 of a beam with an FG far-field profile:
// 1/e^2 radius of the focus intensity, defining equation
//   sum_p c_p L_p(2 s^2) = e^{s^2 - 1} sum_p c_p.
// s_0 = 1 by definition.  Estimate: s^2 ~ 2(1-1/e)/(N + 2/e), and
// 2(1-1/e)/(N + N' + 1 + 2/e) for holes.
inline ScaleEstimate effective_waist(int N, std::optional<int> Nprime = std::nullopt) {
    if (N == 0 && !Nprime) return {1.0, 1.0};
    const FgCoefficients co = Nprime ? hole_coefficients(N, *Nprime) : coefficients(N);
    const double csum = co.coefficient_sum();
    auto defect = [&](double s2) {
        double acc = 0.0;
        for (int p = 0; p <= N; ++p) acc += co.c[p] * laguerre(p, 2.0 * s2);
        return acc - std::exp(s2 - 1.0) * csum;
    };
    // defect(0+) = (1 - 1/e) sum c > 0; march upward in s^2 for a sign change
    double lo = 1e-9, hi = 1.0;
    bool bracketed = false;
    const int steps = 256;
    double prev = lo, fprev = defect(lo);
    for (int i = 1; i <= steps; ++i) {
        const double x = static_cast<double>(i) / steps;
        const double fx = defect(x);
        if (fprev * fx <= 0.0) {
            lo = prev;
            hi = x;
            bracketed = true;
            break;
        }
        prev = x;
        fprev = fx;
    }
    if (!bracketed)
        throw std::runtime_error("effective_waist: defining equation not bracketed in (0, 1]");
    const double s2 = find_root(defect, lo, hi, 1e-12);
    const double inv_e = 1.0 / std::numbers::e;
    const double denom = Nprime ? (N + *Nprime + 1 + 2.0 * inv_e) : (N + 2.0 * inv_e);
    return {std::sqrt(s2), std::sqrt(2.0 * (1.0 - inv_e) / denom)};
}

// Focus peak-intensity scaling sigma relative to an FG_0 beam of equal
// energy; summed form (sum_p c_p)^2 / C_N^2 and the closed forms
// ((N+1)/C_N)^2 resp. ((N-N')/C_N)^2.
struct PeakIntensityFactor {
    double summed = 0.0;
    double closed = 0.0;
};

inline PeakIntensityFactor peak_intensity_factor(int N, std::optional<int> Nprime = std::nullopt) {
    const FgCoefficients co = Nprime ? hole_coefficients(N, *Nprime) : coefficients(N);
    const double csum = co.coefficient_sum();
    const double count = Nprime ? static_cast<double>(N - *Nprime) : static_cast<double>(N + 1);
    return {csum * csum / co.C2, count * count / co.C2};
}

// Effective far-field divergence theta_N / theta of an FG_N far-field
// profile: sum_{n<=N} x^{2n}/n! = e^{x^2 - 1}, bracketed in [1, 2 sqrt(1+N)];
// estimate sqrt(1+N).
inline ScaleEstimate effective_divergence(int N) {
    if (N < 0 || N > fg_max_order)
        throw std::out_of_range("effective_divergence: N outside supported range 0..60");
    if (N == 0) return {1.0, 1.0};
    auto defect = [&](double x) {
        const double x2 = x * x;
        double term = 1.0, sum = 1.0;
        for (int n = 1; n <= N; ++n) {
            term *= x2 / n;
            sum += term;
        }
        return sum - std::exp(x2 - 1.0);
    };
    const double hi = 2.0 * std::sqrt(1.0 + N);
    if (defect(1.0 + 1e-12) <= 0.0 || defect(hi) >= 0.0)
        throw std::runtime_error("effective_divergence: defining equation not bracketed");
    const double x = find_root(defect, 1.0 + 1e-12, hi, 1e-12);
    return {x, std::sqrt(1.0 + N)};
}

// Far-field/focus duality (ii): c_p -> (-1)^p c_p, i.e. the signed mode
// amplitudes flip for odd p (equivalently phi_p shifts by p pi).  Only the
// two special synthesis points are related this way; the transform swaps
// them.  Involution by construction.
inline PulseSpec duality_transform(const PulseSpec& spec) {
    if (spec.origin != SynthOrigin::fg_focus && spec.origin != SynthOrigin::fg_farfield)
        throw std::invalid_argument(
            "duality_transform: only defined for focus/far-field synthesized specs");
    PulseSpec out = spec;
    for (auto& m : out.modes)
        if (m.p % 2 == 1) m.signed_amplitude = -m.signed_amplitude;
    out.origin = (spec.origin == SynthOrigin::fg_focus) ? SynthOrigin::fg_farfield
                                                        : SynthOrigin::fg_focus;
    return out;
}

// ---------------------------------------------------------------------------
// photon budget of the blocking construction
// ---------------------------------------------------------------------------

struct PhotonBudget {
    double pulse = 0.0;      // photons in the synthesized FG(o) pulse, sum W_p / omega
    double available = 0.0;  // photons of the original FG_N beam outside the hole
    double blocked = 0.0;    // photons removed by the beam block filling the hole
};

// An FG(o)_{N,N'} far-field pulse is produced from an FG_N pulse of N0
// photons by blocking the far field inside the hole.  The hole's edge is the
// inner asymptotic divergence theta_{N'} (exact root); the blocked fraction
// is the FG_N far-field photon fraction inside it:
//   F = int_0^{x_{N'}} S_N^2(chi^2) e^{-2 chi^2} chi dchi / (C_N^2 / 4),
// S_N the truncated exponential sum.  The pulse photon number itself follows
// from the coefficient algebra and is smaller than N0 (1 - F).
inline PhotonBudget photon_budget(int N, int Nprime, double photons_in) {
    const FgCoefficients hole = hole_coefficients(N, Nprime);
    const FgCoefficients base = coefficients(N);
    double ratio = 0.0;
    for (int p = 0; p <= N; ++p) ratio += hole.c[p] * hole.c[p];
    ratio /= base.C2;

    const double edge = effective_divergence(Nprime).exact;
    auto integrand = [&](double chi) {
        const double x2 = chi * chi;
        double term = 1.0, sum = 1.0;
        for (int n = 1; n <= N; ++n) {
            term *= x2 / n;
            sum += term;
        }
        return sum * sum * std::exp(-2.0 * x2) * chi;
    };
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-10;
    cfg.initial_panels = 64;
    const double inside = integrate_1d(integrand, 0.0, edge, cfg).value;
    const double fraction = inside / (base.C2 / 4.0);

    PhotonBudget out;
    out.pulse = photons_in * ratio;
    out.blocked = photons_in * fraction;
    out.available = photons_in * (1.0 - fraction);
    return out;
}

}  // namespace qvb
