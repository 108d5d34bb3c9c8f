#pragma once

// Numerical kernels: Laguerre polynomials (plain, and the pole-cancelling
// scaled form t^p L_p(-u/t)), adaptive Simpson quadrature, a bracketing
// root finder and a Bessel J0 used by the Hankel-transform oracle tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace qvb {

// ---------------------------------------------------------------------------
// special functions
// ---------------------------------------------------------------------------

// L_p(x) by the upward recurrence (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}.
// Stable for x <= 0; adequate for the moderate positive arguments used here
// (|x| <~ 1e2, p <= 60).  Accuracy degrades beyond p = 60: unsupported.
inline double laguerre(int p, double x) {
    if (p < 0) throw std::invalid_argument("laguerre: p must be >= 0");
    if (p == 0) return 1.0;
    double lm = 1.0, l = 1.0 - x;
    for (int k = 1; k < p; ++k) {
        const double lp = ((2 * k + 1 - x) * l - k * lm) / (k + 1);
        lm = l;
        l = lp;
    }
    return l;
}

// t^p L_p(-u/t) for u >= 0, evaluated through the polynomial expansion
//   sum_{m=0..p} binom(p,m) u^m t^{p-m} / m!
// which is regular at t = 0 (limit u^p/p!).  Terms are generated from the
// m = p end downward so the t -> 0 case never multiplies by 1/t.
inline double scaled_laguerre_pole(int p, double t, double u) {
    if (p < 0) throw std::invalid_argument("scaled_laguerre_pole: p must be >= 0");
    if (u < 0) throw std::invalid_argument("scaled_laguerre_pole: u must be >= 0");
    if (p == 0) return 1.0;
    if (u == 0.0) return std::pow(t, p);
    double term = 1.0;                       // T_p = u^p / p!
    for (int k = 1; k <= p; ++k) term *= u / k;
    double sum = term;
    for (int m = p; m >= 1; --m) {           // T_{m-1} = T_m m^2 t / ((p-m+1) u)
        term *= static_cast<double>(m) * m * t / ((p - m + 1.0) * u);
        sum += term;
    }
    return sum;
}

// All of S_0..S_pmax, S_p = t^p L_p(-u/t), in one pass via the scaled
// recurrence (k+1) S_{k+1} = ((2k+1) t + u) S_k - k t^2 S_{k-1}.  This is the
// per-z-node hot path of the signal mode sum; it agrees with
// scaled_laguerre_pole (tested) and is likewise regular at t = 0.
inline void scaled_laguerre_all(int pmax, double t, double u, std::span<double> out) {
    out[0] = 1.0;
    if (pmax == 0) return;
    out[1] = t + u;
    const double t2 = t * t;
    for (int k = 1; k < pmax; ++k)
        out[k + 1] = (((2 * k + 1) * t + u) * out[k] - k * t2 * out[k - 1]) / (k + 1);
}

// J0 via the ascending series for |x| < 20 and the Hankel asymptotic
// expansion beyond; absolute accuracy ~2e-9 near the switch, better elsewhere.
inline double bessel_j0(double x) {
    x = std::fabs(x);
    if (x < 20.0) {
        const double q = 0.25 * x * x;
        double term = 1.0, sum = 1.0;
        for (int m = 1; m < 80; ++m) {
            term *= -q / (static_cast<double>(m) * m);
            sum += term;
            if (std::fabs(term) < 1e-18 * (1.0 + std::fabs(sum))) break;
        }
        return sum;
    }
    // g_k = prod_{j<=k} (2j-1)^2 / (k! 8^k)
    static constexpr double g1 = 1.0 / 8.0;
    static constexpr double g2 = 9.0 / 128.0;
    static constexpr double g3 = 225.0 / 3072.0;
    static constexpr double g4 = 11025.0 / 98304.0;
    static constexpr double g5 = 893025.0 / 3932160.0;
    const double ix = 1.0 / x, ix2 = ix * ix;
    const double P = 1.0 + ix2 * (-g2 + ix2 * g4);
    const double Q = ix * (-g1 + ix2 * (g3 - ix2 * g5));
    const double w = x - 0.78539816339744831;  // x - pi/4
    return std::sqrt(2.0 / (3.14159265358979324 * x)) * (P * std::cos(w) - Q * std::sin(w));
}

// ---------------------------------------------------------------------------
// quadrature
// ---------------------------------------------------------------------------

struct QuadratureConfig {
    double rel_tol = 1e-9;
    double abs_tol = 0.0;
    int max_subdivisions = 20000;  // total panel budget
    int initial_panels = 16;

    void validate() const {
        if (!(rel_tol > 0) || !(abs_tol >= 0))
            throw std::invalid_argument("QuadratureConfig: tolerances out of range");
        if (initial_panels < 1 || max_subdivisions < initial_panels)
            throw std::invalid_argument("QuadratureConfig: max_subdivisions >= initial_panels >= 1 required");
    }
};

template <typename T>
struct IntegrationResult {
    T value{};
    double error_estimate = 0.0;
    bool converged = false;
    int panels = 0;
};

namespace detail {

template <typename T>
struct Panel {
    double a, b;
    T fa, fm, fb;     // f at ends and midpoint
    T coarse;         // 3-point Simpson over [a,b]
    T refined;        // Richardson-improved 5-point value
    double err;
    int id;           // creation order, tie-break for determinism
};

template <typename T>
T simpson3(double h, T fa, T fm, T fb) {
    return (h / 6.0) * (fa + 4.0 * fm + fb);
}

}  // namespace detail

// Adaptive Simpson with panel bisection.  The caller sizes initial_panels to
// resolve the fastest oscillation of the integrand (>= 8 panels per period);
// refinement then drives the summed panel error below
// max(abs_tol, rel_tol * |result|).  On budget exhaustion the best estimate
// is returned with converged = false; the caller decides what to do.
template <typename F, typename T = std::invoke_result_t<F, double>>
IntegrationResult<T> integrate_1d(F&& f, double a, double b, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(a < b)) throw std::invalid_argument("integrate_1d: requires a < b");
    using P = detail::Panel<T>;

    int next_id = 0;
    auto make_panel = [&](double lo, double hi, T flo, T fhi, T fmid) {
        P p;
        p.a = lo; p.b = hi; p.fa = flo; p.fm = fmid; p.fb = fhi;
        p.coarse = detail::simpson3(hi - lo, flo, fmid, fhi);
        const double m = 0.5 * (lo + hi);
        const T flm = f(0.5 * (lo + m));
        const T frm = f(0.5 * (m + hi));
        const T s2 = detail::simpson3(m - lo, flo, flm, fmid) + detail::simpson3(hi - m, fmid, frm, fhi);
        p.refined = s2 + (s2 - p.coarse) / 15.0;
        p.err = std::abs(s2 - p.coarse) / 15.0;
        p.id = next_id++;
        return p;
    };

    auto worse = [](const P& x, const P& y) {
        if (x.err != y.err) return x.err < y.err;
        return x.id > y.id;
    };
    std::priority_queue<P, std::vector<P>, decltype(worse)> heap(worse);

    const double h0 = (b - a) / cfg.initial_panels;
    T fprev = f(a);
    double total_err = 0.0;
    T total{};
    for (int i = 0; i < cfg.initial_panels; ++i) {
        const double lo = a + i * h0;
        const double hi = (i + 1 == cfg.initial_panels) ? b : a + (i + 1) * h0;
        const T fhi = f(hi);
        const T fmid = f(0.5 * (lo + hi));
        P p = make_panel(lo, hi, fprev, fhi, fmid);
        total += p.refined;
        total_err += p.err;
        heap.push(std::move(p));
        fprev = fhi;
    }

    int panels = cfg.initial_panels;
    auto target = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };
    while (total_err > target() && panels < cfg.max_subdivisions) {
        P w = heap.top();
        heap.pop();
        total -= w.refined;
        total_err -= w.err;
        const double m = 0.5 * (w.a + w.b);
        const T flm = f(0.5 * (w.a + m));
        const T frm = f(0.5 * (m + w.b));
        P left = make_panel(w.a, m, w.fa, w.fm, flm);
        P right = make_panel(m, w.b, w.fm, w.fb, frm);
        total += left.refined + right.refined;
        total_err += left.err + right.err;
        heap.push(std::move(left));
        heap.push(std::move(right));
        ++panels;
    }

    // deterministic final sum in interval order
    std::vector<P> ps;
    ps.reserve(heap.size());
    while (!heap.empty()) {
        ps.push_back(heap.top());
        heap.pop();
    }
    std::sort(ps.begin(), ps.end(), [](const P& x, const P& y) { return x.a < y.a; });
    T value{};
    double err = 0.0;
    for (const P& p : ps) {
        value += p.refined;
        err += p.err;
    }

    IntegrationResult<T> r;
    r.value = value;
    r.error_estimate = err;
    r.converged = err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
    r.panels = panels;
    return r;
}

// ---------------------------------------------------------------------------
// root finding
// ---------------------------------------------------------------------------

// Bisection/secant hybrid on a sign-changing bracket.  Returns x* once the
// bracket width is <= tol.
template <typename F>
double find_root(F&& f, double lo, double hi, double tol) {
    if (!(lo < hi)) throw std::invalid_argument("find_root: requires lo < hi");
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw std::invalid_argument("find_root: no sign change on [lo, hi]");
    for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
        double x;
        // secant through the bracket ends, clipped away from the endpoints
        const double denom = fhi - flo;
        if (denom != 0.0) {
            x = lo - flo * (hi - lo) / denom;
            const double guard = 0.01 * (hi - lo);
            if (!(x > lo + guard && x < hi - guard)) x = 0.5 * (lo + hi);
        } else {
            x = 0.5 * (lo + hi);
        }
        const double fx = f(x);
        if (fx == 0.0) return x;
        if (flo * fx < 0.0) {
            hi = x;
            fhi = fx;
        } else {
            lo = x;
            flo = fx;
        }
        // force occasional bisection so the bracket cannot stall
        if (it % 2 == 1) {
            const double m = 0.5 * (lo + hi);
            const double fm2 = f(m);
            if (fm2 == 0.0) return m;
            if (flo * fm2 < 0.0) {
                hi = m;
                fhi = fm2;
            } else {
                lo = m;
                flo = fm2;
            }
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace qvb
