#pragma once

// Shared scenario builders for the test suites.

#include "qvb/config.hpp"
#include "qvb/fgsynth.hpp"
#include "qvb/signal.hpp"
#include "qvb/units.hpp"

namespace qvb::testing {

// FG(o)_{50,5} x-ray probe against the 10 J / 25 fs / 800 nm / 1 um pump
inline CollisionScenario hibef_scenario() {
    FgRecipe r;
    r.N = 50;
    r.Nprime = 5;
    r.zeta0 = Zeta0::farfield();
    r.omega = 12914.0;
    r.W = 1e12 * r.omega;
    r.w0 = to_natural(3.3, Unit::micrometre);
    r.tau = to_natural(25.0, Unit::femtosecond);

    CollisionScenario sc;
    sc.probe = synthesize(r);
    sc.pump.W = to_natural(10.0, Unit::joule);
    sc.pump.tau = to_natural(25.0, Unit::femtosecond);
    sc.pump.wavelength = to_natural(800.0, Unit::nanometre);
    sc.pump.w0 = to_natural(1.0, Unit::micrometre);
    sc.purity = 5.7e-10;
    return sc;
}

// cheap grid for scaling/property checks
inline SignalGridConfig coarse_grid() {
    SignalGridConfig g;
    g.theta_max = 150e-6;
    g.n_theta = 61;
    g.n_k = 8;
    g.n_z = 48;
    g.rel_tol = 1e-5;
    return g;
}

inline SignalGridConfig default_grid() { return SignalGridConfig{}; }

}  // namespace qvb::testing
