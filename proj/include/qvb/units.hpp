#pragma once

// Natural-unit system used throughout the library: Heaviside-Lorentz with
// c = hbar = 1, every quantity expressed in powers of eV.  Lengths and times
// are eV^-1, energies eV, intensities eV^4.  Conversions happen exactly once,
// at the CLI boundary.

#include <cmath>
#include <stdexcept>
#include <string>

namespace qvb {

// CODATA 2018
namespace constants {
inline constexpr double alpha      = 7.2973525693e-3;   // fine-structure constant
inline constexpr double m_e        = 510998.95000;      // electron mass [eV]
inline constexpr double hbar_c     = 197.3269804;       // [eV nm]
inline constexpr double hbar       = 0.6582119569;      // [eV fs]
inline constexpr double joule_to_eV = 6.241509074e18;   // 1 / e[C]
}  // namespace constants

enum class Unit { joule, femtosecond, micrometre, nanometre, electronvolt, microradian };

namespace detail {
// multiply lab value by this to get the natural-unit value
inline double natural_factor(Unit u) {
    using namespace constants;
    switch (u) {
        case Unit::joule:        return joule_to_eV;          // -> eV
        case Unit::femtosecond:  return 1.0 / hbar;           // -> eV^-1
        case Unit::micrometre:   return 1.0e3 / hbar_c;       // -> eV^-1
        case Unit::nanometre:    return 1.0 / hbar_c;         // -> eV^-1
        case Unit::electronvolt: return 1.0;
        case Unit::microradian:  return 1.0e-6;               // -> rad (dimensionless)
    }
    throw std::invalid_argument("units: unknown unit tag");
}
}  // namespace detail

inline double to_natural(double value, Unit u) {
    if (!std::isfinite(value)) throw std::invalid_argument("units: non-finite value");
    return value * detail::natural_factor(u);
}

inline double from_natural(double value, Unit u) {
    if (!std::isfinite(value)) throw std::invalid_argument("units: non-finite value");
    return value / detail::natural_factor(u);
}

}  // namespace qvb
