// constants.hpp - physical constants and the global frequency reference
#pragma once

namespace rvo {

inline constexpr double kSpeedOfLight = 299792458.0;        // m/s
inline constexpr double kBoltzmann    = 1.380649e-23;       // J/K
inline constexpr double kAtomicMassUnit = 1.66053906660e-27; // kg
inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Global frequency reference: the 87Rb D2 centroid (Steck, "Rubidium 87
// D Line Data"). All detunings in this codebase are angular frequencies
// relative to this point.
inline constexpr double kReferenceFrequencyHz = 384.2304844685e12;
inline constexpr double kReferenceOmega = kTwoPi * kReferenceFrequencyHz;
inline constexpr double kReferenceWavenumber = kReferenceOmega / kSpeedOfLight; // rad/m

} // namespace rvo
