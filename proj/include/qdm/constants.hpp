#pragma once

// Fixed unit system: time in ps, energy in meV, current in pA, temperature in K.
// Keeps hbar, h and k_B of order one so rate*time products stay well scaled.

namespace qdm::constants {

inline constexpr double hbar = 0.6582119569;      // meV ps
inline constexpr double h = 4.135667696;          // meV ps
inline constexpr double k_b = 0.0861733;          // meV / K
inline constexpr double mu_b = 0.0578838;         // meV / T
inline constexpr double e_charge = 1.602176634e5; // pA ps (= 1.602e-19 C)

inline constexpr double um2_to_cm2 = 1e-8;

} // namespace qdm::constants
