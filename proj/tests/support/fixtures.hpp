#pragma once

// Reference values produced by tests/oracles/derive_fixtures.py (fixed-step
// Simpson at h = 1e-5 for integrals, DOP853 at rtol 1e-13 for the ODE) and
// frozen here.

namespace bsym::fixtures {

// int_0^1.2 sin(s) exp(2 sin(s)) ds, i.e. integral_B(cos, sin, n = 3, 1.2)
inline constexpr double kIntegralB_cos_sin_3 = 2.6682115728975839;

// G(0.3) for a = 1, b = t, n = 2, d = -1 (analytically -2 + 0.7 e^0.3)
inline constexpr double kRadicand_1_t_2_m1 = -1.0550988346967978;

// Both sides of the Eq4 identity for (cos, sin, 3) at t = 1.2
inline constexpr double kEq4Lhs = -2.6682115728975808;
inline constexpr double kEq4Rhs = -2.6682115728975839;

// Both sides of the Eq7 identity for (t, cos, 2) at t = 2
inline constexpr double kEq7Lhs = 0.79118596713216982;
inline constexpr double kEq7Rhs = 0.79118596713216904;

// y(0.7) for y' = cos(t) y + sin(t) y^2, y(0) = 1
inline constexpr double kSolution_cos_sin_2 = 3.0200706670159709;

} // namespace bsym::fixtures
