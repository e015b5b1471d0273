#pragma once

#include "guamp/types.hpp"

namespace guamp {

// ||z - z_hat||^2 / ||z||^2. Throws DegenerateInput when z = 0.
double nmse(const Vector& z, const Vector& z_hat);

// min_c ||z - c z_hat||^2 / ||z||^2 = 1 - (z_hat^T z)^2 / (||z||^2 ||z_hat||^2),
// and 1 when z_hat = 0. Both vectors are rescaled by their largest magnitude
// first, so the result stays finite for any finite z_hat.
double dnmse(const Vector& z, const Vector& z_hat);

// 10 log10(value), floored at -300 dB; +inf for non-finite input.
inline constexpr double kDbFloor = -300.0;
double to_db(double value);

}  // namespace guamp
