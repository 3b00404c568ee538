#pragma once

namespace dasa {

// Principal branch W0 of the inverse of w -> w e^w, for x >= -1/e.
// Halley iteration, at most 50 steps. DomainError for x < -1/e.
double lambert_w0(double x);

// W0(e^log_x) for arguments whose exponential would overflow. Solves
// w + ln w = log_x.
double lambert_w0_exp(double log_x);

}  // namespace dasa
