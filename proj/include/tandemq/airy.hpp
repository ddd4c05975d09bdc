#pragma once

namespace tandemq {

// Airy function Ai(s) and its derivative on the right tail s >= 4, the range
// needed to seed the Painleve II integration. Absolute error below 1e-12
// throughout the domain; s < 4 raises bad_argument.
double airy_ai(double s);
double airy_ai_prime(double s);

}  // namespace tandemq
