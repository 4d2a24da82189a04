#pragma once

#include "fakemu/approx.hpp"

namespace fakemu {

// Riemann zeta for real s in (0, 64], s != 1, by Euler-Maclaurin summation:
// 64 direct terms, Bernoulli corrections through B_24, analytic remainder
// bounded by the first omitted correction term (valid for real s > 0).
// Throws std::domain_error outside the domain or when precisionTarget is not
// reachable in binary64.
ApproxReal zeta_real(double s, double precisionTarget = 1e-12);

}  // namespace fakemu
