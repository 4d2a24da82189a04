#pragma once

#include <cstdint>
#include <vector>

#include "fakemu/approx.hpp"
#include "fakemu/epsilon_spec.hpp"

namespace fakemu {

// Which Euler product is being evaluated.  All three have local factors of
// the form 1 + (series in p^{-1/2} or p^{-1}) whose leading terms cancel, so
// the same acceleration machinery applies.
enum class ProductKind {
    // C_p = 1 + sum_{k>=3} (eps_{k-1} + eps_k) p^{-k/2}.
    // Valid when (eps_1, eps_2) = (-1, 1); the product converges only
    // conditionally term-by-term but absolutely after cancellation.
    HalfLineC,
    // Q_p = 1 + (1 - 1/p) sum_{k>=3} eps_k p^{-k/2} - p^{-2}.
    // Valid when (eps_1, eps_2) = (0, 1).
    HalfLineQ,
    // (1 - 1/p)(1 + sum_{k>=1} eps_k p^{-k}).  Valid when eps_1 = +1; the
    // product is the mean-value coefficient of the summatory function.
    LinearCoefficient,
};

// Parameters of the zeta-power acceleration.  exponents[j-3] is the power
// a_j applied to zeta(j/2) (or left zero when the log-series coefficient
// vanishes); they are derived from the epsilon sequence by make_plan.
struct AccelerationPlan {
    int J = 9;                     // highest zeta exponent index used
    uint64_t primeBound = 100000;  // primes <= this enter the direct product
    int terms = 200;               // per-prime series truncation cap
    std::vector<double> exponents; // a_3 .. a_J
};

// Derive the exponents a_j (3 <= j <= J) so that the local factor times
// prod_j (1 - p^{-j/2})^{a_j} is 1 + O(p^{-(J+1)/2}).  J must be in [3, 20].
AccelerationPlan make_plan(const EpsilonSpec& spec, ProductKind kind, int J = 9,
                           uint64_t primeBound = 100000, int terms = 200);

// Single local factor with a rigorous truncation bound.  p must be prime.
ApproxReal local_factor_C(const EpsilonSpec& spec, uint64_t p, int terms = 200);
ApproxReal local_factor_Q(const EpsilonSpec& spec, uint64_t p, int terms = 200);

// Product of the local factors over all primes, with a rigorous error bound
// covering series truncation, the primes beyond the bound, zeta evaluation
// and rounding.  Deterministic for a fixed plan.  Throws std::domain_error
// when the spec does not match the kind's (eps_1, eps_2) requirement.
ApproxReal accelerated_product(const EpsilonSpec& spec, ProductKind kind,
                               const AccelerationPlan& plan);
ApproxReal accelerated_product(const EpsilonSpec& spec, ProductKind kind);

// Bias constant of the mu_r family, r >= 3, in closed form:
//   odd r:  zeta(r/2) / (zeta(1/2) zeta(r))
//   even r: 1 / (zeta(1/2) zeta(r/2))
ApproxReal tanaka_bias(int r);

// The bias constants of the four extremal sequences together with
// 1/zeta(1/2), evaluated with the default plan.
struct ExtremalConstants {
    ApproxReal invZetaHalf;  // 1/zeta(1/2)
    ApproxReal A1;           // bias of fake_min
    ApproxReal B1;           // bias of fake_max
    ApproxReal A2;           // bias of fake_Min
    ApproxReal B2;           // bias of fake_Max
};
ExtremalConstants extremal_constants();

}  // namespace fakemu
