#pragma once

#include <string>

#include "fakemu/approx.hpp"
#include "fakemu/epsilon_spec.hpp"
#include "fakemu/exact_real.hpp"
#include "fakemu/surd.hpp"

namespace fakemu {

enum class BiasVerdict { NoBias, ApparentBias, PersistentBias };

const char* to_string(BiasVerdict v);

// Outcome of the case analysis on (eps_1, eps_2).
struct BiasClassification {
    BiasVerdict verdict = BiasVerdict::NoBias;
    ApproxReal a;  // coefficient of the x term of the summatory function
    ApproxReal b;  // bias of (F(x) - a x)/sqrt(x); exactly 0 for NoBias
};

// NoBias when eps_1 = +1 (the drift is absorbed by a > 0) or when both
// eps_1, eps_2 lie in {0, -1}.  ApparentBias when (eps_1, eps_2) = (-1, 1),
// with b = U(1/2)/zeta(1/2) from the C_p product.  PersistentBias when
// (eps_1, eps_2) = (0, 1), with b the Q_p product.
BiasClassification classify(const EpsilonSpec& spec);

// a = lim F(x)/x: exactly zero unless eps_1 = +1, else the convergent
// product prod_p (1 - 1/p)(1 + sum_k eps_k p^{-k}).
ApproxReal linear_coefficient(const EpsilonSpec& spec);

// gamma_2 = 1 - 2^{-1/2} + 2^{-1} + sum_{3<=k<=terms} eps_k 2^{-k/2}: the
// p = 2 local series factor at s = 1/2.  Its sign is the sign of C_2(1/2)
// (they differ by the positive factor 1 + 2^{-1/2}) and its vanishing
// characterizes zero bias.  The partial sum is evaluated exactly over
// Q(sqrt2) and converted at the end; the error bound is the series tail
// 2·2^{-terms/2}/(1 - 2^{-1/2}) plus the conversion width.  Requires
// (eps_1, eps_2) = (-1, 1) and terms >= 3.
ApproxReal gamma_2(const EpsilonSpec& spec, int terms = 400);

// Full-series gamma_2.  Every shipped tail rule admits an exact closed form
// over Q(sqrt2): geometric sums for constant and periodic tails, a finite
// sum for the mu_r tail, and source-value algebra for bitstream tails.
Surd gamma_2_exact(const EpsilonSpec& spec);

enum class ZeroBiasKind { Zero, Nonzero, Undetermined };

struct ZeroBiasVerdict {
    ZeroBiasKind kind = ZeroBiasKind::Undetermined;
    int sign = 0;        // sign of gamma_2 (and hence of the bias) when Nonzero
    double bound = 0.0;  // enclosure half-width when Undetermined
};

// Zero-bias recognition through gamma_2_exact; never guesses a sign from
// floating point.  Undetermined stays in the interface for tail rules
// without a closed form, but the four shipped rules all resolve exactly.
// Requires (eps_1, eps_2) = (-1, 1).
ZeroBiasVerdict is_zero_bias(const EpsilonSpec& spec);

// Digit sources for a zero-bias construction; alpha = alphaPlus - alphaMinus
// and beta = betaPlus - betaMinus.  The unsigned family (values in {-1, 1})
// keeps the minus parts zero and requires alpha, beta in [0, 1] with
// alpha*sqrt2 + beta = 2; the signed family (values in {-1, 0, 1}) requires
// all four sources in [0, 1], positionally disjoint digits, and
// 2*alpha + sqrt2*beta = 2 - 3*sqrt2.
struct ZeroBiasParams {
    ExactReal alphaPlus, alphaMinus, betaPlus, betaMinus;
    bool signedDigits = false;
};

// Canonical params from plain alpha and beta: unsigned passes them through;
// signed splits each value by sign into a plus or minus source.
ZeroBiasParams zero_bias_params(const ExactReal& alpha, const ExactReal& beta,
                                bool signedDigits);

// Spec with eps_1 = -1, eps_2 = 1 and tail values interleaved from the digit
// sources: odd k = 2j+1 reads digit j of the alpha pair, even k = 2j+2 digit
// j of the beta pair.  The unsigned family realizes eps_k = 1 - 2 delta_k by
// pairing each source with its digit complement.  Throws
// std::invalid_argument when the exact linear condition or a range
// constraint fails.
EpsilonSpec construct_zero_bias(const ZeroBiasParams& params);

}  // namespace fakemu
