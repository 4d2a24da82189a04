#include "fakemu/classify.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <variant>

#include "fakemu/euler.hpp"
#include "fakemu/zeta.hpp"

namespace fakemu {

namespace {

// 2^{-k/2} as an exact surd: 1/2^{k/2} for even k, sqrt2/2^{(k+1)/2} for odd.
Surd half_power(uint64_t k) {
    mpz_class den(1);
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), (k + 1) / 2);
    mpq_class q(mpz_class(1), den);
    q.canonicalize();
    if (k % 2 == 0) return Surd(q, mpq_class(0));
    return Surd(mpq_class(0), q);
}

void require_apparent_case(const EpsilonSpec& spec, const char* fn) {
    if (spec.epsilon_at(1) != -1 || spec.epsilon_at(2) != 1)
        throw std::domain_error(std::string(fn) +
                                " requires eps_1 = -1 and eps_2 = 1");
}

// sum_{j >= j0} digit_j(x) 2^{-j} = x minus the digits already consumed.
Surd stream_tail(const ExactReal& x, uint64_t j0) {
    Surd s = x.value();
    for (uint64_t j = 1; j < j0; ++j)
        if (x.digit(j)) s -= half_power(2 * j);
    return s;
}

// sum_{k >= k0} eps_k 2^{-k/2} over the tail rule, exactly.
Surd tail_sum(const EpsilonSpec& spec, uint64_t k0) {
    const TailRule& t = spec.tail();
    if (const auto* c = std::get_if<ConstantTail>(&t)) {
        if (c->value == 0) return Surd();
        // geometric: sum_{k >= k0} 2^{-k/2} = 2^{-k0/2} (2 + sqrt2)
        return Surd(c->value) * half_power(k0) *
               Surd(mpq_class(2), mpq_class(1));
    }
    if (const auto* pd = std::get_if<PeriodicTail>(&t)) {
        const auto& pat = pd->pattern;
        Surd block;
        for (uint64_t i = 0; i < pat.size(); ++i)
            if (pat[i]) block += Surd(pat[i]) * half_power(k0 + i);
        return block / (Surd(1) - half_power(pat.size()));
    }
    if (const auto* mr = std::get_if<MuRTail>(&t)) {
        Surd s;
        for (uint64_t k = k0; k < static_cast<uint64_t>(mr->r); ++k)
            s += Surd(k % 2 == 0 ? 1 : -1) * half_power(k);
        return s;
    }
    const auto& bt = std::get<BitstreamTail>(t);
    // Odd k = 2j+1 reads digit j of the alpha pair and contributes
    // 2^{-j}/sqrt2; even k = 2j+2 reads digit j of the beta pair and
    // contributes 2^{-j}/2.  The first tail index of each stream skips the
    // digits the prefix already covered.
    const uint64_t j0_odd = k0 / 2, j0_even = (k0 - 1) / 2;
    Surd odd = stream_tail(bt.alpha_plus, j0_odd) -
               stream_tail(bt.alpha_minus, j0_odd);
    Surd even = stream_tail(bt.beta_plus, j0_even) -
                stream_tail(bt.beta_minus, j0_even);
    return odd * Surd(mpq_class(0), mpq_class(1, 2)) +
           even * Surd(mpq_class(1, 2), mpq_class(0));
}

ExactReal digit_complement(const ExactReal& x) {
    // 1 - x, carried on the expansion whose digits are 1 - digit_j(x).
    return ExactReal(Surd(1) - x.value(), !x.nonterminating());
}

std::string family_name(const ZeroBiasParams& p) {
    if (!p.signedDigits)
        return "fake(" + p.alphaPlus.str() + "," + p.betaPlus.str() + ")";
    return "fake_signed(" + p.alphaPlus.str() + "," + p.alphaMinus.str() +
           "," + p.betaPlus.str() + "," + p.betaMinus.str() + ")";
}

}  // namespace

const char* to_string(BiasVerdict v) {
    switch (v) {
        case BiasVerdict::NoBias: return "NoBias";
        case BiasVerdict::ApparentBias: return "ApparentBias";
        case BiasVerdict::PersistentBias: return "PersistentBias";
    }
    throw std::logic_error("to_string: bad BiasVerdict");
}

ApproxReal linear_coefficient(const EpsilonSpec& spec) {
    if (spec.epsilon_at(1) != 1) return approx_exact(0.0);
    return accelerated_product(spec, ProductKind::LinearCoefficient);
}

BiasClassification classify(const EpsilonSpec& spec) {
    const int e1 = spec.epsilon_at(1), e2 = spec.epsilon_at(2);
    BiasClassification out;
    out.a = approx_exact(0.0);
    out.b = approx_exact(0.0);
    if (e1 == 1) {
        // a > 0 absorbs the drift; the sqrt-x term oscillates around 0.
        out.verdict = BiasVerdict::NoBias;
        out.a = accelerated_product(spec, ProductKind::LinearCoefficient);
        return out;
    }
    if (e1 == -1 && e2 == 1) {
        out.verdict = BiasVerdict::ApparentBias;
        out.b = approx_div(accelerated_product(spec, ProductKind::HalfLineC),
                           zeta_real(0.5));
        return out;
    }
    if (e1 == 0 && e2 == 1) {
        out.verdict = BiasVerdict::PersistentBias;
        out.b = accelerated_product(spec, ProductKind::HalfLineQ);
        return out;
    }
    out.verdict = BiasVerdict::NoBias;
    return out;
}

ApproxReal gamma_2(const EpsilonSpec& spec, int terms) {
    require_apparent_case(spec, "gamma_2");
    if (terms < 3) throw std::invalid_argument("gamma_2: terms must be >= 3");
    Surd g = Surd(mpq_class(3, 2), mpq_class(0)) - half_power(1);
    for (int k = 3; k <= terms; ++k) {
        const int e = spec.epsilon_at(static_cast<uint64_t>(k));
        if (e) g += Surd(e) * half_power(static_cast<uint64_t>(k));
    }
    auto [mid, halfWidth] = g.to_double_with_error();
    const double tail =
        2.0 * std::exp2(-0.5 * terms) / (1.0 - std::exp2(-0.5));
    return {mid, halfWidth + tail};
}

Surd gamma_2_exact(const EpsilonSpec& spec) {
    require_apparent_case(spec, "gamma_2_exact");
    const auto& prefix = spec.prefix();
    Surd g = Surd(mpq_class(3, 2), mpq_class(0)) - half_power(1);
    for (uint64_t k = 3; k <= prefix.size(); ++k)
        if (prefix[k - 1]) g += Surd(prefix[k - 1]) * half_power(k);
    return g + tail_sum(spec, prefix.size() + 1);
}

ZeroBiasVerdict is_zero_bias(const EpsilonSpec& spec) {
    const int s = gamma_2_exact(spec).sign();
    ZeroBiasVerdict v;
    v.kind = s == 0 ? ZeroBiasKind::Zero : ZeroBiasKind::Nonzero;
    v.sign = s;
    v.bound = 0.0;
    return v;
}

ZeroBiasParams zero_bias_params(const ExactReal& alpha, const ExactReal& beta,
                                bool signedDigits) {
    ZeroBiasParams p;
    p.signedDigits = signedDigits;
    if (!signedDigits) {
        p.alphaPlus = alpha;
        p.betaPlus = beta;
        return p;
    }
    if (alpha.value().sign() >= 0)
        p.alphaPlus = alpha;
    else
        p.alphaMinus = ExactReal(-alpha.value(), alpha.nonterminating());
    if (beta.value().sign() >= 0)
        p.betaPlus = beta;
    else
        p.betaMinus = ExactReal(-beta.value(), beta.nonterminating());
    return p;
}

EpsilonSpec construct_zero_bias(const ZeroBiasParams& params) {
    const Surd alpha = params.alphaPlus.value() - params.alphaMinus.value();
    const Surd beta = params.betaPlus.value() - params.betaMinus.value();
    const Surd zero, one(1);
    if (!params.signedDigits) {
        if (!params.alphaMinus.value().is_zero() ||
            !params.betaMinus.value().is_zero())
            throw std::invalid_argument(
                "construct_zero_bias: unsigned digits use only the plus "
                "sources");
        if (alpha < zero || alpha > one || beta < zero || beta > one)
            throw std::invalid_argument(
                "construct_zero_bias: alpha and beta must lie in [0, 1]");
        if (alpha * Surd::sqrt2() + beta != Surd(2))
            throw std::invalid_argument(
                "construct_zero_bias: need alpha*sqrt2 + beta = 2 exactly");
        BitstreamTail tail{digit_complement(params.alphaPlus),
                           params.alphaPlus,
                           digit_complement(params.betaPlus),
                           params.betaPlus};
        return EpsilonSpec({-1, 1}, std::move(tail), family_name(params));
    }
    for (const ExactReal* src :
         {&params.alphaPlus, &params.alphaMinus, &params.betaPlus,
          &params.betaMinus})
        if (src->value() < zero || src->value() > one)
            throw std::invalid_argument(
                "construct_zero_bias: digit sources must lie in [0, 1]");
    if (Surd(2) * alpha + Surd::sqrt2() * beta !=
        Surd(2) - Surd(3) * Surd::sqrt2())
        throw std::invalid_argument(
            "construct_zero_bias: need 2*alpha + sqrt2*beta = 2 - 3*sqrt2 "
            "exactly");
    BitstreamTail tail{params.alphaPlus, params.alphaMinus, params.betaPlus,
                       params.betaMinus};
    return EpsilonSpec({-1, 1}, std::move(tail), family_name(params));
}

}  // namespace fakemu
