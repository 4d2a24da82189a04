#include "fakemu/euler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fakemu/factorize.hpp"
#include "fakemu/zeta.hpp"

namespace fakemu {

namespace {

// Residual log-series coefficients kept explicitly past order J; beyond that
// a Cauchy estimate takes over.
constexpr int kResidualOrders = 51;

void require_kind(const EpsilonSpec& spec, ProductKind kind) {
    const int e1 = spec.epsilon_at(1);
    const int e2 = spec.epsilon_at(2);
    switch (kind) {
        case ProductKind::HalfLineC:
            if (e1 == -1 && e2 == 1) return;
            throw std::domain_error("HalfLineC product needs (eps_1, eps_2) = (-1, 1)");
        case ProductKind::HalfLineQ:
            if (e1 == 0 && e2 == 1) return;
            throw std::domain_error("HalfLineQ product needs (eps_1, eps_2) = (0, 1)");
        case ProductKind::LinearCoefficient:
            if (e1 == 1) return;
            throw std::domain_error("LinearCoefficient product needs eps_1 = +1");
    }
    throw std::domain_error("unknown product kind");
}

// Local factor as 1 + sum_{k} c_k x^k in x = p^{-1/2}, coefficients for
// k = 0..top.  The linear-coefficient factor is really a series in 1/p, so
// only even k appear there.
std::vector<double> series_in_x(const EpsilonSpec& spec, ProductKind kind, int top) {
    std::vector<double> c(top + 1, 0.0);
    c[0] = 1.0;
    switch (kind) {
        case ProductKind::HalfLineC:
            for (int k = 3; k <= top; ++k)
                c[k] = spec.epsilon_at(k - 1) + spec.epsilon_at(k);
            break;
        case ProductKind::HalfLineQ:
            // 1 + (1 - x^2) sum_{k>=3} eps_k x^k - x^4
            for (int k = 3; k <= top; ++k) {
                double v = spec.epsilon_at(k);
                if (k == 4) v -= 1.0;
                if (k >= 5) v -= spec.epsilon_at(k - 2);
                c[k] = v;
            }
            break;
        case ProductKind::LinearCoefficient:
            // (1 - 1/p)(1 + sum_{k>=1} eps_k p^{-k}); the x^2 coefficient
            // eps_1 - eps_0 vanishes because eps_1 = +1.
            for (int k = 1; 2 * k <= top; ++k)
                c[2 * k] = spec.epsilon_at(k) - spec.epsilon_at(k - 1);
            break;
    }
    return c;
}

// g with log(1 + sum c_k x^k) = sum_m g_m x^m, from
// m g_m = m c_m - sum_{i<m} i g_i c_{m-i}.
std::vector<double> log_series(const std::vector<double>& c) {
    const int top = static_cast<int>(c.size()) - 1;
    std::vector<double> g(top + 1, 0.0);
    for (int m = 1; m <= top; ++m) {
        double s = m * c[m];
        for (int i = 1; i < m; ++i) s -= i * g[i] * c[m - i];
        g[m] = s / m;
    }
    return g;
}

// Neumaier compensated accumulator.
struct Accum {
    double sum = 0.0;
    double comp = 0.0;
    double absSum = 0.0;
    void add(double v) {
        absSum += std::fabs(v);
        double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double total() const { return sum + comp; }
};

struct LocalEval {
    double value;
    double err;  // truncation tail plus rounding, absolute
};

// Truncation point giving a tail around 1e-30 at this prime.
int needed_terms(ProductKind kind, uint64_t p) {
    const double lp = std::log(static_cast<double>(p));
    const double num = (kind == ProductKind::LinearCoefficient) ? 73.0 : 146.0;
    return static_cast<int>(std::ceil(num / lp)) + 2;
}

LocalEval local_value(ProductKind kind, const std::vector<double>& c,
                      const std::vector<int>& eps, uint64_t p, int kmax) {
    if (kind == ProductKind::LinearCoefficient) {
        const double y = 1.0 / static_cast<double>(p);
        const int top = std::min<int>(kmax, static_cast<int>(eps.size()) - 1);
        double sum = 1.0, yk = 1.0, absAcc = 1.0;
        for (int k = 1; k <= top; ++k) {
            yk *= y;
            if (eps[k]) {
                sum += eps[k] * yk;
                absAcc += yk;
            }
        }
        const double value = (1.0 - y) * sum;
        // |sum_{k>top} eps_k y^k| <= y^{top+1}/(1-y), times the (1-y) factor
        const double tail = 2.0 * yk * y;
        const double rounding = 1.2e-16 * (absAcc + 1.0) * (top + 2);
        return {value, tail + rounding};
    }
    const double x = 1.0 / std::sqrt(static_cast<double>(p));
    const int top = std::min<int>(kmax, static_cast<int>(c.size()) - 1);
    double sum = 1.0, xk = x * x, absAcc = 1.0;
    for (int k = 3; k <= top; ++k) {
        xk *= x;
        if (c[k] != 0.0) {
            sum += c[k] * xk;
            absAcc += std::fabs(c[k]) * xk;
        }
    }
    const double coefBound = (kind == ProductKind::HalfLineC) ? 4.0 : 2.0;
    const double tail = coefBound * xk * x / (1.0 - x);
    const double rounding = 1.2e-16 * (absAcc + 1.0) * (top + 2);
    return {sum, tail + rounding};
}

}  // namespace

AccelerationPlan make_plan(const EpsilonSpec& spec, ProductKind kind, int J,
                           uint64_t primeBound, int terms) {
    require_kind(spec, kind);
    if (J < 3 || J > 20) throw std::invalid_argument("make_plan: J must be in [3, 20]");
    if (primeBound < 100) throw std::invalid_argument("make_plan: prime bound too small");
    if (terms < 10 || terms > 100000) throw std::invalid_argument("make_plan: terms out of range");
    const int top = J + kResidualOrders;
    const auto g = log_series(series_in_x(spec, kind, top));
    if (std::fabs(g[1]) > 1e-12 || std::fabs(g[2]) > 1e-12)
        throw std::logic_error("make_plan: leading log coefficients fail to vanish");
    AccelerationPlan plan;
    plan.J = J;
    plan.primeBound = primeBound;
    plan.terms = terms;
    plan.exponents.assign(J - 2, 0.0);
    for (int m = 3; m <= J; ++m) {
        double v = g[m];
        for (int j = 3; j < m; ++j)
            if (m % j == 0) v -= plan.exponents[j - 3] * static_cast<double>(j) / m;
        plan.exponents[m - 3] = v;
    }
    return plan;
}

ApproxReal local_factor_C(const EpsilonSpec& spec, uint64_t p, int terms) {
    require_kind(spec, ProductKind::HalfLineC);
    if (!is_prime(p)) throw std::invalid_argument("local_factor_C: p must be prime");
    if (terms < 3 || terms > 100000) throw std::invalid_argument("local_factor_C: terms out of range");
    const auto c = series_in_x(spec, ProductKind::HalfLineC, terms);
    const LocalEval lv = local_value(ProductKind::HalfLineC, c, {}, p, terms);
    return {lv.value, lv.err};
}

ApproxReal local_factor_Q(const EpsilonSpec& spec, uint64_t p, int terms) {
    require_kind(spec, ProductKind::HalfLineQ);
    if (!is_prime(p)) throw std::invalid_argument("local_factor_Q: p must be prime");
    if (terms < 3 || terms > 100000) throw std::invalid_argument("local_factor_Q: terms out of range");
    const auto c = series_in_x(spec, ProductKind::HalfLineQ, terms);
    const LocalEval lv = local_value(ProductKind::HalfLineQ, c, {}, p, terms);
    return {lv.value, lv.err};
}

ApproxReal accelerated_product(const EpsilonSpec& spec, ProductKind kind,
                               const AccelerationPlan& plan) {
    require_kind(spec, kind);
    const int J = plan.J;
    if (J < 3 || J > 20 || static_cast<int>(plan.exponents.size()) != J - 2)
        throw std::invalid_argument("accelerated_product: malformed plan");
    if (plan.terms < 10 || plan.terms > 100000)
        throw std::invalid_argument("accelerated_product: terms out of range");
    const uint64_t P = plan.primeBound;
    const int M = J + kResidualOrders;

    // The tail over primes beyond P is bounded through a Cauchy estimate on
    // the circle |x| = x1 = 2/sqrt(P); every prime past the bound has
    // x < x1/2.
    const double x1 = 2.0 / std::sqrt(static_cast<double>(P));
    const double r1 = 2.0 * x1 * x1 * x1 / (1.0 - x1);
    if (!(x1 < 0.5) || !(r1 < 0.5))
        throw std::domain_error("accelerated_product: prime bound too small for the tail bound");

    const int evalTop = std::max(3, std::min(plan.terms, needed_terms(kind, 2)));
    const int seriesTop = std::max(M, evalTop);
    const auto c = series_in_x(spec, kind, seriesTop);
    std::vector<int> eps;
    if (kind == ProductKind::LinearCoefficient) {
        eps.resize(evalTop + 1);
        for (int k = 0; k <= evalTop; ++k) eps[k] = spec.epsilon_at(k);
    }

    // Residual log coefficients after the zeta-power correction.
    const auto g = log_series(c);
    std::vector<double> h(M + 1, 0.0);
    for (int m = J + 1; m <= M; ++m) {
        double v = g[m];
        for (int j = 3; j <= J; ++j)
            if (m % j == 0) v -= plan.exponents[j - 3] * static_cast<double>(j) / m;
        h[m] = v;
    }

    Accum logSum;
    double logErr = 0.0;

    // Global zeta factors.
    for (int j = 3; j <= J; ++j) {
        const double aj = plan.exponents[j - 3];
        if (aj == 0.0) continue;
        const ApproxReal z = zeta_real(0.5 * j, 1e-12);
        const double lz = std::log(z.value);
        logSum.add(aj * lz);
        logErr += std::fabs(aj) *
                  (z.errBound / (z.value - z.errBound) + 1.1e-16 * std::fabs(lz));
    }

    // Direct product over p <= P (ascending, deterministic), with the
    // compensating (1 - p^{-j/2})^{a_j} factors folded in per prime.  p = 2
    // stays outside the logs: its factor may vanish or go negative.
    const auto primes = primes_up_to(P);
    for (uint64_t p : primes) {
        const double x = 1.0 / std::sqrt(static_cast<double>(p));
        if (p > 2) {
            const int kmax = std::min(plan.terms, needed_terms(kind, p));
            const LocalEval lv = local_value(kind, c, eps, p, kmax);
            if (!(lv.value - lv.err > 0.0))
                throw std::domain_error("accelerated_product: nonpositive local factor at p = " +
                                        std::to_string(p));
            const double lf = std::log(lv.value);
            logSum.add(lf);
            logErr += lv.err / (lv.value - lv.err) + 1.1e-16 * std::fabs(lf);
        }
        double xj = x * x;
        for (int j = 3; j <= J; ++j) {
            xj *= x;
            const double aj = plan.exponents[j - 3];
            if (aj == 0.0) continue;
            const double lt = std::log1p(-xj);
            logSum.add(aj * lt);
            logErr += std::fabs(aj) * (3e-15 * xj + 1.1e-16 * std::fabs(lt));
        }
    }

    // Primes beyond P: explicit residual coefficients h_m up to order M ...
    double L1 = r1 / (1.0 - r1);
    for (int j = 3; j <= J; ++j) {
        const double aj = std::fabs(plan.exponents[j - 3]);
        if (aj == 0.0) continue;
        const double xj = std::pow(x1, j);
        L1 += aj * xj / (1.0 - xj);
    }
    double overPrimes = 0.0;
    const double lnP = std::log(static_cast<double>(P));
    for (int m = J + 1; m <= M; ++m) {
        if (h[m] == 0.0) continue;
        const double s = 0.5 * m;
        // sum_{p > P} p^{-s} <= P^{1-s}/(s-1)
        overPrimes += std::fabs(h[m]) * 1.0000001 * std::exp((1.0 - s) * lnP) / (s - 1.0);
    }
    // ... and the Cauchy bound for orders past M, in logs to dodge overflow.
    {
        const double s = 0.5 * (M + 1);
        const double lnTail = std::log(2.0 * L1) - (M + 1) * std::log(x1) +
                              (1.0 - s) * lnP - std::log(s - 1.0);
        overPrimes += std::exp(lnTail);
    }
    logErr += overPrimes;
    logErr += 2e-16 * logSum.absSum + 1e-18;

    const double rest = std::exp(logSum.total());
    const double restErr = rest * std::expm1(logErr) + round_slack(rest);

    const LocalEval f2 = local_value(kind, c, eps, 2, evalTop);
    return approx_mul({f2.value, f2.err}, {rest, restErr});
}

ApproxReal accelerated_product(const EpsilonSpec& spec, ProductKind kind) {
    return accelerated_product(spec, kind, make_plan(spec, kind));
}

ApproxReal tanaka_bias(int r) {
    if (r < 3 || r > 64) throw std::invalid_argument("tanaka_bias: r must be in [3, 64]");
    const ApproxReal zh = zeta_real(0.5, 1e-12);
    // The local factor collapses to 1 + (-1)^{r-1} p^{-r/2}, so the product
    // over primes is zeta(r/2)/zeta(r) for odd r and 1/zeta(r/2) for even r;
    // the bias divides that by zeta(1/2).
    if (r % 2 == 1) {
        const ApproxReal num = zeta_real(0.5 * r, 1e-12);
        return approx_div(num, approx_mul(zh, zeta_real(static_cast<double>(r), 1e-12)));
    }
    return approx_div(approx_exact(1.0), approx_mul(zh, zeta_real(0.5 * r, 1e-12)));
}

ExtremalConstants extremal_constants() {
    const ApproxReal zh = zeta_real(0.5, 1e-12);
    ExtremalConstants out;
    out.invZetaHalf = approx_div(approx_exact(1.0), zh);
    out.A1 = approx_div(accelerated_product(builtin("fake_min"), ProductKind::HalfLineC), zh);
    out.B1 = approx_div(accelerated_product(builtin("fake_max"), ProductKind::HalfLineC), zh);
    out.A2 = accelerated_product(builtin("fake_Min"), ProductKind::HalfLineQ);
    out.B2 = accelerated_product(builtin("fake_Max"), ProductKind::HalfLineQ);
    return out;
}

}  // namespace fakemu
