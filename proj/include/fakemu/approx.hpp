#pragma once

#include <cmath>
#include <cstdlib>

namespace fakemu {

// A binary64 value with a rigorous absolute error bound:
// |true - value| <= errBound.
struct ApproxReal {
    double value = 0;
    double errBound = 0;
};

// One-ulp-ish slack for a freshly rounded double.
inline double round_slack(double v) { return std::abs(v) * 4.5e-16 + 5e-324; }

inline ApproxReal approx_exact(double v) { return {v, 0.0}; }

inline ApproxReal approx_add(const ApproxReal& a, const ApproxReal& b) {
    double v = a.value + b.value;
    return {v, a.errBound + b.errBound + round_slack(v)};
}

inline ApproxReal approx_sub(const ApproxReal& a, const ApproxReal& b) {
    double v = a.value - b.value;
    return {v, a.errBound + b.errBound + round_slack(v)};
}

inline ApproxReal approx_mul(const ApproxReal& a, const ApproxReal& b) {
    double v = a.value * b.value;
    double e = std::abs(a.value) * b.errBound + std::abs(b.value) * a.errBound +
               a.errBound * b.errBound + round_slack(v);
    return {v, e};
}

// Requires the divisor interval to exclude 0.
inline ApproxReal approx_div(const ApproxReal& a, const ApproxReal& b) {
    double lo = std::abs(b.value) - b.errBound;
    if (lo <= 0) return {a.value / b.value, HUGE_VAL};
    double v = a.value / b.value;
    double e = (a.errBound + std::abs(v) * b.errBound) / lo + round_slack(v);
    return {v, e};
}

inline bool approx_contains(const ApproxReal& a, double x) {
    return std::abs(a.value - x) <= a.errBound;
}

inline bool approx_overlaps(const ApproxReal& a, const ApproxReal& b) {
    return std::abs(a.value - b.value) <= a.errBound + b.errBound;
}

}  // namespace fakemu
