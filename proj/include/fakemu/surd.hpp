#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace fakemu {

// Exact element of the field Q(sqrt(2)): u + v*sqrt(2) with rational u, v.
// All arithmetic and comparisons are exact; no rounding happens until a
// caller asks for a binary64 enclosure.
class Surd {
public:
    Surd() : u_(0), v_(0) {}
    Surd(long n) : u_(n), v_(0) {}
    Surd(mpq_class u, mpq_class v) : u_(std::move(u)), v_(std::move(v)) {}

    static Surd sqrt2() { return Surd(mpq_class(0), mpq_class(1)); }

    const mpq_class& rational_part() const { return u_; }
    const mpq_class& sqrt2_part() const { return v_; }

    bool is_rational() const { return v_ == 0; }
    bool is_zero() const { return u_ == 0 && v_ == 0; }

    // Exact sign: u + v*sqrt(2) and u^2 - 2 v^2 share their vanishing locus
    // only at u = v = 0, so mixed-sign cases reduce to comparing u^2 with 2 v^2.
    int sign() const {
        int su = sgn(u_), sv = sgn(v_);
        if (sv == 0) return su;
        if (su == 0) return sv;
        if (su == sv) return su;
        mpq_class d = u_ * u_ - 2 * v_ * v_;
        return su > 0 ? sgn(d) : -sgn(d);
    }

    Surd operator-() const { return Surd(-u_, -v_); }
    Surd operator+(const Surd& o) const { return Surd(u_ + o.u_, v_ + o.v_); }
    Surd operator-(const Surd& o) const { return Surd(u_ - o.u_, v_ - o.v_); }
    Surd operator*(const Surd& o) const {
        return Surd(u_ * o.u_ + 2 * v_ * o.v_, u_ * o.v_ + v_ * o.u_);
    }
    Surd operator/(const Surd& o) const {
        // 1/(u + v*sqrt2) = (u - v*sqrt2)/(u^2 - 2 v^2)
        mpq_class n = o.u_ * o.u_ - 2 * o.v_ * o.v_;
        if (n == 0) throw std::domain_error("Surd: division by zero");
        Surd conj(o.u_ / n, -o.v_ / n);
        return *this * conj;
    }
    Surd& operator+=(const Surd& o) { return *this = *this + o; }
    Surd& operator-=(const Surd& o) { return *this = *this - o; }
    Surd& operator*=(const Surd& o) { return *this = *this * o; }

    bool operator==(const Surd& o) const { return u_ == o.u_ && v_ == o.v_; }
    bool operator!=(const Surd& o) const { return !(*this == o); }
    bool operator<(const Surd& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const Surd& o) const { return (*this - o).sign() <= 0; }
    bool operator>(const Surd& o) const { return (*this - o).sign() > 0; }
    bool operator>=(const Surd& o) const { return (*this - o).sign() >= 0; }

    Surd abs() const { return sign() < 0 ? -*this : *this; }

    // Rational enclosure lo <= value <= hi using sqrt(2) to `bits` bits.
    std::pair<mpq_class, mpq_class> enclosure(unsigned bits = 192) const {
        if (v_ == 0) return {u_, u_};
        mpz_class scale = mpz_class(1) << bits;
        mpz_class s;                       // s <= 2^bits * sqrt2 < s + 1
        mpz_class two_sq = 2 * scale * scale;
        mpz_sqrt(s.get_mpz_t(), two_sq.get_mpz_t());
        mpq_class lo_r(s, scale), hi_r(s + 1, scale);
        lo_r.canonicalize();
        hi_r.canonicalize();
        if (v_ > 0) return {u_ + v_ * lo_r, u_ + v_ * hi_r};
        return {u_ + v_ * hi_r, u_ + v_ * lo_r};
    }

    // Midpoint as binary64 plus a rigorous absolute error bound.
    std::pair<double, double> to_double_with_error(unsigned bits = 192) const {
        auto [lo, hi] = enclosure(bits);
        mpq_class mid = (lo + hi) / 2;
        double d = mid.get_d();            // truncated, error < 1 ulp
        double width = mpq_class(hi - lo).get_d();
        double ulp = (d == 0 ? 5e-324 : std::abs(d)) * 2.3e-16;
        return {d, width / 2 + ulp + 5e-324};
    }

private:
    mpq_class u_, v_;
};

inline Surd operator*(long n, const Surd& s) { return Surd(n) * s; }

}  // namespace fakemu
