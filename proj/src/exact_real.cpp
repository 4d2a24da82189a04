#include "fakemu/exact_real.hpp"

#include <regex>
#include <stdexcept>

namespace fakemu {

ExactReal::ExactReal(Surd value, bool nonterminating)
    : value_(std::move(value)),
      nonterminating_(nonterminating),
      cache_(std::make_shared<DigitCache>()) {
    if (value_ == Surd(0)) cache_->constant = 0;
    if (value_ == Surd(1)) cache_->constant = 1;
}

ExactReal ExactReal::rational(long p, long q) {
    if (q == 0) throw std::invalid_argument("ExactReal: zero denominator");
    mpq_class r(p, q);
    r.canonicalize();
    return ExactReal(Surd(r, mpq_class(0)));
}

ExactReal ExactReal::surd(long a, long b, long c) {
    if (c == 0) throw std::invalid_argument("ExactReal: zero denominator");
    mpq_class u(a, c), v(b, c);
    u.canonicalize();
    v.canonicalize();
    return ExactReal(Surd(u, v));
}

// Grammar: [a(+|-)]b/sqrt2[ over c] | p/q | integer.  "b/sqrt2" is b/sqrt(2),
// i.e. the sqrt2 coefficient is b/2.
ExactReal ExactReal::parse(const std::string& text) {
    static const std::regex surd_re(
        R"(^\s*(?:(-?\d+)\s*([+-])\s*)?(-?\d+)\s*/\s*sqrt2(?:\s+over\s+(-?\d+))?\s*$)");
    static const std::regex rat_re(R"(^\s*(-?\d+)\s*(?:/\s*(-?\d+))?\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, surd_re)) {
        mpz_class a = m[1].matched ? mpz_class(m[1].str()) : mpz_class(0);
        mpz_class b(m[3].str());
        if (m[2].matched && m[2].str() == "-") b = -b;
        mpz_class c = m[4].matched ? mpz_class(m[4].str()) : mpz_class(1);
        if (c == 0) throw std::invalid_argument("ExactReal: zero denominator in '" + text + "'");
        mpq_class u(a, c), v(b, 2 * c);
        u.canonicalize();
        v.canonicalize();
        return ExactReal(Surd(u, v));
    }
    if (std::regex_match(text, m, rat_re)) {
        mpz_class p(m[1].str());
        mpz_class q = m[2].matched ? mpz_class(m[2].str()) : mpz_class(1);
        if (q == 0) throw std::invalid_argument("ExactReal: zero denominator in '" + text + "'");
        mpq_class r(p, q);
        r.canonicalize();
        return ExactReal(Surd(r, mpq_class(0)));
    }
    throw std::invalid_argument("ExactReal: cannot parse '" + text + "'");
}

std::string ExactReal::str() const {
    const mpq_class& u = value_.rational_part();
    const mpq_class& v = value_.sqrt2_part();
    if (v == 0) {
        if (u.get_den() == 1) return u.get_num().get_str();
        return u.get_num().get_str() + "/" + u.get_den().get_str();
    }
    // value = (a + b/sqrt2)/c with b/(2c) = v and a/c = u
    mpz_class c;
    mpz_class dv2 = mpq_class(2 * v).get_den();
    mpz_lcm(c.get_mpz_t(), u.get_den().get_mpz_t(), dv2.get_mpz_t());
    mpz_class a = mpz_class(mpq_class(u * c).get_num());
    mpz_class b = mpz_class(mpq_class(2 * v * c).get_num());
    std::string out;
    if (a != 0) out = a.get_str() + (b < 0 ? "-" : "+");
    if (a != 0 && b < 0)
        out += mpz_class(-b).get_str();
    else
        out += b.get_str();
    out += "/sqrt2";
    if (c != 1) out += " over " + c.get_str();
    return out;
}

int ExactReal::digit(uint64_t j) const {
    if (j == 0) throw std::invalid_argument("ExactReal: digit index starts at 1");
    if (cache_->constant >= 0) return cache_->constant;
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (j > cache_->bits.size()) fill_digits(j);
    return cache_->bits[j - 1];
}

// Computes digits 1..n in one block.  With x = (A + B*sqrt2)/C in [0, 1],
// the terminating digit j is bit (n - j) of M = floor(2^n x) and the
// non-terminating digit j is the same bit of ceil(2^n x) - 1.  For B != 0 the
// value is irrational, both coincide, and floor(2^n B sqrt2) = isqrt(2 B^2 4^n)
// (negated and shifted by one for B < 0) makes the floor exact: no integer can
// sit between A 2^n + floor(B 2^n sqrt2) and A 2^n + B 2^n sqrt2.
void ExactReal::fill_digits(uint64_t n) const {
    int s = value_.sign();
    if (s < 0 || value_ > Surd(1))
        throw std::domain_error("ExactReal: digits need a value in [0, 1]");
    uint64_t want = std::max<uint64_t>(64, std::max(n, cache_->bits.size() * 2));

    const mpq_class& u = value_.rational_part();
    const mpq_class& v = value_.sqrt2_part();
    mpz_class C;
    mpz_lcm(C.get_mpz_t(), u.get_den().get_mpz_t(), v.get_den().get_mpz_t());
    mpz_class A = mpq_class(u * C).get_num();
    mpz_class B = mpq_class(v * C).get_num();

    mpz_class M;
    mpz_class top = A << want;
    if (B == 0) {
        if (nonterminating_) {
            mpz_cdiv_q(M.get_mpz_t(), top.get_mpz_t(), C.get_mpz_t());
            M -= 1;  // largest integer strictly below 2^n x
        } else {
            mpz_fdiv_q(M.get_mpz_t(), top.get_mpz_t(), C.get_mpz_t());
        }
    } else {
        mpz_class t = 2 * B * B;
        t <<= 2 * want;
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), t.get_mpz_t());
        top += (B > 0) ? r : mpz_class(-r - 1);
        mpz_fdiv_q(M.get_mpz_t(), top.get_mpz_t(), C.get_mpz_t());
    }

    std::vector<uint8_t> bits(want);
    for (uint64_t j = 1; j <= want; ++j)
        bits[j - 1] = static_cast<uint8_t>(mpz_tstbit(M.get_mpz_t(), want - j));
    cache_->bits.swap(bits);
}

}  // namespace fakemu
